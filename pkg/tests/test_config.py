import json
import math
from pathlib import Path

import numpy as np
import pytest

from wptsim.config import (
    ConfigError,
    ScenarioConfig,
    build_planes,
    build_scenario,
    load_config,
    save_config,
)

SPEED_OF_LIGHT = 299792458.0
DEFAULTS_FILE = Path(__file__).resolve().parents[1] / "configs" / "defaults.json"


class TestTableDefaults:
    """The default configuration must echo the reference parameter table."""

    def test_values(self):
        cfg = ScenarioConfig()
        assert cfg.frequency_ghz == 2.4
        assert cfg.array.width_nominal_m == 2.0
        assert cfg.array.height_nominal_m == 1.5
        assert cfg.array.center_m == (5.0, 0.0, 1.0)
        assert cfg.target_m == (5.0, 8.125, 1.0)
        assert cfg.scatter.center_m == (5.0, 8.75, 1.0)
        assert cfg.num_elements == 960
        assert cfg.scatter.density_per_m3 == 10.0
        assert cfg.scatter.rcs_mean_cm2 == pytest.approx(100.0 * math.pi, rel=1e-15)
        assert cfg.scatter.rcs_std_cm2 == pytest.approx(20.0 * math.pi, rel=1e-15)
        assert cfg.reflection.wall_gain_db == -3.0
        assert cfg.reflection.floor_gain_db == -3.0
        assert cfg.p_tx_watt == 4.0
        assert cfg.array.spacing_wavelengths == 0.5
        assert cfg.scatter.semi_axes_m == (1.5, 0.5, 1.5)

    def test_room_box(self):
        cfg = ScenarioConfig()
        assert cfg.room.x_extent_m[1] - cfg.room.x_extent_m[0] == 5.0
        assert cfg.room.y_extent_m[1] - cfg.room.y_extent_m[0] == 9.0
        assert cfg.room.z_extent_m[1] - cfg.room.z_extent_m[0] == 3.5
        assert not cfg.room.include_ceiling

    def test_wavelength(self):
        cfg = ScenarioConfig()
        assert cfg.wavelength_m == pytest.approx(SPEED_OF_LIGHT / 2.4e9, rel=1e-15)

    def test_disc_diameter_heuristic(self):
        cfg = ScenarioConfig()
        expected = 8.125 * cfg.wavelength_m / 2.0
        assert cfg.default_disc_diameter_m() == pytest.approx(expected, rel=1e-12)
        assert cfg.default_disc_diameter_m() == pytest.approx(0.5075, abs=5e-4)

    def test_shipped_defaults_file_matches_code(self):
        assert load_config(DEFAULTS_FILE).to_dict() == ScenarioConfig().to_dict()


class TestSerialization:
    def test_roundtrip(self, tmp_path):
        cfg = ScenarioConfig()
        cfg.master_seed = 77
        cfg.array.n_x = 8
        path = tmp_path / "cfg.json"
        save_config(path, cfg)
        loaded = load_config(path)
        assert loaded.to_dict() == cfg.to_dict()

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown config key"):
            ScenarioConfig.from_dict({"frequency_mhz": 2400.0})
        with pytest.raises(ConfigError, match="unknown config key"):
            ScenarioConfig.from_dict({"array": {"rows": 4}})

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="JSON object"):
            load_config(path)

    @pytest.mark.parametrize(
        "patch, match",
        [
            ({"frequency_ghz": -1.0}, "frequency"),
            ({"p_tx_watt": 0.0}, "p_tx_watt"),
            ({"noise_variance_watt": -1e-9}, "noise_variance"),
            ({"array": {"n_x": 0}}, "element counts"),
            ({"array": {"spacing_wavelengths": -0.5}}, "spacing"),
            ({"scatter": {"density_per_m3": -2.0}}, "density"),
            ({"scatter": {"rcs_mean_cm2": 0.0}}, "RCS mean"),
            ({"room": {"x_extent_m": [7.5, 2.5]}}, "positive size"),
        ],
    )
    def test_validation_failures(self, patch, match):
        with pytest.raises(ConfigError, match=match):
            ScenarioConfig.from_dict(patch)


class TestSceneAssembly:
    def test_reflection_gain_magnitude(self):
        planes = build_planes(ScenarioConfig())
        for plane in planes:
            assert abs(plane.reflection_gain) == pytest.approx(10 ** (-3 / 20), rel=1e-12)
            assert abs(plane.reflection_gain) == pytest.approx(0.70795, abs=5e-6)

    def test_default_scene_shape(self):
        cfg = ScenarioConfig()
        scene = build_scenario(cfg, scatter_index=0)
        assert scene.num_elements == 960
        assert scene.num_sources == 5  # LoS + two side walls + back wall + floor
        assert scene.notes["dropped_planes"] == ["wall_y_min"]
        assert scene.wavelength == pytest.approx(cfg.wavelength_m)

    def test_ceiling_adds_a_source(self):
        cfg = ScenarioConfig()
        cfg.room.include_ceiling = True
        scene = build_scenario(cfg, scatter_index=0)
        assert scene.num_sources == 6

    def test_image_centers(self):
        scene = build_scenario(ScenarioConfig(), scatter_index=0)
        centers = {s.name: s.element_positions.mean(axis=0) for s in scene.sources}
        assert np.allclose(centers["los"], [5.0, 0.0, 1.0], atol=1e-9)
        assert np.allclose(centers["image-wall_x_min"], [0.0, 0.0, 1.0], atol=1e-9)
        assert np.allclose(centers["image-wall_x_max"], [10.0, 0.0, 1.0], atol=1e-9)
        assert np.allclose(centers["image-wall_y_max"], [5.0, 18.0, 1.0], atol=1e-9)
        assert np.allclose(centers["image-floor"], [5.0, 0.0, -1.0], atol=1e-9)

    def test_realized_scatter_count_near_density_times_volume(self):
        counts = [build_scenario(ScenarioConfig(), scatter_index=i).field.count for i in range(40)]
        volume = 4.0 / 3.0 * math.pi * 1.5 * 0.5 * 1.5
        assert np.mean(counts) == pytest.approx(10.0 * volume, abs=4.0)
        # the reference realization count (38) is an admissible draw
        assert min(counts) <= 38 <= max(counts)
