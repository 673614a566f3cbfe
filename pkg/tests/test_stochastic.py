import numpy as np
import pytest
from scipy import stats

from wptsim.geometry import point3
from wptsim.stochastic import (
    RngSeed,
    ScatterEllipsoid,
    ScattererField,
    draw_beam_phases,
    draw_scatterer_field,
    load_scatterer_field,
    save_scatterer_field,
)

ELLIPSOID = ScatterEllipsoid(point3(5.0, 8.75, 1.0), point3(1.5, 0.5, 1.5))
RCS_MEAN = 100.0 * np.pi * 1e-4
RCS_STD = 20.0 * np.pi * 1e-4


class TestRngSeed:
    def test_same_seed_same_draws(self):
        a = RngSeed(7, "beam-phases", 3).generator().uniform(size=8)
        b = RngSeed(7, "beam-phases", 3).generator().uniform(size=8)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RngSeed(7, "scatterers").generator().uniform(size=8)
        b = RngSeed(7, "beam-phases").generator().uniform(size=8)
        c = RngSeed(7, "noise").generator().uniform(size=8)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_indices_differ(self):
        a = RngSeed(7, "beam-phases", 0).generator().uniform(size=8)
        b = RngSeed(7, "beam-phases", 1).generator().uniform(size=8)
        assert not np.array_equal(a, b)

    def test_unknown_stream_rejected(self):
        with pytest.raises(ValueError, match="unknown stream"):
            RngSeed(7, "weather")


class TestEllipsoid:
    def test_volume(self):
        # independent oracle: (4/3) * pi * a * b * c
        assert ELLIPSOID.volume == pytest.approx(4.0 / 3.0 * np.pi * 1.5 * 0.5 * 1.5, rel=1e-12)
        assert ELLIPSOID.volume == pytest.approx(4.7124, abs=5e-4)

    def test_mean_count_tracks_density_times_volume(self):
        counts = [
            draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(3, "scatterers", i)).count
            for i in range(600)
        ]
        assert np.mean(counts) == pytest.approx(10.0 * ELLIPSOID.volume, abs=1.5)

    def test_rejects_nonpositive_axes(self):
        with pytest.raises(ValueError, match="positive"):
            ScatterEllipsoid(point3(0, 0, 0), point3(1.0, 0.0, 1.0))


class TestDrawScattererField:
    def test_zero_density_empty(self):
        field = draw_scatterer_field(ELLIPSOID, 0.0, RCS_MEAN, RCS_STD, RngSeed(1, "scatterers"))
        assert field.count == 0

    def test_deterministic(self):
        a = draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(1, "scatterers", 5))
        b = draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(1, "scatterers", 5))
        assert np.array_equal(a.positions, b.positions)
        assert np.array_equal(a.rcs, b.rcs)
        assert np.array_equal(a.phases, b.phases)

    def test_stream_independence(self):
        before = draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(1, "scatterers"))
        draw_beam_phases(16, RngSeed(1, "beam-phases"))
        after = draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(1, "scatterers"))
        assert np.array_equal(before.positions, after.positions)

    def test_positions_inside_ellipsoid(self):
        field = draw_scatterer_field(ELLIPSOID, 50.0, RCS_MEAN, RCS_STD, RngSeed(2, "scatterers"))
        assert field.count > 0
        assert ELLIPSOID.contains(field.positions).all()

    def test_contracts(self):
        field = draw_scatterer_field(ELLIPSOID, 30.0, RCS_MEAN, RCS_STD, RngSeed(4, "scatterers"))
        assert np.all(field.rcs > 0.0)
        assert np.all((field.phases >= 0.0) & (field.phases < 2 * np.pi))

    def test_rejects_bad_inputs(self):
        seed = RngSeed(1, "scatterers")
        with pytest.raises(ValueError, match="density"):
            draw_scatterer_field(ELLIPSOID, -1.0, RCS_MEAN, RCS_STD, seed)
        with pytest.raises(ValueError, match="mean"):
            draw_scatterer_field(ELLIPSOID, 1.0, 0.0, RCS_STD, seed)

    def _big_field(self):
        # density chosen to land ~1e4 scatterers in one draw
        return draw_scatterer_field(ELLIPSOID, 2200.0, RCS_MEAN, RCS_STD, RngSeed(11, "scatterers"))

    def test_phase_uniformity_ks(self):
        field = self._big_field()
        assert field.count > 9000
        result = stats.kstest(field.phases, stats.uniform(loc=0.0, scale=2 * np.pi).cdf)
        assert result.pvalue > 0.01

    def test_rcs_moments(self):
        field = self._big_field()
        assert np.mean(field.rcs) == pytest.approx(RCS_MEAN, rel=0.05)
        assert np.std(field.rcs) == pytest.approx(RCS_STD, rel=0.05)

    def test_uniformity_half_volume(self):
        field = self._big_field()
        scaled = ScatterEllipsoid(ELLIPSOID.center, ELLIPSOID.semi_axes * 2 ** (-1.0 / 3.0))
        fraction = np.mean(scaled.contains(field.positions))
        assert fraction == pytest.approx(0.5, abs=0.02)

    def test_constant_rcs_when_std_zero(self):
        field = draw_scatterer_field(ELLIPSOID, 20.0, RCS_MEAN, 0.0, RngSeed(5, "scatterers"))
        assert np.allclose(field.rcs, RCS_MEAN)


class TestDrawBeamPhases:
    def test_deterministic(self):
        a = draw_beam_phases(6, RngSeed(9, "beam-phases"))
        b = draw_beam_phases(6, RngSeed(9, "beam-phases"))
        assert np.array_equal(a, b)
        assert len(a) == 6

    def test_range(self):
        phases = draw_beam_phases(1000, RngSeed(9, "beam-phases", 1))
        assert np.all((phases >= 0.0) & (phases < 2 * np.pi))

    def test_law_of_large_numbers(self):
        phases = draw_beam_phases(10**6, RngSeed(9, "beam-phases", 2))
        assert np.mean(phases) == pytest.approx(np.pi, abs=0.01)

    def test_rejects_zero_beams(self):
        with pytest.raises(ValueError, match="at least one"):
            draw_beam_phases(0, RngSeed(9, "beam-phases"))


class TestScattererFieldType:
    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            ScattererField(np.zeros((2, 3)), np.ones(3), np.zeros(3))

    def test_rejects_nonpositive_rcs(self):
        with pytest.raises(ValueError, match="positive"):
            ScattererField(np.zeros((1, 3)), np.array([0.0]), np.zeros(1))

    def test_empty_allowed(self):
        assert ScattererField.empty().count == 0

    def test_csv_roundtrip(self, tmp_path):
        field = draw_scatterer_field(ELLIPSOID, 10.0, RCS_MEAN, RCS_STD, RngSeed(6, "scatterers"))
        path = tmp_path / "field.csv"
        save_scatterer_field(path, field)
        loaded = load_scatterer_field(path)
        assert np.array_equal(loaded.positions, field.positions)
        assert np.array_equal(loaded.rcs, field.rcs)
        assert np.array_equal(loaded.phases, field.phases)

    def test_csv_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            load_scatterer_field(path)
