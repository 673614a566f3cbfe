"""Scenario configuration: dataclasses, JSON round-trip, and scene assembly.

Keys carry explicit units in their names. The shipped defaults
reproduce the reference indoor scenario: a 5 x 9 x 3.5 m room, a 960
element half-wavelength rectangular array centered on one wall, a
device 8.125 m away, and a diffuse scatter ellipsoid between the device
and the back wall.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .channel import SPEED_OF_LIGHT
from .geometry import ArrayGeometry, ReflectingPlane, point3, room_planes
from .scenario import Scenario
from .stochastic import RngSeed, ScatterEllipsoid, ScattererField, draw_scatterer_field


class ConfigError(ValueError):
    """A configuration value violates the schema or a physical constraint."""


@dataclass
class RoomConfig:
    x_extent_m: tuple[float, float] = (2.5, 7.5)
    y_extent_m: tuple[float, float] = (0.0, 9.0)
    z_extent_m: tuple[float, float] = (0.0, 3.5)
    include_ceiling: bool = False


@dataclass
class ReflectionConfig:
    wall_gain_db: float = -3.0
    wall_phase_deg: float = 0.0
    floor_gain_db: float = -3.0
    floor_phase_deg: float = 0.0
    ceiling_gain_db: float = -3.0
    ceiling_phase_deg: float = 0.0


@dataclass
class ArrayConfig:
    center_m: tuple[float, float, float] = (5.0, 0.0, 1.0)
    n_x: int = 40
    n_z: int = 24
    spacing_wavelengths: float = 0.5
    # Nominal aperture from the reference scenario; used only for the
    # default focal-disc diameter. The realized lattice extent is
    # (n - 1) * spacing and differs slightly.
    width_nominal_m: float = 2.0
    height_nominal_m: float = 1.5


@dataclass
class ScatterConfig:
    center_m: tuple[float, float, float] = (5.0, 8.75, 1.0)
    semi_axes_m: tuple[float, float, float] = (1.5, 0.5, 1.5)
    density_per_m3: float = 10.0
    rcs_mean_cm2: float = 100.0 * math.pi
    rcs_std_cm2: float = 20.0 * math.pi


@dataclass
class ScenarioConfig:
    frequency_ghz: float = 2.4
    room: RoomConfig = field(default_factory=RoomConfig)
    reflection: ReflectionConfig = field(default_factory=ReflectionConfig)
    array: ArrayConfig = field(default_factory=ArrayConfig)
    target_m: tuple[float, float, float] = (5.0, 8.125, 1.0)
    scatter: ScatterConfig = field(default_factory=ScatterConfig)
    p_tx_watt: float = 4.0
    noise_variance_watt: float = 0.0
    master_seed: int = 1

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / (self.frequency_ghz * 1e9)

    @property
    def num_elements(self) -> int:
        return self.array.n_x * self.array.n_z

    def default_disc_diameter_m(self) -> float:
        """Beamwidth-scale diameter: target distance * wavelength / aperture width."""

        distance = float(np.linalg.norm(np.subtract(self.target_m, self.array.center_m)))
        return distance * self.wavelength_m / self.array.width_nominal_m

    def validate(self) -> None:
        if not (self.frequency_ghz > 0.0):
            raise ConfigError("frequency_ghz must be positive")
        for lo, hi, name in (
            (*self.room.x_extent_m, "x"),
            (*self.room.y_extent_m, "y"),
            (*self.room.z_extent_m, "z"),
        ):
            if not (float(hi) > float(lo)):
                raise ConfigError(f"room {name}_extent_m must have positive size")
        if self.array.n_x < 1 or self.array.n_z < 1:
            raise ConfigError("array element counts must be positive")
        if not (self.array.spacing_wavelengths > 0.0):
            raise ConfigError("array spacing must be positive")
        if not (self.array.width_nominal_m > 0.0 and self.array.height_nominal_m > 0.0):
            raise ConfigError("nominal aperture dimensions must be positive")
        if not all(a > 0.0 for a in self.scatter.semi_axes_m):
            raise ConfigError("scatter semi-axes must be positive")
        if self.scatter.density_per_m3 < 0.0:
            raise ConfigError("scatterer density must be nonnegative")
        if not (self.scatter.rcs_mean_cm2 > 0.0):
            raise ConfigError("RCS mean must be positive")
        if self.scatter.rcs_std_cm2 < 0.0:
            raise ConfigError("RCS standard deviation must be nonnegative")
        if not (self.p_tx_watt > 0.0):
            raise ConfigError("p_tx_watt must be positive")
        if self.noise_variance_watt < 0.0:
            raise ConfigError("noise_variance_watt must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "ScenarioConfig":
        cfg = ScenarioConfig()
        try:
            plain = {k: v for k, v in data.items() if k not in ("room", "reflection", "array", "scatter")}
            for key, value in plain.items():
                if not hasattr(cfg, key):
                    raise ConfigError(f"unknown config key {key!r}")
                setattr(cfg, key, tuple(value) if isinstance(value, list) else value)
            for section, cls in (
                ("room", RoomConfig),
                ("reflection", ReflectionConfig),
                ("array", ArrayConfig),
                ("scatter", ScatterConfig),
            ):
                if section in data:
                    base = cls()
                    for key, value in data[section].items():
                        if not hasattr(base, key):
                            raise ConfigError(f"unknown config key {section}.{key!r}")
                        setattr(base, key, tuple(value) if isinstance(value, list) else value)
                    setattr(cfg, section, base)
        except (TypeError, AttributeError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        cfg.validate()
        return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    """Load a scenario config; a run manifest is accepted and re-runs its config."""

    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    if "config" in data and "command" in data:
        data = data["config"]
    return ScenarioConfig.from_dict(data)


def save_config(path: str | Path, config: ScenarioConfig) -> None:
    with open(path, "w") as fh:
        json.dump(config.to_dict(), fh, indent=2)
        fh.write("\n")


def _gain(db: float, phase_deg: float) -> complex:
    return 10.0 ** (db / 20.0) * np.exp(1j * np.deg2rad(phase_deg))


def build_planes(config: ScenarioConfig) -> list[ReflectingPlane]:
    r = config.reflection
    return room_planes(
        tuple(config.room.x_extent_m),
        tuple(config.room.y_extent_m),
        tuple(config.room.z_extent_m),
        wall_gain=_gain(r.wall_gain_db, r.wall_phase_deg),
        floor_gain=_gain(r.floor_gain_db, r.floor_phase_deg),
        ceiling_gain=_gain(r.ceiling_gain_db, r.ceiling_phase_deg)
        if config.room.include_ceiling
        else None,
    )


def build_array(config: ScenarioConfig) -> ArrayGeometry:
    wavelength = config.wavelength_m
    return ArrayGeometry(
        center=point3(*config.array.center_m),
        n_x=config.array.n_x,
        n_z=config.array.n_z,
        spacing=config.array.spacing_wavelengths * wavelength,
        wavelength=wavelength,
    )


def build_scenario(
    config: ScenarioConfig,
    scatter_index: int = 0,
    scatter_field: ScattererField | None = None,
) -> Scenario:
    """Assemble the simulation scene for one scatterer realization.

    Planes that pass through the array center (the wall the array is
    mounted on) cannot produce a distinct image source and are dropped;
    their names are recorded in the scenario notes and the run manifest.
    """

    from .geometry import DEGENERATE_PLANE_TOL, build_image_sources

    config.validate()
    array = build_array(config)
    planes = build_planes(config)
    kept, dropped = [], []
    for plane in planes:
        if abs(plane.signed_distance(array.center)) < DEGENERATE_PLANE_TOL:
            dropped.append(plane.name)
        else:
            kept.append(plane)
    sources = build_image_sources(array, kept)
    if scatter_field is None:
        scatter_field = draw_scatterer_field(
            ScatterEllipsoid(
                point3(*config.scatter.center_m), point3(*config.scatter.semi_axes_m)
            ),
            density=config.scatter.density_per_m3,
            rcs_mean=config.scatter.rcs_mean_cm2 * 1e-4,
            rcs_std=config.scatter.rcs_std_cm2 * 1e-4,
            seed=RngSeed(config.master_seed, "scatterers", scatter_index),
        )
    notes = {
        "dropped_planes": dropped,
        "plane_names": [p.name for p in kept],
        "scatter_index": scatter_index,
    }
    return Scenario(
        array=array,
        sources=tuple(sources),
        field=scatter_field,
        wavelength=config.wavelength_m,
        notes=notes,
    )
