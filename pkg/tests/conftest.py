import numpy as np
import pytest

from wptsim.config import ArrayConfig, ScenarioConfig
from wptsim.geometry import ArrayGeometry, build_image_sources, point3
from wptsim.scenario import Scenario
from wptsim.stochastic import ScattererField

WAVELENGTH = 299792458.0 / 2.4e9


def small_config(**overrides) -> ScenarioConfig:
    """Reference scenario with a downsized array for fast map tests."""

    cfg = ScenarioConfig(**overrides)
    cfg.array = ArrayConfig(n_x=6, n_z=4)
    return cfg


def free_space_scenario(n_x=1, n_z=1, center=(0.0, 0.0, 0.0)) -> Scenario:
    """Line of sight only: no reflectors, no scatterers."""

    array = ArrayGeometry(point3(*center), n_x, n_z, WAVELENGTH / 2.0, WAVELENGTH)
    sources = build_image_sources(array, [])
    return Scenario(array=array, sources=tuple(sources), field=ScattererField.empty(), wavelength=WAVELENGTH)


@pytest.fixture
def fs_single():
    return free_space_scenario()


@pytest.fixture
def target_861():
    return np.array([0.0, 8.125, 0.0])
