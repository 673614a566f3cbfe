"""Random scatterer fields and beam phases under a reproducible seeding contract.

Every random draw is made from a generator keyed by (master seed,
stream label, realization index), so independent quantities never share
RNG state and any draw can be replayed in isolation, regardless of call
order or parallelism.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import Point3, as_point

TWO_PI = 2.0 * np.pi

STREAMS = {"scatterers": 0, "beam-phases": 1, "noise": 2}


@dataclass(frozen=True)
class RngSeed:
    """Substream address: master seed, named stream, realization index."""

    master: int
    stream: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.stream not in STREAMS:
            raise ValueError(f"unknown stream {self.stream!r}; expected one of {sorted(STREAMS)}")
        if self.index < 0:
            raise ValueError("realization index must be nonnegative")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master, spawn_key=(STREAMS[self.stream], self.index))
        return np.random.default_rng(seq)


@dataclass(frozen=True, eq=False)
class ScatterEllipsoid:
    """Axis-aligned ellipsoid containing the diffuse scatter cluster."""

    center: Point3
    semi_axes: Point3

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_point(self.center))
        axes = as_point(self.semi_axes)
        if not np.all(axes > 0.0):
            raise ValueError("all semi-axes must be positive")
        object.__setattr__(self, "semi_axes", axes)

    @property
    def volume(self) -> float:
        a, b, c = self.semi_axes
        return 4.0 / 3.0 * np.pi * a * b * c

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        u = (pts - self.center) / self.semi_axes
        return np.einsum("ij,ij->i", u, u) <= 1.0


@dataclass(frozen=True, eq=False)
class ScattererField:
    """One realization of point scatterers: positions, RCS (m^2), phases (rad)."""

    positions: np.ndarray
    rcs: np.ndarray
    phases: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float).reshape(-1, 3)
        rcs = np.asarray(self.rcs, dtype=float).reshape(-1)
        phases = np.asarray(self.phases, dtype=float).reshape(-1)
        if not (len(pos) == len(rcs) == len(phases)):
            raise ValueError("positions, rcs, and phases must have equal length")
        if len(rcs) and not np.all(rcs > 0.0):
            raise ValueError("all RCS values must be positive")
        if len(phases) and (np.any(phases < 0.0) or np.any(phases >= TWO_PI)):
            raise ValueError("phases must lie in [0, 2*pi)")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "rcs", rcs)
        object.__setattr__(self, "phases", phases)

    @property
    def count(self) -> int:
        return len(self.rcs)

    @staticmethod
    def empty() -> "ScattererField":
        return ScattererField(np.zeros((0, 3)), np.zeros(0), np.zeros(0))


def _lognormal_params(mean: float, std: float) -> tuple[float, float]:
    """Underlying normal (mu, sigma) for a lognormal with linear-domain mean/std."""

    sigma_sq = np.log1p((std / mean) ** 2)
    mu = np.log(mean) - sigma_sq / 2.0
    return mu, float(np.sqrt(sigma_sq))


def _uniform_in_ellipsoid(ellipsoid: ScatterEllipsoid, n: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly uniform samples via rejection from the bounding box."""

    out = np.empty((n, 3))
    filled = 0
    while filled < n:
        batch = max(16, 2 * (n - filled))
        u = rng.uniform(-1.0, 1.0, size=(batch, 3))
        accept = np.einsum("ij,ij->i", u, u) <= 1.0
        take = u[accept][: n - filled]
        out[filled : filled + len(take)] = take
        filled += len(take)
    return ellipsoid.center + out * ellipsoid.semi_axes


def draw_scatterer_field(
    ellipsoid: ScatterEllipsoid,
    density: float,
    rcs_mean: float,
    rcs_std: float,
    seed: RngSeed,
) -> ScattererField:
    """Draw one scatterer realization.

    The scatterer count is Poisson with mean density * ellipsoid volume,
    positions are uniform in the ellipsoid, RCS values are i.i.d.
    lognormal with the given linear-domain mean and standard deviation,
    and phases are i.i.d. uniform on [0, 2*pi).
    """

    if density < 0.0:
        raise ValueError("scatterer density must be nonnegative")
    if not (rcs_mean > 0.0):
        raise ValueError("RCS mean must be positive")
    if rcs_std < 0.0:
        raise ValueError("RCS standard deviation must be nonnegative")

    rng = seed.generator()
    n = int(rng.poisson(density * ellipsoid.volume))
    if n == 0:
        return ScattererField.empty()
    positions = _uniform_in_ellipsoid(ellipsoid, n, rng)
    if rcs_std == 0.0:
        rcs = np.full(n, rcs_mean)
    else:
        mu, sigma = _lognormal_params(rcs_mean, rcs_std)
        rcs = rng.lognormal(mu, sigma, size=n)
    phases = rng.uniform(0.0, TWO_PI, size=n)
    return ScattererField(positions, rcs, phases)


def draw_beam_phases(count: int, seed: RngSeed) -> np.ndarray:
    """Draw per-beam phases, i.i.d. uniform on [0, 2*pi)."""

    if count < 1:
        raise ValueError("need at least one beam")
    return seed.generator().uniform(0.0, TWO_PI, size=count)


_FIELD_COLUMNS = ["x_m", "y_m", "z_m", "rcs_m2", "phase_rad"]


def save_scatterer_field(path: str | Path, field: ScattererField) -> None:
    """Write a scatterer realization as CSV so it can be replayed later."""

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_FIELD_COLUMNS)
        for pos, rcs, phase in zip(field.positions, field.rcs, field.phases):
            writer.writerow([repr(float(v)) for v in (pos[0], pos[1], pos[2], rcs, phase)])


def load_scatterer_field(path: str | Path) -> ScattererField:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _FIELD_COLUMNS:
            raise ValueError(f"unexpected scatterer file header {header!r} in {path}")
        rows = [[float(v) for v in row] for row in reader if row]
    if not rows:
        return ScattererField.empty()
    data = np.asarray(rows)
    return ScattererField(data[:, :3], data[:, 3], data[:, 4])
