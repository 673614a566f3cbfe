"""Path-gain evaluation over spatial grids, empirical CDFs, and fading margins.

Path gain is the received power divided by the transmitted power; with
unit-norm weights and the transmit normalization used here it equals
|h(p)^T w|^2 at every evaluation point p, with the weights held fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .geometry import as_point
from .precoding import WeightVector
from .scenario import ChannelSampler, Scenario


def to_db(value) -> np.ndarray | float:
    """Power ratio to decibels, 10*log10."""
    return 10.0 * np.log10(value)


def from_db(db) -> np.ndarray | float:
    return 10.0 ** (np.asarray(db) / 10.0)


@dataclass(frozen=True, eq=False)
class PathGainMap:
    """Path gain sampled on a set of points.

    ``flags`` marks points within a wavelength of a scatterer, where the
    point-scatterer model overestimates the field; flagged points stay
    in the map but are excluded from distribution statistics.
    """

    points: np.ndarray
    values: np.ndarray
    flags: np.ndarray
    domain: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float).reshape(-1, 3)
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        flags = np.asarray(self.flags, dtype=bool).reshape(-1)
        if not (len(pts) == len(vals) == len(flags)):
            raise ValueError("points, values, and flags must have equal length")
        if np.any(vals < 0.0):
            raise ValueError("path gain cannot be negative")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "flags", flags)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class CdfResult:
    """Empirical CDF: sorted path-gain samples and cumulative probabilities."""

    values: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        probs = np.asarray(self.probabilities, dtype=float).reshape(-1)
        if len(vals) != len(probs) or len(vals) == 0:
            raise ValueError("CDF needs matching, nonempty samples and probabilities")
        if np.any(np.diff(vals) < 0.0) or np.any(np.diff(probs) < 0.0):
            raise ValueError("CDF samples and probabilities must be nondecreasing")
        if not np.isclose(probs[-1], 1.0):
            raise ValueError("cumulative probabilities must end at 1")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "probabilities", probs)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class FadingMarginReport:
    """Path gain at an outage level per strategy, and dB margin vs a reference."""

    outage: float
    reference: str
    pg_at_outage_db: dict
    margin_reduction_db: dict
    warnings: tuple = ()


def _weight_entries(weights) -> np.ndarray:
    w = np.asarray(getattr(weights, "entries", weights), dtype=complex)
    return w


def path_gain(scenario: Scenario, weights: WeightVector, point) -> float:
    """Path gain at one position for fixed transmit weights."""

    sampler = ChannelSampler(scenario)
    p = as_point(point)
    y = sampler.phasors(p[None, :], _weight_entries(weights))
    return float(np.abs(y[0, 0]) ** 2)


def _axis_coords(extent: tuple[float, float], spacing: float) -> np.ndarray:
    lo, hi = float(extent[0]), float(extent[1])
    if hi < lo:
        raise ValueError("extent upper bound below lower bound")
    n = int(np.floor((hi - lo) / spacing + 1e-9)) + 1
    return lo + spacing * np.arange(n)


def plane_grid(
    z_height: float,
    x_extent: tuple[float, float],
    y_extent: tuple[float, float],
    spacing: float,
) -> np.ndarray:
    if not (spacing > 0.0):
        raise ValueError("grid spacing must be positive")
    xs = _axis_coords(x_extent, spacing)
    ys = _axis_coords(y_extent, spacing)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel(), np.full(gx.size, float(z_height))])
    if len(pts) == 0:
        raise ValueError("empty grid")
    return pts


def disc_grid(center, diameter: float, spacing: float) -> np.ndarray:
    """Cartesian grid in the xy-plane through the center, clipped to the disc."""

    if not (diameter > 0.0):
        raise ValueError("disc diameter must be positive")
    if not (spacing > 0.0):
        raise ValueError("grid spacing must be positive")
    c = as_point(center)
    radius = diameter / 2.0
    steps = int(np.floor(radius / spacing + 1e-9))
    offsets = spacing * np.arange(-steps, steps + 1)
    gx, gy = np.meshgrid(offsets, offsets, indexing="ij")
    keep = gx**2 + gy**2 <= radius**2 + 1e-12
    pts = np.column_stack(
        [c[0] + gx[keep], c[1] + gy[keep], np.full(int(keep.sum()), c[2])]
    )
    if len(pts) == 0:
        raise ValueError("empty grid")
    return pts


def _evaluate_map(
    scenario: Scenario,
    weights,
    points: np.ndarray,
    domain: dict,
    metadata: dict | None,
    threads: int,
) -> PathGainMap:
    sampler = ChannelSampler(scenario)
    y = sampler.phasors(points, _weight_entries(weights), threads=threads)
    values = np.abs(y[:, 0]) ** 2
    flags = sampler.near_scatterer_flags(points)
    meta = dict(metadata or {})
    meta.setdefault("flagged_points", int(flags.sum()))
    return PathGainMap(points, values, flags, domain, meta)


def pg_map_plane(
    scenario: Scenario,
    weights,
    z_height: float,
    x_extent: tuple[float, float],
    y_extent: tuple[float, float],
    spacing: float,
    metadata: dict | None = None,
    threads: int = 1,
) -> PathGainMap:
    """Path gain on a horizontal rectangle at the given height."""

    points = plane_grid(z_height, x_extent, y_extent, spacing)
    domain = {
        "kind": "plane",
        "z_m": float(z_height),
        "x_extent_m": [float(x_extent[0]), float(x_extent[1])],
        "y_extent_m": [float(y_extent[0]), float(y_extent[1])],
        "spacing_m": float(spacing),
    }
    return _evaluate_map(scenario, weights, points, domain, metadata, threads)


def pg_map_disc(
    scenario: Scenario,
    weights,
    center,
    diameter: float,
    spacing: float,
    metadata: dict | None = None,
    threads: int = 1,
) -> PathGainMap:
    """Path gain on a horizontal disc around the focal point."""

    c = as_point(center)
    points = disc_grid(c, diameter, spacing)
    domain = {
        "kind": "disc",
        "center_m": [float(c[0]), float(c[1]), float(c[2])],
        "diameter_m": float(diameter),
        "spacing_m": float(spacing),
    }
    return _evaluate_map(scenario, weights, points, domain, metadata, threads)


def beam_diversity_maps(
    scenario: Scenario,
    target,
    center,
    diameter: float,
    spacing: float,
    n_realizations: int,
    master_seed: int,
    threads: int = 1,
) -> list[PathGainMap]:
    """One disc map per beam-phase realization, sharing the scatterer field.

    Realization r always uses the substream with index r, so the first
    maps of longer and shorter runs coincide (common random numbers).
    """

    from .scenario import strategy_weights

    if n_realizations < 1:
        raise ValueError("need at least one realization")
    c = as_point(center)
    points = disc_grid(c, diameter, spacing)
    sampler = ChannelSampler(scenario)
    flags = sampler.near_scatterer_flags(points)
    columns = np.column_stack(
        [
            strategy_weights(scenario, "beam-diversity", target, master_seed, r).entries
            for r in range(n_realizations)
        ]
    )
    y = sampler.phasors(points, columns, threads=threads)
    domain = {
        "kind": "disc",
        "center_m": [float(c[0]), float(c[1]), float(c[2])],
        "diameter_m": float(diameter),
        "spacing_m": float(spacing),
    }
    maps = []
    for r in range(n_realizations):
        meta = {
            "precoder": "beam-diversity",
            "realization": r,
            "master_seed": master_seed,
            "flagged_points": int(flags.sum()),
        }
        maps.append(PathGainMap(points, np.abs(y[:, r]) ** 2, flags, domain, meta))
    return maps


def max_over_realizations(maps: Sequence[PathGainMap]) -> PathGainMap:
    """Pointwise maximum of maps sharing one grid; the best PG seen per point."""

    if not maps:
        raise ValueError("need at least one map")
    first = maps[0]
    values = first.values.copy()
    for other in maps[1:]:
        if not np.array_equal(other.points, first.points):
            raise ValueError("maps must share an identical grid")
        if not np.array_equal(other.flags, first.flags):
            raise ValueError("maps must share identical flags")
        values = np.maximum(values, other.values)
    meta = dict(first.metadata)
    meta["n_realizations"] = len(maps)
    meta.pop("realization", None)
    return PathGainMap(first.points, values, first.flags, dict(first.domain), meta)


def empirical_cdf(pg_map: PathGainMap) -> CdfResult:
    """Standard empirical CDF of the unflagged map samples."""

    values = pg_map.values[~pg_map.flags]
    if len(values) == 0:
        raise ValueError("all points are flagged; no samples for a CDF")
    ordered = np.sort(values)
    probs = np.arange(1, len(ordered) + 1) / len(ordered)
    return CdfResult(ordered, probs)


def quantile(cdf: CdfResult, probability: float) -> tuple[float, bool]:
    """Lower empirical quantile (left-continuous inverse of the ECDF).

    Returns (value, resolution_warning); the warning fires when the
    requested probability lies below 1/n, i.e. beneath the smallest
    resolvable tail mass.
    """

    if not (0.0 < probability < 1.0):
        raise ValueError("probability must lie strictly between 0 and 1")
    n = len(cdf)
    warn = probability < 1.0 / n
    idx = max(int(np.ceil(probability * n)) - 1, 0)
    return float(cdf.values[idx]), warn


def fading_margin(
    cdfs: Mapping[str, CdfResult],
    outage: float,
    reference: str,
) -> FadingMarginReport:
    """Compare strategies by their path gain at a target outage probability.

    A strategy whose PG at the outage level exceeds the reference's by
    x dB needs x dB less fading margin for the same wake-up reliability.
    """

    if reference not in cdfs:
        raise ValueError(f"reference strategy {reference!r} missing from CDFs")
    if not (0.0 < outage < 1.0):
        raise ValueError("outage probability must lie strictly between 0 and 1")
    quantiles_db = {}
    warnings = []
    for name, cdf in cdfs.items():
        value, warn = quantile(cdf, outage)
        if value <= 0.0:
            raise ValueError(f"nonpositive path gain at outage level for {name!r}")
        quantiles_db[name] = float(to_db(value))
        if warn:
            warnings.append(
                f"{name}: outage {outage} below ECDF resolution 1/{len(cdf)}"
            )
    ref_db = quantiles_db[reference]
    reductions = {name: q - ref_db for name, q in quantiles_db.items()}
    return FadingMarginReport(
        outage=float(outage),
        reference=reference,
        pg_at_outage_db=quantiles_db,
        margin_reduction_db=reductions,
        warnings=tuple(warnings),
    )
