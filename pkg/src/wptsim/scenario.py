"""Scenario container and the vectorized channel sampler used by grid evaluation."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import channel as ch
from .channel import ChannelVector
from .geometry import ArrayGeometry, ImageSource, as_point
from .precoding import WeightVector, beam_diversity_weights, mrt_weights
from .stochastic import RngSeed, ScattererField, draw_beam_phases

CHUNK_POINTS = 2048

STRATEGIES = ("mrt-full", "mrt-smc", "los-only-mrt", "beam-diversity")


@dataclass(frozen=True, eq=False)
class Scenario:
    """Immutable simulation scene: array, image sources, scatterers, wavelength."""

    array: ArrayGeometry
    sources: tuple[ImageSource, ...]
    field: ScattererField
    wavelength: float
    notes: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.sources:
            raise ValueError("scenario needs at least one source")
        if sum(src.is_los for src in self.sources) != 1:
            raise ValueError("exactly one source must be line of sight")
        object.__setattr__(self, "sources", tuple(self.sources))

    @property
    def num_elements(self) -> int:
        return self.array.num_elements

    @property
    def num_sources(self) -> int:
        return len(self.sources)

    def smc_channels_at(self, point) -> list[ChannelVector]:
        p = as_point(point)
        return [ch.smc_channel_vector(src, p, self.wavelength) for src in self.sources]

    def scatter_channels_at(self, point) -> list[ChannelVector]:
        p = as_point(point)
        return [ch.scatter_channel_vector(src, self.field, p, self.wavelength) for src in self.sources]

    def total_channel_at(self, point) -> ChannelVector:
        total = np.zeros(self.num_elements, dtype=complex)
        for vec in self.smc_channels_at(point):
            total += vec.entries
        for vec in self.scatter_channels_at(point):
            total += vec.entries
        return ChannelVector(total)


class ChannelSampler:
    """Precomputes scatter-path factors and evaluates channels on point batches.

    The transmit-to-scatterer legs do not depend on the receiver
    position, so their sum over all image sources is folded into a
    single (N_sc, L) matrix once per scenario.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.wavelength = scenario.wavelength
        field = scenario.field
        if field.count:
            bounce = np.zeros((field.count, scenario.num_elements), dtype=complex)
            for src in scenario.sources:
                bounce += ch.tx_scatter_matrix(src, field, self.wavelength)
            self._scatter_bounce = ch.scatter_diagonal(field)[:, None] * bounce
        else:
            self._scatter_bounce = None

    def smc_total(self, points: np.ndarray) -> np.ndarray:
        """Sum of all specular channels at each point, shape (n, L)."""

        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        total = np.zeros((len(pts), self.scenario.num_elements), dtype=complex)
        for src in self.scenario.sources:
            total += ch.smc_channel_matrix(src, pts, self.wavelength)
        return total

    def total(self, points: np.ndarray) -> np.ndarray:
        """Specular plus diffuse channel at each point, shape (n, L)."""

        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        total = self.smc_total(pts)
        if self._scatter_bounce is not None:
            total += ch.rx_scatter_matrix(self.scenario.field, pts, self.wavelength) @ self._scatter_bounce
        return total

    def phasors(self, points: np.ndarray, weights: np.ndarray, threads: int = 1) -> np.ndarray:
        """Receive phasors h(p)^T w for every point and weight column.

        ``weights`` is (L,) or (L, R); the result is (n, R). Points are
        processed in fixed-size chunks so results are bit-identical for
        any thread count.
        """

        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        w = np.asarray(weights, dtype=complex)
        if w.ndim == 1:
            w = w[:, None]
        out = np.empty((len(pts), w.shape[1]), dtype=complex)
        chunks = range(0, len(pts), CHUNK_POINTS)

        def run(start: int) -> None:
            stop = min(start + CHUNK_POINTS, len(pts))
            out[start:stop] = self.total(pts[start:stop]) @ w

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(run, chunks))
        else:
            for start in chunks:
                run(start)
        return out

    def near_scatterer_flags(self, points: np.ndarray, radius: float | None = None) -> np.ndarray:
        """Mark points within one wavelength of a scatterer; the diffuse
        model is not trustworthy there."""

        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        if radius is None:
            radius = self.wavelength
        field = self.scenario.field
        if field.count == 0:
            return np.zeros(len(pts), dtype=bool)
        flags = np.zeros(len(pts), dtype=bool)
        for start in range(0, len(pts), CHUNK_POINTS):
            stop = min(start + CHUNK_POINTS, len(pts))
            d = np.linalg.norm(pts[start:stop, None, :] - field.positions[None, :, :], axis=2)
            flags[start:stop] = np.any(d < radius, axis=1)
        return flags


def strategy_weights(
    scenario: Scenario,
    strategy: str,
    target,
    master_seed: int = 0,
    realization: int = 0,
) -> WeightVector:
    """Weight vector for a named precoding strategy aimed at a target position.

    mrt-full matches the complete channel (requires full CSI including
    scatterers); mrt-smc matches the sum of the predictable specular
    channels; los-only-mrt matches the direct path alone; beam-diversity
    combines per-source beams with random phases drawn from the
    "beam-phases" stream at the given realization index.
    """

    p = as_point(target)
    if strategy == "mrt-full":
        return mrt_weights(scenario.total_channel_at(p))
    if strategy == "mrt-smc":
        total = np.zeros(scenario.num_elements, dtype=complex)
        for vec in scenario.smc_channels_at(p):
            total += vec.entries
        return mrt_weights(total)
    if strategy == "los-only-mrt":
        (los,) = [s for s in scenario.sources if s.is_los]
        return mrt_weights(ch.smc_channel_vector(los, p, scenario.wavelength))
    if strategy == "beam-diversity":
        beams = scenario.smc_channels_at(p)
        phases = draw_beam_phases(
            len(beams), RngSeed(master_seed, "beam-phases", realization)
        )
        return beam_diversity_weights(beams, phases)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
