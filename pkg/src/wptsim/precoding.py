"""Transmit weight vectors: conjugate-matched MRT and random-phase beam diversity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import ChannelVector, TransmitSignal

UNIT_NORM_RTOL = 1e-9


def _entries(vector) -> np.ndarray:
    return np.asarray(getattr(vector, "entries", vector), dtype=complex).reshape(-1)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Unit-norm complex transmit weights."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        w = _entries(self.entries)
        norm = float(np.linalg.norm(w))
        if abs(norm - 1.0) > UNIT_NORM_RTOL:
            raise ValueError(f"weight vector must have unit norm, got {norm!r}")
        object.__setattr__(self, "entries", w)

    def __len__(self) -> int:
        return len(self.entries)


def mrt_weights(total_channel) -> WeightVector:
    """Conjugate-matched weights w = conj(h) / ||h|| for the summed channel."""

    h = _entries(total_channel)
    norm = float(np.linalg.norm(h))
    if norm == 0.0:
        raise ValueError("cannot match a zero channel")
    return WeightVector(np.conj(h) / norm)


def beam_diversity_weights(
    smc_channels: Sequence[ChannelVector],
    phases: Sequence[float],
) -> WeightVector:
    """Equal-power multi-beam weights with one random phase per beam.

    Each beam is the conjugate match to one predicted specular channel;
    only geometry-predictable components enter, never the diffuse part.
    """

    if len(smc_channels) != len(phases):
        raise ValueError("need exactly one phase per beam")
    if len(smc_channels) == 0:
        raise ValueError("need at least one beam")
    combined = None
    for vec, phase in zip(smc_channels, phases):
        h = _entries(vec)
        norm = float(np.linalg.norm(h))
        if norm == 0.0:
            raise ValueError("cannot form a beam on a zero channel")
        beam = np.conj(h) / norm * np.exp(1j * phase)
        combined = beam if combined is None else combined + beam
    total = float(np.linalg.norm(combined))
    if total < 1e-12:
        raise ValueError("beam phases cancel: combined weight vector vanishes")
    return WeightVector(combined / total)


def transmit_signal(weights: WeightVector, power: float) -> TransmitSignal:
    """Scale unit-norm weights so the radiated power ||s||^2 equals ``power``."""

    if not (power > 0.0):
        raise ValueError("transmit power must be positive")
    return TransmitSignal(np.sqrt(power) * weights.entries)
