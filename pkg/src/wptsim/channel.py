"""Specular and diffuse channel vectors and the received power phasor.

All channel entries are dimensionless transmission coefficients
(S-parameters) between power waves of dimension sqrt(watt): the squared
magnitude of the received phasor is the received power in watts.

Each specular entry combines the square root of the unity-gain receive
aperture, lambda / sqrt(4*pi), spherical spreading 1 / (sqrt(4*pi) * d),
the reflection gain of the surface, and the propagation phase
exp(-j * 2*pi * d / lambda), with d the distance from the image-source
element to the receiver. Diffuse scattering follows the bistatic radar
equation: the transmit-side factor omits the aperture term (its squared
magnitude is a power density at the scatterer), the scatterer
contributes sqrt(RCS) and a random phase, and the scatterer-to-receiver
factor again carries the aperture term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ImageSource, as_point
from .stochastic import RngSeed, ScattererField

SPEED_OF_LIGHT = 299792458.0

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True, eq=False)
class ChannelVector:
    """Length-L complex channel of one propagation mechanism."""

    entries: np.ndarray
    source_index: int | None = None

    def __post_init__(self) -> None:
        h = np.asarray(self.entries, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(h.view(float))):
            raise ValueError("channel entries must be finite")
        object.__setattr__(self, "entries", h)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True, eq=False)
class TransmitSignal:
    """Per-element transmit power waves, units sqrt(watt)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.entries, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(s.view(float))):
            raise ValueError("transmit signal must be finite")
        object.__setattr__(self, "entries", s)

    @property
    def power(self) -> float:
        """Total radiated power ||s||^2 in watts."""
        return float(np.vdot(self.entries, self.entries).real)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ReceivePhasor:
    """Complex baseband receive amplitude, units sqrt(watt)."""

    value: complex

    @property
    def power(self) -> float:
        return abs(self.value) ** 2


@dataclass(frozen=True)
class NoiseSpec:
    """Complex AWGN variance at the receiver, watts."""

    variance: float = 0.0

    def __post_init__(self) -> None:
        if self.variance < 0.0:
            raise ValueError("noise variance must be nonnegative")


def _distances(from_positions: np.ndarray, to_point: np.ndarray) -> np.ndarray:
    d = np.linalg.norm(from_positions - to_point, axis=-1)
    if np.any(d == 0.0):
        raise ValueError("zero propagation distance: singular spherical spreading")
    return d


def smc_channel_vector(image: ImageSource, device_position, wavelength: float) -> ChannelVector:
    """Specular channel from one image source to a receiver position."""

    p = as_point(device_position)
    d = _distances(image.element_positions, p)
    entries = (
        wavelength
        / (FOUR_PI * d)
        * image.reflection_gain
        * np.exp(-2j * np.pi * d / wavelength)
    )
    return ChannelVector(entries, source_index=image.index)


def smc_channel_matrix(image: ImageSource, points: np.ndarray, wavelength: float) -> np.ndarray:
    """Vectorized specular channel at many receiver points, shape (n, L)."""

    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    d = np.linalg.norm(pts[:, None, :] - image.element_positions[None, :, :], axis=2)
    if np.any(d == 0.0):
        raise ValueError("zero propagation distance: singular spherical spreading")
    return wavelength / (FOUR_PI * d) * image.reflection_gain * np.exp(-2j * np.pi / wavelength * d)


def tx_scatter_matrix(image: ImageSource, field: ScattererField, wavelength: float) -> np.ndarray:
    """Channel from one image source to all scatterers, shape (N_sc, L).

    Entries have units 1/m; their squared product with the transmit
    waves is the power density arriving at each scatterer.
    """

    if field.count == 0:
        return np.zeros((0, image.num_elements), dtype=complex)
    d = np.linalg.norm(field.positions[:, None, :] - image.element_positions[None, :, :], axis=2)
    if np.any(d == 0.0):
        raise ValueError("scatterer coincides with an array element")
    return (
        1.0
        / (np.sqrt(FOUR_PI) * d)
        * image.reflection_gain
        * np.exp(-2j * np.pi / wavelength * d)
    )


def rx_scatter_vector(field: ScattererField, device_position, wavelength: float) -> np.ndarray:
    """Channel from each scatterer to the receiver, shape (N_sc,), dimensionless."""

    if field.count == 0:
        return np.zeros(0, dtype=complex)
    p = as_point(device_position)
    d = _distances(field.positions, p)
    return wavelength / (FOUR_PI * d) * np.exp(-2j * np.pi / wavelength * d)


def rx_scatter_matrix(field: ScattererField, points: np.ndarray, wavelength: float) -> np.ndarray:
    """Vectorized scatterer-to-receiver channel at many points, shape (n, N_sc)."""

    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if field.count == 0:
        return np.zeros((len(pts), 0), dtype=complex)
    d = np.linalg.norm(pts[:, None, :] - field.positions[None, :, :], axis=2)
    if np.any(d == 0.0):
        raise ValueError("evaluation point coincides with a scatterer")
    return wavelength / (FOUR_PI * d) * np.exp(-2j * np.pi / wavelength * d)


def scatter_diagonal(field: ScattererField) -> np.ndarray:
    """Per-scatterer rescattering coefficients sqrt(RCS) * exp(j*phase)."""

    return np.sqrt(field.rcs) * np.exp(1j * field.phases)


def scatter_channel_vector(
    image: ImageSource,
    field: ScattererField,
    device_position,
    wavelength: float,
) -> ChannelVector:
    """Diffuse channel of one image source: rx^T diag(sqrt(RCS) e^{j phi}) Htx."""

    if field.count == 0:
        return ChannelVector(np.zeros(image.num_elements, dtype=complex), source_index=image.index)
    h_rx = rx_scatter_vector(field, device_position, wavelength)
    h_tx = tx_scatter_matrix(image, field, wavelength)
    entries = (h_rx * scatter_diagonal(field)) @ h_tx
    return ChannelVector(entries, source_index=image.index)


def receive_phasor(
    smc_channels: list[ChannelVector],
    scatter_channels: list[ChannelVector],
    signal: TransmitSignal,
    noise: NoiseSpec = NoiseSpec(0.0),
    seed: RngSeed | None = None,
) -> ReceivePhasor:
    """Superpose all propagation mechanisms at the receiver, plus AWGN.

    With zero noise variance the result is deterministic; a nonzero
    variance requires an explicit seed on the "noise" stream.
    """

    length = len(signal)
    y = 0.0 + 0.0j
    for vec in list(smc_channels) + list(scatter_channels):
        if len(vec) != length:
            raise ValueError("channel and signal lengths differ")
        y += np.dot(vec.entries, signal.entries)
    if noise.variance > 0.0:
        if seed is None:
            raise ValueError("drawing noise requires a seed")
        rng = seed.generator()
        scale = np.sqrt(noise.variance / 2.0)
        y += complex(rng.normal(0.0, scale) + 1j * rng.normal(0.0, scale))
    return ReceivePhasor(complex(y))
