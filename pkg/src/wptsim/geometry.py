"""Room geometry, transmit-array lattice, and first-order image sources.

Positions are plain numpy arrays of shape (3,), in meters. Reflecting
surfaces are infinite planes in Hessian normal form; mirroring the
transmit array across each plane yields one image source per plane,
plus the line-of-sight "image" that is the physical array itself.

Example:
    >>> import numpy as np
    >>> from wptsim.geometry import ReflectingPlane, mirror_point
    >>> wall = ReflectingPlane(anchor=[0.0, 9.0, 0.0], normal=[0.0, 1.0, 0.0])
    >>> mirror_point([5.0, 0.0, 1.0], wall)
    array([ 5., 18.,  1.])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

Point3 = NDArray[np.float64]

UNIT_TOL = 1e-12
DEGENERATE_PLANE_TOL = 1e-9


def point3(x: float, y: float, z: float) -> Point3:
    return as_point((x, y, z))


def as_point(value) -> Point3:
    """Coerce to a finite 3-vector (meters)."""

    p = np.asarray(value, dtype=float)
    if p.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("position components must be finite")
    return p


@dataclass(frozen=True, eq=False)
class ReflectingPlane:
    """Infinite planar reflector with a complex amplitude reflection gain.

    The gain multiplies the reflected power wave; passive surfaces have
    magnitude at most 1. The normal orientation is irrelevant for
    mirroring.
    """

    anchor: Point3
    normal: Point3
    reflection_gain: complex = 1.0 + 0.0j
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "anchor", as_point(self.anchor))
        n = as_point(self.normal)
        if abs(float(np.linalg.norm(n)) - 1.0) > UNIT_TOL:
            raise ValueError("plane normal must be unit length")
        object.__setattr__(self, "normal", n)
        g = complex(self.reflection_gain)
        if abs(g) > 1.0 + UNIT_TOL:
            raise ValueError("|reflection_gain| must not exceed 1 (passive surface)")
        object.__setattr__(self, "reflection_gain", g)

    def signed_distance(self, p) -> float:
        return float(np.dot(as_point(p) - self.anchor, self.normal))


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Uniform rectangular transmit array.

    The element lattice lies in the plane spanned by ``x_axis`` and
    ``z_axis`` (defaults: global x and z, i.e. the array radiates along
    +/-y), is center-symmetric about ``center``, and has ``n_x * n_z``
    elements at the given spacing.
    """

    center: Point3
    n_x: int
    n_z: int
    spacing: float
    wavelength: float
    x_axis: Point3 = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    z_axis: Point3 = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_point(self.center))
        if int(self.n_x) < 1 or int(self.n_z) < 1:
            raise ValueError("element counts must be positive")
        object.__setattr__(self, "n_x", int(self.n_x))
        object.__setattr__(self, "n_z", int(self.n_z))
        if not (self.spacing > 0.0):
            raise ValueError("element spacing must be positive")
        if not (self.wavelength > 0.0):
            raise ValueError("wavelength must be positive")
        for attr in ("x_axis", "z_axis"):
            a = as_point(getattr(self, attr))
            if abs(float(np.linalg.norm(a)) - 1.0) > UNIT_TOL:
                raise ValueError(f"{attr} must be unit length")
            object.__setattr__(self, attr, a)
        if abs(float(np.dot(self.x_axis, self.z_axis))) > UNIT_TOL:
            raise ValueError("lattice axes must be orthogonal")

    @property
    def num_elements(self) -> int:
        return self.n_x * self.n_z

    @property
    def width(self) -> float:
        """Physical extent along x_axis, (n_x - 1) * spacing."""
        return (self.n_x - 1) * self.spacing

    @property
    def height(self) -> float:
        return (self.n_z - 1) * self.spacing


@dataclass(frozen=True, eq=False)
class ImageSource:
    """One mirrored copy of the transmit array (or the array itself).

    ``element_positions`` has shape (L, 3). The line-of-sight source
    carries unit gain and the physical element positions.
    """

    index: int
    element_positions: np.ndarray
    reflection_gain: complex
    is_los: bool
    name: str = ""

    def __post_init__(self) -> None:
        pos = np.asarray(self.element_positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise ValueError("element_positions must have shape (L, 3)")
        if not np.all(np.isfinite(pos)):
            raise ValueError("element positions must be finite")
        object.__setattr__(self, "element_positions", pos)
        g = complex(self.reflection_gain)
        if self.is_los and g != 1.0 + 0.0j:
            raise ValueError("line-of-sight source must have unit gain")
        object.__setattr__(self, "reflection_gain", g)

    @property
    def num_elements(self) -> int:
        return self.element_positions.shape[0]


def mirror_point(p, plane: ReflectingPlane) -> Point3:
    """Reflect a point across a plane. Involution: mirroring twice is identity."""

    q = as_point(p)
    return q - 2.0 * plane.signed_distance(q) * plane.normal


def mirror_points(points: np.ndarray, plane: ReflectingPlane) -> np.ndarray:
    """Reflect an (N, 3) stack of points across a plane."""

    pts = np.asarray(points, dtype=float)
    dist = (pts - plane.anchor) @ plane.normal
    return pts - 2.0 * dist[:, None] * plane.normal


def element_positions(array: ArrayGeometry) -> np.ndarray:
    """Element lattice as an (L, 3) array, x index varying slowest.

    The lattice is center-symmetric: the mean of all positions equals
    the array center.
    """

    ix = np.arange(array.n_x) - (array.n_x - 1) / 2.0
    iz = np.arange(array.n_z) - (array.n_z - 1) / 2.0
    ox, oz = np.meshgrid(ix, iz, indexing="ij")
    offsets = ox.reshape(-1, 1) * array.x_axis + oz.reshape(-1, 1) * array.z_axis
    return array.center + array.spacing * offsets


def build_image_sources(
    array: ArrayGeometry,
    planes: Sequence[ReflectingPlane],
    degeneracy_tol: float = DEGENERATE_PLANE_TOL,
) -> list[ImageSource]:
    """First-order image sources: the physical array plus one mirror per plane.

    Index 0 is the line-of-sight source. A plane passing through the
    array center would mirror the array onto itself and is rejected.
    """

    physical = element_positions(array)
    sources = [
        ImageSource(
            index=0,
            element_positions=physical,
            reflection_gain=1.0 + 0.0j,
            is_los=True,
            name="los",
        )
    ]
    for k, plane in enumerate(planes, start=1):
        if abs(plane.signed_distance(array.center)) < degeneracy_tol:
            label = plane.name or f"plane {k - 1}"
            raise ValueError(
                f"reflecting plane {label!r} passes through the array center; "
                "its image source would coincide with the array"
            )
        sources.append(
            ImageSource(
                index=k,
                element_positions=mirror_points(physical, plane),
                reflection_gain=plane.reflection_gain,
                is_los=False,
                name=f"image-{plane.name}" if plane.name else f"image-{k}",
            )
        )
    return sources


def room_planes(
    x_extent: tuple[float, float],
    y_extent: tuple[float, float],
    z_extent: tuple[float, float],
    wall_gain: complex,
    floor_gain: complex,
    ceiling_gain: complex | None = None,
) -> list[ReflectingPlane]:
    """Axis-aligned box reflectors: four walls and the floor.

    The ceiling is included only when a gain is supplied for it.
    """

    (x0, x1), (y0, y1), (z0, z1) = x_extent, y_extent, z_extent
    if not (x0 < x1 and y0 < y1 and z0 < z1):
        raise ValueError("room extents must have positive size")
    ex = np.array([1.0, 0.0, 0.0])
    ey = np.array([0.0, 1.0, 0.0])
    ez = np.array([0.0, 0.0, 1.0])
    planes = [
        ReflectingPlane(point3(x0, 0.0, 0.0), ex, wall_gain, name="wall_x_min"),
        ReflectingPlane(point3(x1, 0.0, 0.0), ex, wall_gain, name="wall_x_max"),
        ReflectingPlane(point3(0.0, y0, 0.0), ey, wall_gain, name="wall_y_min"),
        ReflectingPlane(point3(0.0, y1, 0.0), ey, wall_gain, name="wall_y_max"),
        ReflectingPlane(point3(0.0, 0.0, z0), ez, floor_gain, name="floor"),
    ]
    if ceiling_gain is not None:
        planes.append(ReflectingPlane(point3(0.0, 0.0, z1), ez, ceiling_gain, name="ceiling"))
    return planes
