"""Scale-aware 3D primitives: points, lines, planes, spheres, circles.

Points are plain ``numpy`` arrays of shape ``(3,)``; :func:`vec3` builds a
read-only one.  The composite types are frozen dataclasses whose array
fields are also made read-only, so every value is safe to share.

Every predicate compares against a :class:`Tolerance`, i.e. a relative
epsilon times a characteristic length of the configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import CollinearPoints, CoplanarPoints, GeometryError, ParallelPlanes

__all__ = [
    "Vec3",
    "vec3",
    "Tolerance",
    "Line3",
    "Plane",
    "Sphere",
    "Circle3",
    "AtInfinity",
    "reflect_point_plane",
    "project_point_plane",
    "reflect_point_line",
    "project_point_line",
    "distance_point_line",
    "plane_through",
    "circle_through",
    "circumsphere4",
    "line_sphere_intersection",
    "plane_plane_intersection",
    "max_pairwise_distance",
]

Vec3 = np.ndarray
VecLike = Union[np.ndarray, Sequence[float]]


def vec3(*xyz) -> Vec3:
    """Read-only float64 point from ``vec3(x, y, z)`` or ``vec3(seq)``."""
    if len(xyz) == 1:
        xyz = xyz[0]
    v = np.array(xyz, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite coordinates: {v}")
    v.setflags(write=False)
    return v


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _unit(v: np.ndarray, what: str = "vector") -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n == 0.0 or not math.isfinite(n):
        raise GeometryError(f"cannot normalize zero {what}")
    return v / n


@dataclass(frozen=True)
class Tolerance:
    """Relative epsilon plus the length it is relative to.

    ``atol`` is the absolute positional tolerance ``eps_rel * length_scale``.
    """

    eps_rel: float = 1e-9
    length_scale: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.eps_rel <= 1e-3):
            raise ValueError(f"eps_rel must lie in (0, 1e-3], got {self.eps_rel}")
        if not self.length_scale > 0.0:
            raise ValueError(f"length_scale must be positive, got {self.length_scale}")

    @property
    def atol(self) -> float:
        return self.eps_rel * self.length_scale

    def scaled(self, length_scale: float) -> "Tolerance":
        return Tolerance(self.eps_rel, length_scale)


@dataclass(frozen=True)
class Line3:
    point: Vec3
    direction: Vec3

    def __post_init__(self):
        object.__setattr__(self, "point", vec3(self.point))
        object.__setattr__(self, "direction", _frozen(_unit(np.asarray(self.direction, float), "direction")))

    @classmethod
    def through(cls, p0: VecLike, p1: VecLike) -> "Line3":
        p0 = np.asarray(p0, float)
        return cls(p0, np.asarray(p1, float) - p0)

    def at(self, s: float) -> Vec3:
        return self.point + s * self.direction


@dataclass(frozen=True)
class Plane:
    """The set ``{x : normal . x = offset}``.

    A non-unit ``normal`` is accepted and normalized; ``offset`` is divided
    by the same factor, so ``Plane((1, 1, 1), 1)`` is the plane x+y+z=1.
    """

    normal: Vec3
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, float)
        k = float(np.linalg.norm(n))
        if k == 0.0:
            raise GeometryError("plane normal must be nonzero")
        object.__setattr__(self, "normal", _frozen(n / k))
        object.__setattr__(self, "offset", float(self.offset) / k)

    @classmethod
    def from_equation(cls, a: float, b: float, c: float, d: float) -> "Plane":
        """Plane ``a x + b y + c z + d = 0``."""
        return cls((a, b, c), -d)

    @classmethod
    def from_point_normal(cls, point: VecLike, normal: VecLike) -> "Plane":
        n = _unit(np.asarray(normal, float), "normal")
        return cls(n, float(n @ np.asarray(point, float)))

    def signed_distance(self, p: VecLike) -> float:
        return float(self.normal @ np.asarray(p, float) - self.offset)

    def contains(self, p: VecLike, tol: Tolerance) -> bool:
        return abs(self.signed_distance(p)) <= tol.atol

    def flipped(self) -> "Plane":
        return Plane(-self.normal, -self.offset)


@dataclass(frozen=True)
class Sphere:
    center: Vec3
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", vec3(self.center))
        if not self.radius > 0.0:
            raise GeometryError(f"sphere radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    def radial_residual(self, p: VecLike) -> float:
        return abs(float(np.linalg.norm(np.asarray(p, float) - self.center)) - self.radius)


@dataclass(frozen=True)
class Circle3:
    center: Vec3
    radius: float
    normal: Vec3

    def __post_init__(self):
        object.__setattr__(self, "center", vec3(self.center))
        if not self.radius > 0.0:
            raise GeometryError(f"circle radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "normal", _frozen(_unit(np.asarray(self.normal, float), "normal")))

    @property
    def plane(self) -> Plane:
        return Plane.from_point_normal(self.center, self.normal)

    def point_at(self, angle: float) -> Vec3:
        u = _any_perpendicular(self.normal)
        w = np.cross(self.normal, u)
        return self.center + self.radius * (math.cos(angle) * u + math.sin(angle) * w)


@dataclass(frozen=True)
class AtInfinity:
    """A point at infinity, given by its unit direction."""

    direction: Vec3 = field(default_factory=lambda: vec3(0, 0, 1))

    def __post_init__(self):
        object.__setattr__(self, "direction", _frozen(_unit(np.asarray(self.direction, float), "direction")))


def _any_perpendicular(n: np.ndarray) -> np.ndarray:
    k = int(np.argmin(np.abs(n)))
    e = np.zeros(3)
    e[k] = 1.0
    return _unit(np.cross(n, e))


def max_pairwise_distance(points) -> float:
    pts = np.asarray(points, float)
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


def reflect_point_plane(p: VecLike, pl: Plane) -> Vec3:
    p = np.asarray(p, float)
    return p - 2.0 * pl.signed_distance(p) * pl.normal


def project_point_plane(p: VecLike, pl: Plane) -> Vec3:
    p = np.asarray(p, float)
    return p - pl.signed_distance(p) * pl.normal


def project_point_line(p: VecLike, line: Line3) -> Vec3:
    p = np.asarray(p, float)
    return line.point + ((p - line.point) @ line.direction) * line.direction


def distance_point_line(p: VecLike, line: Line3) -> float:
    p = np.asarray(p, float)
    return float(np.linalg.norm(p - project_point_line(p, line)))


def reflect_point_line(p: VecLike, line: Line3) -> Vec3:
    """Half-turn of ``p`` about ``line``."""
    p = np.asarray(p, float)
    return 2.0 * project_point_line(p, line) - p


def _check_not_collinear(p0, p1, p2, tol: Tolerance | None):
    L = max_pairwise_distance([p0, p1, p2])
    if L == 0.0:
        raise CollinearPoints("points coincide")
    eps = (tol or Tolerance()).eps_rel
    n = np.cross(p1 - p0, p2 - p0)
    if float(np.linalg.norm(n)) <= eps * L * L:
        raise CollinearPoints("points are collinear")
    return n


def plane_through(p0: VecLike, p1: VecLike, p2: VecLike, tol: Tolerance | None = None) -> Plane:
    """Plane through three points, normal oriented by (p1-p0) x (p2-p0)."""
    p0, p1, p2 = (np.asarray(p, float) for p in (p0, p1, p2))
    n = _check_not_collinear(p0, p1, p2, tol)
    return Plane.from_point_normal(p0, n)


def circle_through(p0: VecLike, p1: VecLike, p2: VecLike, tol: Tolerance | None = None) -> Circle3:
    p0, p1, p2 = (np.asarray(p, float) for p in (p0, p1, p2))
    n = _check_not_collinear(p0, p1, p2, tol)
    u, v = p1 - p0, p2 - p0
    nn = n @ n
    # circumcenter of a triangle in 3D, relative to p0
    c = ((u @ u) * np.cross(v, n) + (v @ v) * np.cross(n, u)) / (2.0 * nn)
    center = p0 + c
    radius = float(np.mean([np.linalg.norm(p - center) for p in (p0, p1, p2)]))
    return Circle3(center, radius, n)


def circumsphere4(p0: VecLike, p1: VecLike, p2: VecLike, p3: VecLike, tol: Tolerance | None = None) -> Sphere:
    """Sphere through four points.

    Raises :class:`CoplanarPoints` when ``|det| < eps_rel * L**3`` for the
    edge matrix ``[p1-p0, p2-p0, p3-p0]`` and ``L`` the largest pairwise
    distance.
    """
    from ._core import kernels

    pts = np.array([p0, p1, p2, p3], dtype=float)
    eps = (tol or Tolerance()).eps_rel
    center, ok = kernels.circumcenter4(pts, eps)
    if not ok:
        raise CoplanarPoints("points are (nearly) coplanar")
    radius = float(np.mean(np.linalg.norm(pts - center, axis=1)))
    return Sphere(center, radius)


def line_sphere_intersection(line: Line3, s: Sphere, tol: Tolerance | None = None) -> list[Vec3]:
    """Zero, one (tangency) or two intersection points, ordered along the line."""
    tol = tol or Tolerance(length_scale=s.radius)
    foot = project_point_line(s.center, line)
    h = float(np.linalg.norm(foot - s.center))
    if h > s.radius + tol.atol:
        return []
    if abs(h - s.radius) <= tol.atol:
        return [vec3(foot)]
    half = math.sqrt(max(s.radius * s.radius - h * h, 0.0))
    return [vec3(foot - half * line.direction), vec3(foot + half * line.direction)]


def plane_plane_intersection(p1: Plane, p2: Plane, tol: Tolerance | None = None) -> Line3:
    eps = (tol or Tolerance()).eps_rel
    d = np.cross(p1.normal, p2.normal)
    dn = float(np.linalg.norm(d))
    if dn <= eps:
        raise ParallelPlanes("planes are parallel")
    # point closest to the origin on both planes
    point = (p1.offset * np.cross(p2.normal, d) + p2.offset * np.cross(d, p1.normal)) / (dn * dn)
    return Line3(point, d)
