"""Tetrahedron model, isosceles checks and the canonical embedding.

An isosceles tetrahedron with parameters ``(a, b, c)`` sits in canonical
position as

    A = (-a, b, c),  B = (a, -b, c),  C = (a, b, -c),  D = (-a, -b, -c)

with its circumcenter at the origin and its bimedians along the axes.
:func:`fit_canonical_frame` recovers ``(a, b, c)`` and the rigid motion
for a tetrahedron given in arbitrary position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from ._core import kernels
from .errors import CoplanarPoints, DegenerateParams, DegenerateTetrahedron, NotIsosceles, ZeroParameter
from .geom3 import Line3, Plane, Tolerance, Vec3, _frozen, circumsphere4, vec3

__all__ = [
    "LABELS",
    "EDGE_LABELS",
    "Tetrahedron",
    "IsoscelesParams",
    "IsoscelesQuantities",
    "CanonicalFrame",
    "canonical_embedding",
    "is_isosceles",
    "fit_canonical_frame",
    "quantities",
    "circumcenter",
    "incenter",
    "faces_congruent",
    "faces_acute",
    "bimedian",
]

LABELS = "ABCD"
EDGE_LABELS = ("AB", "AC", "AD", "BC", "BD", "CD")
Axis = Literal["A", "B", "C"]

# bimedian axis -> (edge whose midpoint is the tail, edge whose midpoint is the head)
_BIMEDIAN_EDGES = {"A": ("DA", "BC"), "B": ("DB", "AC"), "C": ("DC", "AB")}

# coplanarity threshold on |det| / L**3 for a valid tetrahedron
_VOLUME_EPS = 1e-9


def _index(label: str) -> int:
    try:
        return LABELS.index(label)
    except ValueError:
        raise KeyError(f"unknown vertex label {label!r}") from None


@dataclass(frozen=True)
class Tetrahedron:
    """Four labeled vertices A, B, C, D stored as a read-only ``(4, 3)`` array."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(4, 3)
        if not np.all(np.isfinite(v)):
            raise DegenerateTetrahedron("non-finite vertex coordinates")
        L = _max_edge(v)
        if L == 0.0 or abs(np.linalg.det(v[1:] - v[0])) < _VOLUME_EPS * L ** 3:
            raise DegenerateTetrahedron("vertices are (nearly) coplanar")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, A, B, C, D) -> "Tetrahedron":
        return cls(np.array([A, B, C, D], dtype=float))

    def __getitem__(self, label: str) -> Vec3:
        return self.vertices[_index(label)]

    A = property(lambda self: self.vertices[0])
    B = property(lambda self: self.vertices[1])
    C = property(lambda self: self.vertices[2])
    D = property(lambda self: self.vertices[3])

    def edge_length(self, edge: str) -> float:
        return float(np.linalg.norm(self[edge[0]] - self[edge[1]]))

    def edge_line(self, edge: str) -> Line3:
        return Line3.through(self[edge[0]], self[edge[1]])

    def midpoint(self, edge: str) -> Vec3:
        return 0.5 * (self[edge[0]] + self[edge[1]])

    def face_plane(self, opposite: str) -> Plane:
        """Faceplane opposite the given vertex, normal pointing outward."""
        normals, offsets = kernels.face_planes(self.vertices)
        i = _index(opposite)
        return Plane(normals[i], offsets[i])

    def face_planes(self) -> list[Plane]:
        normals, offsets = kernels.face_planes(self.vertices)
        return [Plane(n, h) for n, h in zip(normals, offsets)]

    def face_vertices(self, opposite: str) -> np.ndarray:
        i = _index(opposite)
        return self.vertices[[k for k in range(4) if k != i]]

    def face_area(self, opposite: str) -> float:
        p, q, r = self.face_vertices(opposite)
        return 0.5 * float(np.linalg.norm(np.cross(q - p, r - p)))

    @property
    def volume(self) -> float:
        v = self.vertices
        return abs(float(np.linalg.det(v[1:] - v[0]))) / 6.0

    @property
    def max_edge(self) -> float:
        return _max_edge(self.vertices)

    @cached_property
    def circumsphere(self):
        return circumsphere4(*self.vertices)

    @property
    def circumradius(self) -> float:
        return self.circumsphere.radius

    def default_tolerance(self, eps_rel: float = 1e-9) -> Tolerance:
        return Tolerance(eps_rel, self.circumradius)

    def transformed(self, rotation, translation) -> "Tetrahedron":
        R = np.asarray(rotation, float)
        return Tetrahedron(self.vertices @ R.T + np.asarray(translation, float))


def _max_edge(v: np.ndarray) -> float:
    diff = v[:, None, :] - v[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


@dataclass(frozen=True)
class IsoscelesParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in "abc":
            val = float(getattr(self, name))
            if val == 0.0 or not math.isfinite(val):
                raise ZeroParameter(f"parameter {name} must be finite and nonzero, got {val}")
            object.__setattr__(self, name, val)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def circumradius(self) -> float:
        return math.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2)


@dataclass(frozen=True)
class IsoscelesQuantities:
    S: float
    d: float
    sin_theta: float
    R: float


@dataclass(frozen=True)
class CanonicalFrame:
    """World coordinates are ``rotation @ canonical + translation``."""

    params: IsoscelesParams
    rotation: np.ndarray
    translation: Vec3

    def __post_init__(self):
        object.__setattr__(self, "rotation", _frozen(np.asarray(self.rotation, float).reshape(3, 3)))
        object.__setattr__(self, "translation", vec3(self.translation))

    @classmethod
    def identity(cls, params) -> "CanonicalFrame":
        if not isinstance(params, IsoscelesParams):
            params = IsoscelesParams(*params)
        return cls(params, np.eye(3), (0.0, 0.0, 0.0))

    def to_world(self, p) -> np.ndarray:
        return np.asarray(p, float) @ self.rotation.T + self.translation

    def to_canonical(self, p) -> np.ndarray:
        return (np.asarray(p, float) - self.translation) @ self.rotation

    def tetrahedron(self) -> Tetrahedron:
        return Tetrahedron(self.to_world(canonical_embedding(self.params).vertices))


def canonical_embedding(params) -> Tetrahedron:
    if not isinstance(params, IsoscelesParams):
        params = IsoscelesParams(*params)
    a, b, c = params
    return Tetrahedron(np.array([(-a, b, c), (a, -b, c), (a, b, -c), (-a, -b, -c)]))


def _edge_mismatch(t: Tetrahedron) -> float:
    return max(
        abs(t.edge_length("AB") - t.edge_length("CD")),
        abs(t.edge_length("BC") - t.edge_length("AD")),
        abs(t.edge_length("AC") - t.edge_length("BD")),
    )


def is_isosceles(t: Tetrahedron, tol: Tolerance | None = None) -> bool:
    """True when the three pairs of opposite edges are equal within tolerance."""
    tol = tol or t.default_tolerance()
    return _edge_mismatch(t) <= tol.atol


def fit_canonical_frame(t: Tetrahedron, tol: Tolerance | None = None) -> CanonicalFrame:
    """Recover the parameters and rigid motion placing ``t`` canonically.

    Vertex labels are preserved: axis x runs along bimedian A (from the
    midpoint of DA to that of BC), y along bimedian B, z along bimedian C.
    ``a`` and ``b`` come out positive and the sign of ``c`` is chosen so
    the rotation is proper.
    """
    tol = tol or t.default_tolerance()
    if not is_isosceles(t, tol):
        raise NotIsosceles(f"opposite edges differ by {_edge_mismatch(t):.3g}")
    # average opposite-edge pairs so slight asymmetry does not bias the fit
    AB2 = 0.5 * (t.edge_length("AB") ** 2 + t.edge_length("CD") ** 2)
    AC2 = 0.5 * (t.edge_length("AC") ** 2 + t.edge_length("BD") ** 2)
    BC2 = 0.5 * (t.edge_length("BC") ** 2 + t.edge_length("AD") ** 2)
    a2 = (AB2 + AC2 - BC2) / 8.0
    b2 = (AB2 + BC2 - AC2) / 8.0
    c2 = (AC2 + BC2 - AB2) / 8.0
    floor = tol.eps_rel * tol.length_scale ** 2
    if min(a2, b2, c2) <= floor:
        raise DegenerateParams(f"derived squared parameters {(a2, b2, c2)} not positive")

    axes = []
    for axis in "ABC":
        tail, head = _BIMEDIAN_EDGES[axis]
        u = t.midpoint(head) - t.midpoint(tail)
        axes.append(u / np.linalg.norm(u))
    M = np.column_stack(axes)
    s = 1.0 if np.linalg.det(M) > 0 else -1.0
    M[:, 2] *= s
    # nearest proper rotation to the (almost orthonormal) bimedian frame
    U, _, Vt = np.linalg.svd(M)
    R = U @ Vt
    params = IsoscelesParams(math.sqrt(a2), math.sqrt(b2), s * math.sqrt(c2))
    return CanonicalFrame(params, R, t.vertices.mean(axis=0))


def quantities(params) -> IsoscelesQuantities:
    """Face area, center-to-face distance, sine of the half-dihedral at CD, circumradius."""
    if not isinstance(params, IsoscelesParams):
        params = IsoscelesParams(*params)
    a, b, c = params
    S = 2.0 * math.sqrt(a * a * b * b + b * b * c * c + c * c * a * a)
    d = 2.0 * abs(a * b * c) / S
    return IsoscelesQuantities(S=S, d=d, sin_theta=d / abs(c), R=params.circumradius)


def circumcenter(t: Tetrahedron) -> Vec3:
    try:
        return vec3(circumsphere4(*t.vertices).center)
    except CoplanarPoints as exc:
        raise DegenerateTetrahedron(str(exc)) from exc


def incenter(t: Tetrahedron) -> Vec3:
    """Vertex average weighted by the area of the opposite face."""
    w = np.array([t.face_area(v) for v in LABELS])
    if w.sum() <= 0.0:
        raise DegenerateTetrahedron("zero surface area")
    return vec3(w @ t.vertices / w.sum())


def _face_sides(t: Tetrahedron, opposite: str) -> np.ndarray:
    p, q, r = t.face_vertices(opposite)
    return np.sort([np.linalg.norm(q - p), np.linalg.norm(r - q), np.linalg.norm(p - r)])


def face_side_mismatch(t: Tetrahedron) -> float:
    """Largest deviation of any face's sorted side triple from face BCD's."""
    ref = _face_sides(t, "A")
    return max(float(np.abs(_face_sides(t, v) - ref).max()) for v in LABELS[1:])


def faces_congruent(t: Tetrahedron, tol: Tolerance | None = None) -> bool:
    tol = tol or t.default_tolerance()
    return face_side_mismatch(t) <= tol.atol


def face_angles(t: Tetrahedron) -> np.ndarray:
    """The twelve face angles (radians), three per face in face order."""
    out = []
    for v in LABELS:
        pts = t.face_vertices(v)
        for k in range(3):
            p, q, r = pts[k], pts[(k + 1) % 3], pts[(k + 2) % 3]
            u, w = q - p, r - p
            cos = u @ w / (np.linalg.norm(u) * np.linalg.norm(w))
            out.append(math.acos(max(-1.0, min(1.0, cos))))
    return np.array(out)


def faces_acute(t: Tetrahedron, tol: Tolerance | None = None) -> bool:
    """Every face angle strictly acute: each cosine exceeds ``eps_rel``."""
    eps = (tol or Tolerance()).eps_rel
    return bool(np.all(np.cos(face_angles(t)) > eps))


def bimedian(t: Tetrahedron, axis: Axis) -> Line3:
    tail, head = _BIMEDIAN_EDGES[axis]
    return Line3.through(t.midpoint(tail), t.midpoint(head))
