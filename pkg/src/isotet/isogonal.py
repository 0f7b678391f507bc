"""Isogonal conjugation in an arbitrary tetrahedron and pedal spheres.

The conjugate of ``P`` is the circumcenter of its four reflections in the
faceplanes.  An independent check measures, for each of the six edges,
how far the planes through the edge and ``P``/``Q`` are from being mirror
images in the dihedron's bisector plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ._core import kernels
from .errors import CoplanarPoints, DegenerateProjections, PointOnEdgeLine
from .geom3 import AtInfinity, Sphere, Tolerance, Vec3, circumsphere4, distance_point_line, vec3
from .tetra import EDGE_LABELS, LABELS, Tetrahedron

__all__ = [
    "Point",
    "AtInfinity",
    "VertexDegenerate",
    "OnEdgeLine",
    "ConjugateResult",
    "PedalSphere",
    "DEGENERACY_REL",
    "face_reflections",
    "face_projections",
    "isogonal_conjugate",
    "pedal_sphere",
    "dihedral_isogonality_residual",
    "dihedral_residuals",
    "is_isogonal_pair",
]

# P is treated as a vertex / on an edgeline within this fraction of the length scale
DEGENERACY_REL = 1e-7


@dataclass(frozen=True)
class Point:
    point: Vec3


@dataclass(frozen=True)
class VertexDegenerate:
    """P is a vertex; every point of the opposite faceplane is a conjugate."""

    vertex: str


@dataclass(frozen=True)
class OnEdgeLine:
    """P is on an edgeline; every point of the opposite edgeline is a conjugate."""

    edge: str


ConjugateResult = Union[Point, AtInfinity, VertexDegenerate, OnEdgeLine]


@dataclass(frozen=True)
class PedalSphere:
    sphere: Sphere
    foot_points: np.ndarray  # (4, 3) projections on BCD, ACD, ABD, ABC


def _tol(t: Tetrahedron, tol: Tolerance | None) -> Tolerance:
    return tol or t.default_tolerance()


def face_reflections(t: Tetrahedron, P) -> np.ndarray:
    """Reflections of ``P`` in the faces opposite A, B, C, D (rows in that order)."""
    return kernels.reflect_faces(t.vertices, np.asarray(P, float))


def face_projections(t: Tetrahedron, P) -> np.ndarray:
    return kernels.project_faces(t.vertices, np.asarray(P, float))


def _degenerate_position(t: Tetrahedron, P, tol: Tolerance):
    lim = DEGENERACY_REL * tol.length_scale
    for label, V in zip(LABELS, t.vertices):
        if np.linalg.norm(P - V) < lim:
            return VertexDegenerate(label)
    for edge in EDGE_LABELS:
        if distance_point_line(P, t.edge_line(edge)) < lim:
            return OnEdgeLine(edge)
    return None


def isogonal_conjugate(t: Tetrahedron, P, tol: Tolerance | None = None) -> ConjugateResult:
    """Isogonal conjugate of ``P`` with respect to ``t``.

    Returns :class:`Point` in the generic case, :class:`AtInfinity` when the
    four face reflections are coplanar (the direction is their best-fit plane
    normal), and :class:`VertexDegenerate` / :class:`OnEdgeLine` when ``P``
    sits where the conjugate is a whole plane or line.
    """
    tol = _tol(t, tol)
    P = np.asarray(P, float)
    degenerate = _degenerate_position(t, P, tol)
    if degenerate is not None:
        return degenerate
    q, ok = kernels.conjugate(t.vertices, P, tol.eps_rel)
    if ok:
        return Point(vec3(q))
    refl = face_reflections(t, P)
    centered = refl - refl.mean(axis=0)
    normal = np.linalg.svd(centered)[2][-1]
    return AtInfinity(normal)


def pedal_sphere(t: Tetrahedron, P, tol: Tolerance | None = None) -> PedalSphere:
    """Sphere through the four face projections of ``P``."""
    feet = face_projections(t, P)
    try:
        sphere = circumsphere4(*feet, tol=_tol(t, tol))
    except CoplanarPoints as exc:
        raise DegenerateProjections(str(exc)) from exc
    feet.setflags(write=False)
    return PedalSphere(sphere, feet)


def dihedral_residuals(t: Tetrahedron, P, Q, tol: Tolerance | None = None) -> np.ndarray:
    """Isogonality residuals (radians) for edges AB, AC, AD, BC, BD, CD.

    NaN marks edges whose edgeline carries ``P`` or ``Q``; there any plane
    through the edge is admissible.
    """
    lim = DEGENERACY_REL * _tol(t, tol).length_scale
    return kernels.dihedral_residuals(t.vertices, np.asarray(P, float), np.asarray(Q, float), lim)


def dihedral_isogonality_residual(t: Tetrahedron, edge: str, P, Q, tol: Tolerance | None = None) -> float:
    edge = "".join(sorted(edge))
    if edge not in EDGE_LABELS:
        raise KeyError(f"unknown edge {edge!r}")
    value = dihedral_residuals(t, P, Q, tol)[EDGE_LABELS.index(edge)]
    if np.isnan(value):
        raise PointOnEdgeLine(f"point lies on edgeline {edge}")
    return float(value)


def is_isogonal_pair(t: Tetrahedron, P, Q, tol: Tolerance | None = None, ang_tol: float = 1e-8) -> bool:
    """Whether ``P`` and ``Q`` lie in isogonal planes for all six dihedra.

    Edges whose line carries ``P`` or ``Q`` are skipped, which covers the
    vertex / opposite-faceplane and opposite-edgeline degenerate pairs.
    """
    res = dihedral_residuals(t, P, Q, tol)
    return bool(np.all(np.isnan(res) | (res <= ang_tol)))
