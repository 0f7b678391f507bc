"""Hyperbolic paraboloids of isogonal pairs symmetric in a bimedian, the
tangency criterion for circles on the circumsphere, and the construction
of conjugates on the circumsphere from second circle intersections.

All formulas live in the canonical frame of an isosceles tetrahedron
(see :mod:`isotet.tetra`); world-space inputs are mapped there through a
:class:`~isotet.tetra.CanonicalFrame`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import DegenerateSection, NotOnSphere, NotOnSurface, NotThroughX, VertexInput
from .geom3 import (
    Circle3,
    Line3,
    Sphere,
    Tolerance,
    Vec3,
    circle_through,
    plane_plane_intersection,
    project_point_line,
    project_point_plane,
    reflect_point_line,
    vec3,
)
from .tetra import (
    CanonicalFrame,
    IsoscelesParams,
    Tetrahedron,
    bimedian,
    canonical_embedding,
    quantities,
)

__all__ = [
    "HyperbolicParaboloid",
    "EllipseSection",
    "Tangent",
    "hpar",
    "hpar_residual",
    "conjugate_pair_on_hpar",
    "section_ellipses",
    "pedal_distance_identity",
    "pedal_distance_closed_form",
    "pedal_distance_scale",
    "equidistant_projection_residual",
    "tangency_det",
    "tangency_det_factored",
    "circles_touch",
    "second_circle_intersection",
    "bogdanov_conjugate",
    "sample_sphere_hpar",
]

Axis = Literal["A", "B", "C"]

# axis -> (index of the "height" coordinate, indices of the two in-plane coordinates)
_AXIS_COORDS = {"A": (0, 1, 2), "B": (1, 2, 0), "C": (2, 0, 1)}

# axis -> (edge pair whose circles through X are intersected, faces of the dihedron at the first edge)
_EDGE_PAIRS = {"A": ("DA", "BC"), "B": ("DB", "CA"), "C": ("DC", "AB")}
_DIHEDRON_FACES = {"A": ("C", "B"), "B": ("C", "A"), "C": ("B", "A")}


def _params(p) -> IsoscelesParams:
    return p if isinstance(p, IsoscelesParams) else IsoscelesParams(*p)


def _frame(frame) -> CanonicalFrame:
    if isinstance(frame, CanonicalFrame):
        return frame
    return CanonicalFrame.identity(frame)


@dataclass(frozen=True)
class HyperbolicParaboloid:
    """Surface ``h = -k * u * v`` in canonical coordinates.

    For axis C, ``(h, u, v) = (z, x, y)`` and ``k = c / (a b)``; axes A and
    B use the cyclic shifts ``x = -(a/(bc)) y z`` and ``y = -(b/(ca)) z x``.
    """

    frame: CanonicalFrame
    axis: Axis
    coefficient: float

    def canonical_height(self, u: float, v: float) -> float:
        return -self.coefficient * u * v

    def canonical_point(self, u: float, v: float) -> np.ndarray:
        h, iu, iv = _AXIS_COORDS[self.axis]
        p = np.empty(3)
        p[h] = self.canonical_height(u, v)
        p[iu] = u
        p[iv] = v
        return p


def hpar(frame, axis: Axis) -> HyperbolicParaboloid:
    frame = _frame(frame)
    a, b, c = frame.params
    k = {"A": a / (b * c), "B": b / (c * a), "C": c / (a * b)}[axis]
    return HyperbolicParaboloid(frame, axis, k)


def _canonical_residual(h: HyperbolicParaboloid, q: np.ndarray) -> float:
    i, j, k = _AXIS_COORDS[h.axis]
    return float(q[i] + h.coefficient * q[j] * q[k])


def hpar_residual(h: HyperbolicParaboloid, p) -> float:
    """``z + (c/(ab)) x y`` (axis C form) at ``p`` in canonical coordinates;
    ``p`` is given in world coordinates."""
    return _canonical_residual(h, h.frame.to_canonical(p))


def _bimedian_world(frame: CanonicalFrame, axis: Axis) -> Line3:
    e = np.zeros(3)
    e[_AXIS_COORDS[axis][0]] = 1.0
    return Line3(frame.translation, frame.rotation @ e)


def conjugate_pair_on_hpar(frame, axis: Axis, p, tol: Tolerance | None = None) -> tuple[Vec3, Vec3]:
    """``p`` and its half-turn about the bimedian; an isogonal pair when ``p``
    lies on the axis's paraboloid."""
    frame = _frame(frame)
    tol = tol or Tolerance(length_scale=frame.params.circumradius)
    h = hpar(frame, axis)
    r = hpar_residual(h, p)
    if abs(r) > tol.atol:
        raise NotOnSurface(f"paraboloid residual {r:.3g} exceeds {tol.atol:.3g}")
    p = vec3(p)
    return p, vec3(reflect_point_line(p, _bimedian_world(frame, axis)))


@dataclass(frozen=True)
class EllipseSection:
    """Section data at height ``z0`` on bimedian C for a pedal sphere of
    radius ``pedal_radius`` centered at (0, 0, z0)."""

    z0: float
    r1: float
    r2: float
    d1: float
    d2: float
    theta: float
    phi: float
    pedal_radius: float
    d: float
    c: float

    @property
    def cos2_theta(self) -> float:
        return math.cos(self.theta) ** 2

    def first_residual(self, x: float, y: float) -> float:
        """Residual of ε1 (from dihedron CD) at canonical ``(x, y, z0)``."""
        s, co = math.sin(self.phi), math.cos(self.phi)
        st = math.sin(self.theta)
        return (x * co - y * s) ** 2 * st * st + (x * s + y * co) ** 2 - self.r1 ** 2

    def second_residual(self, x: float, y: float) -> float:
        """Residual of ε2 (from dihedron AB) at canonical ``(x, y, z0)``."""
        s, co = math.sin(self.phi), math.cos(self.phi)
        st = math.sin(self.theta)
        return (x * co + y * s) ** 2 * st * st + (-x * s + y * co) ** 2 - self.r2 ** 2


def section_ellipses(params, z0: float, pedal_radius: float) -> EllipseSection:
    """Radii, distances and angles for the two elliptic sections at height ``z0``.

    ``d1``/``d2`` are the distances from (0, 0, z0) to faces ACD and ABC;
    ``r1``/``r2`` the radii of the circles the pedal sphere cuts from them.
    """
    params = _params(params)
    a, b, c = params
    q = quantities(params)
    d1 = abs((z0 + c) / c) * q.d
    d2 = abs((z0 - c) / c) * q.d
    if max(d1, d2) >= pedal_radius:
        raise DegenerateSection(f"pedal radius {pedal_radius} does not reach both faces")
    return EllipseSection(
        z0=float(z0),
        r1=math.sqrt(pedal_radius ** 2 - d1 ** 2),
        r2=math.sqrt(pedal_radius ** 2 - d2 ** 2),
        d1=d1,
        d2=d2,
        theta=math.asin(q.sin_theta),
        phi=math.atan(a / b),
        pedal_radius=float(pedal_radius),
        d=q.d,
        c=c,
    )


def _face_planes_canonical(params: IsoscelesParams):
    t = canonical_embedding(params)
    return t, {v: t.face_plane(v) for v in "ABCD"}


def pedal_distance_identity(params, p) -> float:
    """``(|M'P_B|^2 - |M'P_C|^2) / 4`` computed from explicit projections.

    ``P_B``/``P_C`` are the projections of canonical ``p`` on faces ACD/ABD
    and ``M'`` its projection on bimedian C (the z-axis).
    """
    params = _params(params)
    _, planes = _face_planes_canonical(params)
    p = np.asarray(p, float)
    m = np.array([0.0, 0.0, p[2]])
    pb = project_point_plane(p, planes["B"])
    pc = project_point_plane(p, planes["C"])
    return float((np.sum((m - pb) ** 2) - np.sum((m - pc) ** 2)) / 4.0)


def pedal_distance_closed_form(params, p) -> float:
    """``x0 y0 / (ab) + z0 / c``.

    This vanishes exactly on the axis-C paraboloid.  It is *not* equal to
    :func:`pedal_distance_identity` off the surface: the geometric value is
    this expression divided by :func:`pedal_distance_scale`.
    """
    a, b, c = _params(params)
    x0, y0, z0 = (float(v) for v in p)
    return x0 * y0 / (a * b) + z0 / c


def pedal_distance_scale(params) -> float:
    """``1/a^2 + 1/b^2 + 1/c^2``, the squared norm of the faceplane normals
    in the ``x/a ± y/b ± z/c + 1 = 0`` form."""
    a, b, c = _params(params)
    return 1.0 / (a * a) + 1.0 / (b * b) + 1.0 / (c * c)


def equidistant_projection_residual(t: Tetrahedron, X, axis: Axis = "C") -> float:
    """``|PR - RQ|`` for the projections ``P``, ``Q`` of ``X`` on the two
    faces of the dihedron at the axis's D-edge and ``R`` on the bimedian."""
    f1, f2 = _DIHEDRON_FACES[axis]
    X = np.asarray(X, float)
    P = project_point_plane(X, t.face_plane(f1))
    Q = project_point_plane(X, t.face_plane(f2))
    R = project_point_line(X, bimedian(t, axis))
    return abs(float(np.linalg.norm(P - R) - np.linalg.norm(Q - R)))


def tangency_det(params, p, tol: Tolerance | None = None) -> float:
    """Determinant of the 3x3 matrix whose singularity decides whether
    circles ABp and CDp touch (canonical ``p`` on the circumsphere)."""
    params = _params(params)
    a, b, c = params
    R = params.circumradius
    tol = tol or Tolerance(length_scale=R)
    x, y, z = (float(v) for v in p)
    if abs(math.sqrt(x * x + y * y + z * z) - R) > tol.atol:
        raise NotOnSphere("point is not on the circumsphere")
    M = np.array([[b * z, b * c, x], [-a * c, -a * z, y], [-b * x, a * y, z]])
    return float(np.linalg.det(M))


def tangency_det_factored(params, p) -> float:
    a, b, c = _params(params)
    x, y, z = (float(v) for v in p)
    return -(a * a + b * b) * (a * b * z + x * y * c)


def _check_on_sphere_not_vertex(t: Tetrahedron, X, tol: Tolerance) -> Sphere:
    omega = t.circumsphere
    if omega.radial_residual(X) > tol.atol:
        raise NotOnSphere("point is not on the circumsphere")
    for V in t.vertices:
        if np.linalg.norm(np.asarray(X, float) - V) <= 1e-7 * tol.length_scale:
            raise VertexInput("point coincides with a vertex")
    return omega


def tangent_angle(c1: Circle3, c2: Circle3, X) -> float:
    """Angle between the tangent lines of two circles at a common point."""
    X = np.asarray(X, float)
    t1 = np.cross(c1.normal, X - c1.center)
    t2 = np.cross(c2.normal, X - c2.center)
    s = np.linalg.norm(np.cross(t1, t2)) / (np.linalg.norm(t1) * np.linalg.norm(t2))
    return math.asin(min(1.0, float(s)))


_PAIR_ALIASES = {
    "AB/CD": "C", "CD/AB": "C", "C": "C",
    "BC/DA": "A", "DA/BC": "A", "BC/AD": "A", "AD/BC": "A", "A": "A",
    "AC/BD": "B", "BD/AC": "B", "CA/DB": "B", "DB/CA": "B", "B": "B",
}


def circles_touch(t: Tetrahedron, X, pair: str = "AB/CD", tol: Tolerance | None = None, ang_tol: float = 1e-7) -> bool:
    """Whether the circles through X and each edge of an opposite pair touch
    at X, judged by the angle between their tangent lines."""
    tol = tol or t.default_tolerance()
    _check_on_sphere_not_vertex(t, X, tol)
    e1, e2 = _EDGE_PAIRS[_PAIR_ALIASES[pair]]
    c1 = circle_through(t[e1[0]], t[e1[1]], X)
    c2 = circle_through(t[e2[0]], t[e2[1]], X)
    return tangent_angle(c1, c2, X) <= ang_tol


@dataclass(frozen=True)
class Tangent:
    """The two circles touch at ``point``; there is no second intersection."""

    point: Vec3


def _check_circle_on_sphere(omega: Sphere, c: Circle3, tol: Tolerance):
    v = c.center - omega.center
    h = float(v @ c.normal)
    if np.linalg.norm(v - h * c.normal) > tol.atol or abs(math.hypot(h, c.radius) - omega.radius) > tol.atol:
        raise NotOnSphere("circle does not lie on the sphere")


def second_circle_intersection(
    omega: Sphere, c1: Circle3, c2: Circle3, X, tol: Tolerance | None = None
) -> Union[Vec3, Tangent]:
    """Second common point of two circles on ``omega`` that share ``X``.

    The common chord lies on the line where the circle planes meet; along
    it the second point is ``X + s u`` with ``s = -2 u.(X - center)``.
    """
    tol = tol or Tolerance(length_scale=omega.radius)
    X = np.asarray(X, float)
    for c in (c1, c2):
        _check_circle_on_sphere(omega, c, tol)
        if abs(c.plane.signed_distance(X)) > tol.atol or abs(np.linalg.norm(X - c.center) - c.radius) > tol.atol:
            raise NotThroughX("circle does not pass through X")
    line = plane_plane_intersection(c1.plane, c2.plane, tol)
    u = line.direction
    s = -2.0 * float(u @ (X - omega.center))
    if abs(s) <= tol.atol:
        return Tangent(vec3(X))
    return vec3(X + s * u)


def bogdanov_conjugate(t: Tetrahedron, X, axis: Axis = "A", tol: Tolerance | None = None) -> Vec3:
    """Conjugate of circumsphere point ``X`` via circles through X.

    For axis A the circles XDA and XBC meet again at X_A; its half-turn
    about bimedian A is the conjugate.  When the circles touch at X the
    half-turn of X itself is returned.
    """
    tol = tol or t.default_tolerance()
    omega = _check_on_sphere_not_vertex(t, X, tol)
    X = np.asarray(X, float)
    e1, e2 = _EDGE_PAIRS[axis]
    c1 = circle_through(X, t[e1[0]], t[e1[1]])
    c2 = circle_through(X, t[e2[0]], t[e2[1]])
    second = second_circle_intersection(omega, c1, c2, X, tol)
    base = second.point if isinstance(second, Tangent) else second
    return vec3(reflect_point_line(base, bimedian(t, axis)))


def sample_sphere_hpar(params, rng: np.random.Generator, axis: Axis = "C") -> np.ndarray:
    """Random canonical point on circumsphere ∩ paraboloid of ``axis``.

    The first in-plane coordinate ``u`` is uniform in ``(-R, R)``; the
    sphere equation with the surface substituted gives
    ``v^2 = (R^2 - u^2) / (1 + k^2 u^2)``; the sign of ``v`` is random.
    """
    params = _params(params)
    h = hpar(CanonicalFrame.identity(params), axis)
    R = params.circumradius
    u = rng.uniform(-R, R)
    v = math.sqrt((R * R - u * u) / (1.0 + (h.coefficient * u) ** 2))
    if rng.random() < 0.5:
        v = -v
    return h.canonical_point(u, v)

