"""Inversion in spheres, angles between spheres, bisecting spheres, and the
planar triangle machinery (isogonal conjugates, arc midpoints).

Planes are treated as spheres through infinity wherever that makes sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import (
    CenterInput,
    CollinearPoints,
    DegenerateTriangle,
    Disjoint,
    EqualRadii,
    GeometryError,
    GreatCircle,
    IdenticalSpheres,
    NotCoplanar,
    NotOnSphere,
)
from .geom3 import (
    AtInfinity,
    Circle3,
    Plane,
    Sphere,
    Tolerance,
    Vec3,
    circle_through,
    max_pairwise_distance,
    plane_through,
    vec3,
)
from .isogonal import Point, VertexDegenerate

__all__ = [
    "Inversion",
    "SphereOrPlane",
    "invert_point",
    "invert_sphere",
    "sphere_angle",
    "equal_angle_residual",
    "bisector_spheres",
    "HomothetyCenters",
    "homothety_centers",
    "homothety_bisector_sphere",
    "intersection_circle",
    "planar_isogonal_conjugate",
    "ArcMidpointCircles",
    "arc_midpoint_circles",
]

SphereOrPlane = Union[Sphere, Plane]

# three isogonal cevians count as parallel below this pairwise angle
PARALLEL_CEVIANS_RAD = 1e-7


@dataclass(frozen=True)
class Inversion:
    """Inversion with the given center and power (squared radius).

    A negative power composes the inversion with the point reflection in
    the center.
    """

    center: Vec3
    power: float

    def __post_init__(self):
        object.__setattr__(self, "center", vec3(self.center))
        if self.power == 0.0 or not math.isfinite(self.power):
            raise GeometryError("inversion power must be finite and nonzero")
        object.__setattr__(self, "power", float(self.power))

    def __call__(self, obj):
        if isinstance(obj, (Sphere, Plane)):
            return invert_sphere(self, obj)
        return invert_point(self, obj)


def invert_point(inv: Inversion, p, tol: Tolerance | None = None) -> Vec3:
    tol = tol or Tolerance(length_scale=math.sqrt(abs(inv.power)))
    v = np.asarray(p, float) - inv.center
    d2 = float(v @ v)
    if math.sqrt(d2) <= tol.atol:
        raise CenterInput("cannot invert the inversion center")
    return vec3(inv.center + (inv.power / d2) * v)


def invert_sphere(inv: Inversion, s: SphereOrPlane, tol: Tolerance | None = None) -> SphereOrPlane:
    """Image of a sphere or plane; spheres through the center become planes
    and planes missing the center become spheres through it."""
    k = inv.power
    O = inv.center
    if isinstance(s, Plane):
        tol = tol or Tolerance(length_scale=math.sqrt(abs(k)))
        delta = s.offset - float(s.normal @ O)  # foot of O is O + delta * normal
        if abs(delta) <= tol.atol:
            return s
        return Sphere(O + (k / (2.0 * delta)) * s.normal, abs(k) / (2.0 * abs(delta)))
    tol = tol or Tolerance(length_scale=s.radius)
    v = s.center - O
    d = float(np.linalg.norm(v))
    if abs(d - s.radius) <= tol.atol:
        u = v / d
        return Plane(u, float(u @ O) + k / (2.0 * s.radius))
    scale = k / (d * d - s.radius * s.radius)
    return Sphere(O + scale * v, abs(scale) * s.radius)


def sphere_angle(u: SphereOrPlane, v: SphereOrPlane, tol: Tolerance | None = None) -> float:
    """Angle in ``[0, pi]`` between two intersecting spheres or planes.

    Sphere/sphere: ``cos = (r1^2 + r2^2 - d^2) / (2 r1 r2)``, the angle
    between the radii at a common point.  Sphere/plane: ``cos`` is the
    signed distance from the center to the plane over the radius.
    Plane/plane: the angle between the normals.
    """
    if isinstance(u, Plane) and isinstance(v, Sphere):
        u, v = v, u
    if isinstance(u, Sphere) and isinstance(v, Sphere):
        tol = tol or Tolerance(length_scale=max(u.radius, v.radius))
        d = float(np.linalg.norm(u.center - v.center))
        if d > u.radius + v.radius + tol.atol or d < abs(u.radius - v.radius) - tol.atol:
            raise Disjoint("spheres do not meet")
        cos = (u.radius ** 2 + v.radius ** 2 - d * d) / (2.0 * u.radius * v.radius)
    elif isinstance(u, Sphere):
        tol = tol or Tolerance(length_scale=u.radius)
        h = v.signed_distance(u.center)
        if abs(h) > u.radius + tol.atol:
            raise Disjoint("plane misses the sphere")
        cos = h / u.radius
    else:
        tol = tol or Tolerance()
        cos = float(u.normal @ v.normal)
        if abs(abs(cos) - 1.0) <= tol.eps_rel and abs(u.offset - cos * v.offset) > tol.atol:
            raise Disjoint("parallel planes")
    return math.acos(max(-1.0, min(1.0, cos)))


def equal_angle_residual(theta1: float, theta2: float) -> tuple[float, str]:
    """How far two sphere angles are from equal, allowing the supplement.

    The angle between tangent planes is unsigned, so orientation choices can
    turn one angle into its supplement.  Returns the smaller residual and
    the branch (``"direct"`` or ``"supplement"``) that achieved it.
    """
    direct = abs(theta1 - theta2)
    supplement = abs(theta1 - (math.pi - theta2))
    if direct <= supplement:
        return direct, "direct"
    return supplement, "supplement"


def _circle_on_sphere_offset(omega: Sphere, sigma: Circle3, tol: Tolerance) -> float:
    """Signed height of ``sigma``'s plane above ``omega``'s center."""
    v = sigma.center - omega.center
    h = float(v @ sigma.normal)
    off_axis = float(np.linalg.norm(v - h * sigma.normal))
    if off_axis > tol.atol or abs(math.hypot(h, sigma.radius) - omega.radius) > tol.atol:
        raise NotOnSphere("circle does not lie on the sphere")
    return h


def bisector_spheres(omega: Sphere, sigma: Circle3, tol: Tolerance | None = None) -> tuple[Sphere, Sphere]:
    """The two spheres through ``sigma`` centered where its axis meets ``omega``."""
    tol = tol or Tolerance(length_scale=omega.radius)
    h = _circle_on_sphere_offset(omega, sigma, tol)
    if abs(h) <= tol.atol:
        raise GreatCircle("sigma is a great circle of omega")
    out = []
    for sign in (1.0, -1.0):
        center = omega.center + sign * omega.radius * sigma.normal
        out.append(Sphere(center, math.hypot(sigma.radius, sign * omega.radius - h)))
    return out[0], out[1]


class HomothetyCenters(NamedTuple):
    external: Union[Vec3, AtInfinity]
    internal: Vec3


def homothety_centers(u: Sphere, v: Sphere, tol: Tolerance | None = None) -> HomothetyCenters:
    """Fixed points of the positive (external) and negative (internal)
    homotheties taking ``u`` onto ``v``."""
    tol = tol or Tolerance(length_scale=max(u.radius, v.radius))
    r1, r2 = u.radius, v.radius
    same_center = float(np.linalg.norm(u.center - v.center)) <= tol.atol
    same_radius = abs(r1 - r2) <= tol.atol
    if same_center and same_radius:
        raise IdenticalSpheres("spheres coincide")
    internal = vec3((r2 * u.center + r1 * v.center) / (r1 + r2))
    if same_radius:
        return HomothetyCenters(AtInfinity(v.center - u.center), internal)
    return HomothetyCenters(vec3((r2 * u.center - r1 * v.center) / (r2 - r1)), internal)


def intersection_circle(u: Sphere, v: Sphere, tol: Tolerance | None = None) -> Circle3:
    tol = tol or Tolerance(length_scale=max(u.radius, v.radius))
    w = v.center - u.center
    d = float(np.linalg.norm(w))
    if d <= tol.atol:
        raise Disjoint("concentric spheres do not meet in a circle")
    x = (d * d + u.radius ** 2 - v.radius ** 2) / (2.0 * d)
    rho2 = u.radius ** 2 - x * x
    if rho2 <= (tol.atol) ** 2:
        raise Disjoint("spheres do not meet in a circle")
    n = w / d
    return Circle3(u.center + x * n, math.sqrt(rho2), n)


def homothety_bisector_sphere(u: Sphere, v: Sphere, tol: Tolerance | None = None) -> Sphere:
    """Sphere centered at the external homothety center through ``u`` ∩ ``v``."""
    tol = tol or Tolerance(length_scale=max(u.radius, v.radius))
    sigma = intersection_circle(u, v, tol)
    external = homothety_centers(u, v, tol).external
    if isinstance(external, AtInfinity):
        raise EqualRadii("external homothety center is at infinity")
    radius = math.hypot(float(np.linalg.norm(external - sigma.center)), sigma.radius)
    return Sphere(external, radius)


def _triangle_frame(A, B, C, tol: Tolerance | None):
    A, B, C = (np.asarray(p, float) for p in (A, B, C))
    try:
        plane = plane_through(A, B, C, tol)
    except CollinearPoints as exc:
        raise DegenerateTriangle(str(exc)) from exc
    return A, B, C, plane


def _reflect_direction(d: np.ndarray, axis: np.ndarray) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    return 2.0 * (d @ axis) * axis - d


def planar_isogonal_conjugate(A, B, C, X, tol: Tolerance | None = None):
    """Isogonal conjugate of ``X`` in triangle ``ABC`` (all in one plane).

    Each cevian from a vertex through ``X`` is reflected in that vertex's
    angle bisector; the reflected lines meet at the conjugate.  They are
    parallel exactly when ``X`` is on the circumcircle, giving
    :class:`AtInfinity`.
    """
    A, B, C, plane = _triangle_frame(A, B, C, tol)
    L = max_pairwise_distance([A, B, C])
    tol = tol or Tolerance(length_scale=L)
    X = np.asarray(X, float)
    if abs(plane.signed_distance(X)) > tol.atol:
        raise NotCoplanar("X is not in the plane of the triangle")
    verts = (A, B, C)
    for label, V in zip("ABC", verts):
        if np.linalg.norm(X - V) < 1e-7 * L:
            return VertexDegenerate(label)

    dirs = []
    for i, V in enumerate(verts):
        P1, P2 = verts[(i + 1) % 3], verts[(i + 2) % 3]
        bis = (P1 - V) / np.linalg.norm(P1 - V) + (P2 - V) / np.linalg.norm(P2 - V)
        d = _reflect_direction(X - V, bis)
        dirs.append(d / np.linalg.norm(d))

    sines = [np.linalg.norm(np.cross(dirs[i], dirs[j])) for i, j in ((0, 1), (0, 2), (1, 2))]
    if max(sines) < PARALLEL_CEVIANS_RAD:
        mean = dirs[0] + np.sign(dirs[0] @ dirs[1]) * dirs[1] + np.sign(dirs[0] @ dirs[2]) * dirs[2]
        return AtInfinity(mean)

    # least-squares meeting point of the three reflected cevians
    M = np.zeros((3, 3))
    rhs = np.zeros(3)
    for V, d in zip(verts, dirs):
        proj = np.eye(3) - np.outer(d, d)
        M += proj
        rhs += proj @ V
    M += np.outer(plane.normal, plane.normal)
    rhs += plane.offset * plane.normal
    return Point(vec3(np.linalg.solve(M, rhs)))


class ArcMidpointCircles(NamedTuple):
    gamma_M: Circle3
    gamma_N: Circle3
    M: Vec3
    N: Vec3


def arc_midpoint_circles(A, B, C, tol: Tolerance | None = None) -> ArcMidpointCircles:
    """Midpoints ``M`` (arc AB away from C) and ``N`` (arc AB through C) of
    the circumcircle, with the circles centered there through A and B."""
    A, B, C, plane = _triangle_frame(A, B, C, tol)
    circ = circle_through(A, B, C)
    mid = 0.5 * (A + B)
    w = np.cross(plane.normal, B - A)
    w /= np.linalg.norm(w)
    if w @ (C - mid) > 0:
        w = -w
    M = circ.center + circ.radius * w
    N = circ.center - circ.radius * w
    gamma_M = Circle3(M, float(np.linalg.norm(A - M)), plane.normal)
    gamma_N = Circle3(N, float(np.linalg.norm(A - N)), plane.normal)
    return ArcMidpointCircles(gamma_M, gamma_N, vec3(M), vec3(N))


def circle_as_sphere(c: Circle3) -> Sphere:
    """Sphere with the circle's center and radius (angles between coplanar
    circles equal angles between these spheres)."""
    return Sphere(c.center, c.radius)

