import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isotet.errors import GeometryError, NotOnSphere, NotOnSurface, VertexInput
from isotet.geom3 import Line3, Sphere, circle_through, reflect_point_line
from isotet.harness.sampling import TrialConfig, gen_isosceles
from isotet.isogonal import Point, is_isogonal_pair, isogonal_conjugate
from isotet.quadric import (
    Tangent,
    bogdanov_conjugate,
    circles_touch,
    conjugate_pair_on_hpar,
    equidistant_projection_residual,
    hpar,
    hpar_residual,
    pedal_distance_closed_form,
    pedal_distance_identity,
    pedal_distance_scale,
    sample_sphere_hpar,
    second_circle_intersection,
    section_ellipses,
    tangency_det,
    tangency_det_factored,
)
from isotet.tetra import CanonicalFrame, IsoscelesParams, bimedian, canonical_embedding

P123 = (1, 2, 3)
T123 = canonical_embedding(P123)
R14 = math.sqrt(14)
Z = Line3((0, 0, 0), (0, 0, 1))


def test_coefficients():
    assert hpar(P123, "C").coefficient == pytest.approx(1.5)
    assert hpar((1, 1, 1), "C").coefficient == pytest.approx(1.0)
    assert hpar(P123, "A").coefficient == pytest.approx(1 / 6)
    assert hpar(P123, "B").coefficient == pytest.approx(2 / 3)


def test_residual_examples():
    h = hpar(P123, "C")
    assert hpar_residual(h, T123["A"]) == pytest.approx(0.0, abs=1e-15)
    assert hpar_residual(h, (0, 0, 0)) == 0.0
    a, b, c = (Fraction(v) for v in P123)
    assert hpar_residual(h, (1, 1, 0)) == pytest.approx(float(c / (a * b)))


@pytest.mark.parametrize("axis", "ABC")
def test_vertices_and_other_bimedians_on_surface(axis):
    h = hpar(P123, axis)
    for V in T123.vertices:
        assert abs(hpar_residual(h, V)) < 1e-12
    for other in "ABC":
        if other != axis:
            line = bimedian(T123, other)
            for s in (-5.0, 0.3, 7.0):
                assert abs(hpar_residual(h, line.at(s))) < 1e-12


def test_conjugate_pair_examples():
    p, q = conjugate_pair_on_hpar(P123, "C", (1, 0, 0))
    assert np.allclose(q, (-1, 0, 0)) and is_isogonal_pair(T123, p, q)
    p, q = conjugate_pair_on_hpar(P123, "C", (1, 1, -1.5))
    assert np.allclose(q, (-1, -1, -1.5)) and is_isogonal_pair(T123, p, q)
    with pytest.raises(NotOnSurface):
        conjugate_pair_on_hpar(P123, "C", (1, 1, -1.4))


@given(st.integers(0, 2**32 - 1), st.sampled_from("ABC"))
def test_surface_pairs_are_conjugate(seed, axis):
    rng = np.random.default_rng(seed)
    t, frame = gen_isosceles(rng, TrialConfig())
    R = frame.params.circumradius
    h = hpar(frame, axis)
    p = frame.to_world(h.canonical_point(*rng.uniform(-R, R, 2)))
    p, q = conjugate_pair_on_hpar(frame, axis, p)
    assert is_isogonal_pair(t, p, q)
    res = isogonal_conjugate(t, p)
    if isinstance(res, Point):
        assert np.allclose(res.point, q, atol=1e-8 * R)


def test_section_ellipses():
    e = section_ellipses(P123, 1.0, 2.0)
    assert e.cos2_theta == pytest.approx(45 / 49)
    assert e.r2**2 - e.r1**2 == pytest.approx(48 / 49)
    # distances from (0,0,1) to faces ACD and ABC, computed directly
    assert e.d1 == pytest.approx(abs(T123.face_plane("B").signed_distance((0, 0, 1))))
    assert e.d2 == pytest.approx(abs(T123.face_plane("D").signed_distance((0, 0, 1))))
    e0 = section_ellipses(P123, 0.0, 2.0)
    assert e0.d1 == pytest.approx(e0.d2) and e0.r1 == pytest.approx(e0.r2)
    assert e0.d1 == pytest.approx(6 / 7)
    with pytest.raises(GeometryError):
        section_ellipses(P123, 1.0, 1.0)


def _exact_pedal_identity(p):
    """(|M'P_B|^2 - |M'P_C|^2) / 4 in rationals, faces x - y/2 + z/3 + 1 = 0 (ACD)
    and x + y/2 - z/3 + 1 = 0 (ABD), M' = (0, 0, z0)."""
    p = [Fraction(v) for v in p]

    def foot(n):
        k = (sum(ni * pi for ni, pi in zip(n, p)) + 1) / sum(ni * ni for ni in n)
        return [pi - k * ni for pi, ni in zip(p, n)]

    m = [0, 0, p[2]]
    pb = foot([Fraction(1), Fraction(-1, 2), Fraction(1, 3)])
    pc = foot([Fraction(1), Fraction(1, 2), Fraction(-1, 3)])
    sq = lambda u: sum((ui - mi) ** 2 for ui, mi in zip(u, m))  # noqa: E731
    return (sq(pb) - sq(pc)) / 4


def test_pedal_identity_exact():
    exact = _exact_pedal_identity((1, 1, 0))
    assert exact == Fraction(18, 49)
    assert pedal_distance_identity(P123, (1, 1, 0)) == pytest.approx(float(exact), rel=1e-14)
    assert pedal_distance_closed_form(P123, (1, 1, 0)) == pytest.approx(0.5)
    assert pedal_distance_scale(P123) == pytest.approx(49 / 36)


def test_pedal_identity_zero_on_surface():
    h = hpar(P123, "C")
    for u, v in [(0.3, 2.0), (-1.1, 0.7), (2.5, -2.5)]:
        assert abs(pedal_distance_identity(P123, h.canonical_point(u, v))) < 1e-12


def test_pedal_identity_matches_scaled_closed_form(rng):
    for _ in range(1000):
        params = rng.uniform(0.3, 3.0, 3) * rng.choice([-1, 1], 3)
        p = rng.uniform(-5, 5, 3)
        geo = pedal_distance_identity(params, p)
        closed = pedal_distance_closed_form(params, p) / pedal_distance_scale(params)
        assert geo == pytest.approx(closed, rel=1e-10, abs=1e-12)


def test_equidistant_projections():
    L = T123.max_edge
    assert equidistant_projection_residual(T123, (0, 0, 1.7)) < 1e-12
    assert equidistant_projection_residual(T123, (1, 1, 1)) <= 1e-10 * L
    X = np.array([0.3, -1.2, 2.2])
    r1 = equidistant_projection_residual(T123, X)
    r2 = equidistant_projection_residual(T123, reflect_point_line(X, Z))
    assert r1 == pytest.approx(r2, abs=1e-12)


def _exact_det(a, b, c, x, y, z):
    rows = [[b * z, b * c, x], [-a * c, -a * z, y], [-b * x, a * y, z]]
    (p, q, r), (s, t, u), (v, w, k) = rows
    return p * (t * k - u * w) - q * (s * k - u * v) + r * (s * w - t * v)


@pytest.mark.parametrize("x", [(3, 2, 1), (2, -3, 1), (-1, 3, -2), (3, -1, 2), (-2, -1, 3)])
def test_tangency_det_exact(x):
    a, b, c = P123
    exact = _exact_det(a, b, c, *(Fraction(v) for v in x))
    factored = -(a * a + b * b) * (a * b * x[2] + x[0] * x[1] * c)
    assert exact == factored
    assert tangency_det(P123, x) == pytest.approx(float(exact), rel=1e-12)


def test_tangency_det_examples():
    assert tangency_det(P123, T123["A"]) == pytest.approx(0.0, abs=1e-12)
    assert tangency_det(P123, (R14, 0, 0)) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(NotOnSphere):
        tangency_det(P123, (1, 1, 1))


def test_tangency_det_random(rng):
    for _ in range(200):
        u = rng.standard_normal(3)
        x = R14 * u / np.linalg.norm(u)
        assert tangency_det(P123, x) == pytest.approx(tangency_det_factored(P123, x), rel=1e-9, abs=1e-12)


def test_circles_touch():
    assert circles_touch(T123, (R14, 0, 0))
    rng = np.random.default_rng(5)
    for _ in range(500):
        x = sample_sphere_hpar(P123, rng, "C")
        if min(np.linalg.norm(x - V) for V in T123.vertices) > 1e-2:
            assert circles_touch(T123, x)
    off = 0
    while off < 100:
        u = rng.standard_normal(3)
        x = R14 * u / np.linalg.norm(u)
        if abs(2 * x[2] + 3 * x[0] * x[1]) > 0.1:
            assert not circles_touch(T123, x)
            off += 1
    with pytest.raises(VertexInput):
        circles_touch(T123, T123["B"])


def test_sample_sphere_hpar(rng):
    for axis in "ABC":
        h = hpar(P123, axis)
        for _ in range(50):
            x = sample_sphere_hpar(P123, rng, axis)
            assert np.linalg.norm(x) == pytest.approx(R14)
            assert abs(hpar_residual(h, x)) < 1e-12


def test_second_circle_intersection(rng):
    omega = Sphere((0, 0, 0), R14)
    for _ in range(50):
        u = rng.standard_normal(3)
        X = R14 * u / np.linalg.norm(u)
        c1 = circle_through(X, T123["D"], T123["A"])
        c2 = circle_through(X, T123["B"], T123["C"])
        Y = second_circle_intersection(omega, c1, c2, X)
        assert not isinstance(Y, Tangent)
        assert omega.radial_residual(Y) < 1e-9 * R14
        assert abs(c1.plane.signed_distance(Y)) < 1e-9 * R14
        assert abs(c2.plane.signed_distance(Y)) < 1e-9 * R14
    X = sample_sphere_hpar(P123, rng, "A")
    c1 = circle_through(X, T123["D"], T123["A"])
    c2 = circle_through(X, T123["B"], T123["C"])
    assert isinstance(second_circle_intersection(omega, c1, c2, X), Tangent)
    with pytest.raises(GeometryError):
        second_circle_intersection(omega, c1, c1, X)


def test_bogdanov_examples():
    assert np.allclose(bogdanov_conjugate(T123, (R14, 0, 0), "C"), (-R14, 0, 0))


@given(st.integers(0, 2**32 - 1))
def test_bogdanov_agrees(seed):
    rng = np.random.default_rng(seed)
    t, frame = gen_isosceles(rng, TrialConfig())
    sph = t.circumsphere
    u = rng.standard_normal(3)
    X = sph.center + sph.radius * u / np.linalg.norm(u)
    if min(np.linalg.norm(X - V) for V in t.vertices) < 1e-2 * sph.radius:
        return
    pts = [bogdanov_conjugate(t, X, axis) for axis in "ABC"]
    direct = isogonal_conjugate(t, X)
    assert isinstance(direct, Point)
    for p in pts:
        assert np.allclose(p, direct.point, atol=1e-7 * sph.radius)
        assert sph.radial_residual(p) <= 1e-9 * sph.radius


def test_frame_independence():
    frame = CanonicalFrame(IsoscelesParams(*P123), np.eye(3)[[1, 2, 0]], (1, -2, 3))
    h = hpar(frame, "C")
    p = frame.to_world(h.canonical_point(0.4, -0.9))
    assert abs(hpar_residual(h, p)) < 1e-12
