import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isotet.errors import CollinearPoints, CoplanarPoints, ParallelPlanes
from isotet.geom3 import (
    Circle3,
    Line3,
    Plane,
    Sphere,
    Tolerance,
    circle_through,
    circumsphere4,
    distance_point_line,
    line_sphere_intersection,
    plane_plane_intersection,
    plane_through,
    project_point_line,
    project_point_plane,
    reflect_point_line,
    reflect_point_plane,
    vec3,
)
from isotet.tetra import canonical_embedding

coord = st.floats(-10, 10, allow_nan=False)
vec = st.tuples(coord, coord, coord).map(np.array)
XY = Plane((0, 0, 1), 0.0)


def test_vec3_is_read_only():
    v = vec3(1, 2, 3)
    with pytest.raises(ValueError):
        v[0] = 5.0


def test_tolerance_bounds():
    assert Tolerance(1e-9, 2.0).atol == pytest.approx(2e-9)
    with pytest.raises(ValueError):
        Tolerance(0.0)
    with pytest.raises(ValueError):
        Tolerance(1e-2)


def test_plane_normalizes():
    pl = Plane((0, 0, 2), 4.0)
    assert np.allclose(pl.normal, (0, 0, 1)) and pl.offset == pytest.approx(2.0)
    eq = Plane.from_equation(1, 1, 1, -3)
    assert eq.signed_distance((1, 1, 1)) == pytest.approx(0.0)


def test_reflect_and_project_examples():
    assert np.allclose(reflect_point_plane((0, 0, 1), XY), (0, 0, -1))
    assert np.allclose(project_point_plane((0, 0, 1), XY), (0, 0, 0))
    diag = Plane.from_equation(1, 1, 1, 0)
    assert np.allclose(reflect_point_plane((1, 2, 3), diag), (-3, -2, -1))
    assert np.allclose(project_point_plane((1, 2, 3), diag), (-1, 0, 1))
    p = np.array([0.3, -0.2, 0.0])
    assert np.allclose(reflect_point_plane(p, XY), p)
    assert np.allclose(project_point_plane(p, XY), p)


@given(vec, vec, st.floats(-5, 5))
def test_reflection_midpoint_on_plane(p, n, off):
    if np.linalg.norm(n) < 1e-3:
        return
    pl = Plane(n, off)
    r = reflect_point_plane(p, pl)
    assert abs(pl.signed_distance(0.5 * (p + r))) <= 1e-9 * (1 + np.abs(p).max() + abs(off))
    assert np.linalg.norm(p - r) == pytest.approx(2 * abs(pl.signed_distance(p)), abs=1e-9 * (1 + np.abs(p).max()))
    assert np.allclose(reflect_point_plane(r, pl), p, atol=1e-8)


def test_line_half_turn():
    z = Line3((0, 0, 0), (0, 0, 1))
    assert np.allclose(reflect_point_line((1, 0, 0), z), (-1, 0, 0))
    assert np.allclose(reflect_point_line((1, 2, 3), z), (-1, -2, 3))
    assert np.allclose(reflect_point_line((0, 0, 7), z), (0, 0, 7))
    assert np.allclose(project_point_line((1, 2, 3), z), (0, 0, 3))
    assert distance_point_line((3, 4, 9), z) == pytest.approx(5.0)


def test_plane_through():
    pl = plane_through((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert np.allclose(abs(pl.normal), np.full(3, 1 / math.sqrt(3)))
    assert abs(pl.offset) == pytest.approx(1 / math.sqrt(3))
    with pytest.raises(CollinearPoints):
        plane_through((0, 0, 0), (1, 0, 0), (2, 0, 0))


def test_plane_through_canonical_face():
    t = canonical_embedding((1, 2, 3))
    pl = plane_through(t["A"], t["C"], t["D"])
    # x - y/2 + z/3 + 1 = 0, compared after normalization
    ref = Plane.from_equation(1, -0.5, 1 / 3, 1)
    sign = np.sign(pl.normal @ ref.normal)
    assert np.allclose(sign * pl.normal, ref.normal) and sign * pl.offset == pytest.approx(ref.offset)


def test_circle_through():
    c = circle_through((1, 0, 0), (0, 1, 0), (-1, 0, 0))
    assert np.allclose(c.center, 0) and c.radius == pytest.approx(1.0)
    assert np.allclose(abs(c.normal), (0, 0, 1))
    with pytest.raises(CollinearPoints):
        circle_through((0, 0, 0), (1, 1, 1), (2, 2, 2))


def test_circle_through_exact_oracle():
    # perpendicular bisectors of (0,0)-(4,0) and (0,0)-(1,3): x = 2, x + 3y = 5
    cx = Fraction(2)
    cy = (Fraction(5) - cx) / 3
    c = circle_through((0, 0, 0), (4, 0, 0), (1, 3, 0))
    assert np.allclose(c.center, (float(cx), float(cy), 0))
    assert c.radius == pytest.approx(math.sqrt(float(cx**2 + cy**2)))


def test_circle_point_at_on_circle():
    c = Circle3((1, 2, 3), 2.0, (1, 1, 0))
    for ang in np.linspace(0, 6, 7):
        p = c.point_at(ang)
        assert np.linalg.norm(p - c.center) == pytest.approx(2.0)
        assert abs(c.plane.signed_distance(p)) < 1e-12


@pytest.mark.parametrize("params,radius", [((1, 1, 1), math.sqrt(3)), ((1, 2, 3), math.sqrt(14))])
def test_circumsphere4_canonical(params, radius):
    s = circumsphere4(*canonical_embedding(params).vertices)
    assert np.allclose(s.center, 0, atol=1e-12) and s.radius == pytest.approx(radius, rel=1e-12)


def test_circumsphere4_coplanar():
    with pytest.raises(CoplanarPoints):
        circumsphere4((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))


@given(vec, st.floats(0.1, 5), st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=4))
def test_circumsphere4_recovers_sphere(center, r, dirs):
    d = np.array(dirs)
    if np.any(np.linalg.norm(d, axis=1) < 1e-2):
        return
    pts = center + r * d / np.linalg.norm(d, axis=1)[:, None]
    vol = abs(np.linalg.det(pts[1:] - pts[0]))
    if vol < 1e-2 * r**3:
        return
    s = circumsphere4(*pts)
    assert np.allclose(s.center, center, atol=1e-7 * r) and s.radius == pytest.approx(r, rel=1e-7)


def test_line_sphere_intersection():
    unit = Sphere((0, 0, 0), 1.0)
    pts = line_sphere_intersection(Line3((0, 0, 0), (0, 0, 1)), unit)
    assert sorted(p[2] for p in pts) == pytest.approx([-1, 1])
    assert line_sphere_intersection(Line3((2, 0, 0), (0, 0, 1)), unit) == []
    (tangent,) = line_sphere_intersection(Line3((1, 0, 0), (0, 0, 1)), unit)
    assert np.allclose(tangent, (1, 0, 0))


def test_plane_plane_intersection():
    line = plane_plane_intersection(XY, Plane((0, 1, 0), 0.0))
    assert np.allclose(abs(line.direction), (1, 0, 0)) and distance_point_line((0, 0, 0), line) < 1e-12
    with pytest.raises(ParallelPlanes):
        plane_plane_intersection(XY, Plane((0, 0, 1), 1.0))
    line = plane_plane_intersection(Plane.from_equation(1, 1, 0, -1), Plane.from_equation(1, -1, 0, 0))
    assert distance_point_line((0.5, 0.5, 7.0), line) < 1e-12
