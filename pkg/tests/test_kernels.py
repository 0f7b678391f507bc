import importlib

import numpy as np
import pytest

from isotet import _kernels_py

try:
    _compiled = importlib.import_module("isotet._kernels")
except ImportError:  # pragma: no cover - extension not built
    _compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
BACKENDS.append(
    pytest.param(_compiled, id="cython", marks=pytest.mark.skipif(_compiled is None, reason="extension not built"))
)


def _tet(rng):
    while True:
        v = rng.standard_normal((4, 3))
        if abs(np.linalg.det(v[1:] - v[0])) > 0.2:
            return np.ascontiguousarray(v)


def _plane_reflect(p, a, b, c):
    n = np.cross(b - a, c - a)
    n /= np.linalg.norm(n)
    return p - 2 * ((p - a) @ n) * n


@pytest.mark.parametrize("k", BACKENDS)
def test_reflections_match_direct(k, rng):
    faces = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
    for _ in range(50):
        v = _tet(rng)
        p = rng.standard_normal(3)
        expect = np.array([_plane_reflect(p, *v[list(f)]) for f in faces])
        assert np.allclose(k.reflect_faces(v, p), expect, atol=1e-12)
        assert np.allclose(k.project_faces(v, p), (expect + p) / 2, atol=1e-12)


@pytest.mark.parametrize("k", BACKENDS)
def test_face_normals_point_outward(k, rng):
    v = _tet(rng)
    normals, offsets = k.face_planes(v)
    for i in range(4):
        assert normals[i] @ v[i] - offsets[i] < 0


@pytest.mark.parametrize("k", BACKENDS)
def test_circumcenter4(k, rng):
    for _ in range(50):
        pts = np.ascontiguousarray(rng.standard_normal((4, 3)))
        c, ok = k.circumcenter4(pts, 1e-9)
        if ok:
            d = np.linalg.norm(pts - c, axis=1)
            assert np.ptp(d) < 1e-9 * d.max()
    flat = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)], float)
    assert not k.circumcenter4(flat, 1e-9)[1]


@pytest.mark.skipif(_compiled is None, reason="extension not built")
def test_backends_agree(rng):
    for _ in range(200):
        v = _tet(rng)
        p, q = rng.standard_normal((2, 3))
        a, ok_a = _kernels_py.conjugate(v, p, 1e-9)
        b, ok_b = _compiled.conjugate(v, p, 1e-9)
        assert ok_a == ok_b
        if ok_a:
            assert np.allclose(a, b, rtol=1e-10, atol=1e-10)
        ra = _kernels_py.dihedral_residuals(v, p, q, 1e-7)
        rb = _compiled.dihedral_residuals(v, p, q, 1e-7)
        assert np.allclose(ra, rb, atol=1e-12, equal_nan=True)


@pytest.mark.parametrize("k", BACKENDS)
def test_dihedral_nan_on_edge(k):
    v = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], float)
    p = np.array([0.5, 0.0, 0.0])  # on AB
    q = np.array([0.2, 0.3, 0.1])
    res = k.dihedral_residuals(v, p, q, 1e-7)
    assert np.isnan(res[0]) and not np.isnan(res[1:]).any()


def test_pure_python_switch(monkeypatch):
    import isotet._core as core

    monkeypatch.setenv("ISOTET_PURE_PYTHON", "1")
    try:
        reloaded = importlib.reload(core)
        assert reloaded.BACKEND == "python" and reloaded.kernels is _kernels_py
    finally:
        monkeypatch.delenv("ISOTET_PURE_PYTHON")
        importlib.reload(core)
