# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tetrahedron kernels; see ``_kernels_py`` for the contract."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, atan2, fmod, NAN, M_PI

cnp.import_array()

cdef int FACE[4][3]
FACE[0][:] = [1, 2, 3]
FACE[1][:] = [0, 2, 3]
FACE[2][:] = [0, 1, 3]
FACE[3][:] = [0, 1, 2]

cdef int EDGE[6][4]
EDGE[0][:] = [0, 1, 2, 3]
EDGE[1][:] = [0, 2, 1, 3]
EDGE[2][:] = [0, 3, 1, 2]
EDGE[3][:] = [1, 2, 0, 3]
EDGE[4][:] = [1, 3, 0, 2]
EDGE[5][:] = [2, 3, 0, 1]


cdef inline double _dot(const double* a, const double* b) nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef inline void _cross(const double* a, const double* b, double* out) nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef void _face_planes(const double[:, ::1] v, double* normals, double* offsets) nogil:
    cdef int i, k, a, b, c
    cdef double e1[3]
    cdef double e2[3]
    cdef double n[3]
    cdef double nn, h
    for i in range(4):
        a = FACE[i][0]
        b = FACE[i][1]
        c = FACE[i][2]
        for k in range(3):
            e1[k] = v[b, k] - v[a, k]
            e2[k] = v[c, k] - v[a, k]
        _cross(e1, e2, n)
        nn = sqrt(_dot(n, n))
        for k in range(3):
            n[k] /= nn
        h = n[0] * v[a, 0] + n[1] * v[a, 1] + n[2] * v[a, 2]
        if n[0] * v[i, 0] + n[1] * v[i, 1] + n[2] * v[i, 2] > h:
            for k in range(3):
                n[k] = -n[k]
            h = -h
        for k in range(3):
            normals[3 * i + k] = n[k]
        offsets[i] = h


cdef void _reflect(const double[:, ::1] v, const double* p, double factor, double* out) nogil:
    cdef double normals[12]
    cdef double offsets[4]
    cdef int i, k
    cdef double dist
    _face_planes(v, normals, offsets)
    for i in range(4):
        dist = _dot(&normals[3 * i], p) - offsets[i]
        for k in range(3):
            out[3 * i + k] = p[k] - factor * dist * normals[3 * i + k]


cdef bint _circumcenter4(const double* pts, double eps_rel, double* center) nogil:
    cdef double L2 = 0.0
    cdef double d2, L, piv, f, t
    cdef double A[3][4]
    cdef int i, j, k, r, best
    cdef double det
    for i in range(4):
        for j in range(i + 1, 4):
            d2 = 0.0
            for k in range(3):
                t = pts[3 * i + k] - pts[3 * j + k]
                d2 += t * t
            if d2 > L2:
                L2 = d2
    if L2 == 0.0:
        return False
    L = sqrt(L2)
    for i in range(3):
        A[i][3] = 0.0
        for k in range(3):
            A[i][k] = (pts[3 * (i + 1) + k] - pts[k]) / L
            A[i][3] += 0.5 * A[i][k] * A[i][k]
    # Gaussian elimination with partial pivoting; det tracked along the way
    det = 1.0
    for k in range(3):
        best = k
        for r in range(k + 1, 3):
            if fabs(A[r][k]) > fabs(A[best][k]):
                best = r
        if best != k:
            for j in range(4):
                t = A[k][j]
                A[k][j] = A[best][j]
                A[best][j] = t
            det = -det
        piv = A[k][k]
        det *= piv
        if piv == 0.0:
            return False
        for r in range(k + 1, 3):
            f = A[r][k] / piv
            for j in range(k, 4):
                A[r][j] -= f * A[k][j]
    if fabs(det) < eps_rel:
        return False
    for i in range(2, -1, -1):
        t = A[i][3]
        for j in range(i + 1, 3):
            t -= A[i][j] * center[j]
        center[i] = t / A[i][i]
    for k in range(3):
        center[k] = pts[k] + L * center[k]
    return True


def face_planes(verts):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    normals = np.empty((4, 3))
    offsets = np.empty(4)
    cdef double[:, ::1] nv = normals
    cdef double[::1] ov = offsets
    _face_planes(v, &nv[0, 0], &ov[0])
    return normals, offsets


def reflect_faces(verts, p):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    out = np.empty((4, 3))
    cdef double[:, ::1] ov = out
    _reflect(v, &pv[0], 2.0, &ov[0, 0])
    return out


def project_faces(verts, p):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    out = np.empty((4, 3))
    cdef double[:, ::1] ov = out
    _reflect(v, &pv[0], 1.0, &ov[0, 0])
    return out


def circumcenter4(pts, double eps_rel):
    cdef const double[:, ::1] pv = np.ascontiguousarray(pts, dtype=np.float64)
    out = np.empty(3)
    cdef double[::1] ov = out
    cdef bint ok = _circumcenter4(&pv[0, 0], eps_rel, &ov[0])
    if not ok:
        out[:] = np.nan
    return out, bool(ok)


def conjugate(verts, p, double eps_rel):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double refl[12]
    out = np.empty(3)
    cdef double[::1] ov = out
    _reflect(v, &pv[0], 2.0, refl)
    cdef bint ok = _circumcenter4(refl, eps_rel, &ov[0])
    if not ok:
        out[:] = np.nan
    return out, bool(ok)


cdef inline double _angle(const double* U, const double* u, const double* b,
                          const double* c, const double* x, double* radius) nogil:
    cdef double w[3]
    cdef double s
    cdef int k
    for k in range(3):
        w[k] = x[k] - U[k]
    s = _dot(w, u)
    for k in range(3):
        w[k] -= s * u[k]
    radius[0] = sqrt(_dot(w, w))
    return atan2(_dot(w, c), _dot(w, b))


def dihedral_residuals(verts, p, q, double edge_tol):
    cdef const double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    out = np.empty(6)
    cdef double[::1] ov = out
    cdef int e, k, i, j, m, n
    cdef double U[3]
    cdef double u[3]
    cdef double w1[3]
    cdef double w2[3]
    cdef double b[3]
    cdef double c[3]
    cdef double s, s1, s2, nb, ap, aq, rp, rq, r
    for e in range(6):
        i = EDGE[e][0]
        j = EDGE[e][1]
        m = EDGE[e][2]
        n = EDGE[e][3]
        for k in range(3):
            U[k] = v[i, k]
            u[k] = v[j, k] - v[i, k]
            w1[k] = v[m, k] - v[i, k]
            w2[k] = v[n, k] - v[i, k]
        s = sqrt(_dot(u, u))
        for k in range(3):
            u[k] /= s
        s1 = _dot(w1, u)
        s2 = _dot(w2, u)
        for k in range(3):
            w1[k] -= s1 * u[k]
            w2[k] -= s2 * u[k]
        s1 = sqrt(_dot(w1, w1))
        s2 = sqrt(_dot(w2, w2))
        for k in range(3):
            b[k] = w1[k] / s1 + w2[k] / s2
        nb = sqrt(_dot(b, b))
        for k in range(3):
            b[k] /= nb
        _cross(u, b, c)
        ap = _angle(U, u, b, c, &pv[0], &rp)
        aq = _angle(U, u, b, c, &qv[0], &rq)
        if rp <= edge_tol or rq <= edge_tol:
            ov[e] = NAN
            continue
        r = fmod(ap + aq, M_PI)
        if r < 0.0:
            r += M_PI
        ov[e] = r if r < M_PI - r else M_PI - r
    return out
