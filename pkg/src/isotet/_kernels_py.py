"""Pure-numpy versions of the hot tetrahedron kernels.

Same signatures and semantics as the compiled ``_kernels`` extension; used
when the extension is not built or ``ISOTET_PURE_PYTHON`` is set.

Vertex arrays are ``(4, 3)`` float64 in label order A, B, C, D.  Face ``i``
is the face opposite vertex ``i`` (BCD, ACD, ABD, ABC); edges are ordered
AB, AC, AD, BC, BD, CD.
"""

import math

import numpy as np

FACES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _opposite(i, j):
    return tuple(k for k in range(4) if k != i and k != j)


def face_planes(verts):
    """Outward unit normals ``(4, 3)`` and offsets ``(4,)`` of the faceplanes."""
    verts = np.asarray(verts, dtype=float)
    normals = np.empty((4, 3))
    offsets = np.empty(4)
    for i, (a, b, c) in enumerate(FACES):
        n = np.cross(verts[b] - verts[a], verts[c] - verts[a])
        n /= math.sqrt(n @ n)
        h = n @ verts[a]
        if n @ verts[i] > h:
            n, h = -n, -h
        normals[i] = n
        offsets[i] = h
    return normals, offsets


def reflect_faces(verts, p):
    normals, offsets = face_planes(verts)
    p = np.asarray(p, dtype=float)
    dist = normals @ p - offsets
    return p[None, :] - 2.0 * dist[:, None] * normals


def project_faces(verts, p):
    normals, offsets = face_planes(verts)
    p = np.asarray(p, dtype=float)
    dist = normals @ p - offsets
    return p[None, :] - dist[:, None] * normals


def circumcenter4(pts, eps_rel):
    """Center of the sphere through four points and an ``ok`` flag.

    ``ok`` is False when the scaled edge determinant is below ``eps_rel``;
    the center is then all-NaN.
    """
    pts = np.asarray(pts, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    L = math.sqrt((diff ** 2).sum(-1).max())
    if L == 0.0:
        return np.full(3, np.nan), False
    # work relative to p0 and in units of L for conditioning
    E = (pts[1:] - pts[0]) / L
    det = np.linalg.det(E)
    if abs(det) < eps_rel:
        return np.full(3, np.nan), False
    rhs = 0.5 * (E ** 2).sum(1)
    x = np.linalg.solve(E, rhs)
    return pts[0] + L * x, True


def conjugate(verts, p, eps_rel):
    """Circumcenter of the four face reflections of ``p`` (``ok`` as above)."""
    return circumcenter4(reflect_faces(verts, p), eps_rel)


def _signed_angle(u, b, c, base, x):
    w = x - base
    w = w - (w @ u) * u
    return math.atan2(w @ c, w @ b), math.sqrt(w @ w)


def dihedral_residuals(verts, p, q, edge_tol):
    """Isogonality residual (radians) at each of the six edges.

    An entry is NaN when ``p`` or ``q`` lies within ``edge_tol`` of that
    edgeline, where any plane through the edge is admissible.
    """
    verts = np.asarray(verts, dtype=float)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    out = np.empty(6)
    for k, (i, j) in enumerate(EDGES):
        U = verts[i]
        u = verts[j] - U
        u /= math.sqrt(u @ u)
        m, n = _opposite(i, j)
        w1 = verts[m] - U
        w1 = w1 - (w1 @ u) * u
        w2 = verts[n] - U
        w2 = w2 - (w2 @ u) * u
        b = w1 / math.sqrt(w1 @ w1) + w2 / math.sqrt(w2 @ w2)
        b /= math.sqrt(b @ b)
        c = np.cross(u, b)
        ap, rp = _signed_angle(u, b, c, U, p)
        aq, rq = _signed_angle(u, b, c, U, q)
        if rp <= edge_tol or rq <= edge_tol:
            out[k] = math.nan
            continue
        r = math.fmod(ap + aq, math.pi)
        if r < 0.0:
            r += math.pi
        out[k] = min(r, math.pi - r)
    return out
