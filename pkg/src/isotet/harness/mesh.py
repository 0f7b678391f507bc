"""Wavefront-style grid meshes of the paraboloids and the circumsphere."""

from __future__ import annotations

import numpy as np

from ..errors import BadSurfaceId
from ..quadric import hpar
from ..tetra import CanonicalFrame, IsoscelesParams

SURFACES = {"hpc": "C", "hpa": "A", "hpb": "B", "circumsphere": None}


def _grid_faces(n: int) -> list[tuple[int, int, int]]:
    faces = []
    for i in range(n - 1):
        for j in range(n - 1):
            k = i * n + j + 1  # 1-based
            faces.append((k, k + n, k + 1))
            faces.append((k + 1, k + n, k + n + 1))
    return faces


def surface_vertices(surface: str, params, extent: float, resolution: int) -> np.ndarray:
    """Vertex grid, row-major, ``resolution**2`` rows, canonical coordinates."""
    if surface not in SURFACES:
        raise BadSurfaceId(f"unknown surface {surface!r}; expected one of {sorted(SURFACES)}")
    if not extent > 0:
        raise ValueError("extent must be positive")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    params = params if isinstance(params, IsoscelesParams) else IsoscelesParams(*params)
    n = resolution
    if surface == "circumsphere":
        # latitude/longitude grid; the extent does not apply
        R = params.circumradius
        theta = np.linspace(0.0, np.pi, n)
        phi = np.linspace(0.0, 2.0 * np.pi, n)
        T, F = np.meshgrid(theta, phi, indexing="ij")
        dirs = np.stack([np.sin(T) * np.cos(F), np.sin(T) * np.sin(F), np.cos(T)], axis=-1)
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        return (R * dirs).reshape(-1, 3)
    h = hpar(CanonicalFrame.identity(params), SURFACES[surface])
    ticks = np.linspace(-extent, extent, n)
    return np.array([h.canonical_point(u, v) for u in ticks for v in ticks])


def export_mesh(surface: str, params, extent: float, resolution: int) -> bytes:
    verts = surface_vertices(surface, params, extent, resolution) + 0.0  # no "-0"
    lines = ["v %.17g %.17g %.17g" % tuple(p) for p in verts]
    lines += ["f %d %d %d" % f for f in _grid_faces(resolution)]
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_mesh(data: bytes) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`export_mesh`: (vertices, 1-based faces)."""
    verts, faces = [], []
    for line in data.decode("ascii").splitlines():
        tag, *rest = line.split()
        if tag == "v":
            verts.append([float(x) for x in rest])
        elif tag == "f":
            faces.append([int(x) for x in rest])
    return np.array(verts).reshape(-1, 3), np.array(faces, dtype=int).reshape(-1, 3)
