"""Seeded random generators for the verification suites.

Every trial owns a generator derived from ``(seed, suite, trial index)``,
so results do not depend on trial order or on how trials are split
across workers.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from ..geom3 import Sphere, Tolerance, distance_point_line, vec3
from ..isogonal import Point, isogonal_conjugate
from ..tetra import EDGE_LABELS, CanonicalFrame, IsoscelesParams, Tetrahedron


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 1000
    tol_pos: float = 1e-8
    tol_ang: float = 1e-8
    param_range: tuple[float, float] = (0.3, 3.0)

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        lo, hi = self.param_range
        if not 0 < lo <= hi:
            raise ValueError("param_range must satisfy 0 < lo <= hi")


def trial_rng(seed: int, suite_id: str, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed & 0xFFFFFFFF, seed >> 32, zlib.crc32(suite_id.encode()), trial])
    return np.random.Generator(np.random.PCG64(ss))


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Rotation matrix of a uniformly distributed unit quaternion."""
    q = rng.standard_normal(4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_params(rng: np.random.Generator, cfg: TrialConfig) -> IsoscelesParams:
    lo, hi = cfg.param_range
    mags = rng.uniform(lo, hi, 3)
    signs = rng.choice([-1.0, 1.0], 3)
    return IsoscelesParams(*(mags * signs))


def gen_isosceles(rng: np.random.Generator, cfg: TrialConfig) -> tuple[Tetrahedron, CanonicalFrame]:
    """Random-parameter isosceles tetrahedron in a random rigid pose."""
    params = random_params(rng, cfg)
    frame = CanonicalFrame(params, random_rotation(rng), rng.uniform(-5.0, 5.0, 3))
    return frame.tetrahedron(), frame


def gen_tetrahedron(rng: np.random.Generator, min_quality: float = 0.1) -> Tetrahedron:
    """Random general tetrahedron with ``6*sqrt(2)*V / L^3 >= min_quality``
    (1 for the regular one)."""
    while True:
        v = rng.standard_normal((4, 3))
        diff = v[:, None] - v[None]
        L = np.sqrt((diff ** 2).sum(-1)).max()
        vol = abs(np.linalg.det(v[1:] - v[0])) / 6.0
        if 6.0 * math.sqrt(2.0) * vol / L ** 3 >= min_quality:
            return Tetrahedron(v)


def gen_point_on_sphere(rng: np.random.Generator, s: Sphere) -> np.ndarray:
    u = rng.standard_normal(3)
    return vec3(s.center + s.radius * u / np.linalg.norm(u))


def _surface_clearance(t: Tetrahedron, p) -> float:
    """Distance from ``p`` to the nearest faceplane or edgeline."""
    d = min(abs(pl.signed_distance(p)) for pl in t.face_planes())
    return min(d, min(distance_point_line(p, t.edge_line(e)) for e in EDGE_LABELS))


def _edge_clearance(t: Tetrahedron, p) -> float:
    return min(distance_point_line(p, t.edge_line(e)) for e in EDGE_LABELS)


def gen_conjugate_pair(rng: np.random.Generator, t: Tetrahedron, clearance: float = 0.02, reach: float = 10.0):
    """Random ``P`` off the surface with a finite conjugate ``Q``.

    ``P`` is drawn in a box of twice the circumradius around the circumcenter;
    both ``P`` and ``Q`` keep ``clearance * R`` away from faceplanes/edgelines
    (``Q`` only from edgelines) and ``Q`` stays within ``reach * R``.
    """
    sph = t.circumsphere
    R = sph.radius
    tol = Tolerance(length_scale=R)
    while True:
        P = sph.center + rng.uniform(-2.0 * R, 2.0 * R, 3)
        if _surface_clearance(t, P) < clearance * R:
            continue
        res = isogonal_conjugate(t, P, tol)
        if not isinstance(res, Point):
            continue
        Q = res.point
        if np.linalg.norm(Q - sph.center) > reach * R or _edge_clearance(t, Q) < clearance * R:
            continue
        return vec3(P), Q
