"""Acceptance criteria, one test each, at the stated tolerances.

Each test prints a ``PASS``/``FAIL`` line.  The suite reports come from
two concurrent runs of ``isotet verify --suite all --seed 42`` (default
1000 trials), which also serve the determinism criterion.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from isotet.geom3 import Sphere, circle_through
from isotet.harness.sampling import TrialConfig, gen_isosceles, trial_rng
from isotet.harness.suites import run_suite
from isotet.quadric import (
    Tangent,
    hpar,
    hpar_residual,
    pedal_distance_closed_form,
    pedal_distance_identity,
    sample_sphere_hpar,
    second_circle_intersection,
)
from isotet.tetra import bimedian, canonical_embedding, quantities


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] {'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def seed42(tmp_path_factory):
    """Two concurrent ``verify --suite all --seed 42`` runs: (bytes, bytes, seconds)."""
    out = tmp_path_factory.mktemp("verify")
    paths = [out / "a.json", out / "b.json"]
    cmd = [sys.executable, "-m", "isotet.harness.cli", "verify", "--suite", "all", "--seed", "42", "--json"]
    start = time.perf_counter()
    procs = [subprocess.Popen(cmd + [str(p)], stdout=subprocess.DEVNULL) for p in paths]
    codes = [p.wait() for p in procs]
    elapsed = time.perf_counter() - start
    return paths[0].read_bytes(), paths[1].read_bytes(), elapsed, codes


@pytest.fixture(scope="module")
def reports(seed42):
    return {r["suite"]: r for r in json.loads(seed42[0])}


def _suites_ok(reports, ids, min_trials=1000):
    bad = [s for s in ids if not (reports[s]["passed"] and reports[s]["trials"] >= min_trials)]
    worst = {s: f"{reports[s]['max_residual']:.1e}" for s in ids}
    return not bad, f"suites {', '.join(ids)}; max residuals {worst}; failing {bad or 'none'}"


def test_criterion_1_golden_quantities(report):
    q = quantities((1, 2, 3))
    t = canonical_embedding((1, 2, 3))
    x, y, z = (t.edge_length(e) for e in ("BC", "CD", "BD"))
    s = (x + y + z) / 2
    heron = math.sqrt(s * (s - x) * (s - y) * (s - z))
    dist = abs(t.face_plane("A").signed_distance((0, 0, 0)))
    cos_dihedral = -float(t.face_plane("A").normal @ t.face_plane("B").normal)
    half = math.sin(math.acos(cos_dihedral) / 2)
    rel = {
        "S": abs(q.S - 14) / 14,
        "d": abs(q.d - 6 / 7) / (6 / 7),
        "sin": abs(q.sin_theta - 2 / 7) / (2 / 7),
        "heron": abs(heron - 14) / 14,
        "plane": abs(dist - 6 / 7) / (6 / 7),
        "dihedral": abs(half - 2 / 7) / (2 / 7),
    }
    ok = max(rel.values()) <= 1e-12
    assert report(1, ok, f"max relative error {max(rel.values()):.1e} (S=14, d=6/7, sin=2/7)")


def test_criterion_2_tetrahedron_properties(report, reports):
    ok, detail = _suites_ok(reports, ["P2.1i", "P2.1ii", "P2.1iii"])
    assert report(2, ok, detail)


def test_criterion_3_conjugation(report, reports):
    ok, detail = _suites_ok(reports, ["T3.1", "C3.3", "C3.4"])
    assert report(3, ok, detail)


def test_criterion_4_inversive(report, reports):
    ok, detail = _suites_ok(reports, ["P4.1", "P4.2", "P4.3i", "P4.3ii", "P4.4"], min_trials=500)
    assert report(4, ok, detail)


def test_criterion_5_paraboloids(report, reports):
    """Forward direction and the surface memberships of vertices and bimedians."""
    ok, detail = _suites_ok(reports, ["T5.4fwd", "T5.4conv", "L5.3"])
    worst = 0.0
    rng = np.random.default_rng(5)
    for _ in range(200):
        _, frame = gen_isosceles(rng, TrialConfig())
        t = frame.tetrahedron()
        R = frame.params.circumradius
        for axis in "ABC":
            h = hpar(frame, axis)
            pts = list(t.vertices)
            for other in "ABC":
                if other != axis:
                    pts += [bimedian(t, other).at(s) for s in rng.uniform(-3 * R, 3 * R, 3)]
            worst = max(worst, max(abs(hpar_residual(h, p)) for p in pts) / R)
    ok = ok and worst <= 1e-12
    assert report("5", ok, f"{detail}; vertex/bimedian residual {worst:.1e} <= 1e-12")


@pytest.mark.xfail(strict=True, reason="the stated identity omits a factor 1/(1/a^2+1/b^2+1/c^2)")
def test_criterion_5_proof_identity_literal(report):
    """(|M'P_B|^2 - |M'P_C|^2)/4 against x0 y0/(ab) + z0/c, 1e-10 relative."""
    rng = trial_rng(42, "identity", 0)
    worst = 0.0
    for _ in range(1000):
        params = rng.uniform(0.3, 3.0, 3)
        p = rng.uniform(-3, 3, 3)
        geo = pedal_distance_identity(params, p)
        closed = pedal_distance_closed_form(params, p)
        worst = max(worst, abs(geo - closed) / max(abs(closed), 1e-300))
    ok = worst <= 1e-10
    report("5 (proof identity)", ok, f"max relative gap {worst:.3g}; at (1,1,0), (1,2,3): "
           f"{pedal_distance_identity((1, 2, 3), (1, 1, 0)):.6f} vs {pedal_distance_closed_form((1, 2, 3), (1, 1, 0))}")
    assert ok


def test_criterion_6_tangency(report, reports):
    ok, detail = _suites_ok(reports, ["P5.6"], min_trials=500)
    assert report(6, ok, detail + " (one on- and one off-surface sample per trial)")


def test_criterion_7_circumsphere(report, reports):
    ok, detail = _suites_ok(reports, ["T6.1"])
    assert report(7, ok, detail + " (includes the planar AtInfinity contrast)")


def test_criterion_8_bogdanov(report, reports):
    ok, detail = _suites_ok(reports, ["P6.2"], min_trials=500)
    # the on-surface quarter of the samples must really take the tangent branch
    rng = np.random.default_rng(8)
    params = (1.3, 0.7, 2.2)
    t = canonical_embedding(params)
    omega = Sphere((0, 0, 0), t.circumradius)
    tangent = 0
    for _ in range(50):
        X = sample_sphere_hpar(params, rng, "A")
        c1 = circle_through(X, t["D"], t["A"])
        c2 = circle_through(X, t["B"], t["C"])
        tangent += isinstance(second_circle_intersection(omega, c1, c2, X), Tangent)
    small = run_suite("P6.2", TrialConfig(trials=500, tol_pos=1e-8))
    ok = ok and tangent == 50 and small.passed
    assert report(8, ok, f"{detail}; tangent branch hit {tangent}/50; 500-trial run passed={small.passed}")


def test_criterion_9_determinism(report, seed42):
    a, b, elapsed, codes = seed42
    ok = a == b and codes == [0, 0] and len(json.loads(a)) == 18
    assert report(9, ok, f"byte-identical={a == b}, exit codes {codes}, {elapsed:.1f} s for two concurrent runs")
