"""Acceptance criteria, one check per criterion.

Each check prints a single ``ACCEPT criterion k: PASS|FAIL ...`` line.  Run
``pytest tests/test_acceptance.py -s`` (or this file as a script) to see
them; the pytest summary also repeats them.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest

from brane_tiler.cli import run_pipeline
from brane_tiler.consistency import check_r_charge, find_r_charge
from brane_tiler.fan import build_triangulation
from brane_tiler.geometry import cross
from brane_tiler.lattice import matching_character, reduced_character
from brane_tiler.matchings import count_matchings_oracle, diagram_of_center, is_extremal
from brane_tiler.mckay import hilb_stability, typed_character
from brane_tiler.stability import (
    OrbitType,
    classify_cosupport,
    decompose_dim0,
    decompose_dim1,
    is_generic,
    is_theta_stable,
)

from conftest import ACCEPTANCE_LINES, ALL, CONSISTENT, mckay, model
from oracles import empty_triangles, stable_brute
from z6_reference import EDGES_WITH_13, HILB_THETA_Z6, Z6_MATCHINGS, Z6_TYPED_MULTISET, Z6_HILB_STABLE_ROWS, row_edges

SEED = 20240601
SAMPLES_PER_FIXTURE = 1000


def report(k: int, ok: bool, detail: str) -> None:
    line = f"ACCEPT criterion {k}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _row(edges) -> int:
    return next(r for r in Z6_MATCHINGS if row_edges(r) == edges)


def _random_generic(rnd: random.Random, n: int) -> list[int]:
    while True:
        theta = [rnd.randint(-9, 9) for _ in range(n - 1)]
        theta.append(-sum(theta))
        if is_generic(theta):
            return theta


# theta vectors used by criteria 6 and 10, shared so both see the same draws
_THETAS: dict[str, list[list[int]]] = {}


def test_criterion_1_z6_matchings():
    start = time.perf_counter()
    rep = run_pipeline(["mckay", "--cyclic", "6", "--weights", "1,2,3"])
    elapsed = time.perf_counter() - start
    typed = Counter()
    for k, count in rep.details["typed_characters"]:
        typed[tuple(k)] = count
    ok = rep.counts["matchings"] == 17 and dict(typed) == Z6_TYPED_MULTISET and elapsed < 1.0
    verdict = "matches" if dict(typed) == Z6_TYPED_MULTISET else "differs"
    report(1, ok, f"{rep.counts['matchings']} matchings, typed multiset {verdict}, {elapsed:.3f}s")


def test_criterion_2_z6_stability():
    m = model("z6")
    mk = mckay(6, (1, 2, 3))
    stable = {pm.edges for pm in m.matchings if is_theta_stable(m.quiver, pm.edges, HILB_THETA_Z6)}
    rows = {_row(e) for e in stable}
    chars_ok = all(typed_character(mk, row_edges(r)) == Z6_MATCHINGS[r][1] for r in rows)
    ok = rows == Z6_HILB_STABLE_ROWS and chars_ok
    report(2, ok, f"stable rows {sorted(rows)}")


def test_criterion_3_z6_fan():
    m = model("z6")
    tri = build_triangulation(m.tiling, m.lattice, m.matchings, HILB_THETA_Z6)
    rows = [_row(r.edges) for r in tri.rays]
    edges = {frozenset((rows[i], rows[j])) for i, j in tri.edges}
    with13 = {e for e in edges if 13 in e}
    # independent derivation: brute-force stable pairs and empty triangles
    q = m.quiver
    brute_rays = sorted(pm for pm in m.matchings if stable_brute(q, pm.edges, HILB_THETA_Z6))
    brute_edges = [
        (i, j) for i, j in combinations(range(len(brute_rays)), 2)
        if stable_brute(q, brute_rays[i].edges | brute_rays[j].edges, HILB_THETA_Z6)
    ]
    brute_tris = empty_triangles([r.point for r in brute_rays], brute_edges)
    dets = [abs(cross(*(tri.rays[v].point for v in f))) for f in tri.triangles]
    euler = len(tri.rays) - len(tri.edges) + len(tri.triangles)
    ok = (
        with13 == EDGES_WITH_13
        and frozenset({13, 4}) not in edges
        and len(edges) == 12
        and len(tri.triangles) == 6
        and set(tri.edges) == set(brute_edges)
        and set(tri.triangles) == brute_tris
        and all(d == 1 for d in dets)
        and euler == 1
    )
    report(3, ok, f"{len(edges)} edges, {len(tri.triangles)} triangles, dets {sorted(set(dets))}, Euler {euler}")


def test_criterion_4_rank_identities():
    names = ["c3", "z3", "z6", "conifold", "spp", "f0"]
    bad = []
    for name in names:
        L, q = model(name).lattice, model(name).quiver
        n0 = len(q.vertices)
        if (L.rank_lambda, L.rank_m, L.rank_b) != (n0 + 2, 3, n0 - 1):
            bad.append(name)
    report(4, not bad, f"on {', '.join(names)}" + (f"; failing {bad}" if bad else ""))


def test_criterion_5_character_normalisation():
    total, bad = 0, []
    for name in ALL:
        m = model(name)
        for pm in m.matchings:
            total += 1
            if matching_character(m.lattice, pm.edges)(m.lattice.omega) != 1 or reduced_character(m.lattice, pm.edges)[0] != 1:
                bad.append((name, pm.id))
    report(5, not bad, f"{total} matchings over {len(ALL)} fixtures")


def test_criterion_6_oracle_equivalence():
    rnd = random.Random(SEED)
    start = time.perf_counter()
    checks = disagreements = 0
    for name in ALL:
        m = model(name)
        q = m.quiver
        if len(q.vertices) > 10:
            continue
        thetas = _THETAS.setdefault(name, [])
        for _ in range(SAMPLES_PER_FIXTURE):
            k = rnd.randint(1, 3)
            cos = frozenset().union(*(rnd.choice(m.matchings).edges for _ in range(k)))
            theta = _random_generic(rnd, len(q.vertices))
            thetas.append(theta)
            checks += 1
            if is_theta_stable(q, cos, theta) != stable_brute(q, cos, theta):
                disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 30 and checks >= SAMPLES_PER_FIXTURE
    report(6, ok, f"{checks - disagreements}/{checks} agree over {len(_THETAS)} fixtures, {elapsed:.1f}s")


def test_criterion_7_matching_count():
    bad = [n for n in ALL if len(model(n).matchings) != count_matchings_oracle(model(n).tiling)]
    report(7, not bad, f"{len(ALL)} fixtures" + (f"; failing {bad}" if bad else ""))


def test_criterion_8_mckay_consistency():
    groups = [(1, (1, 1, 1)), (3, (1, 1, 1)), (6, (1, 2, 3)), (5, (1, 1, 3)), (7, (1, 2, 4))]
    bad = []
    for n, w in groups:
        q = mckay(n, w).quiver
        margin = check_r_charge(q, {a: Fraction(2, 3) for a in q.arrows}, "geometric")
        eps = find_r_charge(q, "geometric").epsilon
        if margin < Fraction(1, 3) or eps < Fraction(1, 3):
            bad.append(n)
    report(8, not bad, f"R = 2/3 certified with eps >= 1/3 for Z{', Z'.join(str(n) for n, _ in groups)}")


def test_criterion_9_classification_round_trips():
    cases = {"c3": (0,), "z3": hilb_stability(mckay(3, (1, 1, 1))), "z6": HILB_THETA_Z6}
    problems = []
    counts = Counter()
    for name, theta in cases.items():
        m = model(name)
        t = m.tiling
        tri = build_triangulation(m.tiling, m.lattice, m.matchings, theta, cross_check=False)
        rays = tri.rays
        for i, j in tri.edges:
            union = rays[i].edges | rays[j].edges
            counts["edges"] += 1
            if classify_cosupport(t, union) is not OrbitType.DIM1 or set(decompose_dim1(t, union)) != {rays[i].edges, rays[j].edges}:
                problems.append((name, i, j))
        for f in tri.triangles:
            union = frozenset().union(*(rays[v].edges for v in f))
            counts["triangles"] += 1
            if classify_cosupport(t, union) is not OrbitType.DIM0 or set(decompose_dim0(t, union)) != {rays[v].edges for v in f}:
                problems.append((name, f))
            for v, w in combinations(f, 2):
                if classify_cosupport(t, rays[v].edges | rays[w].edges) is not OrbitType.DIM1:
                    problems.append((name, f, v, w))
    report(9, not problems, f"{counts['edges']} edges and {counts['triangles']} triangles on c3, z3, z6")


def test_criterion_10_extremality():
    rnd = random.Random(SEED + 1)
    problems = []
    tested = 0
    for name in CONSISTENT:
        m = model(name)
        q = m.quiver
        d = diagram_of_center(m.lattice, m.matchings)
        extremal = [pm for pm in m.matchings if is_extremal(q, pm.edges)]
        if {pm.point for pm in extremal} != set(d.hull) or len(extremal) != len(d.hull):
            problems.append((name, "hull"))
        n = len(q.vertices)
        thetas = _THETAS.get(name) or [_random_generic(rnd, n) for _ in range(200)]
        thetas = thetas + [[-(n - 1)] + [1] * (n - 1)]
        for theta in thetas:
            tested += 1
            if not all(is_theta_stable(q, pm.edges, theta) for pm in extremal):
                problems.append((name, tuple(theta)))
                break
    report(
        10,
        not problems,
        f"{len(CONSISTENT)} consistent fixtures, {tested} theta vectors"
        + (f"; problems {problems[:3]}" if problems else ""),
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
