"""Acceptance gate: one check per criterion, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import corpus_groups, graphs_on, random_graph, record  # noqa: E402
from coprimegraph import classify as cls  # noqa: E402
from coprimegraph import detect  # noqa: E402
from coprimegraph.coprime import build_coprime_graph, gk_graph, reduced_graph  # noqa: E402
from coprimegraph.embed import CollisionError, literal_plan, plan_embedding, verify_embedding  # noqa: E402
from coprimegraph.graph import Graph  # noqa: E402
from coprimegraph.groups import Symmetric, parse_group_spec  # noqa: E402
from coprimegraph.numtheory import prime_support  # noqa: E402


def _families():
    """The explicitly listed families: cyclic to 500, dihedral and dicyclic to 200,
    S_n and A_n to 8, Z_a x Z_b with ab <= 200."""
    u = cls.Universe(("cyclic", "dihedral", "dicyclic", "symmetric", "alternating", "products"),
                     max_order=200, max_n=8, cyclic_max_order=500)
    return [parse_group_spec(s) for s in u.specs()]


def _summarize(bad: list, limit: int = 4) -> str:
    head = ", ".join(map(str, bad[:limit]))
    return head + (f" +{len(bad) - limit} more" if len(bad) > limit else "")


def _tail(bad: list) -> str:
    return f" ({_summarize(bad)})" if bad else ""


# -- 1 ------------------------------------------------------------------------------------


def check_criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    groups = _families()
    bad = []
    for g in groups:
        r = reduced_graph(g)
        crit = cls.criterion_c4_free(g)
        c4 = detect.is_c4_free(r)[0]
        split = detect.is_split(r).split
        if not (c4 == split == crit == cls.criterion_split(g)):
            bad.append(g.spec())
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    return ok, f"{len(groups)} groups, {len(bad)} disagreements{_tail(bad)}, {elapsed:.1f}s (limit 120s)"


# -- 2 ------------------------------------------------------------------------------------


def check_criterion_2() -> tuple[bool, str]:
    groups = corpus_groups(12)
    claw_bad, k14_bad = [], []
    for g in groups:
        r = reduced_graph(g)
        if detect.is_claw_free(r)[0] != (g.order <= 3):
            claw_bad.append(g.spec())
        if detect.is_star_free(r, 4)[0] != (g.order <= 4):
            k14_bad.append(g.spec())
    witnesses = []
    for spec in ("Z(6)", "S(3)"):
        full = build_coprime_graph(parse_group_spec(spec))
        ok, w = detect.is_claw_free(full)
        witnesses.append(not ok and detect.verify_witness(full, w))
    ok = not claw_bad and not k14_bad and all(witnesses)
    detail = (
        f"{len(groups)} groups of order <= 12; claw mismatches [{_summarize(claw_bad)}], "
        f"K1,4 mismatches [{_summarize(k14_bad)}], claw witnesses in Z(6), S(3): {witnesses}"
    )
    return ok, detail


# -- 3 ------------------------------------------------------------------------------------


def check_criterion_3() -> tuple[bool, str]:
    groups = corpus_groups()
    bad = []
    for g in groups:
        if detect.is_cograph(reduced_graph(g))[0] != cls.criterion_cograph(g):
            bad.append(g.spec())
    z30 = parse_group_spec("Z(30)")
    full = build_coprime_graph(z30)
    ok30, w = detect.is_cograph(full)
    p4 = not ok30 and w.kind == "P4" and detect.verify_witness(full, w)
    gk = gk_graph(z30)
    gk_p3_free = detect.is_p3_free(gk)[0] and len(gk.edges) == 3
    ok = not bad and p4 and gk_p3_free
    orders = [full.orders[v] for v in w.vertices] if w else None
    return ok, (
        f"{len(groups)} groups, {len(bad)} disagreements{_tail(bad)}; "
        f"Z(30) P4 orders {orders}, GK K3 P3-free={gk_p3_free}"
    )


# -- 4 ------------------------------------------------------------------------------------


def check_criterion_4() -> tuple[bool, str]:
    checked, bad, low = 0, [], []
    for g in corpus_groups():
        k = len(g.primes())
        nil = g.is_nilpotent()
        if not (nil or k <= 3):
            continue
        at_free = detect.is_at_free(reduced_graph(g))[0]
        crit = cls.criterion_at_free(g)
        checked += 1
        if crit is None or at_free != crit:
            bad.append(g.spec())
        if nil and at_free != (k < 3):
            bad.append(g.spec() + " (nilpotent)")
        if k <= 2 and not at_free:
            low.append(g.spec())
    example = detect.is_at_free(reduced_graph(parse_group_spec("S(3)xZ(5)")))[0]
    d60 = not detect.is_at_free(reduced_graph(parse_group_spec("D(60)")))[0]
    ok = not bad and not low and example and d60
    return ok, (
        f"{checked} nilpotent or |pi|<=3 groups, {len(bad)} disagreements{_tail(bad)}, "
        f"{len(low)} ATs with |pi|<=2; S(3)xZ(5) AT-free={example}; D(60) has AT={d60}"
    )


# -- 5 ------------------------------------------------------------------------------------


def check_criterion_5() -> tuple[bool, str]:
    small = [detect.is_at_free(reduced_graph(Symmetric(n)))[0] for n in range(1, 8)]
    prime_support.cache_clear()  # time a cold start
    start = time.perf_counter()
    s8 = Symmetric(8)
    r = reduced_graph(s8)
    w = detect.find_asteroidal_triple(r)
    elapsed = time.perf_counter() - start
    orders = None
    if w is not None:
        # each witness class must contain the element order of the matching cycle type
        supports = sorted(r.classes[c].primes for c, _ in w.vertices)
        hosts = {6: (2, 3), 10: (2, 5), 15: (3, 5)}
        orders = sorted(d for d, p in hosts.items() if p in supports and d in r.classes[r.class_of(p)].orders)
    ok = all(small) and orders == [6, 10, 15] and elapsed < 5
    return ok, f"S(1..7) AT-free {small}; S(8) AT orders {orders}; S(8) check {elapsed * 1000:.2f}ms (limit 5s)"


# -- 6 ------------------------------------------------------------------------------------


EXTRA_CENTRAL = ("Z(2)xZ(105)", "Z(6)xZ(35)", "Z(210)xS(3)", "D(420)", "Dic(840)", "Z(2)xA(7)xZ(3)")


def check_criterion_6() -> tuple[bool, str]:
    candidates = corpus_groups() + [parse_group_spec(s) for s in EXTRA_CENTRAL]
    tested, bad = [], []
    for g in candidates:
        if len(g.primes()) < 4 or g.center_order() == 1:
            continue
        tested.append(g.spec())
        if detect.is_at_free(reduced_graph(g))[0]:
            bad.append(g.spec())
    ok = bool(tested) and not bad
    return ok, f"{len(tested)} groups with |pi|>=4 and nontrivial centre ({_summarize(tested, 6)}); {len(bad)} without AT"


# -- 7 ------------------------------------------------------------------------------------


def check_criterion_7() -> tuple[bool, str]:
    failures = []
    exhaustive = 0
    for h in graphs_on(5):
        exhaustive += 1
        if not verify_embedding(h, plan_embedding(h))[0]:
            failures.append(h.edges())
    rng = random.Random(7)
    for _ in range(500):
        h = random_graph(rng, rng.randint(6, 9))
        if not verify_embedding(h, plan_embedding(h))[0]:
            failures.append(h.edges())
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    try:
        literal_plan(p3)
        collision = False
    except CollisionError:
        collision = True
    complete_ok = []
    for n in range(1, 7):
        kn = Graph.from_edges(n, list(combinations(range(n), 2)))
        try:
            complete_ok.append(verify_embedding(kn, literal_plan(kn))[0])
        except CollisionError:
            complete_ok.append(False)
    ok = exhaustive == 1024 and not failures and collision and all(complete_ok)
    return ok, (
        f"{exhaustive} + 500 round trips, {len(failures)} failures; literal P3 collision={collision}; "
        f"literal K1..K6 {complete_ok}"
    )


# -- 8 ------------------------------------------------------------------------------------

_CHECKS = {
    "c4_free": detect.is_c4_free,
    "claw_free": detect.is_claw_free,
    "k14_free": lambda h: detect.is_star_free(h, 4),
    "cograph": detect.is_cograph,
    "split": lambda h: (detect.is_split(h).split, None),
    "at_free": detect.is_at_free,
}


def check_criterion_8() -> tuple[bool, str]:
    groups = corpus_groups(200)
    bad = []
    for g in groups:
        full, red = build_coprime_graph(g), reduced_graph(g)
        for name, check in _CHECKS.items():
            if check(full)[0] != check(red)[0]:
                bad.append(f"{g.spec()}:{name}")
    return not bad, f"{len(groups)} groups x {len(_CHECKS)} classes, {len(bad)} mismatches{_tail(bad)}"


# -- 9 ------------------------------------------------------------------------------------


def check_criterion_9() -> tuple[bool, str]:
    adj_bad, nbr_bad = [], []
    built = 0
    for g in corpus_groups(200):
        full = build_coprime_graph(g)
        built += 1
        if cls.adjacency_law_violations(full, full.orders):
            adj_bad.append(g.spec())
        if g.order <= 60 and cls.neighborhood_law_violations(full, full.orders):
            nbr_bad.append(g.spec())
    rng = random.Random(12)
    split_bad = 0
    for _ in range(10_000):
        h = random_graph(rng, 12)
        try:
            res = detect.is_split(h)
        except detect.InternalDisagreement:
            split_bad += 1
            continue
        forbidden = any(detect.find_induced(p, h) for p in (detect.C4, detect.TWO_K2, detect.C5))
        if res.split == forbidden:
            split_bad += 1
    ok = not adj_bad and not nbr_bad and split_bad == 0
    return ok, (
        f"adjacency law on {built} graphs: {len(adj_bad)} failures; neighbourhood law (order <= 60): "
        f"{len(nbr_bad)} failures; split routes on 10^4 random 12-vertex graphs: {split_bad} disagreements"
    )


CRITERIA = {n: globals()[f"check_criterion_{n}"] for n in range(1, 10)}


def _run(n: int) -> None:
    ok, detail = CRITERIA[n]()
    record(n, ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_c4_and_split():
    _run(1)


def test_criterion_2_claw_and_k14():
    _run(2)


def test_criterion_3_cograph():
    _run(3)


def test_criterion_4_at_criteria():
    _run(4)


def test_criterion_5_symmetric_boundary():
    _run(5)


def test_criterion_6_central_groups_have_at():
    _run(6)


def test_criterion_7_embedding_round_trip():
    _run(7)


def test_criterion_8_quotient_soundness():
    _run(8)


def test_criterion_9_property_suites():
    _run(9)


if __name__ == "__main__":
    failed = 0
    for n, check in CRITERIA.items():
        ok, detail = check()
        failed += not ok
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
