"""Group-level criteria for the graph classes, and the cross-check harness.

Criteria read only the order spectrum, so they apply to groups far larger
than any graph that could be built. Detectors run on the prime-support
quotient graph (or the full element graph on request), and the harness
records every disagreement between the two.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from . import detect
from .coprime import (
    DEFAULT_ORDER_CAP,
    PrimeSetGraph,
    build_coprime_graph,
    gk_graph,
    reduced_graph,
)
from .detect import Witness
from .graph import Graph
from .groups import (
    Alternating,
    FiniteGroup,
    OrderSpectrum,
    Symmetric,
    Unsupported,
    parse_group_spec,
)
from .numtheory import prime_support

CLASSES = ("c4_free", "claw_free", "k14_free", "cograph", "split", "at_free")
THEOREMS = ("3.2", "3.3", "3.4", "3.5", "3.6", "4.1", "4.2", "4.3", "P1", "P2", "P3", "P4")
#: Largest group on which the element-level adjacency laws are checked.
LAW_CHECK_CAP = 200


# -- criteria --------------------------------------------------------------------


def realized_prime_pairs(spectrum: OrderSpectrum, exact: bool = False) -> set[tuple[int, int]]:
    """Pairs p < q such that pq divides some element order (or equals one, if ``exact``)."""
    pairs = set()
    for d in spectrum.orders():
        support = prime_support(d)
        for p, q in combinations(support, 2):
            if not exact or d == p * q:
                pairs.add((p, q))
    return pairs


def criterion_c4_free(g: FiniteGroup) -> bool:
    """Nilpotent of order p^n or 2p^n (p odd in the second form)."""
    if not g.is_nilpotent():
        return False
    primes = prime_support(g.order)
    if len(primes) <= 1:
        return True
    return len(primes) == 2 and primes[0] == 2 and g.order % 4 != 0


def criterion_split(g: FiniteGroup) -> bool:
    # split and C4-free coincide for co-prime graphs
    return criterion_c4_free(g)


def criterion_claw_free(g: FiniteGroup) -> bool:
    return g.order <= 3


def criterion_k14_free(g: FiniteGroup) -> bool:
    return g.order <= 4


def criterion_cograph(g: FiniteGroup) -> bool:
    """False iff orders divisible by p1*p2 and p2*p3 occur for distinct primes."""
    pairs = realized_prime_pairs(g.order_spectrum())
    for a, b in combinations(pairs, 2):
        if len(set(a) & set(b)) == 1:
            return False
    return True


def criterion_at_free(g: FiniteGroup) -> bool | None:
    """AT-freeness where a characterization is known, else None.

    At most two primes: AT-free. Nilpotent: AT-free iff fewer than three
    primes. Exactly three primes: AT-free iff some pairwise product of them
    divides no element order.
    """
    primes = g.primes()
    if len(primes) <= 2:
        return True
    if g.is_nilpotent():
        return False
    if len(primes) == 3:
        return len(realized_prime_pairs(g.order_spectrum())) < 3
    return None


def criterion_symmetric_at_free(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return n <= 7


# -- element-level laws ------------------------------------------------------------


def adjacency_law_violations(graph: Graph, orders: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs whose adjacency disagrees with disjointness of prime supports."""
    supports = [frozenset(prime_support(o)) for o in orders]
    bad = []
    for x in range(graph.n):
        for y in range(x + 1, graph.n):
            if graph.has_edge(x, y) != (not supports[x] & supports[y]):
                bad.append((x, y))
    return bad


def neighborhood_law_violations(graph: Graph, orders: Sequence[int]) -> list[tuple[int, int]]:
    """Non-identity (x, y) where pi(x) <= pi(y) disagrees with N(y) <= N(x)."""
    supports = [frozenset(prime_support(o)) for o in orders]
    bad = []
    for x in range(graph.n):
        if orders[x] == 1:
            continue
        for y in range(graph.n):
            if orders[y] == 1 or x == y:
                continue
            contained = supports[x] <= supports[y]
            nested = graph.adj[y] & ~graph.adj[x] == 0
            if contained != nested:
                bad.append((x, y))
    return bad


def identity_neighborhood_cases(graph: Graph, orders: Sequence[int]) -> list[int]:
    """Vertices y where the law fails with x = identity (expected for all y != e)."""
    e = orders.index(1)
    return [y for y in range(graph.n) if y != e and graph.adj[y] & ~graph.adj[e]]


# -- reports ---------------------------------------------------------------------


@dataclass
class ClassCheck:
    detector: bool
    criterion: bool | None
    witness: dict | None = None
    note: str = ""

    @property
    def agrees(self) -> bool | None:
        return None if self.criterion is None else self.detector == self.criterion

    def to_dict(self) -> dict:
        out = {"detector": self.detector, "criterion": self.criterion, "agrees": self.agrees}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ClassReport:
    group: str
    order: int
    primes: tuple[int, ...]
    nilpotent: bool
    center_order: int | None = None
    graph: str = "reduced"
    flags: dict[str, ClassCheck] = field(default_factory=dict)
    timing_ms: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None or any(c.agrees is False for c in self.flags.values())

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "group": self.group,
            "order": self.order,
            "primes": list(self.primes),
            "nilpotent": self.nilpotent,
            "center_order": self.center_order,
            "graph": self.graph,
            "flags": {k: v.to_dict() for k, v in self.flags.items()},
            "failed": self.failed,
        }
        if self.error is not None:
            out["error"] = self.error
        if timing:
            out["timing_ms"] = {k: round(v, 3) for k, v in self.timing_ms.items()}
        return out


def describe_witness(graph: Graph | PrimeSetGraph, witness: Witness | None) -> dict | None:
    """JSON-ready witness with element orders and prime supports."""
    if witness is None:
        return None
    if isinstance(graph, PrimeSetGraph):
        classes = [graph.classes[c] for c, _ in witness.vertices]
        return {
            "kind": witness.kind,
            "vertices": [list(v) for v in witness.vertices],
            "orders": [c.orders[0] for c in classes],
            "primes": [list(c.primes) for c in classes],
        }
    orders = getattr(graph, "orders", None)
    out = {"kind": witness.kind, "vertices": list(witness.vertices)}
    if orders is not None:
        out["orders"] = [orders[v] for v in witness.vertices]
        out["primes"] = [list(prime_support(orders[v])) for v in witness.vertices]
        out["labels"] = [graph.name(v) for v in witness.vertices]
    return out


def _criterion_at(g: FiniteGroup) -> tuple[bool | None, str]:
    crit = criterion_at_free(g)
    if crit is not None:
        return crit, ""
    if isinstance(g, Symmetric) and not isinstance(g, Alternating):
        return criterion_symmetric_at_free(g.n), "symmetric-group criterion"
    return None, "no criterion known for four or more primes without nilpotency"


_DETECTORS: dict[str, Callable] = {
    "c4_free": detect.is_c4_free,
    "claw_free": detect.is_claw_free,
    "k14_free": lambda h: detect.is_star_free(h, 4),
    "cograph": detect.is_cograph,
    "at_free": detect.is_at_free,
}

_CRITERIA: dict[str, Callable] = {
    "c4_free": criterion_c4_free,
    "claw_free": criterion_claw_free,
    "k14_free": criterion_k14_free,
    "cograph": criterion_cograph,
    "split": criterion_split,
}


def host_graph(g: FiniteGroup, full_graph: bool = False, cap: int = DEFAULT_ORDER_CAP):
    return build_coprime_graph(g, cap) if full_graph else reduced_graph(g)


def classify_group(
    g: FiniteGroup,
    classes: Iterable[str] = CLASSES,
    full_graph: bool = False,
    cap: int = DEFAULT_ORDER_CAP,
) -> ClassReport:
    report = ClassReport(g.spec(), g.order, g.primes(), g.is_nilpotent(), graph="full" if full_graph else "reduced")
    try:
        report.center_order = g.center_order()
    except Unsupported:
        pass
    start = time.perf_counter()
    host = host_graph(g, full_graph, cap)
    report.timing_ms["build"] = (time.perf_counter() - start) * 1000
    for name in classes:
        start = time.perf_counter()
        if name == "split":
            res = detect.is_split(host)
            check = ClassCheck(res.split, criterion_split(g), describe_witness(host, res.witness))
        elif name == "at_free":
            ok, w = detect.is_at_free(host)
            crit, note = _criterion_at(g)
            check = ClassCheck(ok, crit, describe_witness(host, w), note)
        else:
            ok, w = _DETECTORS[name](host)
            check = ClassCheck(ok, _CRITERIA[name](g), describe_witness(host, w))
        report.flags[name] = check
        report.timing_ms[name] = (time.perf_counter() - start) * 1000
    return report


# -- propositions -------------------------------------------------------------------


@dataclass
class PropositionCheck:
    id: str
    holds: bool
    vacuous: bool
    detail: str = ""


def check_proposition(pid: str, g: FiniteGroup, host=None) -> PropositionCheck:
    """Check one implication on ``g`` (never its converse).

    P2: co-prime graph is a cograph => GK graph is P3-free.
    P3: AT present => at least three primes divide |G|.
    P4: AT-free with at least four primes => trivial centre.
    """
    host = host if host is not None else reduced_graph(g)
    if pid == "P2":
        cograph, _ = detect.is_cograph(host)
        p3_free, w = detect.is_p3_free(gk_graph(g))
        detail = f"cograph={cograph}, GK P3-free={p3_free}"
        if w is not None:
            detail += f", GK path {list(w.vertices)}"
        return PropositionCheck(pid, (not cograph) or p3_free, not cograph, detail)
    if pid == "P3":
        w = detect.find_asteroidal_triple(host)
        k = len(g.primes())
        return PropositionCheck(pid, w is None or k >= 3, w is None, f"AT={w is not None}, |pi|={k}")
    if pid == "P4":
        k = len(g.primes())
        at_free, _ = detect.is_at_free(host)
        if not (at_free and k >= 4):
            return PropositionCheck(pid, True, True, f"AT-free={at_free}, |pi|={k}")
        z = g.center_order()  # may raise Unsupported
        return PropositionCheck(pid, z == 1, False, f"AT-free, |pi|={k}, |Z|={z}")
    raise ValueError(f"unknown proposition {pid!r}")


# -- harness ---------------------------------------------------------------------------


@dataclass
class TheoremResult:
    theorem: str
    universe: str
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def upheld(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "universe": self.universe,
            "checked": self.checked,
            "violations": self.violations,
            "upheld": self.upheld,
        }


FAMILIES = ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating", "products", "example")


@dataclass(frozen=True)
class Universe:
    """Named families with bounds; ``max_order`` bounds |G|, ``max_n`` the degree of S(n), A(n)."""

    families: tuple[str, ...]
    max_order: int = 200
    max_n: int = 8
    cyclic_max_order: int | None = None
    extra: tuple = ()  # spec strings or FiniteGroup instances (e.g. Cayley tables)

    def __post_init__(self) -> None:
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown families: {sorted(unknown)}")

    def specs(self) -> list:
        out: list[str] = []
        fam = set(self.families)
        if "cyclic" in fam:
            out += [f"Z({n})" for n in range(1, (self.cyclic_max_order or self.max_order) + 1)]
        if "dihedral" in fam:
            out += [f"D({n})" for n in range(2, self.max_order + 1, 2)]
        if "dicyclic" in fam:
            out += [f"Dic({n})" for n in range(8, self.max_order + 1, 4)]
        if "symmetric" in fam:
            out += [f"S({n})" for n in range(1, self.max_n + 1)]
        if "alternating" in fam:
            out += [f"A({n})" for n in range(1, self.max_n + 1)]
        if "products" in fam:
            out += [
                f"Z({a})xZ({b})"
                for a in range(2, self.max_order + 1)
                for b in range(a, self.max_order // a + 1)
            ]
        if "example" in fam:
            out.append("S(3)xZ(5)")
        out += list(self.extra)
        return out

    def describe(self) -> str:
        parts = [f"families={','.join(self.families)}", f"max_order={self.max_order}", f"max_n={self.max_n}"]
        if self.cyclic_max_order:
            parts.append(f"cyclic_max_order={self.cyclic_max_order}")
        if self.extra:
            parts.append("extra=" + ",".join(e if isinstance(e, str) else e.spec() for e in self.extra))
        return " ".join(parts)


def default_corpus() -> Universe:
    return Universe(FAMILIES, max_order=200, max_n=8, cyclic_max_order=500)


_THEOREM_CLASSES = {
    "3.2": ("c4_free",),
    "3.3": ("claw_free", "k14_free"),
    "3.4": ("cograph",),
    "3.5": ("cograph",),
    "3.6": ("split", "c4_free"),
    "4.1": ("at_free",),
    "4.2": ("at_free",),
    "4.3": ("at_free",),
}


def _violation(g: FiniteGroup, detail: str, witness: dict | None = None) -> dict:
    out = {"group": g.spec(), "detail": detail}
    if witness is not None:
        out["witness"] = witness
    return out


def _mismatch(report: ClassReport, name: str) -> dict | None:
    c = report.flags[name]
    if c.agrees is False:
        return {"detail": f"{name}: detector={c.detector} criterion={c.criterion}", "witness": c.witness}
    return None


def evaluate_theorem(tid: str, g: FiniteGroup, report: ClassReport, host) -> tuple[bool, list[dict]]:
    """Whether ``tid`` applies to ``g`` and, if so, its violations there."""
    primes = g.primes()
    found: list[dict] = []

    def flag(name: str) -> None:
        m = _mismatch(report, name)
        if m:
            found.append(_violation(g, m["detail"], m["witness"]))

    if tid in ("3.2", "3.5"):
        flag(_THEOREM_CLASSES[tid][0])
        return True, found
    if tid == "3.3":
        flag("claw_free")
        flag("k14_free")
        return True, found
    if tid == "3.6":
        flag("split")
        if criterion_split(g) != criterion_c4_free(g):
            found.append(_violation(g, "split and C4-free criteria differ"))
        if report.flags["split"].detector != report.flags["c4_free"].detector:
            found.append(_violation(g, "split and C4-free detectors differ"))
        return True, found
    if tid == "3.4":
        if not report.nilpotent:
            return False, found
        c = report.flags["cograph"]
        if c.detector != (len(primes) < 3):
            found.append(_violation(g, f"nilpotent, |pi|={len(primes)}, cograph={c.detector}", c.witness))
        return True, found
    at = report.flags.get("at_free")
    if tid == "4.1":
        if not report.nilpotent:
            return False, found
        if at.detector != (len(primes) < 3):
            found.append(_violation(g, f"nilpotent, |pi|={len(primes)}, AT-free={at.detector}", at.witness))
        return True, found
    if tid == "4.2":
        if len(primes) != 3:
            return False, found
        has_all = len(realized_prime_pairs(g.order_spectrum())) == 3
        if at.detector == has_all:
            found.append(_violation(g, f"all pairwise products realized={has_all}, AT-free={at.detector}", at.witness))
        return True, found
    if tid == "4.3":
        if not isinstance(g, Symmetric) or isinstance(g, Alternating):
            return False, found
        if at.detector != criterion_symmetric_at_free(g.n):
            found.append(_violation(g, f"S({g.n}) AT-free={at.detector}", at.witness))
        return True, found
    if tid == "P1":
        if g.order > LAW_CHECK_CAP:
            return False, found
        full = build_coprime_graph(g)
        for x, y in adjacency_law_violations(full, full.orders):
            found.append(_violation(g, f"adjacency law fails at ({x}, {y})"))
        for x, y in neighborhood_law_violations(full, full.orders):
            found.append(_violation(g, f"neighborhood law fails at ({x}, {y})"))
        return True, found
    if tid in ("P2", "P3", "P4"):
        try:
            res = check_proposition(tid, g, host)
        except Unsupported as exc:
            found.append(_violation(g, f"{tid}: {exc}"))
            return True, found
        if not res.holds:
            found.append(_violation(g, f"{tid}: {res.detail}"))
        return True, found
    raise ValueError(f"unknown theorem id {tid!r}")


@dataclass
class GroupOutcome:
    report: ClassReport
    applies: dict[str, bool]
    violations: dict[str, list[dict]]


def _run_one(spec: str | FiniteGroup, theorems: tuple[str, ...], full_graph: bool) -> GroupOutcome:
    classes = sorted({c for t in theorems for c in _THEOREM_CLASSES.get(t, ())}, key=CLASSES.index)
    name = spec if isinstance(spec, str) else spec.spec()
    try:
        g = parse_group_spec(spec) if isinstance(spec, str) else spec
        report = classify_group(g, classes, full_graph=full_graph)
        host = host_graph(g, full_graph)
    except Exception as exc:  # reported per group, never aborts the run
        error = f"{type(exc).__name__}: {exc}"
        report = ClassReport(name, 0, (), False, error=error)
        return GroupOutcome(report, {t: True for t in theorems}, {t: [{"group": name, "detail": error}] for t in theorems})
    applies, violations = {}, {}
    for t in theorems:
        try:
            applies[t], violations[t] = evaluate_theorem(t, g, report, host)
        except Exception as exc:
            applies[t], violations[t] = True, [_violation(g, f"{type(exc).__name__}: {exc}")]
    return GroupOutcome(report, applies, violations)


def run_theorem_harness(
    universe: Universe,
    theorems: Sequence[str] = THEOREMS,
    jobs: int = 1,
    full_graph: bool = False,
) -> tuple[list[TheoremResult], list[ClassReport]]:
    """Cross-check criteria against detectors on every group in ``universe``.

    Results come back in universe order regardless of ``jobs``.
    """
    theorems = tuple(theorems)
    bad = [t for t in theorems if t not in THEOREMS]
    if bad:
        raise ValueError(f"unknown theorem ids: {bad}")
    specs = universe.specs()
    if not specs:
        raise ValueError("empty universe")
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            outcomes = list(
                pool.map(_run_one, specs, [theorems] * len(specs), [full_graph] * len(specs), chunksize=8)
            )
    else:
        outcomes = [_run_one(s, theorems, full_graph) for s in specs]
    results = []
    for t in theorems:
        res = TheoremResult(t, universe.describe())
        for o in outcomes:
            if o.applies.get(t):
                res.checked += 1
                res.violations.extend(o.violations[t])
        results.append(res)
    return results, [o.report for o in outcomes]


def dihedral_readings() -> dict:
    """Which dihedral group fits a 'D_30' said to have three primes and an AT."""
    out = {}
    for spec in ("D(30)", "D(60)"):
        g = parse_group_spec(spec)
        w = detect.find_asteroidal_triple(reduced_graph(g))
        out[spec] = {
            "primes": list(g.primes()),
            "nilpotent": g.is_nilpotent(),
            "has_at": w is not None,
            "witness": describe_witness(reduced_graph(g), w),
        }
    out["consistent_readings"] = [s for s in ("D(30)", "D(60)") if out[s]["has_at"] and len(out[s]["primes"]) == 3]
    return out
