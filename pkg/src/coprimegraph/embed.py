"""Realize any finite graph as an induced subgraph of a cyclic co-prime graph.

Every non-edge {u, v} gets its own prime, which divides the orders assigned
to both u and v; so non-adjacent vertices share a prime and adjacent ones
share none. Each vertex also gets a fresh prime of its own, which keeps all
assigned orders distinct (and therefore realizable by distinct elements of
Z_k, k the product of all primes used).

:func:`literal_plan` instead gives fresh primes only to vertices of full
degree, as in the classical construction. Two vertices whose non-edges are
the same single pair then need two elements of one prime order p, and Z_k
has only p - 1 of them; for p = 2 that is one too few.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph
from .numtheory import first_primes, phi

DEFAULT_VERTEX_CAP = 64


class CapExceeded(ValueError):
    pass


class CollisionError(ValueError):
    def __init__(self, pair: tuple[int, int], order: int, available: int):
        self.pair = pair
        self.order = order
        self.available = available
        super().__init__(
            f"vertices {pair[0]} and {pair[1]} both need an element of order {order}, "
            f"but Z_k has only {available} such element{'s' if available != 1 else ''}"
        )


@dataclass(frozen=True)
class EmbeddingPlan:
    n: int
    k: int
    factors: dict[int, tuple[int, ...]]  # vertex -> primes of its assigned order
    nonedge_primes: dict[tuple[int, int], int]
    vertex_primes: dict[int, int]
    s: int
    r: int
    w_set: tuple[int, ...]

    @property
    def assignment(self) -> dict[int, int]:
        return {v: math.prod(ps) for v, ps in self.factors.items()}

    @property
    def primes(self) -> list[int]:
        return sorted(set(self.nonedge_primes.values()) | set(self.vertex_primes.values()))

    def problems(self, graph: Graph) -> list[str]:
        """Plan-level invariants, checked without building any group."""
        bad = []
        used = list(self.nonedge_primes.values()) + list(self.vertex_primes.values())
        if len(set(used)) != len(used):
            bad.append("a prime is allocated twice")
        orders = self.assignment
        for v, d in orders.items():
            if d <= 1 or self.k % d:
                bad.append(f"order {d} of vertex {v} does not properly divide k")
        if len(set(orders.values())) != len(orders):
            bad.append("assigned orders are not distinct")
        for (u, v), p in self.nonedge_primes.items():
            if orders[u] % p or orders[v] % p:
                bad.append(f"non-edge prime {p} missing from ({u}, {v})")
        for u, v in graph.edges():
            if math.gcd(orders[u], orders[v]) != 1:
                bad.append(f"edge ({u}, {v}) maps to orders sharing a prime")
        return bad

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": str(self.k),
            "assignment": {str(v): str(d) for v, d in sorted(self.assignment.items())},
            "factors": {str(v): list(ps) for v, ps in sorted(self.factors.items())},
            "primes": self.primes,
            "nonedge_primes": [[u, v, p] for (u, v), p in sorted(self.nonedge_primes.items())],
            "vertex_primes": {str(v): p for v, p in sorted(self.vertex_primes.items())},
            "s": self.s,
            "r": self.r,
            "w_set": list(self.w_set),
        }


def _non_edges(graph: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in combinations(range(graph.n), 2) if not graph.has_edge(u, v)]


def _check(graph: Graph, cap: int) -> None:
    if graph.n < 1:
        raise ValueError("graph needs at least one vertex")
    if graph.n > cap:
        raise CapExceeded(f"{graph.n} vertices exceeds cap {cap}")


def plan_embedding(graph: Graph, cap: int = DEFAULT_VERTEX_CAP) -> EmbeddingPlan:
    """Orders realizing ``graph`` inside the co-prime graph of a cyclic group.

    Primes are handed out ascending: non-edges first (lexicographic), then one
    per vertex.
    """
    _check(graph, cap)
    n = graph.n
    missing = _non_edges(graph)
    primes = first_primes(len(missing) + n)
    nonedge_primes = dict(zip(missing, primes))
    vertex_primes = {v: primes[len(missing) + v] for v in range(n)}
    factors = {}
    for v in range(n):
        own = [p for (a, b), p in nonedge_primes.items() if v in (a, b)]
        factors[v] = tuple(sorted(own + [vertex_primes[v]]))
    w_set = tuple(v for v in range(n) if graph.degree(v) == n - 1)
    return EmbeddingPlan(n, math.prod(primes), factors, nonedge_primes, vertex_primes, len(missing), len(w_set), w_set)


def literal_plan(graph: Graph, cap: int = DEFAULT_VERTEX_CAP) -> EmbeddingPlan:
    """The construction with fresh primes only for full-degree vertices.

    Raises :class:`CollisionError` when more vertices share an order than Z_k
    has elements of that order.
    """
    _check(graph, cap)
    n = graph.n
    missing = _non_edges(graph)
    w_set = tuple(v for v in range(n) if graph.degree(v) == n - 1)
    primes = first_primes(len(missing) + len(w_set))
    nonedge_primes = dict(zip(missing, primes))
    vertex_primes = {u: primes[len(missing) + j] for j, u in enumerate(w_set)}
    factors = {}
    for v in range(n):
        if v in vertex_primes:
            factors[v] = (vertex_primes[v],)
        else:
            factors[v] = tuple(sorted(p for (a, b), p in nonedge_primes.items() if v in (a, b)))
    plan = EmbeddingPlan(n, math.prod(primes), factors, nonedge_primes, vertex_primes, len(missing), len(w_set), w_set)
    holders: dict[int, list[int]] = {}
    for v, d in sorted(plan.assignment.items()):
        holders.setdefault(d, []).append(v)
        if len(holders[d]) > phi(d):
            raise CollisionError((holders[d][0], v), d, phi(d))
    return plan


def realize(plan: EmbeddingPlan) -> dict[int, int] | list[str]:
    """One element of Z_k per vertex with the assigned order, or the shortfalls."""
    chosen: dict[int, int] = {}
    used: Counter[int] = Counter()
    short = []
    for v, d in sorted(plan.assignment.items()):
        if plan.k % d:
            short.append(f"order {d} of vertex {v} does not divide k")
            continue
        # elements of order d in Z_k are (k/d) * u with gcd(u, d) = 1
        want = used[d]
        u = 0
        seen = -1
        while seen < want and u < d:
            u += 1
            if math.gcd(u, d) == 1:
                seen += 1
        if seen < want:
            short.append(f"no element of order {d} left for vertex {v}")
            continue
        used[d] += 1
        chosen[v] = (plan.k // d) * u % plan.k
    return short if short else chosen


def verify_embedding(graph: Graph, plan: EmbeddingPlan) -> tuple[bool, list]:
    """Compare ``graph`` with the co-prime graph induced on realized elements.

    Element orders are recomputed inside Z_k from the chosen residues, not
    taken from the plan. Returns success and the list of mismatched pairs.
    """
    chosen = realize(plan)
    if isinstance(chosen, list):
        return False, chosen
    if len(set(chosen.values())) != len(chosen):
        return False, ["two vertices realized by the same element"]
    k = plan.k
    orders = {v: k // math.gcd(k, x) for v, x in chosen.items()}
    bad = []
    for u, v in combinations(range(graph.n), 2):
        if (math.gcd(orders[u], orders[v]) == 1) != graph.has_edge(u, v):
            bad.append((u, v))
    return not bad, bad


# -- input formats -------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """``n m`` header then ``m`` lines ``u v`` (0-based)."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ValueError(f"edge line {i} needs two vertex ids: {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    if len({tuple(sorted(e)) for e in edges}) != m:
        raise ValueError("duplicate edge in edge list")
    return Graph.from_edges(n, edges)


_DOT_ID = r'(?:"(?:[^"\\]|\\.)*"|[A-Za-z_\u0080-\uffff][\w\u0080-\uffff]*|-?\d+(?:\.\d+)?)'
_DOT_HEADER = re.compile(r"^\s*(?:strict\s+)?graph\s*(?:" + _DOT_ID + r")?\s*\{(?P<body>.*)\}\s*$", re.S)


def _dot_name(token: str) -> str:
    return token[1:-1] if token.startswith('"') else token


def parse_dot(text: str) -> Graph:
    """Undirected DOT: node statements and ``a -- b -- c`` chains; attributes ignored."""
    text = re.sub(r"//[^\n]*|/\*.*?\*/|^\s*#[^\n]*", "", text, flags=re.S | re.M)
    m = _DOT_HEADER.match(text)
    if not m:
        raise ValueError("not an undirected DOT graph")
    body = re.sub(r"\[[^\]]*\]", "", m.group("body"))
    names: list[str] = []
    index: dict[str, int] = {}
    edges = []

    def vid(token: str) -> int:
        name = _dot_name(token)
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt or re.match(r"^(graph|node|edge)\b", stmt) or "=" in stmt and "--" not in stmt:
            continue
        if "->" in stmt:
            raise ValueError("directed edge in undirected graph")
        parts = [p.strip() for p in stmt.split("--")]
        if not all(re.fullmatch(_DOT_ID, p) for p in parts):
            raise ValueError(f"cannot parse DOT statement {stmt!r}")
        ids = [vid(p) for p in parts]
        edges += [(a, b) for a, b in zip(ids, ids[1:]) if a != b]
    return Graph.from_edges(len(names), set(tuple(sorted(e)) for e in edges), names)


def parse_graph(text: str) -> Graph:
    if re.match(r"^\s*(?:strict\s+)?graph\b", text):
        return parse_dot(text)
    return parse_edge_list(text)


def plan_to_json(plan: EmbeddingPlan, verified: bool | None = None, mismatches: Sequence = ()) -> str:
    out = plan.to_dict()
    if verified is not None:
        out["verified"] = verified
        out["mismatches"] = [list(m) if isinstance(m, tuple) else m for m in mismatches]
    return json.dumps(out, indent=2) + "\n"
