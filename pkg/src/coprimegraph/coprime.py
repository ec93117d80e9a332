"""Co-prime graphs, their prime-support quotient, and Gruenberg-Kegel graphs."""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph, bits
from .groups import FiniteGroup, OrderSpectrum, TooLarge
from .numtheory import prime_support

DEFAULT_ORDER_CAP = 50_000


class _OrderRows(Sequence):
    """Adjacency rows computed on demand from per-order masks.

    Storing one row per vertex costs |G|^2 bits; vertices of equal order share
    a row up to their own bit, so only one mask per distinct order is kept.
    """

    def __init__(self, orders: Sequence[int], order_rows: dict[int, int]):
        self._orders = orders
        self._order_rows = order_rows

    def __len__(self) -> int:
        return len(self._orders)

    def __getitem__(self, v: int) -> int:
        return self._order_rows[self._orders[v]] & ~(1 << v)


class CoprimeGraph(Graph):
    """Graph on the elements of a group; x ~ y iff gcd(o(x), o(y)) = 1, x != y."""

    def __init__(self, group: FiniteGroup, orders: Sequence[int]):
        self.group = group
        self.orders = list(orders)
        members: dict[int, int] = defaultdict(int)
        for v, o in enumerate(self.orders):
            members[o] |= 1 << v
        order_rows = {}
        for a in members:
            row = 0
            for b, mask in members.items():
                if math.gcd(a, b) == 1:
                    row |= mask
            order_rows[a] = row
        super().__init__(len(self.orders), _OrderRows(self.orders, order_rows))

    def name(self, v: int) -> str:
        return self.group.label(v)

    def support(self, v: int) -> tuple[int, ...]:
        return prime_support(self.orders[v])


def build_coprime_graph(group: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> CoprimeGraph:
    if group.order > cap:
        raise TooLarge(group.order, cap)
    return CoprimeGraph(group, group.element_orders())


def neighborhood(graph: Graph, v: int) -> frozenset[int]:
    """Open neighbourhood N(v)."""
    return frozenset(bits(graph.adj[v]))


@dataclass(frozen=True)
class PrimeClass:
    primes: tuple[int, ...]
    multiplicity: int
    orders: tuple[int, ...]  # element orders with this support, ascending

    @property
    def self_coclique(self) -> bool:
        """Distinct members are pairwise non-adjacent (always, unless identity)."""
        return bool(self.primes)


class PrimeSetGraph:
    """Quotient of a co-prime graph by equal prime support.

    Members of one class are false twins, so each class collapses to a single
    node carrying its multiplicity. Classes are ordered by (|primes|, primes),
    which puts the identity class first.
    """

    def __init__(self, classes: Sequence[PrimeClass], name: str = ""):
        self.classes = tuple(sorted(classes, key=lambda c: (len(c.primes), c.primes)))
        self.name = name
        keys = [c.primes for c in self.classes]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate prime-support classes")
        self._sets = [frozenset(k) for k in keys]
        k = len(self.classes)
        self.adj = [0] * k
        for i, j in combinations(range(k), 2):
            if not self._sets[i] & self._sets[j]:
                self.adj[i] |= 1 << j
                self.adj[j] |= 1 << i
        self._index = {c.primes: i for i, c in enumerate(self.classes)}

    def __len__(self) -> int:
        return len(self.classes)

    def __repr__(self) -> str:
        return f"<PrimeSetGraph {self.name} classes={len(self.classes)} order={self.order}>"

    @property
    def order(self) -> int:
        return sum(c.multiplicity for c in self.classes)

    def class_of(self, primes: Sequence[int]) -> int:
        return self._index[tuple(primes)]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def class_degree(self, i: int) -> int:
        """Degree in the element graph of any member of class ``i``."""
        return sum(self.classes[j].multiplicity for j in bits(self.adj[i]))

    def label(self, i: int) -> str:
        c = self.classes[i]
        return "π={" + ",".join(map(str, c.primes)) + "}×" + str(c.multiplicity)

    def expand(self, copies: int) -> tuple[Graph, list[tuple[int, int]]]:
        """Element graph with at most ``copies`` members per class.

        Returns the graph and, per vertex, its (class id, copy index) label.
        Any induced subgraph on ``copies`` vertices of the full element graph
        occurs here too, since twins are interchangeable.
        """
        labels = [(i, j) for i, c in enumerate(self.classes) for j in range(min(c.multiplicity, copies))]
        class_mask = defaultdict(int)
        for v, (i, _) in enumerate(labels):
            class_mask[i] |= 1 << v
        adj = []
        for i, _ in labels:
            row = 0
            for j in bits(self.adj[i]):
                row |= class_mask[j]
            adj.append(row)
        names = [f"{self.label(i)}#{j}" for i, j in labels]
        return Graph(len(labels), adj, names), labels

    def lift(self, orders: Sequence[int]) -> Graph:
        """Element graph rebuilt from class adjacency alone."""
        cls = [self.class_of(prime_support(o)) for o in orders]
        members = defaultdict(int)
        for v, c in enumerate(cls):
            members[c] |= 1 << v
        adj = []
        for v, c in enumerate(cls):
            row = 0
            for j in bits(self.adj[c]):
                row |= members[j]
            adj.append(row & ~(1 << v))
        return Graph(len(cls), adj)


def build_reduced_graph(spectrum: OrderSpectrum, name: str = "") -> PrimeSetGraph:
    mult: dict[tuple[int, ...], int] = defaultdict(int)
    orders: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for d, count in spectrum.counts.items():
        key = prime_support(d)
        mult[key] += count
        orders[key].append(d)
    return PrimeSetGraph([PrimeClass(k, mult[k], tuple(sorted(orders[k]))) for k in mult], name)


def reduced_graph(group: FiniteGroup) -> PrimeSetGraph:
    return build_reduced_graph(group.order_spectrum(), group.spec())


@dataclass(frozen=True)
class GKGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def as_graph(self) -> Graph:
        pos = {p: i for i, p in enumerate(self.vertices)}
        return Graph.from_edges(
            len(self.vertices), [(pos[p], pos[q]) for p, q in self.edges], [str(p) for p in self.vertices]
        )


def gk_graph(group: FiniteGroup) -> GKGraph:
    primes = group.primes()
    edges = tuple((p, q) for p, q in combinations(primes, 2) if group.has_element_of_order(p * q))
    return GKGraph(primes, edges)


# -- export -----------------------------------------------------------------


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: CoprimeGraph | PrimeSetGraph) -> str:
    if isinstance(graph, PrimeSetGraph):
        title = f"{graph.name} reduced" if graph.name else "reduced"
        lines = [f"graph {_dot_quote(title)} {{"]
        for i in range(len(graph)):
            lines.append(f"  {i} [label={_dot_quote(graph.label(i))}];")
        pairs = [(i, j) for i in range(len(graph)) for j in bits(graph.adj[i]) if j > i]
    else:
        lines = [f"graph {_dot_quote(graph.group.spec())} {{"]
        for v in range(graph.n):
            lines.append(f"  {v} [label={_dot_quote(f'{graph.name(v)} o={graph.orders[v]}')}];")
        pairs = graph.edges()
    lines += [f"  {u} -- {v};" for u, v in pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(graph: CoprimeGraph | PrimeSetGraph) -> dict:
    if isinstance(graph, PrimeSetGraph):
        return {
            "group": graph.name,
            "reduced": True,
            "classes": [
                {"id": i, "primes": list(c.primes), "multiplicity": c.multiplicity, "orders": list(c.orders)}
                for i, c in enumerate(graph.classes)
            ],
            "edges": [[i, j] for i in range(len(graph)) for j in bits(graph.adj[i]) if j > i],
        }
    return {
        "group": graph.group.spec(),
        "vertices": [{"id": v, "order": graph.orders[v], "label": graph.name(v)} for v in range(graph.n)],
        "edges": [list(e) for e in graph.edges()],
    }


def to_json(graph: CoprimeGraph | PrimeSetGraph) -> str:
    return json.dumps(to_json_dict(graph), ensure_ascii=False) + "\n"
