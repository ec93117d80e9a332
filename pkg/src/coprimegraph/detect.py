"""Certificate-producing recognizers for forbidden induced subgraphs.

Every detector accepts either an element graph (:class:`Graph`, including
:class:`CoprimeGraph`) or a :class:`PrimeSetGraph`. On a quotient graph the
search runs on :meth:`PrimeSetGraph.expand` with as many copies per class as
the pattern has vertices; members of a class are false twins, so this finds
an occurrence exactly when the full element graph has one. Witness vertices on
a quotient graph are ``(class id, copy index)`` pairs.

Copies of one class a pattern can use, by role: C4 the two opposite corners,
2K2 one endpoint of each edge, K1,s the leaves, P4 the two ends, C5 none,
asteroidal triple none.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Hashable, Iterator, Union

from .coprime import GKGraph, PrimeSetGraph
from .graph import Graph, bits


class InternalDisagreement(RuntimeError):
    """Two independent decision routes returned different answers."""


@dataclass(frozen=True)
class Pattern:
    name: str
    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, name: str, n: int, edges) -> Pattern:
        if n > 8:
            raise ValueError("patterns are limited to 8 vertices")
        return cls(name, n, frozenset((min(e), max(e)) for e in edges))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    @cached_property
    def plan(self) -> _SearchPlan:
        return _SearchPlan.build(self)


def star(s: int) -> Pattern:
    """K_{1,s}; vertex 0 is the centre."""
    return Pattern.of(f"K1,{s}", s + 1, [(0, i) for i in range(1, s + 1)])


C4 = Pattern.of("C4", 4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C5 = Pattern.of("C5", 5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
P3 = Pattern.of("P3", 3, [(0, 1), (1, 2)])
P4 = Pattern.of("P4", 4, [(0, 1), (1, 2), (2, 3)])
TWO_K2 = Pattern.of("2K2", 4, [(0, 1), (2, 3)])
CLAW = star(3)
K14 = star(4)

PATTERNS = {p.name: p for p in (C4, C5, P3, P4, TWO_K2, CLAW, K14)}


@dataclass(frozen=True)
class _SearchPlan:
    order: tuple[int, ...]  # pattern vertex placed at each search position
    adjacent: tuple[tuple[bool, ...], ...]  # [i][j], positions j < i
    degree: tuple[int, ...]
    after: tuple[tuple[int, ...], ...]  # positions whose image must be below position i's

    @classmethod
    def build(cls, pattern: Pattern) -> _SearchPlan:
        n = pattern.n
        placed: list[int] = []
        while len(placed) < n:
            rest = [v for v in range(n) if v not in placed]
            placed.append(
                max(rest, key=lambda v: (sum(pattern.adjacent(v, u) for u in placed), pattern.degree(v), -v))
            )
        order = tuple(placed)
        adj = [[pattern.adjacent(order[i], order[j]) for j in range(n)] for i in range(n)]
        auts = [
            p
            for p in permutations(range(n))
            if all(adj[p[i]][p[j]] == adj[i][j] for i in range(n) for j in range(i + 1, n))
        ]
        # symmetry breaking along the pointwise stabiliser chain: within each
        # orbit of position i, position i receives the smallest image
        after: list[list[int]] = [[] for _ in range(n)]
        stab = auts
        for i in range(n):
            for j in sorted({a[i] for a in stab}):
                if j != i:
                    after[j].append(i)
            stab = [a for a in stab if a[i] == i]
        return cls(
            order,
            tuple(tuple(adj[i][:i]) for i in range(n)),
            tuple(pattern.degree(v) for v in order),
            tuple(tuple(a) for a in after),
        )


@dataclass(frozen=True)
class Witness:
    kind: str
    vertices: tuple[Hashable, ...]


Host = Union[Graph, PrimeSetGraph]


def _host(graph: Host, copies: int) -> tuple[Graph, list | None]:
    if isinstance(graph, PrimeSetGraph):
        return graph.expand(copies)
    return graph, None


def embeddings(g: Graph, pattern: Pattern) -> Iterator[tuple[int, ...]]:
    """All induced occurrences, one per vertex-subgraph, in canonical order.

    Each tuple maps pattern vertex ``i`` to a graph vertex. Automorphic
    relabelings are pruned, so an occurrence is produced exactly once.
    """
    plan = pattern.plan
    k = pattern.n
    if g.n < k:
        return
    full = g.full_mask
    adj = g.adj
    degrees = g.degrees()
    deg_ok = {d: sum(1 << v for v, dv in enumerate(degrees) if dv >= d) for d in set(plan.degree)}
    images = [0] * k

    def extend(i: int) -> Iterator[None]:
        if i == k:
            yield None
            return
        cand = full & deg_ok[plan.degree[i]]
        for j in range(i):
            u = images[j]
            if plan.adjacent[i][j]:
                cand &= adj[u]
            else:
                cand &= ~adj[u] & ~(1 << u)
        for j in plan.after[i]:
            cand &= ~((2 << images[j]) - 1)
        for v in bits(cand):
            images[i] = v
            yield from extend(i + 1)

    for _ in extend(0):
        out = [0] * k
        for pos, v in enumerate(plan.order):
            out[v] = images[pos]
        yield tuple(out)


def _search(g: Graph, pattern: Pattern) -> tuple[int, ...] | None:
    return next(embeddings(g, pattern), None)


def find_induced(pattern: Pattern, graph: Host) -> Witness | None:
    """First induced occurrence of ``pattern`` in canonical vertex order.

    ``witness.vertices[i]`` is the image of pattern vertex ``i``.
    """
    g, labels = _host(graph, pattern.n)
    found = _search(g, pattern)
    if found is None:
        return None
    vertices = tuple(labels[v] for v in found) if labels is not None else found
    witness = Witness(pattern.name, vertices)
    if not verify_witness(graph, witness):
        raise InternalDisagreement(f"search produced an invalid {pattern.name} witness {vertices}")
    return witness


def is_c4_free(graph: Host) -> tuple[bool, Witness | None]:
    w = find_induced(C4, graph)
    return w is None, w


def is_star_free(graph: Host, s: int = 3) -> tuple[bool, Witness | None]:
    """K_{1,s}-freeness; the witness lists the centre first."""
    if s < 2:
        raise ValueError("star size must be at least 2")
    w = find_induced(star(s), graph)
    return w is None, w


def is_claw_free(graph: Host) -> tuple[bool, Witness | None]:
    return is_star_free(graph, 3)


def is_cograph(graph: Host) -> tuple[bool, Witness | None]:
    w = find_induced(P4, graph)
    return w is None, w


def is_p3_free(gk: GKGraph | Graph) -> tuple[bool, Witness | None]:
    """Induced P3 search; on a GK graph the witness lists primes along the path."""
    if isinstance(gk, GKGraph):
        found = _search(gk.as_graph(), P3)
        if found is None:
            return True, None
        return False, Witness("P3", tuple(gk.vertices[v] for v in found))
    w = find_induced(P3, gk)
    return w is None, w


# -- split graphs -------------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    """Outcome of the double split decision.

    ``clique`` and ``independent`` hold vertex ids on element graphs and
    ``(class id, count)`` pairs on quotient graphs.
    """

    split: bool
    witness: Witness | None = None
    clique: tuple | None = None
    independent: tuple | None = None


def _hammer_simeone(blocks: list[tuple[int, Hashable, int]]) -> tuple[bool, dict]:
    """Degree-sequence split test over (degree, key, multiplicity) blocks.

    With d_1 >= ... >= d_n and m = max{i : d_i >= i - 1}, the graph is split
    iff sum_{i<=m} d_i == m(m-1) + sum_{i>m} d_i; the m highest-degree
    vertices then form a clique. Returns the verdict and the clique's share
    of each block.
    """
    blocks = sorted(blocks, key=lambda b: -b[0])
    m = 0
    start = 0
    for d, _, mult in blocks:
        if d + 1 >= start + 1:
            m = min(start + mult, d + 1)
        start += mult
    head = tail = 0
    start = 0
    take: dict = {}
    for d, key, mult in blocks:
        inside = max(0, min(mult, m - start))
        if inside:
            take[key] = inside
        head += d * inside
        tail += d * (mult - inside)
        start += mult
    return head == m * (m - 1) + tail, take


def _forbidden_split_witness(graph: Host) -> Witness | None:
    for pattern in (C4, TWO_K2, C5):
        w = find_induced(pattern, graph)
        if w is not None:
            return w
    return None


def is_split(graph: Host) -> SplitResult:
    """Split recognition decided twice: {2K2, C4, C5}-freeness and degree sequence."""
    witness = _forbidden_split_witness(graph)
    if isinstance(graph, PrimeSetGraph):
        blocks = [(graph.class_degree(i), i, c.multiplicity) for i, c in enumerate(graph.classes)]
        verdict, take = _hammer_simeone(blocks)
        clique = tuple(sorted(take.items()))
        independent = tuple(
            (i, c.multiplicity - take.get(i, 0))
            for i, c in enumerate(graph.classes)
            if c.multiplicity > take.get(i, 0)
        )
        valid = verdict and _valid_class_partition(graph, dict(clique), dict(independent))
    else:
        blocks = [(graph.degree(v), v, 1) for v in range(graph.n)]
        verdict, take = _hammer_simeone(blocks)
        clique = tuple(sorted(take))
        independent = tuple(v for v in range(graph.n) if v not in take)
        valid = verdict and _valid_partition(graph, clique, independent)
    if verdict != (witness is None):
        raise InternalDisagreement(
            f"forbidden-subgraph route says split={witness is None}, degree sequence says {verdict}"
        )
    if not verdict:
        return SplitResult(False, witness)
    if not valid:
        raise InternalDisagreement("degree-sequence partition is not a clique plus independent set")
    return SplitResult(True, None, clique, independent)


def _valid_partition(g: Graph, clique, independent) -> bool:
    cmask = sum(1 << v for v in clique)
    imask = sum(1 << v for v in independent)
    return all(g.adj[v] | (1 << v) | ~cmask == -1 for v in clique) and all(
        not g.adj[v] & imask for v in independent
    )


def _valid_class_partition(graph: PrimeSetGraph, clique: dict, independent: dict) -> bool:
    for i, count in clique.items():
        if count > 1:
            return False
        for j in clique:
            if j != i and not graph.adjacent(i, j):
                return False
    for i, count in independent.items():
        if count > 1 and not graph.classes[i].self_coclique:
            return False
        for j in independent:
            if j != i and graph.adjacent(i, j):
                return False
    return True


# -- asteroidal triples ---------------------------------------------------------


def _component_masks(g: Graph) -> list[dict[int, int]]:
    """Per vertex v: map from each vertex of G - N[v] to its component mask."""
    out = []
    full = g.full_mask
    for v in range(g.n):
        rest = full & ~g.adj[v] & ~(1 << v)
        comp_of: dict[int, int] = {}
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for u in bits(frontier):
                    grow |= g.adj[u]
                grow &= rest & ~comp
                comp |= grow
                frontier = grow
            rest &= ~comp
            for u in bits(comp):
                comp_of[u] = comp
        out.append(comp_of)
    return out


def _at_search(g: Graph) -> tuple[int, int, int] | None:
    if g.n < 6:
        return None
    comps = _component_masks(g)
    full = g.full_mask
    nonadj = [full & ~g.adj[v] & ~(1 << v) for v in range(g.n)]
    for x in range(g.n):
        for y in bits(nonadj[x] >> (x + 1) << (x + 1)):
            cand = nonadj[x] & nonadj[y] & comps[x][y] & comps[y][x]
            cand = cand >> (y + 1) << (y + 1)
            for z in bits(cand):
                if comps[z].get(x, 0) >> y & 1:
                    return x, y, z
    return None


def find_asteroidal_triple(graph: Host) -> Witness | None:
    """First asteroidal triple (x < y < z in canonical order), or None.

    On a quotient graph, three copies per class are searched so a same-class
    triple would be found if one existed; finding one raises.
    """
    g, labels = _host(graph, 3)
    found = _at_search(g)
    if found is None:
        return None
    vertices = tuple(labels[v] for v in found) if labels is not None else found
    if labels is not None and len({c for c, _ in vertices}) < 3:
        raise InternalDisagreement(f"asteroidal triple inside one prime-support class: {vertices}")
    witness = Witness("AT", vertices)
    if not verify_witness(graph, witness):
        raise InternalDisagreement(f"search produced an invalid asteroidal triple {vertices}")
    return witness


def is_at_free(graph: Host) -> tuple[bool, Witness | None]:
    w = find_asteroidal_triple(graph)
    return w is None, w


# -- verification ---------------------------------------------------------------


def _pairwise(graph: Host, a, b) -> bool:
    if isinstance(graph, PrimeSetGraph):
        return a != b and a[0] != b[0] and graph.adjacent(a[0], b[0])
    return graph.has_edge(a, b)


def _joined_avoiding(g: Graph, a: int, b: int, blocked: int) -> bool:
    seen = 1 << a
    frontier = seen
    while frontier:
        if seen >> b & 1:
            return True
        grow = 0
        for u in bits(frontier):
            grow |= g.adj[u]
        grow &= ~seen & ~blocked
        seen |= grow
        frontier = grow
    return bool(seen >> b & 1)


@lru_cache(maxsize=None)
def _pattern_by_kind(kind: str) -> Pattern | None:
    if kind in PATTERNS:
        return PATTERNS[kind]
    if kind.startswith("K1,"):
        return star(int(kind[3:]))
    return None


def verify_witness(graph: Host, witness: Witness) -> bool:
    """Re-check a witness directly against the source graph."""
    vs = witness.vertices
    if len(set(vs)) != len(vs):
        return False
    if witness.kind == "AT":
        if len(vs) != 3 or any(_pairwise(graph, a, b) for a in vs for b in vs if a != b):
            return False
        if isinstance(graph, PrimeSetGraph):
            copies = max(3, 1 + max(j for _, j in vs))
            g, labels = graph.expand(copies)
            pos = {lab: i for i, lab in enumerate(labels)}
            idx = [pos[v] for v in vs]
        else:
            g, idx = graph, list(vs)
        for k in range(3):
            a, b, c = idx[k], idx[(k + 1) % 3], idx[(k + 2) % 3]
            if not _joined_avoiding(g, a, b, g.adj[c] | (1 << c)):
                return False
        return True
    pattern = _pattern_by_kind(witness.kind)
    if pattern is None or pattern.n != len(vs):
        return False
    return all(
        _pairwise(graph, vs[i], vs[j]) == pattern.adjacent(i, j)
        for i in range(pattern.n)
        for j in range(i + 1, pattern.n)
    )
