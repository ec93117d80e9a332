from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from coprimegraph.classify import FAMILIES, Universe
from coprimegraph.graph import Graph
from coprimegraph.groups import FiniteGroup, load_cayley_json, parse_group_spec

FIXTURES = Path(__file__).parent / "fixtures"
TABLE_FIXTURES = ("q8.json", "d12_shuffled.json", "s3z5_shuffled.json")

# acceptance lines, printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())


def table_groups() -> list[FiniteGroup]:
    return [load_cayley_json(FIXTURES / name) for name in TABLE_FIXTURES]


def corpus_specs(max_order: int | None = None) -> list[str]:
    """Family specs of the default corpus, optionally bounded by group order."""
    specs = Universe(FAMILIES, max_order=200, max_n=8, cyclic_max_order=500).specs()
    if max_order is None:
        return specs
    return [s for s in specs if parse_group_spec(s).order <= max_order]


def corpus_groups(max_order: int | None = None) -> list[FiniteGroup]:
    groups = [parse_group_spec(s) for s in corpus_specs(max_order)]
    return groups + [g for g in table_groups() if max_order is None or g.order <= max_order]


# -- oracles ----------------------------------------------------------------------


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def graphs_on(n: int):
    """Every labelled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def brute_asteroidal(g: Graph) -> list[tuple[int, int, int]]:
    """All asteroidal triples, straight from the definition, via networkx paths."""
    h = to_nx(g)
    out = []
    for t in combinations(range(g.n), 3):
        if any(h.has_edge(a, b) for a, b in combinations(t, 2)):
            continue
        ok = True
        for i in range(3):
            third = t[i]
            a, b = (t[j] for j in range(3) if j != i)
            blocked = set(h[third]) | {third}
            rest = h.subgraph(set(h) - blocked)
            if not nx.has_path(rest, a, b):
                ok = False
                break
        if ok:
            out.append(t)
    return out


def upper_central_series_nilpotent(table: np.ndarray) -> bool:
    """Nilpotent iff the upper central series reaches the whole group."""
    n = len(table)
    inv = np.argmin(table, axis=1)  # identity is element 0
    current = {0}
    while True:
        nxt = set()
        for g in range(n):
            if all(table[table[inv[g], inv[x]], table[g, x]] in current for x in range(n)):
                nxt.add(g)
        if len(nxt) == n:
            return True
        if nxt == current:
            return False
        current = nxt


def brute_center(table: np.ndarray) -> set[int]:
    return {g for g in range(len(table)) if np.array_equal(table[g, :], table[:, g])}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
