"""Simple undirected graphs with bitmask adjacency rows.

Row ``adj[v]`` is a Python int whose bit ``u`` is set iff ``u ~ v``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Set bit positions of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    def __init__(self, n: int, adj: Sequence[int], names: Sequence[str] | None = None):
        self.n = n
        self.adj = adj
        self.names = list(names) if names is not None else None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], names: Sequence[str] | None = None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [self.adj[v].bit_count() for v in range(self.n)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, [full & ~self.adj[v] & ~(1 << v) for v in range(self.n)], self.names)

    def induced(self, vertices: Sequence[int]) -> Graph:
        pos = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for i, v in enumerate(vertices):
            for u in bits(self.adj[v]):
                if u in pos:
                    adj[i] |= 1 << pos[u]
        names = [self.name(v) for v in vertices]
        return Graph(len(vertices), adj, names)

    def name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n}>"
