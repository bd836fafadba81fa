"""Simple undirected graphs and exact maximum-clique search."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BudgetExceededError, ContractError

__all__ = [
    "Graph",
    "CliqueResult",
    "clique_number",
    "maximum_cliques",
    "icosahedral_graph",
]

CLIQUE_BUDGET = 64


@dataclass(frozen=True)
class Graph:
    """Vertices are 0..nverts-1; edges are stored as sorted pairs."""

    nverts: int
    edges: frozenset

    def __init__(self, nverts: int, edges: Iterable = ()):
        norm = set()
        for e in edges:
            u, v = (int(t) for t in e)
            if u == v:
                raise ContractError(f"loop at vertex {u}")
            if not (0 <= u < nverts and 0 <= v < nverts):
                raise ContractError(f"edge ({u}, {v}) out of range for {nverts} vertices")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "nverts", int(nverts))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order; this order fixes the y-variable labels."""
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.nverts)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def distances_from(self, s: int) -> list[int]:
        adj = self.adjacency()
        dist = [-1] * self.nverts
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def diameter(self) -> int:
        best = 0
        for s in range(self.nverts):
            d = self.distances_from(s)
            if min(d) < 0:
                raise ContractError("graph is disconnected")
            best = max(best, max(d))
        return best

    def triangles(self) -> list[tuple[int, int, int]]:
        adj = self.adjacency()
        return [
            (a, b, c)
            for a, b in self.edge_list()
            for c in sorted(adj[a] & adj[b])
            if c > b
        ]

    # -- text formats ---------------------------------------------------------
    @classmethod
    def from_edge_text(cls, text: str, nverts: int | None = None) -> "Graph":
        """Parse "u v" lines (0-indexed). Blank lines and '#' comments are skipped.

        A header line ``n <count>`` may fix the vertex count; otherwise it is
        one more than the largest label.
        """
        pairs = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n" and len(parts) == 2:
                nverts = int(parts[1])
                continue
            if len(parts) != 2:
                raise ContractError(f"bad edge line: {raw!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        if nverts is None:
            nverts = 1 + max((max(p) for p in pairs), default=-1)
        return cls(nverts, pairs)

    def to_edge_text(self) -> str:
        lines = [f"n {self.nverts}"] + [f"{u} {v}" for u, v in self.edge_list()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"nverts": self.nverts, "edges": [list(e) for e in self.edge_list()]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["nverts"]), data["edges"])


@dataclass(frozen=True)
class CliqueResult:
    omega: int
    clique: tuple[int, ...]


def _color_bound(cands: list[int], adj: list[set[int]]) -> list[tuple[int, int]]:
    """Greedy sequential coloring; returns (vertex, color) sorted by color."""
    classes: list[list[int]] = []
    for v in cands:
        for cls in classes:
            if not (adj[v] & set(cls)):
                cls.append(v)
                break
        else:
            classes.append([v])
    return [(v, k + 1) for k, cls in enumerate(classes) for v in cls]


def clique_number(g: Graph, budget: int = CLIQUE_BUDGET) -> CliqueResult:
    """Exact clique number by branch and bound with a coloring bound."""
    if g.nverts > budget:
        raise BudgetExceededError(f"{g.nverts} vertices exceeds the clique budget of {budget}")
    if g.nverts == 0:
        return CliqueResult(0, ())
    adj = g.adjacency()
    best: list[int] = []

    def expand(current: list[int], cands: list[int]):
        nonlocal best
        colored = _color_bound(cands, adj)
        for idx in range(len(colored) - 1, -1, -1):
            v, color = colored[idx]
            if len(current) + color <= len(best):
                return
            new = current + [v]
            rest = [w for w, _ in colored[:idx] if w in adj[v]]
            if rest:
                expand(new, rest)
            elif len(new) > len(best):
                best = new

    order = sorted(range(g.nverts), key=lambda v: -len(adj[v]))
    expand([], order)
    return CliqueResult(len(best), tuple(sorted(best)))


def maximum_cliques(g: Graph, omega: int | None = None) -> list[tuple[int, ...]]:
    """All cliques of size omega (default: the clique number), sorted."""
    if omega is None:
        omega = clique_number(g).omega
    adj = g.adjacency()
    out = []

    def grow(clique: list[int], cands: list[int]):
        if len(clique) == omega:
            out.append(tuple(clique))
            return
        for k, v in enumerate(cands):
            if len(clique) + len(cands) - k < omega:
                return
            grow(clique + [v], [w for w in cands[k + 1:] if w in adj[v]])

    grow([], list(range(g.nverts)))
    return out


def icosahedral_graph() -> Graph:
    """Vertex 0 on top, rings 1..5 and 6..10, vertex 11 at the bottom."""
    edges = []
    for i in range(1, 6):
        nxt = i % 5 + 1
        edges += [
            (0, i),
            (i, nxt),
            (5 + i, 5 + nxt),
            (11, 5 + i),
            (i, 5 + i),
            (i, 5 + nxt),
        ]
    return Graph(12, edges)
