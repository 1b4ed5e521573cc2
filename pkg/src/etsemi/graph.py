"""Finite simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .perm import Permutation


class Graph:
    """Immutable simple graph with sorted adjacency tuples."""

    __slots__ = ("vertex_count", "adjacency", "_nbr_sets", "_edges")

    def __init__(self, vertex_count: int, adjacency: Iterable[Iterable[int]]):
        adjacency = tuple(tuple(sorted(set(nb))) for nb in adjacency)
        if len(adjacency) != vertex_count:
            raise ValueError("adjacency length differs from vertex count")
        for v, nb in enumerate(adjacency):
            for w in nb:
                if w == v:
                    raise ValueError(f"loop at vertex {v}")
                if not 0 <= w < vertex_count:
                    raise ValueError(f"neighbour {w} of {v} out of range")
                if v not in adjacency[w]:
                    raise ValueError(f"adjacency is not symmetric at {{{v}, {w}}}")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "_nbr_sets", tuple(frozenset(nb) for nb in adjacency))
        object.__setattr__(self, "_edges", tuple(
            (v, w) for v in range(vertex_count) for w in adjacency[v] if v < w))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def n(self) -> int:
        return self.vertex_count

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted pairs in lexicographic order; this order indexes the edge action."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self._edges)}

    def valency(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def is_regular(self, k: int | None = None) -> bool:
        val = self.valency()
        return val is not None and (k is None or val == k)

    def relabel(self, perm: Permutation) -> Graph:
        """Image of the graph under ``v -> perm(v)``."""
        return from_edge_list(self.vertex_count, [(perm(u), perm(v)) for u, v in self._edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self):
        return hash(self.adjacency)

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, edges={len(self._edges)})"

    def to_json(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in self._edges]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return from_edge_list(data["n"], [tuple(e) for e in data["edges"]])


@dataclass(frozen=True)
class Bipartition:
    part_a: frozenset[int]
    part_b: frozenset[int]


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph with exactly the given edges. Loops, duplicates and bad endpoints are errors."""
    if n < 1:
        raise ValueError("vertex count must be positive")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if v in adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def read_graph(path: str | Path) -> Graph:
    """Load a JSON graph ``{n, edges}`` or a plain edge list (first line ``n``, then ``u v`` lines)."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Graph.from_json(json.loads(text))
    return parse_edge_list(text)


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge-list file")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, edges)


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for v in comp:
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(_components(g)) == 1


def bipartition(g: Graph) -> Bipartition | None:
    """Two-colouring with vertex 0 in ``part_a`` (per component, least vertex in ``part_a``)."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = [s]
        for v in queue:
            for w in g.adjacency[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    a = frozenset(v for v in range(g.n) if colour[v] == 0)
    return Bipartition(a, frozenset(range(g.n)) - a)


def even_reachability(g: Graph, u: int) -> frozenset[int]:
    """Vertices joined to ``u`` by a walk of even length.

    For a connected graph this is ``u``'s part when bipartite and every vertex otherwise.
    """
    if not is_connected(g):
        raise ValueError("even reachability needs a connected graph")
    # BFS on (vertex, parity) states
    seen = {(u, 0)}
    queue = [(u, 0)]
    for v, par in queue:
        for w in g.adjacency[v]:
            state = (w, 1 - par)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return frozenset(v for v, par in seen if par == 0)


def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of vertices with equal open neighbourhoods, ordered by least member."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adjacency[v], []).append(v)
    return sorted(groups.values())


def is_unworthy(g: Graph) -> bool:
    return any(len(c) > 1 for c in twin_classes(g))


def distances(g: Graph, u: int) -> list[int]:
    dist = [-1] * g.n
    dist[u] = 0
    queue = [u]
    for v in queue:
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if p.degree != g.n:
        return False
    img = p.images
    return all(g.has_edge(img[u], img[v]) for u, v in g.edges())


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])
