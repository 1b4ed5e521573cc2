"""Named graph families: wreath graphs, subdivided doubles, subdivisions, and a few classics.

Each constructor that produces structured vertex names also returns its
labeling, so certificates can be read back in the family's own coordinates.
The recognizers are structural (twin contraction) and return a labeling of the
input graph, which is checked edge by edge before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, bipartition, complete_graph, cycle_graph, from_edge_list,
                    twin_classes)


@dataclass(frozen=True)
class WreathLabeling:
    """``vertex_of[(i, u)]`` is the vertex playing ``(i, u)`` in ``Z_n x Z_2``."""

    n: int
    vertex_of: dict[tuple[int, int], int]

    def label(self, v: int) -> tuple[int, int]:
        return self._inverse[v]

    @property
    def _inverse(self) -> dict[int, tuple[int, int]]:
        return {v: k for k, v in self.vertex_of.items()}

    def twin_pairs(self) -> list[tuple[int, int]]:
        return [(self.vertex_of[(i, 0)], self.vertex_of[(i, 1)]) for i in range(self.n)]


@dataclass(frozen=True)
class DoubleLabeling:
    """Vertices of a subdivided double: one per base edge, two per base vertex."""

    base: Graph
    edge_vertices: dict[tuple[int, int], int]
    pair_vertices: dict[tuple[int, int], int]

    def part_edges(self) -> frozenset[int]:
        return frozenset(self.edge_vertices.values())

    def part_pairs(self) -> frozenset[int]:
        return frozenset(self.pair_vertices.values())


def wreath(n: int) -> tuple[Graph, WreathLabeling]:
    """``W(n, 2)``: ``(i, u) ~ (j, v)`` iff ``i - j = +-1 (mod n)``; vertex ``(i, u)`` is ``2i + u``."""
    if n < 3:
        raise ValueError(f"wreath graph needs n >= 3, got {n}")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        for u in range(2):
            for v in range(2):
                edges.append((2 * i + u, 2 * j + v))
    vertex_of = {(i, u): 2 * i + u for i in range(n) for u in range(2)}
    return from_edge_list(2 * n, edges), WreathLabeling(n, vertex_of)


def subdivided_double(lam: Graph) -> tuple[Graph, DoubleLabeling]:
    """Bipartite graph on ``E(lam)`` and ``V(lam) x Z_2``; edge ``e`` joins ``(v, i)`` for each end ``v``.

    Edge vertices come first (in ``lam.edges()`` order), then ``(v, i)`` is ``|E| + 2v + i``.
    """
    lam_edges = lam.edges()
    if not lam_edges:
        raise ValueError("subdivided double needs a graph with at least one edge")
    m = len(lam_edges)
    edge_vertices = {e: k for k, e in enumerate(lam_edges)}
    pair_vertices = {(v, i): m + 2 * v + i for v in range(lam.n) for i in range(2)}
    edges = []
    for e, k in edge_vertices.items():
        for v in e:
            for i in range(2):
                edges.append((k, pair_vertices[(v, i)]))
    g = from_edge_list(m + 2 * lam.n, edges)
    return g, DoubleLabeling(lam, edge_vertices, pair_vertices)


def subdivision(lam: Graph) -> Graph:
    """Replace each edge by a path of length two; new vertex ``lam.n + k`` sits on edge ``k``."""
    edges = []
    for k, (u, v) in enumerate(lam.edges()):
        mid = lam.n + k
        edges += [(u, mid), (v, mid)]
    return from_edge_list(lam.n + lam.edge_count, edges)


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ValueError("both parts must be non-empty")
    return from_edge_list(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def generalized_petersen(n: int, k: int) -> Graph:
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        j = (i + k) % n
        if (n + j, n + i) not in edges:
            edges.append((n + i, n + j))
    return from_edge_list(2 * n, edges)


def lcf(n: int, shifts: list[int], repeats: int) -> Graph:
    """Hamiltonian cubic graph from LCF notation ``[shifts]^repeats``."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    seq = shifts * repeats
    for i, s in enumerate(seq):
        edges.add(tuple(sorted((i, (i + s) % n))))
    return from_edge_list(n, sorted(edges))


def petersen() -> Graph:
    return generalized_petersen(5, 2)


def heawood() -> Graph:
    return lcf(14, [5, -5], 7)


def pappus() -> Graph:
    return lcf(18, [5, 7, -7, 7, -7, -5], 3)


def mobius_kantor() -> Graph:
    return generalized_petersen(8, 3)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return from_edge_list(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def _labeling_matches(g: Graph, model: Graph, to_g: dict[int, int]) -> bool:
    if g.n != model.n or g.edge_count != model.edge_count or len(set(to_g.values())) != g.n:
        return False
    return all(g.has_edge(to_g[u], to_g[v]) for u, v in model.edges())


def match_wreath(g: Graph) -> WreathLabeling | None:
    """Labeling of ``g`` as ``W(n, 2)``, or ``None``.

    Twin classes of size two contracted to a cycle ``C_n``. ``W(4, 2)`` is
    ``K_{4,4}``, whose twin classes are the two parts; it is handled separately.
    """
    if g.n % 2 or g.n < 6 or not g.is_regular(4):
        return None
    n = g.n // 2
    classes = twin_classes(g)
    order: list[list[int]] | None = None
    if all(len(c) == 2 for c in classes):
        cls_of = {v: k for k, c in enumerate(classes) for v in c}
        nbr_classes = []
        for c in classes:
            nb = {cls_of[w] for w in g.neighbors(c[0])}
            if len(nb) != 2:
                return None
            nbr_classes.append(sorted(nb))
        order = [classes[0]]
        prev, cur = None, 0
        while True:
            a, b = nbr_classes[cur]
            nxt = a if a != prev else b
            if nxt == 0:
                break
            if len(order) > n:
                return None
            order.append(classes[nxt])
            prev, cur = cur, nxt
        if len(order) != n:
            return None
    elif n == 4 and sorted(len(c) for c in classes) == [4, 4]:
        x, y = classes
        order = [x[:2], y[:2], x[2:], y[2:]]
    if order is None:
        return None
    vertex_of = {(i, u): order[i][u] for i in range(n) for u in range(2)}
    model, lab = wreath(n)
    if not _labeling_matches(g, model, {lab.vertex_of[k]: v for k, v in vertex_of.items()}):
        return None
    return WreathLabeling(n, vertex_of)


def recognize_wreath(g: Graph) -> int | None:
    lab = match_wreath(g)
    return lab.n if lab else None


def match_subdivided_double(g: Graph) -> DoubleLabeling | None:
    """Labeling of ``g`` as a subdivided double ``DD(base)``, or ``None``.

    One part must consist of valency-4 vertices without twins (the base
    edges), the other of twin pairs (the base vertices).
    """
    bp = bipartition(g)
    if bp is None:
        return None
    classes = twin_classes(g)
    size_of = {v: len(c) for c in classes for v in c}
    for e_part, p_part in ((bp.part_a, bp.part_b), (bp.part_b, bp.part_a)):
        if not all(g.degree(v) == 4 and size_of[v] == 1 for v in e_part):
            continue
        pairs = [c for c in classes if c[0] in p_part]
        if not all(len(c) == 2 for c in pairs):
            continue
        base_of = {v: k for k, c in enumerate(pairs) for v in c}
        base_edges = []
        ok = True
        for ev in sorted(e_part):
            ends = sorted({base_of[w] for w in g.neighbors(ev)})
            if len(ends) != 2:
                ok = False
                break
            base_edges.append((tuple(ends), ev))
        if not ok or not base_edges:
            continue
        try:
            base = from_edge_list(len(pairs), [e for e, _ in base_edges])
        except ValueError:
            continue
        edge_vertices = {e: ev for e, ev in base_edges}
        pair_vertices = {(k, i): c[i] for k, c in enumerate(pairs) for i in range(2)}
        model, lab = subdivided_double(base)
        to_g = {lab.edge_vertices[e]: edge_vertices[e] for e in base.edges()}
        to_g.update({lab.pair_vertices[k]: pair_vertices[k] for k in pair_vertices})
        if _labeling_matches(g, model, to_g):
            return DoubleLabeling(base, edge_vertices, pair_vertices)
    return None


def recognize_subdivided_double(g: Graph) -> Graph | None:
    lab = match_subdivided_double(g)
    return lab.base if lab else None


def builtin_graph(name: str) -> Graph:
    """Graphs by short name: ``K5``, ``K3,3``, ``C6``, ``Q3``, ``W8`` (wreath), ``DD:K5``, ``petersen``..."""
    name = name.strip()
    named = {"petersen": petersen, "heawood": heawood, "pappus": pappus,
             "mobius-kantor": mobius_kantor, "mobius_kantor": mobius_kantor}
    if name.lower() in named:
        return named[name.lower()]()
    if name.startswith("DD:"):
        return subdivided_double(builtin_graph(name[3:]))[0]
    if name.startswith("S:"):
        return subdivision(builtin_graph(name[2:]))
    head, tail = name[0], name[1:]
    if head == "K" and "," in tail:
        m, n = (int(x) for x in tail.split(","))
        return complete_bipartite(m, n)
    if head == "K":
        return complete_graph(int(tail))
    if head == "C":
        return cycle_graph(int(tail))
    if head == "Q":
        return hypercube(int(tail))
    if head == "W":
        return wreath(int(tail))[0]
    raise ValueError(f"unknown graph name {name!r}")
