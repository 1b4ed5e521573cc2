"""Automorphism groups, induced actions on edges and neighbourhoods, and transitivity classification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import HypothesisError, Violation
from .graph import Graph, bipartition, is_automorphism, is_connected
from .perm import GeneratedGroup, Permutation


# ---------------------------------------------------------------------------
# automorphism search: individualisation + equitable refinement, with
# orbit pruning on the stabiliser chain built bottom-up
# ---------------------------------------------------------------------------

def _refine(adj: Sequence[Sequence[int]], cells: list[tuple[int, ...]]):
    n = len(adj)
    cells = list(cells)
    trace = []
    while True:
        cell_of = [0] * n
        for k, c in enumerate(cells):
            for v in c:
                cell_of[v] = k
        new = []
        sigs = []
        split = False
        for c in cells:
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                sig = tuple(sorted([cell_of[w] for w in adj[v]]))
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
                trace.append((len(new), tuple((s, len(groups[s])) for s in sorted(groups))))
            for s in sorted(groups):
                new.append(tuple(groups[s]))
                sigs.append(s)
        cells = new
        if not split:
            trace.append(tuple(sigs))
            return cells, tuple(trace)


def _individualize(cells: list[tuple[int, ...]], k: int, v: int) -> list[tuple[int, ...]]:
    rest = tuple(w for w in cells[k] if w != v)
    return cells[:k] + [(v,), rest] + cells[k + 1:]


def _orbit(x: int, gens: list[tuple[int, ...]]) -> set[int]:
    seen = {x}
    queue = [x]
    for y in queue:
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def automorphism_group(g: Graph) -> GeneratedGroup:
    """Full automorphism group, returned with the base and strong generators found by the search."""
    n = g.n
    adj = g.adjacency
    cells, _ = _refine(adj, [tuple(range(n))])
    path = [cells]
    traces = []
    base: list[int] = []
    cell_idx: list[int] = []
    while len(cells) < n:
        k = next(i for i, c in enumerate(cells) if len(c) > 1)
        b = min(cells[k])
        base.append(b)
        cell_idx.append(k)
        cells, tr = _refine(adj, _individualize(cells, k, b))
        path.append(cells)
        traces.append(tr)
    leaf = [c[0] for c in path[-1]]
    depth = len(base)

    def dfs(j: int, tcells):
        if j == depth:
            img = [0] * n
            for src, tgt in zip(leaf, tcells):
                img[src] = tgt[0]
            perm = Permutation._raw(tuple(img))
            return perm if is_automorphism(g, perm) else None
        k = cell_idx[j]
        for d in sorted(tcells[k]):
            nxt, tr = _refine(adj, _individualize(tcells, k, d))
            if tr != traces[j]:
                continue
            found = dfs(j + 1, nxt)
            if found is not None:
                return found
        return None

    gens: list[Permutation] = []
    for level in reversed(range(depth)):
        b = base[level]
        k = cell_idx[level]
        raw = [p.images for p in gens]
        orbit = _orbit(b, raw)
        failed: set[int] = set()
        for c in sorted(path[level][k]):
            if c in orbit or c in failed:
                continue
            start, tr = _refine(adj, _individualize(path[level], k, c))
            found = dfs(level + 1, start) if tr == traces[level] else None
            if found is None:
                failed |= _orbit(c, raw)
            else:
                gens.append(found)
                raw.append(found.images)
                orbit = _orbit(b, raw)
    if not base:
        return GeneratedGroup(n)
    return GeneratedGroup.from_bsgs(n, base, gens)


# ---------------------------------------------------------------------------
# induced actions
# ---------------------------------------------------------------------------

def _check_automorphisms(g: Graph, grp: GeneratedGroup) -> None:
    if grp.domain_size != g.n:
        raise ValueError(f"group acts on {grp.domain_size} points, graph has {g.n} vertices")
    for s in grp.generators:
        if not is_automorphism(g, s):
            raise ValueError(f"generator {s} is not an automorphism of the graph")


def edge_permutation(g: Graph, p: Permutation, index: dict | None = None) -> Permutation:
    index = index or g.edge_index()
    img = p.images
    out = []
    for u, v in g.edges():
        a, b = img[u], img[v]
        out.append(index[(a, b) if a < b else (b, a)])
    return Permutation._raw(tuple(out))


def edge_action(g: Graph, grp: GeneratedGroup, check_faithful: bool = True) -> GeneratedGroup:
    """The induced group on edge indices (``g.edges()`` order).

    For connected graphs with at least 3 vertices the action is faithful; a
    smaller image there raises ``Violation``.
    """
    _check_automorphisms(g, grp)
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    index = g.edge_index()
    eg = GeneratedGroup(g.edge_count, [edge_permutation(g, s, index) for s in grp.generators])
    if check_faithful and g.n >= 3 and is_connected(g) and eg.order() != grp.order():
        raise Violation("edge faithfulness",
                        f"|image| = {eg.order()} but |group| = {grp.order()}")
    return eg


def arcs(g: Graph) -> list[tuple[int, int]]:
    return sorted([(u, v) for u, v in g.edges()] + [(v, u) for u, v in g.edges()])


def _orbit_partition(size: int, perms: list[tuple[int, ...]]) -> list[list[int]]:
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x, y in enumerate(p):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    out: dict[int, list[int]] = {}
    for x in range(size):
        out.setdefault(find(x), []).append(x)
    return sorted(out.values())


def edge_orbits(g: Graph, grp: GeneratedGroup) -> list[list[int]]:
    index = g.edge_index()
    return _orbit_partition(g.edge_count, [edge_permutation(g, s, index).images for s in grp.generators])


def arc_orbits(g: Graph, grp: GeneratedGroup) -> list[list[int]]:
    arc_list = arcs(g)
    index = {a: i for i, a in enumerate(arc_list)}
    perms = [tuple(index[(s(u), s(v))] for u, v in arc_list) for s in grp.generators]
    return _orbit_partition(len(arc_list), perms)


def is_vertex_transitive(g: Graph, grp: GeneratedGroup) -> bool:
    return len(grp.orbits()) == 1


def is_edge_transitive(g: Graph, grp: GeneratedGroup) -> bool:
    return g.edge_count > 0 and len(edge_orbits(g, grp)) == 1


def is_arc_transitive(g: Graph, grp: GeneratedGroup) -> bool:
    return g.edge_count > 0 and len(arc_orbits(g, grp)) == 1


@dataclass(frozen=True)
class LocalAction:
    """Permutation group induced by the vertex stabiliser on ``neighborhood`` (positions 0..deg-1)."""

    vertex: int
    neighborhood: tuple[int, ...]
    group: GeneratedGroup

    def orbits(self) -> list[list[int]]:
        return [[self.neighborhood[i] for i in orb] for orb in self.group.orbits()]

    def is_transitive(self) -> bool:
        return len(self.group.orbits()) == 1

    def is_two_transitive(self) -> bool:
        return is_two_transitive(self.group)

    def order(self) -> int:
        return self.group.order()


def restrict(p: Permutation, points: Sequence[int], position: dict[int, int] | None = None) -> Permutation:
    """Restriction of ``p`` to the invariant list ``points``, as a permutation of positions."""
    position = position or {x: i for i, x in enumerate(points)}
    return Permutation._raw(tuple(position[p.images[x]] for x in points))


def local_action(g: Graph, grp: GeneratedGroup, v: int, stab: GeneratedGroup | None = None) -> LocalAction:
    nb = g.neighbors(v)
    if not nb:
        raise ValueError(f"vertex {v} is isolated")
    stab = stab if stab is not None else grp.stabilizer(v)
    pos = {x: i for i, x in enumerate(nb)}
    gens = [restrict(s, nb, pos) for s in stab.generators]
    return LocalAction(v, nb, GeneratedGroup(len(nb), gens))


def is_two_transitive(grp: GeneratedGroup) -> bool:
    if grp.domain_size < 2 or len(grp.orbits()) != 1:
        return grp.domain_size == 1
    st = grp.stabilizer(0)
    return len([o for o in st.orbits() if 0 not in o]) == 1


# ---------------------------------------------------------------------------
# classification of edge-transitive actions
# ---------------------------------------------------------------------------

class GetCase(str, Enum):
    ARC_TRANSITIVE = "ArcTransitive"
    HALF_ARC_TRANSITIVE = "HalfArcTransitive"
    BIPARTITE_BI_ORBIT = "BipartiteBiOrbit"
    NOT_EDGE_TRANSITIVE = "NotEdgeTransitive"


@dataclass(frozen=True)
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    locally_arc_transitive: bool
    get_case: GetCase
    vertex_orbit_count: int
    local_orbit_sizes: dict[int, list[int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "vertex_transitive": self.vertex_transitive,
            "edge_transitive": self.edge_transitive,
            "arc_transitive": self.arc_transitive,
            "locally_arc_transitive": self.locally_arc_transitive,
            "get_case": self.get_case.value,
            "vertex_orbit_count": self.vertex_orbit_count,
            "local_orbit_sizes": {str(k): v for k, v in sorted(self.local_orbit_sizes.items())},
        }


def local_actions_by_orbit(g: Graph, grp: GeneratedGroup) -> dict[int, LocalAction]:
    """Local action at the least vertex of each vertex orbit (the others are conjugate)."""
    return {orb[0]: local_action(g, grp, orb[0]) for orb in grp.orbits()}


def is_locally_arc_transitive(g: Graph, grp: GeneratedGroup) -> bool:
    return all(la.is_transitive() for la in local_actions_by_orbit(g, grp).values())


def classify(g: Graph, grp: GeneratedGroup) -> TransitivityReport:
    """Vertex/edge/arc/local transitivity and which edge-transitive case occurs.

    An edge-transitive input that fits none of the three cases raises ``Violation``.
    """
    if not is_connected(g):
        raise HypothesisError("classification needs a connected graph")
    _check_automorphisms(g, grp)
    v_orbits = grp.orbits()
    locals_ = local_actions_by_orbit(g, grp) if g.edge_count else {}
    sizes = {v: sorted(len(o) for o in la.group.orbits()) for v, la in locals_.items()}
    vt = len(v_orbits) == 1
    et = is_edge_transitive(g, grp)
    at = et and is_arc_transitive(g, grp)
    lat = bool(locals_) and all(len(s) == 1 for s in sizes.values())
    if not et:
        case = GetCase.NOT_EDGE_TRANSITIVE
    elif at:
        case = GetCase.ARC_TRANSITIVE
    elif vt:
        case = GetCase.HALF_ARC_TRANSITIVE
        s = next(iter(sizes.values()))
        if len(s) != 2 or s[0] != s[1]:
            raise Violation("edge-transitive trichotomy",
                            f"half-arc-transitive action with local orbits {s}")
    else:
        case = GetCase.BIPARTITE_BI_ORBIT
        bp = bipartition(g)
        parts = sorted([sorted(bp.part_a), sorted(bp.part_b)]) if bp else None
        if parts != sorted(v_orbits):
            raise Violation("edge-transitive trichotomy",
                            f"vertex orbits {v_orbits} are not the bipartition parts")
    return TransitivityReport(vt, et, at, lat, case, len(v_orbits), sizes)


def random_edge_transitive_subgroups(g: Graph, grp: GeneratedGroup, count: int, seed: int,
                                     gens_per_subgroup: int = 2,
                                     max_attempts: int | None = None) -> list[GeneratedGroup]:
    """Subgroups generated by uniformly random elements, kept when still edge-transitive.

    Deterministic for a given seed; may return fewer than ``count``.
    """
    if count <= 0:
        return []
    rng = random.Random(seed)
    max_attempts = max_attempts if max_attempts is not None else 50 * count + 100
    out = []
    for _ in range(max_attempts):
        gens = [grp.random_element(rng) for _ in range(gens_per_subgroup)]
        sub = GeneratedGroup(grp.domain_size, gens)
        if is_edge_transitive(g, sub):
            out.append(sub)
            if len(out) == count:
                break
    return out
