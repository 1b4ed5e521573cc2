"""Two explicit 2-groups acting edge-transitively with no semiregular element.

``build_lemma41(n)`` acts on ``W(2^n, 2)`` with vertices ``(i, u)``, ``i`` in
``Z_{2^n}`` (vertex ``2i + u``). ``build_lemma42(n)`` acts on the subdivided
double of ``W(2^n, 2)`` whose vertices are labelled ``1, 1', ..., 2^n, (2^n)'``.
Each family keeps its own indexing; the swap maps ``alpha`` are built as
explicit transpositions from the labelings, so a labeling slip shows up in the
build-time identity checks.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable

from .errors import CapExceeded, Violation
from .families import DoubleLabeling, WreathLabeling, subdivided_double, wreath
from .graph import Graph, from_edge_list, is_automorphism
from .perm import GeneratedGroup, Permutation, default_cap, is_semiregular
from .semireg import induced_on_double
from .symmetry import edge_orbits, is_locally_arc_transitive


@dataclass(frozen=True)
class Report:
    """Named boolean checks plus supporting data; ``passed`` iff every check holds."""

    name: str
    n: int
    checks: dict[str, bool]
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "passed": self.passed,
                "checks": self.checks, "data": self.data}


def _transposition(size: int, a: int, b: int) -> Permutation:
    img = list(range(size))
    img[a], img[b] = b, a
    return Permutation(img)


def _product(size: int, perms) -> Permutation:
    out = Permutation.identity(size)
    for p in perms:
        out = out * p
    return out


def _require_identities(name: str, identities: dict[str, bool]) -> None:
    bad = [k for k, ok in identities.items() if not ok]
    if bad:
        raise Violation(name, "identities fail: " + ", ".join(bad))


# ---------------------------------------------------------------------------
# first construction: W(2^n, 2), |G| = 2^(n+2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lemma41Instance:
    n: int
    graph: Graph
    labeling: WreathLabeling
    sigma: Permutation
    tau: Permutation
    alpha: dict[int, Permutation]
    x: Permutation
    z: Permutation
    group: GeneratedGroup
    identities: dict[str, bool]

    def vertex(self, i: int, u: int) -> int:
        return self.labeling.vertex_of[(i % (1 << self.n), u)]


def build_lemma41(n: int) -> Lemma41Instance:
    if n < 3:
        raise ValueError(f"first construction needs n >= 3, got {n}")
    m = 1 << n
    graph, lab = wreath(m)
    size = graph.n

    def on_first(f: Callable[[int], int]) -> Permutation:
        return Permutation([lab.vertex_of[(f(v // 2) % m, v % 2)] for v in range(size)])

    sigma = on_first(lambda i: i + 2)
    tau = on_first(lambda i: -i + 4)
    alpha = {i: _transposition(size, lab.vertex_of[(i, 0)], lab.vertex_of[(i, 1)]) for i in range(m)}
    x = alpha[1] * sigma
    z = _product(size, [alpha[i] for i in range(m) if i % 4 != 1])
    half = x ** (m // 2)
    ident = Permutation.identity(size)
    identities = {
        "|sigma| = 2^(n-1)": sigma.order() == m // 2,
        "|x| = 2^n": x.order() == m,
        "|tau| = 2": tau.order() == 2,
        "|z| = 2": z.order() == 2,
        "x^(2^(n-1)) = product of alpha_i, i odd": half == _product(size, [alpha[i] for i in range(1, m, 2)]),
        "(tau x)^2 = 1": (tau * x) ** 2 == ident,
        "z^sigma = z^tau": z.conjugate(sigma) == z.conjugate(tau),
        "z z^tau = x^(2^(n-1))": z * z.conjugate(tau) == half,
        "generators are automorphisms": all(is_automorphism(graph, p) for p in (sigma, tau, x, z)),
    }
    _require_identities("first construction", identities)
    group = GeneratedGroup(size, [x, tau, z])
    return Lemma41Instance(n, graph, lab, sigma, tau, alpha, x, z, group, identities)


def _scan_involutions(grp: GeneratedGroup, cap: int):
    order = grp.order()
    if order > cap:
        raise CapExceeded(order, cap)
    elements = list(grp.iter_elements())
    involutions = [g for g in elements if g.order() == 2]
    return elements, involutions


def _conjugacy_cover(elements, involutions, reps) -> bool:
    covered = set()
    for r in reps:
        covered |= {r.conjugate(g) for g in elements}
    return covered >= set(involutions)


def _edge_transitive_checks(graph: Graph, grp: GeneratedGroup) -> dict[str, bool]:
    return {"edge-transitive": len(edge_orbits(graph, grp)) == 1}


def verify_lemma41(inst: Lemma41Instance, cap: int | None = None) -> Report:
    """Check every claim about the first construction by exhaustive scan."""
    cap = default_cap() if cap is None else cap
    g, grp, n = inst.graph, inst.group, inst.n
    m = 1 << n
    order = grp.order()
    elements, involutions = _scan_involutions(grp, cap)
    fixed_table = {str(t): t.fixed_points()[:4] for t in involutions[:8]}
    semiregular = [h for h in elements if not h.is_identity() and is_semiregular(h) is not None]
    x, tau, z = inst.x, inst.tau, inst.z
    half = x ** (m // 2)
    z_tau = z.conjugate(tau)
    reps = {"z": z, "x^(2^(n-1))": half, "tau": tau, "x tau": x * tau,
            "z x tau": z * x * tau, "z^tau x tau": z_tau * x * tau}
    mid = (m // 2 + 1) % m
    printed = {
        "z fixes (1,0)": inst.vertex(1, 0),
        "x^(2^(n-1)) fixes (2,0)": inst.vertex(2, 0),
        "tau fixes (2,0)": inst.vertex(2, 0),
        "x tau fixes (2^(n-1)+1,0)": inst.vertex(mid, 0),
        "z fixes (2^(n-1)+1,0)": inst.vertex(mid, 0),
        "z^tau x tau fixes (1,0)": inst.vertex(1, 0),
    }
    movers = {"z fixes (1,0)": z, "x^(2^(n-1)) fixes (2,0)": half, "tau fixes (2,0)": tau,
              "x tau fixes (2^(n-1)+1,0)": x * tau, "z fixes (2^(n-1)+1,0)": z,
              "z^tau x tau fixes (1,0)": z_tau * x * tau}
    v_orbits = grp.orbits()
    checks = {
        "(a) generators are automorphisms": all(is_automorphism(g, s) for s in grp.generators),
        "(b) |G| = 2^(n+2)": order == 1 << (n + 2),
        "(c) edge-regular": len(edge_orbits(g, grp)) == 1 and order == g.edge_count,
        "(d) every involution fixes a vertex": all(t.fixed_points() for t in involutions),
        "(e) no semiregular element": not semiregular,
        "(f) two vertex orbits, locally arc-transitive": len(v_orbits) == 2 and is_locally_arc_transitive(g, grp),
        "involutions conjugate to the six representatives": _conjugacy_cover(elements, involutions, reps.values()),
    }
    for name, v in printed.items():
        checks[name] = movers[name](v) == v
    data = {
        "order": order,
        "edges": g.edge_count,
        "vertices": g.n,
        "involutions": len(involutions),
        "vertex_orbit_sizes": [len(o) for o in v_orbits],
        "involution_fixed_points_sample": fixed_table,
        "identities": inst.identities,
    }
    return Report("lemma41", n, checks, data)


# ---------------------------------------------------------------------------
# second construction: DD(W(2^n, 2)), |G| = 2^(n+5)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lemma42Instance:
    n: int
    base: Graph
    base_labels: tuple[str, ...]
    sigma_big: Graph
    labeling: DoubleLabeling
    t: Permutation
    sigma: Permutation
    tau: Permutation
    omega: Permutation
    x: Permutation
    z: Permutation
    alpha: dict[str, Permutation]
    group: GeneratedGroup
    identities: dict[str, bool]

    def base_vertex(self, label: str) -> int:
        return self.base_labels.index(label)

    def pair_vertex(self, label: str, i: int) -> int:
        return self.labeling.pair_vertices[(self.base_vertex(label), i)]

    def edge_vertex(self, a: str, b: str) -> int:
        u, v = sorted((self.base_vertex(a), self.base_vertex(b)))
        return self.labeling.edge_vertices[(u, v)]


def _label(i: int, primed: bool) -> str:
    return f"{i}'" if primed else str(i)


def build_lemma42(n: int) -> Lemma42Instance:
    if n < 2:
        raise ValueError(f"second construction needs n >= 2, got {n}")
    m = 1 << n

    def wrap(k: int) -> int:
        return (k - 1) % m + 1

    labels = tuple(_label(i, p) for i in range(1, m + 1) for p in (False, True))
    index = {lab: k for k, lab in enumerate(labels)}
    edges = set()
    for i in range(1, m + 1):
        for p in (False, True):
            for q in (False, True):
                a, b = index[_label(i, p)], index[_label(wrap(i + 1), q)]
                edges.add((min(a, b), max(a, b)))
    base = from_edge_list(len(labels), sorted(edges))

    def on_base(f: Callable[[int, bool], tuple[int, bool]]) -> Permutation:
        img = []
        for lab in labels:
            primed = lab.endswith("'")
            i = int(lab.rstrip("'"))
            j, q = f(i, primed)
            img.append(index[_label(wrap(j), q)])
        return Permutation(img)

    t_base = on_base(lambda i, p: (i, (not p) if i % 2 else p))
    sigma_base = on_base(lambda i, p: (i + 1, p))
    tau_base = on_base(lambda i, p: (-i + 3, p))
    for name, p in (("t", t_base), ("sigma", sigma_base), ("tau", tau_base)):
        if not is_automorphism(base, p):
            raise Violation("second construction", f"{name} is not an automorphism of the base graph")

    sigma_big, lab = subdivided_double(base)
    size = sigma_big.n
    t = induced_on_double(lab, t_base, size)
    sigma = induced_on_double(lab, sigma_base, size)
    tau = induced_on_double(lab, tau_base, size)
    alpha = {name: _transposition(size, lab.pair_vertices[(k, 0)], lab.pair_vertices[(k, 1)])
             for name, k in index.items()}
    omega = _product(size, [alpha[str(i)] for i in range(1, m, 2)])
    x = alpha["1"] * alpha["1'"] * sigma
    z = omega * t
    ident = Permutation.identity(size)
    z_tau = z.conjugate(tau)
    xm = x ** m
    all_alpha = _product(size, alpha.values())
    z_sq = _product(size, [alpha[_label(i, p)] for i in range(1, m, 2) for p in (False, True)])
    z_tau_sq = _product(size, [alpha[_label(i, p)] for i in range(2, m + 1, 2) for p in (False, True)])
    identities = {
        "|tau| = 2": tau.order() == 2,
        "|sigma| = 2^n": sigma.order() == m,
        "x^(2^n) = product of all alpha": xm == all_alpha,
        "|x| = 2^(n+1)": x.order() == 2 * m,
        "(x tau)^2 = 1": (x * tau) ** 2 == ident,
        "z^2 = product of alpha_i alpha_i', i odd": z * z == z_sq,
        "|z| = 4": z.order() == 4,
        "(z^tau)^2 = product of alpha_i alpha_i', i even": z_tau * z_tau == z_tau_sq,
        "x^(2^n) = z^2 (z^tau)^2": xm == z * z * z_tau * z_tau,
        "z z^tau = z^tau z": z * z_tau == z_tau * z,
        "|<z, z^tau>| = 16": GeneratedGroup(size, [z, z_tau]).order() == 16,
        "z^x = z^tau": z.conjugate(x) == z_tau,
        "(z^tau)^x = z": z_tau.conjugate(x) == z,
        "generators are automorphisms": all(is_automorphism(sigma_big, p) for p in (t, sigma, tau, x, z)),
    }
    _require_identities("second construction", identities)
    group = GeneratedGroup(size, [x, tau, z])
    return Lemma42Instance(n, base, labels, sigma_big, lab, t, sigma, tau, omega, x, z, alpha, group,
                           identities)


def verify_lemma42(inst: Lemma42Instance, cap: int | None = None) -> Report:
    """Check every claim about the second construction by exhaustive scan."""
    cap = default_cap() if cap is None else cap
    g, grp, n = inst.sigma_big, inst.group, inst.n
    m = 1 << n
    order = grp.order()
    elements, involutions = _scan_involutions(grp, cap)
    semiregular = [h for h in elements if not h.is_identity() and is_semiregular(h) is not None]
    x, tau, z = inst.x, inst.tau, inst.z
    z_tau = z.conjugate(tau)
    xm = x ** m
    xt = x * tau
    reps = {"z^2": z * z, "x^(2^n)": xm, "tau": tau, "x tau": xt,
            "z^2 x tau": z * z * xt, "(z^tau)^2 x tau": z_tau * z_tau * xt}
    edge_part = sorted(inst.labeling.edge_vertices.values())
    mid = str(m // 2 + 1)
    mid_vertex = inst.pair_vertex(mid, 0)
    checks = {
        "generators are automorphisms": all(is_automorphism(g, s) for s in grp.generators),
        "|G| = 2^(n+5)": order == 1 << (n + 5),
        "edge-transitive": len(edge_orbits(g, grp)) == 1,
        "every involution fixes a vertex": all(t.fixed_points() for t in involutions),
        "no semiregular element": not semiregular,
        "involutions conjugate to the six representatives": _conjugacy_cover(elements, involutions, reps.values()),
        "z^2 fixes every edge-vertex": all(reps["z^2"](v) == v for v in edge_part),
        "x^(2^n) fixes every edge-vertex": all(xm(v) == v for v in edge_part),
        "tau fixes the edge-vertex {1,2}": tau(inst.edge_vertex("1", "2")) == inst.edge_vertex("1", "2"),
        f"x tau fixes ({mid},0)": xt(mid_vertex) == mid_vertex,
        f"(z^tau)^2 x tau fixes ({mid},0)": reps["(z^tau)^2 x tau"](mid_vertex) == mid_vertex,
        "z^2 x tau fixes (1,0)": reps["z^2 x tau"](inst.pair_vertex("1", 0)) == inst.pair_vertex("1", 0),
    }
    checks.update({f"identity: {k}": v for k, v in inst.identities.items()})
    data = {
        "order": order,
        "vertices": g.n,
        "edges": g.edge_count,
        "involutions": len(involutions),
        "vertex_orbit_sizes": [len(o) for o in grp.orbits()],
        "fixed_point_free_involutions": len([t for t in involutions if not t.fixed_points()]),
        "semiregular_elements": len(semiregular),
    }
    # z z^tau x^(2^(n-1)) lies in the coset of the central involution of G/<z, z^tau>
    witness = z * z_tau * x ** (m // 2)
    if witness.order() == 2 and not witness.fixed_points():
        data["fixed_point_free_witness"] = "z z^tau x^(2^(n-1))"
        data["fixed_point_free_witness_cycles"] = [list(c) for c in witness.cycles()]
    return Report("lemma42", n, checks, data)


def tampered(inst, keep: tuple[str, ...]):
    """Copy of an instance whose group is generated only by the named generators."""
    gens = [getattr(inst, name) for name in keep]
    return dataclasses.replace(inst, group=GeneratedGroup(inst.group.domain_size, gens))
