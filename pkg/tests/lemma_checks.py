"""Structural lemma checks over a seeded corpus of (graph, group) pairs.

Each ``check_*`` function returns a list of counterexample strings (empty on
success) and is shared by the lemma suite and the acceptance script.
"""
import random
from dataclasses import dataclass, field

from etsemi.constructions import build_lemma41, build_lemma42
from etsemi.errors import HypothesisError, Violation
from etsemi.families import builtin_graph
from etsemi.graph import Graph, even_reachability, is_connected
from etsemi.perm import GeneratedGroup, Permutation, is_semiregular, normal_closure, prime_factors
from etsemi.quotient import (action_kernel, block_action, lift_semiregular, quotient_by, quotient_local_action,
                             quotient_valency_check)
from etsemi.semireg import find_semiregular, verify_ve_semiregular
from etsemi.symmetry import (automorphism_group, edge_action, is_edge_transitive, is_locally_arc_transitive,
                             is_vertex_transitive, local_action, random_edge_transitive_subgroups)

GRAPHS = ["K4", "K3,3", "Q3", "petersen", "heawood", "pappus", "mobius-kantor", "K5", "K4,4",
          "W3", "W5", "W6", "W7", "W8", "Q4", "DD:K5", "K3,4"]
VE_GRAPHS = ["C4", "W4", "K4,4", "Q4"]


@dataclass
class Case:
    name: str
    graph: Graph
    group: GeneratedGroup
    normals: list = field(default_factory=list)


def _normals(grp: GeneratedGroup, rng: random.Random, count: int) -> list[GeneratedGroup]:
    out = [GeneratedGroup.trivial(grp.domain_size)]
    seen = {1}
    for _ in range(count):
        n = normal_closure(grp, [grp.random_element(rng)])
        if n.order() not in seen and n.order() < grp.order():
            seen.add(n.order())
            out.append(n)
    return out


def build_cases(subgroups: int = 2, normals: int = 4, seed: int = 0) -> list[Case]:
    """Full Aut plus seeded edge-transitive subgroups on each corpus graph, and the two constructions."""
    rng = random.Random(seed)
    cases = []
    for name in GRAPHS:
        g = builtin_graph(name)
        aut = automorphism_group(g)
        groups = [aut] + random_edge_transitive_subgroups(g, aut, subgroups, seed=rng.randrange(2 ** 31))
        for k, grp in enumerate(groups):
            cases.append(Case(f"{name}#{k}", g, grp, _normals(grp, rng, normals)))
    first = build_lemma41(3)
    cases.append(Case("W8/first", first.graph, first.group, _normals(first.group, rng, normals)))
    second = build_lemma42(2)
    cases.append(Case("DD:W4/second", second.sigma_big, second.group, _normals(second.group, rng, normals)))
    return cases


def check_leash(case: Case) -> list[str]:
    g, grp = case.graph, case.group
    bad = []
    for p in (2, 3, 5):
        local_coprime = all(local_action(g, grp, v).order() % p for v in range(g.n))
        if local_coprime and any(grp.stabilizer(u).order() % p == 0 for u in range(g.n)):
            bad.append(f"{case.name}: p={p}")
    return bad


def check_final(case: Case) -> list[str]:
    g, grp = case.graph, case.group
    if is_connected(g) and is_locally_arc_transitive(g, grp) and not is_edge_transitive(g, grp):
        return [case.name]
    return []


def check_even_paths(case: Case) -> list[str]:
    g, grp = case.graph, case.group
    if not (is_connected(g) and is_edge_transitive(g, grp)):
        return []
    return [f"{case.name}: u={u}" for u in range(g.n) if not even_reachability(g, u) <= set(grp.orbit(u))]


def check_nu(case: Case) -> tuple[int, list[str]]:
    """Returns the number of (edge orientation, N) pairs meeting the hypothesis and the failures."""
    g, grp = case.graph, case.group
    if not (is_connected(g) and is_edge_transitive(g, grp)):
        return 0, []
    tested, bad = 0, []
    u0, v0 = g.edges()[0]
    for n in case.normals:
        for u, v in ((u0, v0), (v0, u0)):
            if not local_action(g, n, v).is_transitive():
                continue
            tested += 1
            if not even_reachability(g, u) <= set(n.orbit(u)):
                bad.append(f"{case.name}: |N|={n.order()} edge=({u},{v})")
    return tested, bad


def check_quotient(case: Case) -> list[str]:
    """Connectivity, orbit-kernel factorisation, local arc-transitivity and valency statements."""
    g, grp = case.graph, case.group
    if not (is_connected(g) and is_locally_arc_transitive(g, grp)):
        return []
    bad = []
    for n in case.normals:
        tag = f"{case.name}: |N|={n.order()}"
        try:
            qr = quotient_by(g, grp, n)
        except Violation as exc:
            bad.append(f"{tag}: {exc}")
            continue
        if not is_connected(qr.quotient):
            bad.append(f"{tag}: disconnected quotient")
        if grp.order() != qr.kernel.order() * qr.induced.order():
            bad.append(f"{tag}: |G| != |K| |G/K|")
        if qr.quotient.edge_count and not is_locally_arc_transitive(qr.quotient, qr.induced):
            bad.append(f"{tag}: quotient not locally arc-transitive")
        for b in qr.blocks:
            v = b[0]
            try:
                rec = quotient_valency_check(qr, g, v)
            except Violation as exc:
                bad.append(f"{tag}: {exc}")
                continue
            if rec.quotient_valency and rec.kernel_local_orbit_count % rec.quotient_valency:
                bad.append(f"{tag}: divisibility at {v}")
            if rec.ambient_local_two_transitive and rec.quotient_valency > 1:
                if rec.quotient_valency != g.degree(v) or local_action(g, qr.kernel, v).order() != 1:
                    bad.append(f"{tag}: 2-transitive valency at {v}")
            if rec.ambient_local_two_transitive and rec.quotient_valency > 0:
                if not quotient_local_action(qr, v).is_two_transitive():
                    bad.append(f"{tag}: quotient local action not 2-transitive at {v}")
    return bad


def check_edge_faithful(case: Case) -> list[str]:
    g, grp = case.graph, case.group
    if not is_connected(g) or g.n < 3:
        return []
    if edge_action(g, grp, check_faithful=False).order() != grp.order():
        return [case.name]
    return []


def check_coprime_lift(case: Case) -> tuple[int, int, list[str]]:
    """Lift prime-order semiregular elements of ``G/K`` on the kernel orbits back to ``G``.

    ``K`` is the kernel of the action on the orbits of each sampled normal subgroup.
    Returns the number of lifts attempted, how many had a nontrivial kernel, and the failures.
    """
    grp = case.group
    tested, nontrivial, bad = 0, 0, []
    for n in case.normals:
        k = action_kernel(grp, n.orbits())
        blocks = k.orbits()
        if len(blocks) < 2 or action_kernel(grp, blocks).order() != k.order():
            continue
        orbit_of = [0] * grp.domain_size
        for i, b in enumerate(blocks):
            for x in b:
                orbit_of[x] = i
        induced = GeneratedGroup(len(blocks), [block_action(s, orbit_of, blocks) for s in grp.generators])
        k_order = k.order()
        primes = [r for r in prime_factors(induced.order()) if k_order % r]
        if not primes:
            continue
        res = find_semiregular(induced, primes=primes)
        if res.certificate is None:
            continue
        elt = res.certificate.element
        r = elt.order()
        tested += 1
        nontrivial += k_order > 1
        tag = f"{case.name}: |K|={k_order} r={r}"
        try:
            lift = lift_semiregular(grp, k, elt, r).element
        except (HypothesisError, Violation) as exc:
            bad.append(f"{tag}: {exc}")
            continue
        if lift not in grp or lift.order() != r or lift.fixed_points():
            bad.append(f"{tag}: lift is not a semiregular element of order {r}")
        elif block_action(lift, orbit_of, blocks) != elt:
            bad.append(f"{tag}: lift does not induce the given element")
    return tested, nontrivial, bad


def ve_groups(name: str, count: int = 3, seed: int = 0) -> list[GeneratedGroup]:
    lam = builtin_graph(name)
    aut = automorphism_group(lam)
    subs = random_edge_transitive_subgroups(lam, aut, 4 * count, seed=seed)
    return [aut] + [h for h in subs if is_vertex_transitive(lam, h)][:count]


def check_ve(name: str, count: int = 3, seed: int = 0) -> list[str]:
    lam = builtin_graph(name)
    p = prime_factors(lam.n)[0]
    bad = []
    for k, grp in enumerate(ve_groups(name, count, seed)):
        try:
            h = verify_ve_semiregular(lam, grp, p)
        except Violation as exc:
            bad.append(f"{name}#{k}: {exc}")
            continue
        index = lam.edge_index()
        e_img = Permutation([index[tuple(sorted((h(u), h(v))))] for u, v in lam.edges()])
        if h not in grp or is_semiregular(h) is None or is_semiregular(e_img) is None:
            bad.append(f"{name}#{k}: certificate does not re-validate")
    return bad
