"""Quotients of graphs by normal subgroups, kernels of block actions, and coprime lifting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import HypothesisError, NormalityError, Violation
from .graph import Graph, from_edge_list, is_connected
from .perm import GeneratedGroup, Permutation, is_prime, is_semiregular
from .symmetry import is_locally_arc_transitive, local_action


def block_action(p: Permutation, orbit_of: Sequence[int], blocks: Sequence[Sequence[int]]) -> Permutation:
    """Permutation induced on blocks (indices into ``blocks``)."""
    return Permutation._raw(tuple(orbit_of[p.images[b[0]]] for b in blocks))


def _combined(p: Permutation, orbit_of: Sequence[int], blocks) -> Permutation:
    n = len(orbit_of)
    on_blocks = block_action(p, orbit_of, blocks).images
    return Permutation._raw(p.images + tuple(n + i for i in on_blocks))


def _combined_group(ambient: GeneratedGroup, orbit_of, blocks) -> GeneratedGroup:
    n = ambient.domain_size
    return GeneratedGroup(n + len(blocks), [_combined(s, orbit_of, blocks) for s in ambient.generators],
                          base=range(n, n + len(blocks)))


def action_kernel(ambient: GeneratedGroup, blocks: Sequence[Sequence[int]]) -> GeneratedGroup:
    """Elements of ``ambient`` fixing every block setwise."""
    n = ambient.domain_size
    orbit_of = [0] * n
    for k, b in enumerate(blocks):
        for x in b:
            orbit_of[x] = k
    comb = _combined_group(ambient, orbit_of, blocks)
    stab = comb.pointwise_stabilizer(list(range(n, n + len(blocks))))
    return GeneratedGroup(n, [Permutation._raw(s.images[:n]) for s in stab.generators])


def check_normal(ambient: GeneratedGroup, normal: GeneratedGroup) -> None:
    """Raise ``NormalityError`` unless ``normal`` is a normal subgroup of ``ambient``."""
    for s in normal.generators:
        if s not in ambient:
            raise NormalityError(f"{s} is not in the ambient group")
    for s in normal.generators:
        for a in ambient.generators:
            if s.conjugate(a) not in normal:
                raise NormalityError(f"conjugate of {s} by {a} leaves the subgroup")


@dataclass(frozen=True)
class QuotientResult:
    graph: Graph
    quotient: Graph
    blocks: tuple[tuple[int, ...], ...]
    orbit_of: tuple[int, ...]
    ambient: GeneratedGroup
    normal: GeneratedGroup
    kernel: GeneratedGroup
    induced: GeneratedGroup


def quotient_by(g: Graph, ambient: GeneratedGroup, normal: GeneratedGroup) -> QuotientResult:
    """``g / N`` together with the kernel ``K`` of the block action and ``G/K`` on the blocks.

    Normality is verified by conjugation membership tests. Edges inside a
    block do not produce loops in the quotient.
    """
    if normal.domain_size != g.n or ambient.domain_size != g.n:
        raise ValueError("groups must act on the vertices of the graph")
    check_normal(ambient, normal)
    blocks = tuple(tuple(b) for b in normal.orbits())
    orbit_of = [0] * g.n
    for k, b in enumerate(blocks):
        for x in b:
            orbit_of[x] = k
    qedges = set()
    for u, v in g.edges():
        a, b = orbit_of[u], orbit_of[v]
        if a != b:
            qedges.add((min(a, b), max(a, b)))
    quotient = from_edge_list(len(blocks), sorted(qedges))
    induced = GeneratedGroup(len(blocks), [block_action(s, orbit_of, blocks) for s in ambient.generators])
    kernel = action_kernel(ambient, blocks)
    if ambient.order() != kernel.order() * induced.order():
        raise Violation("orbit-kernel factorisation",
                        f"{ambient.order()} != {kernel.order()} * {induced.order()}")
    return QuotientResult(g, quotient, blocks, tuple(orbit_of), ambient, normal, kernel, induced)


@dataclass(frozen=True)
class QuotientValency:
    vertex: int
    quotient_valency: int
    kernel_local_orbit_count: int
    divides: bool
    ambient_local_two_transitive: bool
    quotient_local_two_transitive: bool | None


def quotient_local_action(qr: QuotientResult, v: int):
    return local_action(qr.quotient, qr.induced, qr.orbit_of[v])


def quotient_valency_check(qr: QuotientResult, g: Graph, v: int) -> QuotientValency:
    """Valency of ``v^N`` against the orbit count of ``K_v`` on the neighbourhood of ``v``.

    When ``g`` is connected and locally arc-transitive under the ambient group
    the divisibility, the 2-transitive valency statement and the 2-transitivity
    of the quotient local action are asserted (``Violation`` on failure).
    """
    qv = qr.quotient.degree(qr.orbit_of[v])
    k_local = local_action(g, qr.kernel, v)
    count = len(k_local.group.orbits())
    amb_local = local_action(g, qr.ambient, v)
    two_t = amb_local.is_two_transitive()
    q_two_t = None
    if qv > 0:
        q_two_t = quotient_local_action(qr, v).is_two_transitive()
    result = QuotientValency(v, qv, count, count % qv == 0 if qv else False, two_t, q_two_t)
    # a one-vertex quotient has valency 0 and nothing to check
    if qv > 0 and is_connected(g) and is_locally_arc_transitive(g, qr.ambient):
        if not result.divides:
            raise Violation("quotient valency divisibility", f"{qv} does not divide {count} at vertex {v}")
        if two_t and qv > 1:
            if qv != g.degree(v) or k_local.order() != 1:
                raise Violation("2-transitive quotient valency",
                                f"valency {qv} vs {g.degree(v)}, |K_v local| = {k_local.order()}")
        if two_t and qv > 0 and not q_two_t:
            raise Violation("2-transitive quotient local action", f"at block of vertex {v}")
    return result


@dataclass(frozen=True)
class Lift:
    element: Permutation
    route: str  # "power" or "coset-scan"


def lift_semiregular(ambient: GeneratedGroup, kernel: GeneratedGroup, induced_elt: Permutation,
                     r: int, omega: Iterable[int] | None = None) -> Lift:
    """Lift an order-``r`` element acting semiregularly on the ``kernel``-orbits.

    ``induced_elt`` permutes ``kernel.orbits()`` (by index). Tries the power of
    a preimage first, then scans the kernel coset of that preimage.
    """
    if not is_prime(r):
        raise HypothesisError(f"{r} is not prime")
    k_order = kernel.order()
    if math.gcd(r, k_order) != 1:
        raise HypothesisError(f"order {r} is not coprime to |K| = {k_order}")
    check_normal(ambient, kernel)
    blocks = kernel.orbits()
    if induced_elt.degree != len(blocks):
        raise ValueError("induced element must act on the kernel orbits")
    if induced_elt.order() != r or is_semiregular(induced_elt) is None:
        raise HypothesisError("induced element is not a semiregular element of order r")
    n = ambient.domain_size
    if action_kernel(ambient, blocks).order() != k_order:
        raise HypothesisError("the induced action on the kernel orbits is not faithful")
    orbit_of = [0] * n
    for k, b in enumerate(blocks):
        for x in b:
            orbit_of[x] = k
    comb = _combined_group(ambient, orbit_of, blocks)
    pre = comb.element_from_base_images([n + induced_elt(i) for i in range(len(blocks))])
    if pre is None:
        raise ValueError("induced element has no preimage in the ambient group")
    h = Permutation._raw(pre.images[:n])
    omega = sorted(omega) if omega is not None else None
    m = h.order()
    cand = h ** (m // r)
    if cand.order() == r and is_semiregular(cand, omega) is not None:
        return Lift(cand, "power")
    for k in kernel.iter_elements():
        hk = h * k
        mk = hk.order()
        if mk % r:
            continue
        cand = hk ** (mk // r)
        if is_semiregular(cand, omega) is not None:
            return Lift(cand, "coset-scan")
    raise Violation("coprime lifting", "no semiregular element of order r in the preimage coset")
