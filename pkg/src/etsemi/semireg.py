"""Search for semiregular elements, and executable forms of the main results.

Searches only look at elements of prime order on the relevant set: if ``g``
is semiregular of order ``m`` and ``p | m`` then ``g^(m/p)`` is semiregular of
order ``p``. Groups up to the enumeration cap are scanned exhaustively (primes
ascending, chain order within a prime, first hit wins). Larger groups are
sampled with a fixed seed; an empty sample is reported as inconclusive,
never as "none".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, HypothesisError, Violation
from .families import (DoubleLabeling, WreathLabeling, match_subdivided_double, match_wreath)
from .graph import Graph, bipartition, even_reachability, is_automorphism, is_connected, twin_classes
from .perm import (GeneratedGroup, Permutation, SemiregularCertificate, default_cap, is_prime,
                   is_prime_power, is_semiregular, is_solvable, power_rows, prime_factors)
from .symmetry import (automorphism_group, edge_permutation, is_arc_transitive, is_edge_transitive,
                       is_locally_arc_transitive)

DEFAULT_SAMPLES = 20000


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a search; ``status`` is ``found``, ``none`` or ``inconclusive``."""

    certificate: SemiregularCertificate | None
    exhaustive: bool
    group_order: int
    scanned: int
    prime_order_count: int
    method: str

    @property
    def status(self) -> str:
        if self.certificate is not None:
            return "found"
        return "none" if self.exhaustive else "inconclusive"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "group_order": self.group_order,
            "scanned": self.scanned,
            "prime_order_count": self.prime_order_count,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


class _Target:
    """The set the element must act on semiregularly, plus the subsets it must preserve."""

    def __init__(self, n: int, subsets: Sequence[Iterable[int]] | None):
        self.n = n
        self.subsets = [sorted(set(s)) for s in subsets] if subsets else []
        union = sorted({x for s in self.subsets for x in s}) if self.subsets else list(range(n))
        self.union = np.array(union, dtype=np.int32)
        self.restricted = frozenset(union) if self.subsets and len(union) < n else None
        self.masks = []
        for s in self.subsets:
            m = np.zeros(n, dtype=bool)
            m[s] = True
            self.masks.append((np.array(s, dtype=np.int32), m))

    def preserving(self, block: np.ndarray) -> np.ndarray:
        keep = np.ones(len(block), dtype=bool)
        for idx, m in self.masks:
            keep &= m[block[:, idx]].all(axis=1)
        return keep

    def fixed_point_free(self, block: np.ndarray) -> np.ndarray:
        return (block[:, self.union] != self.union).all(axis=1)

    def trivial(self, block: np.ndarray) -> np.ndarray:
        return (block[:, self.union] == self.union).all(axis=1)

    def certificate(self, row, p: int) -> SemiregularCertificate:
        cert = SemiregularCertificate(Permutation._raw(tuple(int(x) for x in row)), p, self.restricted)
        assert cert.validate(), "scan produced an invalid certificate"
        return cert


def find_semiregular(grp: GeneratedGroup, domain_subsets: Sequence[Iterable[int]] | None = None,
                     cap: int | None = None, primes: Sequence[int] | None = None,
                     samples: int = DEFAULT_SAMPLES, seed: int = 0) -> ScanResult:
    """Element semiregular on the union of ``domain_subsets`` that preserves each subset.

    With no subsets the whole domain is used. ``primes`` restricts the
    orders searched for.
    """
    cap = default_cap() if cap is None else cap
    target = _Target(grp.domain_size, domain_subsets)
    order = grp.order()
    ps = [p for p in prime_factors(order) if primes is None or p in primes]
    if order <= cap:
        return _exhaustive(grp, target, ps, order)
    return _sampled(grp, target, ps, order, samples, seed)


def _exhaustive(grp, target: _Target, ps, order) -> ScanResult:
    scanned = 0
    census = 0
    for p in ps:
        for block in grp.element_blocks():
            if p == ps[0]:
                scanned += len(block)
            keep = target.preserving(block)
            if not keep.any():
                continue
            block = block[keep]
            powered = power_rows(block, p)
            order_p = ~target.trivial(block) & target.trivial(powered)
            census += int(order_p.sum())
            hits = np.flatnonzero(order_p & target.fixed_point_free(block))
            if len(hits):
                return ScanResult(target.certificate(block[hits[0]], p), True, order, scanned, census,
                                  "exhaustive")
    if not ps:
        scanned = order
    return ScanResult(None, True, order, scanned, census, "exhaustive")


def random_rows(grp: GeneratedGroup, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` uniformly random elements as rows."""
    arrays = grp.chain.arrays()
    n = grp.domain_size
    out = np.broadcast_to(np.arange(n, dtype=np.int32), (count, n)).copy()
    for j in range(len(arrays) - 1, -1, -1):
        pick = arrays[j][rng.integers(0, len(arrays[j]), size=count)]
        out = np.take_along_axis(pick, out, axis=1)
    return out


def _sampled(grp, target: _Target, ps, order, samples, seed) -> ScanResult:
    rng = np.random.default_rng(seed)
    batch = 4096
    done = 0
    census = 0
    while done < samples:
        size = min(batch, samples - done)
        block = random_rows(grp, size, rng)
        done += size
        block = block[target.preserving(block)]
        for p in ps:
            pp = 1
            rest = order
            while rest % p == 0:
                rest //= p
                pp *= p
            x = power_rows(block, rest)
            for _ in range(pp.bit_length()):
                y = power_rows(x, p)
                order_p = ~target.trivial(x) & target.trivial(y)
                census += int(order_p.sum())
                hits = np.flatnonzero(order_p & target.fixed_point_free(x))
                if len(hits):
                    return ScanResult(target.certificate(x[hits[0]], p), False, order, done, census, "sampled")
                x = y
    return ScanResult(None, False, order, done, census, "sampled")


# ---------------------------------------------------------------------------
# hypotheses shared by the theorems
# ---------------------------------------------------------------------------

def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _check_group_on(g: Graph, grp: GeneratedGroup) -> None:
    _require(grp.domain_size == g.n, "group and graph have different vertex sets")
    for s in grp.generators:
        _require(is_automorphism(g, s), f"{s} is not an automorphism")


def _check_edge_transitive(g: Graph, grp: GeneratedGroup, valency: int) -> None:
    _require(is_connected(g), "graph is not connected")
    _require(g.is_regular(valency), f"graph is not {valency}-valent")
    _check_group_on(g, grp)
    _require(is_edge_transitive(g, grp), "group is not edge-transitive")


def theorem_3valent(g: Graph, grp: GeneratedGroup, cap: int | None = None) -> SemiregularCertificate:
    """A semiregular element of ``grp`` for a connected ``grp``-edge-transitive cubic graph."""
    _check_edge_transitive(g, grp, 3)
    res = find_semiregular(grp, cap=cap)
    if res.certificate is not None:
        return res.certificate
    if res.status == "inconclusive":
        raise CapExceeded(res.group_order, default_cap() if cap is None else cap)
    raise Violation("3-valent theorem", f"no semiregular element in a group of order {res.group_order}")


# ---------------------------------------------------------------------------
# the 4-valent trichotomy
# ---------------------------------------------------------------------------

class Outcome(str, Enum):
    SEMIREGULAR = "Semiregular"
    WREATH = "WreathWitness"
    DOUBLE = "DoubleWitness"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ClassificationOutcome:
    """Result for the supplied group, with the full automorphism group reported alongside."""

    kind: Outcome
    group_scan: ScanResult
    certificate: SemiregularCertificate | None = None
    wreath: WreathLabeling | None = None
    double: DoubleLabeling | None = None
    aut_certificate: SemiregularCertificate | None = None
    aut_route: str | None = None

    @property
    def wreath_n(self) -> int | None:
        return self.wreath.n if self.wreath else None

    @property
    def base(self) -> Graph | None:
        return self.double.base if self.double else None

    def to_json(self) -> dict:
        out = {"outcome": self.kind.value, "group_scan": self.group_scan.to_json()}
        if self.certificate:
            out["certificate"] = self.certificate.to_json()
        if self.wreath:
            out["wreath_n"] = self.wreath.n
            out["twin_pairs"] = [list(p) for p in self.wreath.twin_pairs()]
        if self.double:
            out["base"] = self.double.base.to_json()
            out["edge_vertices"] = [[list(e), v] for e, v in sorted(self.double.edge_vertices.items())]
            out["pair_vertices"] = [[list(k), v] for k, v in sorted(self.double.pair_vertices.items())]
        out["aut_route"] = self.aut_route
        out["aut_certificate"] = self.aut_certificate.to_json() if self.aut_certificate else None
        return out


def wreath_witness(g: Graph) -> WreathLabeling | None:
    """``W(2^k, 2)`` labeling with ``k >= 2``, if ``g`` is one."""
    lab = match_wreath(g)
    if lab and lab.n >= 4 and is_prime_power(lab.n, 2):
        return lab
    return None


def double_witness(g: Graph) -> DoubleLabeling | None:
    """``DD(base)`` labeling with ``base`` 4-valent, arc-transitive, of 2-power order, if any."""
    lab = match_subdivided_double(g)
    if lab is None:
        return None
    base = lab.base
    if not (base.is_regular(4) and is_prime_power(base.n, 2) and is_connected(base)):
        return None
    if not is_arc_transitive(base, automorphism_group(base)):
        return None
    return lab


def twin_swap(lab: WreathLabeling, n_vertices: int) -> Permutation:
    img = list(range(n_vertices))
    for a, b in lab.twin_pairs():
        img[a], img[b] = b, a
    return Permutation(img)


def induced_on_double(lab: DoubleLabeling, h: Permutation, n_vertices: int) -> Permutation:
    """Automorphism of ``DD(base)`` sending ``e -> e^h`` and ``(v, i) -> (v^h, i)``."""
    img = [0] * n_vertices
    for (a, b), ev in lab.edge_vertices.items():
        x, y = h(a), h(b)
        img[ev] = lab.edge_vertices[(min(x, y), max(x, y))]
    for (v, i), pv in lab.pair_vertices.items():
        img[pv] = lab.pair_vertices[(h(v), i)]
    return Permutation(img)


def _structured_certificate(g: Graph, aut: GeneratedGroup | None, cap) -> tuple[SemiregularCertificate | None, str]:
    wl = match_wreath(g)
    if wl is not None:
        p = twin_swap(wl, g.n)
        cert = is_semiregular(p)
        if cert and (aut is None or p in aut):
            return cert, "twin-swap"
    dl = match_subdivided_double(g)
    if dl is not None and dl.base.n >= 3 and is_connected(dl.base):
        base = dl.base
        for p in prime_factors(base.n):
            if is_prime_power(base.n, p) and is_prime_power(base.edge_count, p):
                try:
                    h = verify_ve_semiregular(base, automorphism_group(base), p, cap)
                except (HypothesisError, Violation, CapExceeded):
                    continue
                el = induced_on_double(dl, h, g.n)
                cert = is_semiregular(el)
                if cert and (aut is None or el in aut):
                    return cert, "induced-from-base"
    return None, "none"


def aut_level_certificate(g: Graph, cap: int | None = None, seed: int = 0,
                          aut: GeneratedGroup | None = None) -> tuple[SemiregularCertificate | None, str]:
    """Semiregular element of the full automorphism group, with the route that produced it."""
    aut = aut if aut is not None else automorphism_group(g)
    res = find_semiregular(aut, cap=cap, seed=seed)
    if res.certificate is not None:
        return res.certificate, f"aut-{res.method}"
    if res.exhaustive:
        return None, "none"
    cert, route = _structured_certificate(g, aut, cap)
    return cert, route if cert else "inconclusive"


def semiregular_outcome(g: Graph, grp: GeneratedGroup, cap: int | None = None, seed: int = 0,
                        aut_level: bool = True) -> ClassificationOutcome:
    """Scan ``grp``; fall back to the wreath / subdivided-double witnesses; else ``Refuted``.

    No hypotheses are checked here, so ``Refuted`` is a legal answer
    (e.g. for ``K_{3,4}``).
    """
    scan = find_semiregular(grp, cap=cap, seed=seed)
    aut_cert, aut_route = aut_level_certificate(g, cap, seed) if aut_level else (None, None)
    common = dict(group_scan=scan, aut_certificate=aut_cert, aut_route=aut_route)
    if scan.certificate is not None:
        return ClassificationOutcome(Outcome.SEMIREGULAR, certificate=scan.certificate, **common)
    wl = wreath_witness(g)
    if wl is not None:
        return ClassificationOutcome(Outcome.WREATH, wreath=wl, **common)
    dl = double_witness(g)
    if dl is not None:
        return ClassificationOutcome(Outcome.DOUBLE, double=dl, **common)
    if scan.status == "inconclusive":
        return ClassificationOutcome(Outcome.INCONCLUSIVE, **common)
    return ClassificationOutcome(Outcome.REFUTED, **common)


def theorem_4valent(g: Graph, grp: GeneratedGroup, cap: int | None = None, seed: int = 0,
                    aut_level: bool = True) -> ClassificationOutcome:
    """Semiregular element of ``grp``, or a ``W(2^k, 2)`` / ``DD(base)`` witness.

    Needs ``g`` connected, 4-valent and ``grp``-edge-transitive.
    """
    _check_edge_transitive(g, grp, 4)
    out = semiregular_outcome(g, grp, cap, seed, aut_level)
    if out.kind is Outcome.REFUTED:
        raise Violation("4-valent theorem", "no semiregular element and no exceptional-family witness")
    if out.kind is Outcome.INCONCLUSIVE:
        raise CapExceeded(out.group_scan.group_order, default_cap() if cap is None else cap)
    return out


# ---------------------------------------------------------------------------
# bipartite corollary
# ---------------------------------------------------------------------------

def part_preserving_subgroup(grp: GeneratedGroup, part: Iterable[int]) -> GeneratedGroup:
    """Index-at-most-2 subgroup fixing ``part`` setwise (the group must preserve the bipartition)."""
    part = frozenset(part)
    x0 = min(part)

    def swaps(s):
        return s(x0) not in part

    gens = list(grp.generators)
    s0 = next((s for s in gens if swaps(s)), None)
    if s0 is None:
        return grp
    s0_inv = s0.inverse()
    out = []
    for s in gens:
        # Schreier generators for the transversal {1, s0}
        if swaps(s):
            out.append(s * s0_inv)
            out.append(s0 * s)
        else:
            out.append(s)
            out.append(s0 * s * s0_inv)
    return GeneratedGroup(grp.domain_size, [h for h in out if not h.is_identity()])


def part_preserving_certificate(g: Graph, cap: int | None = None, seed: int = 0
                                ) -> tuple[SemiregularCertificate, str]:
    """Part-preserving semiregular automorphism and the route that produced it."""
    _require(is_connected(g), "graph is not connected")
    val = g.valency()
    _require(val is not None and 1 <= val <= 4, "graph is not regular of valency at most 4")
    bp = bipartition(g)
    _require(bp is not None, "graph is not bipartite")
    aut = automorphism_group(g)
    _require(is_edge_transitive(g, aut), "graph is not edge-transitive")
    _require(is_locally_arc_transitive(g, aut), "graph is not locally arc-transitive")
    parts = [bp.part_a, bp.part_b]

    def ok(cert):
        return (cert is not None and cert.validate() and is_automorphism(g, cert.element)
                and all(cert.element.preserves(p) for p in parts))

    wl = wreath_witness(g)
    if wl is not None:
        cert = is_semiregular(twin_swap(wl, g.n))
        if ok(cert):
            return cert, "twin-swap"
    if double_witness(g) is not None:
        cert, route = _structured_certificate(g, None, cap)
        if ok(cert):
            return cert, route
    sub = part_preserving_subgroup(aut, bp.part_a)
    res = find_semiregular(sub, parts, cap=cap, seed=seed)
    if ok(res.certificate):
        return res.certificate, f"part-preserving-{res.method}"
    if res.status == "inconclusive":
        raise CapExceeded(res.group_order, default_cap() if cap is None else cap)
    raise Violation("bipartite corollary", "no part-preserving semiregular automorphism")


def corollary_part_preserving(g: Graph, cap: int | None = None) -> SemiregularCertificate:
    return part_preserving_certificate(g, cap)[0]


# ---------------------------------------------------------------------------
# lemmas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dichotomy:
    """Either a certificate or ``p`` vertices sharing one neighbourhood."""

    certificate: SemiregularCertificate | None
    twins: tuple[int, ...] | None

    @property
    def kind(self) -> str:
        return "semiregular" if self.certificate is not None else "twins"


def power_order_dichotomy(g: Graph, grp: GeneratedGroup, u: int, p: int,
                          cap: int | None = None) -> Dichotomy:
    _require(is_prime(p), f"{p} is not prime")
    _require(is_connected(g) and g.is_regular(), "graph must be connected and regular")
    _check_group_on(g, grp)
    _require(is_edge_transitive(g, grp), "group is not edge-transitive")
    a = even_reachability(g, u)
    _require(is_prime_power(len(a), p), f"|A| = {len(a)} is not a power of {p}")
    res = find_semiregular(grp, cap=cap)
    if res.certificate is not None:
        return Dichotomy(res.certificate, None)
    if res.status == "inconclusive":
        raise CapExceeded(res.group_order, default_cap() if cap is None else cap)
    if bipartition(g) is not None:
        candidates = [tuple(c[:p]) for c in twin_classes(g) if len(c) >= p]
        if candidates:
            return Dichotomy(None, min(candidates))
    raise Violation("power-order dichotomy", "no semiregular element and no twin set")


class UnworthyKind(str, Enum):
    WREATH = "Wreath"
    SUBDIVIDED_DOUBLE = "SubdividedDouble"
    WORTHY = "Worthy"
    OTHER = "UnworthyOther"


@dataclass(frozen=True)
class UnworthyClass:
    kind: UnworthyKind
    n: int | None = None
    base: Graph | None = None


def classify_unworthy(g: Graph) -> UnworthyClass:
    """Which unworthy family ``g`` belongs to.

    ``UnworthyOther`` on a connected edge-transitive 4-valent graph raises ``Violation``.
    """
    if not any(len(c) > 1 for c in twin_classes(g)):
        return UnworthyClass(UnworthyKind.WORTHY)
    wl = match_wreath(g)
    if wl is not None:
        return UnworthyClass(UnworthyKind.WREATH, n=wl.n)
    dl = match_subdivided_double(g)
    if dl is not None:
        return UnworthyClass(UnworthyKind.SUBDIVIDED_DOUBLE, base=dl.base)
    if is_connected(g) and g.is_regular(4) and is_edge_transitive(g, automorphism_group(g)):
        raise Violation("unworthy classification", "edge-transitive 4-valent unworthy graph in no family")
    return UnworthyClass(UnworthyKind.OTHER)


def vertex_edge_group(lam: Graph, grp: GeneratedGroup) -> GeneratedGroup:
    """``grp`` acting on ``V(lam)`` followed by ``E(lam)`` (edge ``k`` is point ``|V| + k``)."""
    n = lam.n
    index = lam.edge_index()
    gens = []
    for s in grp.generators:
        e = edge_permutation(lam, s, index)
        gens.append(Permutation._raw(s.images + tuple(n + x for x in e.images)))
    return GeneratedGroup(n + lam.edge_count, gens)


def verify_ve_semiregular(lam: Graph, grp: GeneratedGroup, p: int, cap: int | None = None,
                          seed: int = 0) -> Permutation:
    """Element of ``grp`` semiregular on both the vertices and the edges of ``lam``."""
    _require(is_prime(p), f"{p} is not prime")
    _require(is_connected(lam) and lam.n >= 3, "graph must be connected with at least 3 vertices")
    _require(is_prime_power(lam.n, p) and is_prime_power(lam.edge_count, p),
             f"|V| = {lam.n} and |E| = {lam.edge_count} must both be powers of {p}")
    _check_group_on(lam, grp)
    _require(grp.is_transitive(), "group is not vertex-transitive")
    _require(is_edge_transitive(lam, grp), "group is not edge-transitive")
    ve = vertex_edge_group(lam, grp)
    n = lam.n
    res = find_semiregular(ve, [range(n), range(n, ve.domain_size)], cap=cap, seed=seed)
    if res.certificate is not None:
        return Permutation._raw(res.certificate.element.images[:n])
    if res.status == "inconclusive":
        raise CapExceeded(res.group_order, default_cap() if cap is None else cap)
    raise Violation("vertex-and-edge semiregularity", "no element semiregular on both V and E")


def solvable_order_p_semiregular_check(g: Graph, grp: GeneratedGroup, p: int,
                                       cap: int | None = None) -> SemiregularCertificate:
    """Order-``p`` semiregular element of a solvable arc-transitive group on a 4-valent graph."""
    _require(is_prime(p) and p % 2 == 1, f"{p} is not an odd prime")
    _require(is_connected(g) and g.is_regular(4), "graph must be connected and 4-valent")
    _require(g.n % p == 0, f"{p} does not divide the number of vertices")
    _check_group_on(g, grp)
    _require(is_arc_transitive(g, grp), "group is not arc-transitive")
    _require(is_solvable(grp, cap), "group is not solvable")
    res = find_semiregular(grp, cap=cap, primes=[p])
    if res.certificate is not None:
        return res.certificate
    raise Violation("solvable order-p lemma", f"no semiregular element of order {p}")
