"""Permutations on ``{0, ..., m-1}`` and finitely generated permutation groups.

Permutations act on the right: ``x^(pq) = (x^p)^q``, so ``(p * q)(x) == q(p(x))``.
Conjugation follows the same convention, ``p.conjugate(q) == q**-1 * p * q``.

Groups carry a stabilizer chain (base and strong generating set) built by the
deterministic Schreier-Sims algorithm. Exhaustive scans enumerate the group in
numpy blocks, one row per element.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, NotInvariantError, TrivialOnSubsetError

DEFAULT_CAP = 10**6
BLOCK_SIZE = 1 << 15


def default_cap() -> int:
    """Enumeration cap, overridable through ``ETSEMI_CAP``."""
    env = os.environ.get("ETSEMI_CAP")
    return int(env) if env else DEFAULT_CAP


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in ascending order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def is_prime_power(n: int, p: int | None = None) -> bool:
    """True if ``n`` is a power of a prime (of ``p`` when given); 1 counts as p^0."""
    if n < 1:
        return False
    fs = prime_factors(n)
    if p is None:
        return len(fs) <= 1
    return fs == [] or fs == [p]


# tuple-level helpers used by the chain code

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple([q[i] for i in p])


def _inv(p: tuple) -> tuple:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _first_moved(p: tuple) -> int | None:
    for i, x in enumerate(p):
        if i != x:
            return i
    return None


class Permutation:
    """A bijection of ``{0, ..., m-1}`` stored as its image table."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def _raw(cls, images: tuple) -> Permutation:
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles(5, (0, 1), (2, 3, 4))``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if a in seen:
                    raise ValueError(f"cycles are not disjoint at {a}")
                seen.add(a)
                img[a] = b
        return cls(img)

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> Permutation:
        img = list(range(n))
        for a, b in mapping.items():
            img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = tuple(range(self.degree))
        base = self.images
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._raw(result)

    def inverse(self) -> Permutation:
        return Permutation._raw(_inv(self.images))

    def conjugate(self, by: Permutation) -> Permutation:
        """``by**-1 * self * by``, i.e. ``self^by`` in exponent notation."""
        return by.inverse() * self * by

    def commutator(self, other: Permutation) -> Permutation:
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def preserves(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.images[x] in s for x in s)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({list(self.images)!r})"

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def to_json(self) -> list[int]:
        return list(self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``: the result maps ``x`` to ``q(p(x))``."""
    if p.degree != q.degree:
        raise ValueError(f"domain size mismatch: {p.degree} vs {q.degree}")
    return Permutation._raw(_mul(p.images, q.images))


def order_of(p: Permutation) -> int:
    return p.order()


@dataclass(frozen=True)
class SemiregularCertificate:
    """An element whose cycles on ``restricted_to`` (or the whole domain) all have length ``cycle_length``."""

    element: Permutation
    cycle_length: int
    restricted_to: frozenset[int] | None = None

    def validate(self) -> bool:
        try:
            again = is_semiregular(self.element, self.restricted_to)
        except (NotInvariantError, TrivialOnSubsetError):
            return False
        return again is not None and again.cycle_length == self.cycle_length

    def to_json(self) -> dict:
        return {
            "element": self.element.to_json(),
            "cycles": [list(c) for c in self.element.cycles()],
            "cycle_length": self.cycle_length,
            "restricted_to": sorted(self.restricted_to) if self.restricted_to is not None else None,
        }


def is_semiregular(p: Permutation, s: Iterable[int] | None = None) -> SemiregularCertificate | None:
    """Certificate if all cycles of ``p`` on the invariant set ``s`` share one length >= 2.

    ``s`` defaults to the whole domain. Raises ``NotInvariantError`` if ``p``
    does not map ``s`` into itself and ``TrivialOnSubsetError`` if ``p`` fixes
    every point of ``s``.
    """
    if s is None:
        points = range(p.degree)
        restricted = None
    else:
        restricted = frozenset(s)
        points = sorted(restricted)
        if not all(p.images[x] in restricted for x in points):
            raise NotInvariantError("subset is not invariant under the permutation")
    img = p.images
    seen = set()
    length = None
    for x in points:
        if x in seen:
            continue
        k = 0
        y = x
        while True:
            seen.add(y)
            y = img[y]
            k += 1
            if y == x:
                break
        if length is None:
            length = k
        elif k != length:
            return None
    if length is None or length == 1:
        raise TrivialOnSubsetError("permutation is trivial on the subset")
    return SemiregularCertificate(p, length, restricted)


def _orbit_transversal(b: int, gens: Sequence[tuple], ident: tuple) -> dict[int, tuple]:
    t = {b: ident}
    queue = [b]
    for x in queue:
        u = t[x]
        for s in gens:
            y = s[x]
            if y not in t:
                t[y] = _mul(u, s)
                queue.append(y)
    return t


class _Chain:
    """Base, strong generators and transversals (point -> element mapping base point there)."""

    def __init__(self, n: int, gens: Sequence[tuple], base: Sequence[int] = ()):
        self.n = n
        self.ident = tuple(range(n))
        self.base: list[int] = list(dict.fromkeys(base))
        self.strong: list[tuple] = []
        for g in gens:
            if g != self.ident and g not in self.strong:
                self.strong.append(g)
        for g in self.strong:
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))
        self.trans: list[dict[int, tuple]] = [None] * len(self.base)
        for i in range(len(self.base)):
            self._retransversal(i)
        self._schreier_sims()

    @classmethod
    def from_bsgs(cls, n: int, base: Sequence[int], strong: Sequence[tuple]) -> _Chain:
        """Trust a known base and strong generating set (no verification)."""
        obj = cls.__new__(cls)
        obj.n = n
        obj.ident = tuple(range(n))
        obj.base = list(base)
        obj.strong = [g for g in strong if g != obj.ident]
        obj.trans = [None] * len(obj.base)
        for i in range(len(obj.base)):
            obj._retransversal(i)
        return obj

    def level_gens(self, i: int) -> list[tuple]:
        prefix = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in prefix)]

    def _retransversal(self, i: int) -> None:
        self.trans[i] = _orbit_transversal(self.base[i], self.level_gens(i), self.ident)

    def strip(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        for j in range(start, len(self.base)):
            x = h[self.base[j]]
            u = self.trans[j].get(x)
            if u is None:
                return h, j
            h = _mul(h, _inv(u))
        return h, len(self.base)

    def _schreier_sims(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            added = False
            gens = self.level_gens(i)
            t = self.trans[i]
            for x, u in list(t.items()):
                for s in gens:
                    y = s[x]
                    sg = _mul(_mul(u, s), _inv(t[y]))
                    if sg == self.ident:
                        continue
                    h, j = self.strip(sg, i + 1)
                    if h == self.ident:
                        continue
                    self.strong.append(h)
                    if j == len(self.base):
                        self.base.append(_first_moved(h))
                        self.trans.append(None)
                    for level in range(j + 1):
                        self._retransversal(level)
                    i = j
                    added = True
                    break
                if added:
                    break
            if not added:
                i -= 1

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def contains(self, h: tuple) -> bool:
        r, j = self.strip(h)
        return j == len(self.base) and r == self.ident

    def sorted_points(self) -> list[list[int]]:
        return [sorted(t) for t in self.trans]

    def arrays(self) -> list[np.ndarray]:
        return [np.array([t[x] for x in sorted(t)], dtype=np.int32).reshape(len(t), self.n)
                for t in self.trans]


class GeneratedGroup:
    """A permutation group on ``range(domain_size)`` given by generators.

    The stabilizer chain is built lazily, once; after that the group is read-only.
    ``base`` optionally fixes the first base points (useful for stabilizers
    and kernels); the chain is otherwise extended by smallest moved points.
    """

    def __init__(self, domain_size: int, generators: Iterable = (), base: Sequence[int] = ()):
        if domain_size < 1:
            raise ValueError("domain size must be positive")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != domain_size:
                raise ValueError(f"generator of degree {g.degree} in a group on {domain_size} points")
            gens.append(g)
        self.domain_size = domain_size
        self.generators = tuple(gens)
        self._base_hint = tuple(base)

    @classmethod
    def _with_chain(cls, domain_size: int, chain: _Chain) -> GeneratedGroup:
        grp = cls(domain_size, [Permutation._raw(s) for s in chain.strong])
        grp.__dict__["chain"] = chain
        return grp

    @classmethod
    def from_bsgs(cls, domain_size: int, base: Sequence[int], strong: Sequence[Permutation]) -> GeneratedGroup:
        chain = _Chain.from_bsgs(domain_size, base, [s.images for s in strong])
        return cls._with_chain(domain_size, chain)

    @classmethod
    def symmetric(cls, n: int) -> GeneratedGroup:
        if n == 1:
            return cls(1)
        gens = [Permutation.from_cycles(n, (0, 1))]
        if n > 2:
            gens.append(Permutation.from_cycles(n, tuple(range(n))))
        return cls(n, gens)

    @classmethod
    def trivial(cls, n: int) -> GeneratedGroup:
        return cls(n)

    @cached_property
    def chain(self) -> _Chain:
        return _Chain(self.domain_size, [g.images for g in self.generators], self._base_hint)

    @property
    def degree(self) -> int:
        return self.domain_size

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.domain_size:
            return False
        return self.chain.contains(p.images)

    __contains__ = contains

    def is_subgroup_of(self, other: GeneratedGroup) -> bool:
        return all(g in other for g in self.generators)

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        queue = [x]
        for y in queue:
            for g in self.generators:
                z = g.images[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        return orbits(self)

    def is_transitive(self, points: Iterable[int] | None = None) -> bool:
        pts = sorted(points) if points is not None else list(range(self.domain_size))
        return self.orbit(pts[0]) == pts if pts else True

    def pointwise_stabilizer(self, points: Sequence[int]) -> GeneratedGroup:
        points = list(dict.fromkeys(points))
        if not points:
            return self
        full = _Chain(self.domain_size, self.chain.strong, points)
        k = len(points)
        # strong generators fixing the prefix form a strong generating set of the stabilizer
        sub = _Chain.from_bsgs(self.domain_size, full.base[k:], full.level_gens(k))
        return GeneratedGroup._with_chain(self.domain_size, sub)

    def stabilizer(self, x: int) -> GeneratedGroup:
        return self.pointwise_stabilizer([x])

    def random_element(self, rng: random.Random) -> Permutation:
        pts = self._points
        g = self.chain.ident
        for j in range(len(pts) - 1, -1, -1):
            u = self.chain.trans[j][rng.choice(pts[j])]
            g = _mul(g, u)
        return Permutation._raw(g)

    @cached_property
    def _points(self) -> list[list[int]]:
        return self.chain.sorted_points()

    def element_from_base_images(self, images: Sequence[int]) -> Permutation | None:
        """The element sending ``base[j]`` to ``images[j]`` for the leading base points, if any.

        Deeper base points are left fixed; returns ``None`` if no element matches.
        """
        chain = self.chain
        targets = list(images)
        factors = []
        for j in range(len(targets)):
            u = chain.trans[j].get(targets[j])
            if u is None:
                return None
            factors.append(u)
            ui = _inv(u)
            targets = targets[:j + 1] + [ui[t] for t in targets[j + 1:]]
        g = chain.ident
        for u in reversed(factors):
            g = _mul(g, u)
        return Permutation._raw(g)

    def element_blocks(self, block_size: int = BLOCK_SIZE) -> Iterator[np.ndarray]:
        """All elements as int32 arrays of shape ``(rows, degree)``, each element exactly once."""
        chain = self.chain
        n = self.domain_size
        arrays = chain.arrays()
        k = len(arrays)
        if k == 0:
            yield np.arange(n, dtype=np.int32).reshape(1, n)
            return
        # elements are u_{k-1} ... u_0; the trailing factors are vectorised
        s, size = 0, 1
        while s < k and size * len(arrays[s]) <= block_size:
            size *= len(arrays[s])
            s += 1
        s = max(s, 1)
        tail = arrays[s - 1]
        for j in range(s - 2, -1, -1):
            tj = arrays[j]
            tail = tj[:, tail].transpose(1, 0, 2).reshape(-1, n)
        head_levels = [[tuple(row) for row in arrays[j]] for j in range(k - 1, s - 1, -1)]
        for combo in itertools.product(*head_levels):
            h = chain.ident
            for u in combo:
                h = _mul(h, u)
            yield tail[:, list(h)]

    def iter_elements(self) -> Iterator[Permutation]:
        for block in self.element_blocks():
            for row in block.tolist():
                yield Permutation._raw(tuple(row))

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        return elements(self, cap)

    def __iter__(self):
        return self.elements()

    def to_json(self) -> dict:
        return {"domain_size": self.domain_size, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> GeneratedGroup:
        return cls(data["domain_size"], data["generators"])

    def __repr__(self):
        return f"GeneratedGroup(domain_size={self.domain_size}, generators={len(self.generators)})"


def group_order(g: GeneratedGroup) -> int:
    return g.order()


def orbits(g: GeneratedGroup) -> list[list[int]]:
    """Orbit partition, each orbit sorted, orbits ordered by least element."""
    parent = list(range(g.domain_size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in g.generators:
        for x, y in enumerate(gen.images):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    classes: dict[int, list[int]] = {}
    for x in range(g.domain_size):
        classes.setdefault(find(x), []).append(x)
    return sorted(classes.values())


def stabilizer(g: GeneratedGroup, x: int) -> GeneratedGroup:
    if not 0 <= x < g.domain_size:
        raise ValueError(f"point {x} outside the domain")
    return g.stabilizer(x)


def elements(g: GeneratedGroup, cap: int | None = None) -> Iterator[Permutation]:
    """Each element exactly once. Raises ``CapExceeded`` before yielding if ``|g| > cap``."""
    cap = default_cap() if cap is None else cap
    order = g.order()
    if order > cap:
        raise CapExceeded(order, cap)
    return g.iter_elements()


def power_rows(block: np.ndarray, k: int) -> np.ndarray:
    """Row-wise ``k``-th power of a block of permutations."""
    n = block.shape[1]
    result = np.broadcast_to(np.arange(n, dtype=block.dtype), block.shape).copy()
    base = block
    while k:
        if k & 1:
            result = np.take_along_axis(base, result, axis=1)
        k >>= 1
        if k:
            base = np.take_along_axis(base, base, axis=1)
    return result


def prime_order_rows(block: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of rows with order exactly ``p`` (``p`` prime)."""
    ident = np.arange(block.shape[1], dtype=block.dtype)
    nontrivial = (block != ident).any(axis=1)
    return nontrivial & (power_rows(block, p) == ident).all(axis=1)


def prime_order_elements(g: GeneratedGroup, cap: int | None = None) -> Iterator[Permutation]:
    """Every element of prime order, primes ascending, chain order within each prime."""
    cap = default_cap() if cap is None else cap
    order = g.order()
    if order > cap:
        raise CapExceeded(order, cap)

    def gen():
        for p in prime_factors(order):
            for block in g.element_blocks():
                for row in block[prime_order_rows(block, p)].tolist():
                    yield Permutation._raw(tuple(row))

    return gen()


def normal_closure(g: GeneratedGroup, gens: Iterable[Permutation]) -> GeneratedGroup:
    """Smallest normal subgroup of ``g`` containing ``gens``."""
    current = [h for h in gens if not h.is_identity()]
    sub = GeneratedGroup(g.domain_size, current)
    changed = True
    while changed:
        changed = False
        for h in list(sub.generators):
            for a in g.generators:
                c = h.conjugate(a)
                if c not in sub:
                    current.append(c)
                    sub = GeneratedGroup(g.domain_size, current)
                    changed = True
    return sub


def derived_subgroup(g: GeneratedGroup) -> GeneratedGroup:
    comms = [a.commutator(b) for a, b in itertools.combinations(g.generators, 2)]
    return normal_closure(g, comms)


def is_solvable(g: GeneratedGroup, cap: int | None = None) -> bool:
    """Decide solvability via the derived series. Raises ``CapExceeded`` above the cap."""
    cap = default_cap() if cap is None else cap
    order = g.order()
    if order > cap:
        raise CapExceeded(order, cap)
    current = g
    while current.order() > 1:
        nxt = derived_subgroup(current)
        if nxt.order() == current.order():
            return False
        current = nxt
    return True
