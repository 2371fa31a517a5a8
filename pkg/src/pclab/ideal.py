"""Ideals in the Boolean quotient ring: Groebner bases, normal forms,
membership and common roots.

The engine works on bitmask monomials (see :class:`MonomialOrder`): a
polynomial is a ``dict`` mapping an ``int`` mask to a nonzero coefficient.
Boolean axioms are implicit, so all S-polynomial arithmetic stays
multilinear; for each basis element ``g`` and each variable ``x`` of its
leading monomial, the product ``x*g - g`` plays the role of the S-pair of
``g`` with ``x^2 - x``.
"""
from __future__ import annotations

import heapq
from collections import OrderedDict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import count

import numpy as np

from .algebra import BooleanAxiom, MonomialOrder, Polynomial
from .errors import DomainError, ResourceError
from .field import Field

MAX_ROOT_VARIABLES = 24


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Elem:
    __slots__ = ("lm", "tail")

    def __init__(self, lm: int, tail: dict):
        self.lm = lm
        self.tail = tail  # monic: the leading coefficient 1 is implicit

    def as_dict(self, one) -> dict:
        d = dict(self.tail)
        d[self.lm] = one
        return d


def _lead(poly: dict) -> int:
    return max(poly, key=lambda m: (m.bit_count(), m))


class MaskBasis:
    """A Groebner basis of bitmask polynomials (monic, leading term implicit)."""

    def __init__(self, p: int | None, elems: list, unit: bool = False):
        self.p = p
        self.unit = unit
        self.elems = [] if unit else elems
        self._index: dict = {}
        self._memo: dict = {}  # t -> divisor or None; None entries dropped on growth
        for e in self.elems:
            self._register(e)

    def _register(self, e: _Elem):
        self._index.setdefault(e.lm.bit_length() - 1, []).append(e)
        if self._memo:
            self._memo = {t: d for t, d in self._memo.items() if d is not None}

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def lms(self) -> list:
        return [0] if self.unit else [e.lm for e in self.elems]

    def divisor(self, t: int):
        if self.unit:
            return True
        memo = self._memo
        if t in memo:
            return memo[t]
        index = self._index
        found = None
        rest = t
        while rest and found is None:
            top = rest.bit_length() - 1
            rest ^= 1 << top
            for e in index.get(top, ()):
                if not e.lm & ~t:
                    found = e
                    break
        memo[t] = found
        return found

    def reducible(self, t: int) -> bool:
        return self.divisor(t) is not None

    def reduce(self, f: dict) -> dict:
        """Full normal form of ``f``; the input dict is not modified."""
        if self.unit:
            return {}
        p = self.p
        if p == 2:
            return self._reduce_gf2(f)
        work = dict(f)
        heap = [(-t.bit_count(), -t) for t in work]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, nt = heapq.heappop(heap)
            t = -nt
            c = work.pop(t, None)
            if c is None:
                continue
            e = self.divisor(t)
            if e is None:
                out[t] = c
                continue
            s = t & ~e.lm
            for m, a in e.tail.items():
                u = s | m
                old = work.get(u)
                if p is not None:
                    v = ((old or 0) - c * a) % p
                else:
                    v = (old or 0) - c * a
                if v:
                    work[u] = v
                    if old is None:
                        heapq.heappush(heap, (-u.bit_count(), -u))
                elif old is not None:
                    del work[u]
        return out

    def _reduce_gf2(self, f: dict) -> dict:
        work = {t for t, c in f.items() if c % 2}
        heap = [(-t.bit_count(), -t) for t in work]
        heapq.heapify(heap)
        out = {}
        divisor = self.divisor
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            nt = pop(heap)[1]
            t = -nt
            if t not in work:
                continue
            work.discard(t)
            e = divisor(t)
            if e is None:
                out[t] = 1
                continue
            s = t & ~e.lm
            for m in e.tail:
                u = s | m
                if u in work:
                    work.discard(u)
                else:
                    work.add(u)
                    push(heap, (-u.bit_count(), -u))
        return out

    def merged(self, other: "MaskBasis") -> "MaskBasis":
        if self.unit or other.unit:
            return MaskBasis(self.p, [], unit=True)
        return MaskBasis(self.p, self.elems + other.elems)


def _monic(p, poly: dict) -> _Elem:
    lm = _lead(poly)
    lc = poly[lm]
    if p is not None:
        inv = pow(lc, -1, p)
        tail = {m: c * inv % p for m, c in poly.items() if m != lm}
    else:
        tail = {m: c / lc for m, c in poly.items() if m != lm}
    return _Elem(lm, tail)


def _mul_monomial(p, s: int, e: _Elem, one) -> dict:
    """``s * (lm + tail)`` with multilinear collapse."""
    out = {s | e.lm: one}
    for m, a in e.tail.items():
        u = s | m
        old = out.get(u)
        if old is None:
            out[u] = a
        else:
            v = (old + a) % p if p is not None else old + a
            if v:
                out[u] = v
            else:
                del out[u]
    return out


def _sub(p, f: dict, g: dict) -> dict:
    out = dict(f)
    for m, c in g.items():
        old = out.get(m)
        if old is None:
            out[m] = (-c) % p if p is not None else -c
        else:
            v = (old - c) % p if p is not None else old - c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def buchberger(p: int | None, generators: list, max_basis: int = 200_000) -> MaskBasis:
    """Reduced Groebner basis of bitmask polynomials in the Boolean ring.

    Buchberger's algorithm with the normal strategy (smallest lcm first),
    the product criterion and the chain criterion.
    """
    one = 1 if p is not None else Fraction(1)
    G: list = []
    basis = MaskBasis(p, [])
    pairs: list = []
    pending: set = set()
    by_top: dict = {}
    tick = count()

    def add(h: dict) -> bool:
        e = _monic(p, h)
        if e.lm == 0:
            return True
        i = len(G)
        G.append(e)
        basis.elems.append(e)
        basis._register(e)
        if len(G) > max_basis:
            raise ResourceError(f"Groebner basis exceeded {max_basis} elements", bound=max_basis)
        by_top.setdefault(e.lm.bit_length() - 1, []).append(i)
        key = (e.lm.bit_count(), e.lm)
        for x in _bits(e.lm):
            heapq.heappush(pairs, (key, next(tick), "x", i, x))
        for j in range(i):
            other = G[j].lm
            if other & e.lm:
                lcm = other | e.lm
                pending.add((j, i))
                heapq.heappush(pairs, ((lcm.bit_count(), lcm), next(tick), "s", j, i))
        return False

    def chain(i: int, j: int) -> bool:
        # some l with lm_l | lcm whose pairs with i and j are already treated
        lcm = G[i].lm | G[j].lm
        for b in _bits(lcm):
            for l in by_top.get(b, ()):
                if l == i or l == j or G[l].lm & ~lcm:
                    continue
                if (min(i, l), max(i, l)) not in pending and (min(j, l), max(j, l)) not in pending:
                    return True
        return False

    for g in generators:
        if not g:
            continue
        h = basis.reduce(g)
        if h and add(h):
            return MaskBasis(p, [], unit=True)

    while pairs:
        _, _, kind, i, j = heapq.heappop(pairs)
        if kind == "x":
            e = G[i]
            xb = 1 << j
            tail = {}
            for m, a in e.tail.items():
                u = m | xb
                old = tail.get(u)
                if old is None:
                    tail[u] = a
                else:
                    v = (old + a) % p if p is not None else old + a
                    if v:
                        tail[u] = v
                    else:
                        del tail[u]
            spoly = _sub(p, tail, e.tail)
        else:
            pending.discard((i, j))
            if chain(i, j):
                continue
            a, b = G[i], G[j]
            lcm = a.lm | b.lm
            spoly = _sub(p, _mul_monomial(p, lcm & ~a.lm, a, one), _mul_monomial(p, lcm & ~b.lm, b, one))
        if not spoly:
            continue
        h = basis.reduce(spoly)
        if h and add(h):
            return MaskBasis(p, [], unit=True)

    return _interreduce(p, G)


def _interreduce(p, G: list) -> MaskBasis:
    lms = [e.lm for e in G]
    keep = []
    for i, e in enumerate(G):
        redundant = False
        for j, other in enumerate(lms):
            if j != i and not other & ~e.lm and (other != e.lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(e)
    minimal = MaskBasis(p, keep)
    out = []
    for e in keep:
        # tails only contain monomials smaller than lm, so reducing against the
        # whole minimal basis never touches e's own leading term
        tail = minimal.reduce(e.tail) if e.tail else {}
        out.append(_Elem(e.lm, tail))
    out.sort(key=lambda e: (e.lm.bit_count(), e.lm))
    return MaskBasis(p, out)


# ---------------------------------------------------------------------------
# block decomposition and caching

_BLOCK_CACHE: OrderedDict = OrderedDict()
BLOCK_CACHE_SIZE = 20_000


def clear_cache():
    _BLOCK_CACHE.clear()


def _support(poly: dict) -> int:
    out = 0
    for m in poly:
        out |= m
    return out


def _blocks(generators: list) -> list:
    """Group generators whose variable sets are connected."""
    parent = list(range(len(generators)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict = {}
    for i, g in enumerate(generators):
        for b in _bits(_support(g)):
            j = owner.setdefault(b, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict = {}
    for i in range(len(generators)):
        groups.setdefault(find(i), []).append(generators[i])
    return list(groups.values())


def basis_for(p: int | None, generators: list, use_cache: bool = True) -> MaskBasis:
    """Groebner basis of bitmask generators, computed block by block.

    Generators on disjoint variable sets give ideals whose reduced bases
    simply union, so each connected block is solved (and cached) alone.
    """
    gens = [g for g in generators if g]
    constant_only = [g for g in gens if set(g) == {0}]
    if constant_only:
        return MaskBasis(p, [], unit=True)
    elems: list = []
    for block in _blocks(gens):
        key = (p, frozenset(frozenset(g.items()) for g in block))
        mb = _BLOCK_CACHE.get(key) if use_cache else None
        if mb is None:
            mb = buchberger(p, sorted(block, key=lambda g: (_lead(g).bit_count(), _lead(g))))
            if use_cache:
                _BLOCK_CACHE[key] = mb
                if len(_BLOCK_CACHE) > BLOCK_CACHE_SIZE:
                    _BLOCK_CACHE.popitem(last=False)
        else:
            _BLOCK_CACHE.move_to_end(key)
        if mb.unit:
            return MaskBasis(p, [], unit=True)
        elems.extend(mb.elems)
    elems.sort(key=lambda e: (e.lm.bit_count(), e.lm))
    return MaskBasis(p, elems)


# ---------------------------------------------------------------------------
# public, Polynomial-level interface


def _split(generators):
    polys, booleans = [], []
    for g in generators:
        if isinstance(g, BooleanAxiom):
            booleans.append(g)
        elif isinstance(g, Polynomial):
            polys.append(g)
        else:
            raise TypeError(f"unsupported generator {g!r}")
    return polys, booleans


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of a Boolean-quotient ideal.

    ``generators`` is the input list (Boolean axioms are always implied);
    ``basis`` lists the monic reduced basis sorted by ascending leading
    monomial. ``[1]`` means the ideal is the whole ring.
    """

    generators: tuple
    order: MonomialOrder
    field: Field
    basis: tuple
    _mb: MaskBasis = dc_field(repr=False, compare=False)

    @property
    def inconsistent(self) -> bool:
        return self._mb.unit

    def leading_monomials(self) -> list:
        return [self.order.monomial(m) for m in self._mb.lms()]

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.field != self.field:
            raise DomainError(f"polynomial over {p.field}, basis over {self.field}")
        out = self._mb.reduce(self.order.to_masks(p))
        return self.order.from_masks(self.field, out)

    def is_reducible(self, m) -> bool:
        return self._mb.reducible(self.order.mask(m))

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()


def groebner(generators, order: MonomialOrder, field: Field | None = None, use_cache=True) -> GroebnerBasis:
    polys, _ = _split(list(generators))
    if field is None:
        if not polys:
            raise DomainError("cannot infer the field of an empty generator set")
        field = polys[0].field
    for g in polys:
        if g.field != field:
            raise DomainError(f"mixed fields {g.field} and {field}")
    mb = basis_for(field.p, [order.to_masks(g) for g in polys], use_cache=use_cache)
    if mb.unit:
        basis = (Polynomial.constant(field, 1),)
    else:
        basis = tuple(order.from_masks(field, e.as_dict(field.one)) for e in mb.elems)
    return GroebnerBasis(tuple(generators), order, field, basis, mb)


def reduce(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(p)


def is_reducible(m, gb: GroebnerBasis) -> bool:
    return gb.is_reducible(m)


def ideal_membership(p: Polynomial, gb: GroebnerBasis) -> bool:
    return gb.contains(p)


def _variables(generators, extra=()):
    out = set(extra)
    for g in generators:
        out.update(g.variables)
    return sorted(out)


def common_roots(generators, variables=None, max_variables: int = MAX_ROOT_VARIABLES) -> list:
    """All 0/1 assignments on which every generator vanishes.

    The cube is enumerated over the variables mentioned by the generators
    (Boolean axioms included) plus any ``variables`` passed explicitly.
    """
    generators = list(generators)
    names = _variables(generators, variables or ())
    n = len(names)
    if n > max_variables:
        raise ResourceError(f"{n} variables exceed the enumeration budget of {max_variables}", bound=max_variables)
    pos = {v: i for i, v in enumerate(names)}
    cand = np.arange(1 << n, dtype=np.int64)
    for g in generators:
        if isinstance(g, BooleanAxiom) or g.is_zero() or cand.size == 0:
            continue
        cand = cand[_vanishes(g, pos, cand)]
    return [{v: int((a >> i) & 1) for i, v in enumerate(names)} for a in cand.tolist()]


def _vanishes(g: Polynomial, pos: dict, points: np.ndarray) -> np.ndarray:
    F = g.field
    terms = []
    for m, c in g:
        mask = 0
        for v in m:
            mask |= 1 << pos[v]
        terms.append((mask, c))
    if F.p is None:
        den = 1
        for _, c in terms:
            den = den * c.denominator // np.gcd(den, c.denominator)
        ints = [(mask, int(c * den)) for mask, c in terms]
        big = sum(abs(c) for _, c in ints) >= 2**62
    else:
        ints = terms
        big = F.p * len(terms) >= 2**62
    acc = np.zeros(points.shape, dtype=object if big else np.int64)
    for mask, c in ints:
        hit = (points & mask) == mask
        acc = acc + hit.astype(acc.dtype) * c
    if F.p is not None:
        acc = acc % F.p
    return acc == 0


def evaluate_on_cube(p: Polynomial, names: list) -> np.ndarray:
    """Values of ``p`` on all of {0,1}^len(names), indexed by bit pattern."""
    pos = {v: i for i, v in enumerate(names)}
    points = np.arange(1 << len(names), dtype=np.int64)
    out = np.zeros(points.shape, dtype=object)
    for m, c in p:
        mask = 0
        for v in m:
            mask |= 1 << pos[v]
        out = out + ((points & mask) == mask).astype(object) * c
    if p.field.p is not None:
        out = out % p.field.p
    return out
