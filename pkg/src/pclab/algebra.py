"""Multilinear polynomials over GF(p) or Q, and the degree-then-lex order.

Everything here lives in the Boolean quotient F[x]/<x^2 - x>: a monomial is
a *set* of variables, so products collapse repeated variables structurally.
"""
from __future__ import annotations

import json
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .errors import DomainError
from .field import Field


class Variable(NamedTuple):
    """The indicator ``x_{v,i}``: vertex ``v`` receives colour ``i`` (1-based)."""

    vertex: int
    colour: int

    def __repr__(self):
        return f"x[{self.vertex},{self.colour}]"


Monomial = frozenset  # frozenset[Variable]; the empty set is the monomial 1
ONE = frozenset()


def monomial(*variables) -> frozenset:
    """``monomial((0, 1), (2, 3))`` -> ``{x[0,1], x[2,3]}``."""
    return frozenset(Variable(*v) for v in variables)


def vertices_of(m: Iterable[Variable]) -> frozenset:
    return frozenset(v.vertex for v in m)


class BooleanAxiom(NamedTuple):
    """``x^2 - x``. Identically zero in the multilinear ring; kept as a marker
    so axiom lists can carry it, and so its variable counts for enumeration."""

    variable: Variable

    degree = 2

    @property
    def variables(self) -> frozenset:
        return frozenset([self.variable])

    def evaluate(self, assignment) -> int:
        return 0

    def __repr__(self):
        return f"{self.variable!r}^2 - {self.variable!r}"


class Polynomial:
    """An immutable multilinear polynomial with canonical term map."""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: Field, terms: Mapping | None = None):
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field(c)
                if c:
                    clean[frozenset(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "Polynomial":
        # terms already canonical: field elements, no zeros
        p = cls.__new__(cls)
        p.field = field
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, field: Field, c=1) -> "Polynomial":
        return cls(field, {ONE: c})

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls._raw(field, {})

    @classmethod
    def var(cls, field: Field, v) -> "Polynomial":
        return cls._raw(field, {frozenset([Variable(*v)]): field.one})

    @classmethod
    def from_monomial(cls, field: Field, m, c=1) -> "Polynomial":
        return cls(field, {frozenset(m): c})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    def coefficient(self, m):
        return self._terms.get(frozenset(m), self.field.zero)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max((len(m) for m in self._terms), default=-1)

    @property
    def variables(self) -> frozenset:
        out = set()
        for m in self._terms:
            out.update(m)
        return frozenset(out)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.field != self.field:
            raise DomainError(f"mixed fields {self.field} and {other.field}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.field, other)

    def add(self, other: "Polynomial") -> "Polynomial":
        other = self._lift(other)
        F = self.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = F.add(out.get(m, F.zero), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(F, out)

    def scale(self, a) -> "Polynomial":
        F = self.field
        a = F(a)
        if not a:
            return Polynomial.zero(F)
        return Polynomial._raw(F, {m: F.mul(a, c) for m, c in self._terms.items()})

    def multiply(self, other: "Polynomial") -> "Polynomial":
        other = self._lift(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 | m2
                s = F.add(out.get(m, F.zero), F.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(F, out)

    __add__ = add
    __mul__ = multiply

    def __radd__(self, other):
        return self.add(other)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return other.multiply(self)
        return self.scale(other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self.add(-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other).add(-self)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self == Polynomial.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, assignment: Mapping):
        """Value at a 0/1 assignment ``{Variable: 0|1}`` covering ``self.variables``."""
        F = self.field
        missing = self.variables.difference(assignment)
        if missing:
            raise DomainError(f"assignment misses variables {sorted(missing)!r}")
        total = F.zero
        for m, c in self._terms.items():
            if all(assignment[v] for v in m):
                total = F.add(total, c)
        return total

    def substitute(self, rho: Mapping) -> "Polynomial":
        """Replace each variable in ``rho``'s domain by its polynomial image."""
        F = self.field
        one = Polynomial.constant(F, 1)
        result = Polynomial.zero(F)
        for m, c in self._terms.items():
            keep = frozenset(v for v in m if v not in rho)
            term = Polynomial._raw(F, {keep: c})
            for v in m:
                if v in rho:
                    img = rho[v]
                    if not isinstance(img, Polynomial):
                        img = one.scale(img)
                    term = term.multiply(img)
                    if term.is_zero():
                        break
            result = result.add(term)
        return result

    def leading_monomial(self, order: "MonomialOrder"):
        return order.leading_monomial(self)

    def sorted_terms(self):
        """Terms in a canonical, order-independent sequence (degree, then vars)."""
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), sorted(t[0])))

    def __repr__(self):
        if not self._terms:
            return "0"
        out = ""
        for m, c in reversed(self.sorted_terms()):
            if self.field.p is None and c < 0:
                sign, c = "-", -c
            else:
                sign = "+"
            coef = self.field.to_str(c)
            mon = "*".join(repr(v) for v in sorted(m))
            body = coef if not mon else mon if coef == "1" else f"{coef}*{mon}"
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "terms": [
                [[[v.vertex, v.colour] for v in sorted(m)], self.field.to_str(c)]
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        F = Field.from_json(obj["field"])
        terms = {}
        for pairs, coef in obj["terms"]:
            terms[monomial(*pairs)] = F(coef)
        return cls(F, terms)


def linear_sum(field: Field, variables: Iterable, constant=0) -> Polynomial:
    terms = {frozenset([Variable(*v)]): 1 for v in variables}
    if constant:
        terms[ONE] = constant
    return Polynomial(field, terms)


class MonomialOrder:
    """Degree-then-lex order induced by a vertex order and ``k`` colours.

    ``x[u,i] < x[v,j]`` iff ``u`` precedes ``v``, or ``u == v`` and ``i < j``.
    Monomials compare by degree, then lexicographically on their variables
    listed from largest downward. Internally each variable gets the bit
    ``rank(vertex) * k + colour - 1``; for equal degree the lex comparison is
    then plain integer comparison of the bitmasks.
    """

    def __init__(self, rank: Mapping | list, k: int):
        if k < 1:
            raise DomainError("k must be >= 1")
        if isinstance(rank, Mapping):
            rank = dict(rank)
        else:
            rank = {v: r for v, r in enumerate(rank)}
        if sorted(rank.values()) != list(range(len(rank))):
            raise DomainError("vertex ranks must be a bijection onto 0..n-1")
        self.rank = rank
        self.k = k
        self.n = len(rank)
        self._by_rank = sorted(rank, key=rank.__getitem__)

    @classmethod
    def identity(cls, n: int, k: int) -> "MonomialOrder":
        return cls(list(range(n)), k)

    @property
    def nvars(self) -> int:
        return self.n * self.k

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.k == other.k and self.rank == other.rank

    def __hash__(self):
        return hash((self.k, tuple(sorted(self.rank.items()))))

    def bit(self, v: Variable) -> int:
        vertex, colour = v
        r = self.rank.get(vertex)
        if r is None or not 1 <= colour <= self.k:
            raise DomainError(f"variable {v!r} outside the order's universe")
        return r * self.k + colour - 1

    def variable(self, bit: int) -> Variable:
        r, c = divmod(bit, self.k)
        return Variable(self._by_rank[r], c + 1)

    def variables(self) -> list:
        """All variables, ascending."""
        return [self.variable(b) for b in range(self.nvars)]

    def mask(self, m) -> int:
        out = 0
        for v in m:
            out |= 1 << self.bit(v)
        return out

    def monomial(self, mask: int) -> frozenset:
        out = []
        b = 0
        while mask:
            if mask & 1:
                out.append(self.variable(b))
            mask >>= 1
            b += 1
        return frozenset(out)

    def key(self, m):
        mask = self.mask(m)
        return (mask.bit_count(), mask)

    def compare(self, m1, m2) -> int:
        """-1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``."""
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def leading_monomial(self, p: Polynomial):
        if p.is_zero():
            raise DomainError("the zero polynomial has no leading monomial")
        return max(p.terms, key=self.key)

    def sorted_monomials(self, p: Polynomial, descending=True) -> list:
        return sorted(p.terms, key=self.key, reverse=descending)

    # bitmask-level helpers used by the ideal engine
    def to_masks(self, p: Polynomial) -> dict:
        return {self.mask(m): c for m, c in p.terms.items()}

    def from_masks(self, field: Field, terms: Mapping) -> Polynomial:
        return Polynomial._raw(field, {self.monomial(m): c for m, c in terms.items() if c})


def mask_key(mask: int):
    return (mask.bit_count(), mask)
