"""Exact coefficient fields: prime fields GF(p) and the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """``Field(p)`` is GF(p); ``Field(None)`` is Q.

    GF(p) elements are ints in ``range(p)``; rational elements are
    :class:`fractions.Fraction` (always in lowest terms).
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise DomainError(f"modulus {self.p} is not prime")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def parse(cls, value) -> "Field":
        """Parse ``'q'``, ``'Q'``, ``'2'``, ``'5'`` or an int."""
        if isinstance(value, Field):
            return value
        s = str(value).strip().lower()
        if s in ("q", "rationals", "0"):
            return cls(None)
        try:
            return cls(int(s))
        except ValueError:
            raise DomainError(f"cannot parse field {value!r}") from None

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def __call__(self, value):
        """Coerce an int, Fraction or ``"num/den"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DomainError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p is not None else a * b

    def neg(self, a):
        return -a % self.p if self.p is not None else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        if self.p is None and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def to_json(self) -> dict:
        return {"p": self.p} if self.p is not None else {"q": True}

    @classmethod
    def from_json(cls, obj: dict) -> "Field":
        if obj.get("q"):
            return cls(None)
        return cls(int(obj["p"]))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


GF2 = Field(2)
QQ = Field(None)
