"""Exact scalar arithmetic over the rationals and over prime fields.

Rational scalars are `fractions.Fraction` values (always in lowest terms);
elements of F_p are plain ints in [0, p).  A `Field` instance supplies the
arithmetic so that matrix code can stay field-generic.  Nothing here is ever
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, slots=True)
class Field:
    """The rationals (``p is None``) or the prime field with p elements.

    p must be a prime below 2**16; primality is checked at construction.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (not 2 <= self.p < 2**16 or not is_prime(self.p)):
            raise ValueError(f"field characteristic must be a prime in [2, 2^16): {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, value):
        """Coerce an int, Fraction, or string like "a/b" into a field element."""
        if self.p is None:
            if isinstance(value, str):
                return Fraction(value)
            return Fraction(value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, self.p - 2, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def to_json(self, a):
        """Rationals serialize as "n" or "n/d" strings, F_p elements as ints."""
        if self.p is None:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)

    def from_json(self, v):
        return self.of(v)

    def json_name(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json_name(cls, v) -> "Field":
        if v == "Q":
            return cls(None)
        if isinstance(v, dict) and set(v) == {"Fp"}:
            return cls(int(v["Fp"]))
        raise ValueError(f"unrecognized field spec: {v!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)
