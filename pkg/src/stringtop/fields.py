"""Exact scalar fields: the rationals and prime fields.

Scalars are plain Python values.  Over ``Q`` they are ``Fraction`` instances,
over ``F_p`` they are ints reduced into ``range(p)``.  A :class:`Field` object
carries the arithmetic and the (de)serialization rules.

>>> Q = Field.parse("Q")
>>> Q.parse_scalar("3/6")
Fraction(1, 2)
>>> F7 = Field.parse("Fp:7")
>>> F7.inv(3)
5
>>> F7.fmt(F7.norm(-1))
6
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Either the rationals (``char == 0``) or F_p (``char == p``)."""

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if char >= 2**31:
            raise ValueError("prime fields are limited to machine-word primes")
        self.char = char

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("Fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                pass
        raise ValueError(f"unknown field descriptor {text!r}")

    def __repr__(self) -> str:
        return "Q" if self.char == 0 else f"Fp:{self.char}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self) -> int:
        return hash(("Field", self.char))

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def norm(self, x: Any):
        """Coerce an int, Fraction or scalar of this field to canonical form."""
        if self.char == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return x % self.char

    def inv(self, x: Any):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.char)

    def parse_scalar(self, value: Any):
        """Read a coefficient serialized as an int or a "num/den" string."""
        if isinstance(value, bool):
            raise ValueError("boolean is not a coefficient")
        if isinstance(value, int):
            return self.norm(value)
        if isinstance(value, str):
            return self.norm(Fraction(value.strip()))
        raise ValueError(f"cannot read coefficient {value!r}")

    def fmt(self, x: Any):
        """Serialize a scalar: residues as ints, rationals as ints or "num/den"."""
        if self.char:
            return int(x)
        x = Fraction(x)
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
