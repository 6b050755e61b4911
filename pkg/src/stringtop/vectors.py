"""Sparse vectors keyed by hashable basis keys."""
from __future__ import annotations

from typing import Any, Hashable, Iterable, Iterator

from .fields import Field


class Vec:
    """A finite linear combination ``sum c_k * k`` over a :class:`Field`.

    Keys are basis labels (strings), label pairs, or Hochschild words.
    Zero coefficients are never stored, so ``bool(v)`` is an exact zero test.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms: dict = {}
        if terms:
            for k, c in terms.items():
                self.add_term(k, c)

    @classmethod
    def basis(cls, field: Field, key: Hashable, coeff: Any = 1) -> "Vec":
        v = cls(field)
        v.add_term(key, coeff)
        return v

    def add_term(self, key: Hashable, coeff: Any) -> None:
        """In-place ``self += coeff * key``."""
        c = self.field.norm(self.terms.get(key, 0) + coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def add_vec(self, other: "Vec", coeff: Any = 1) -> None:
        for k, c in other.terms.items():
            self.add_term(k, coeff * c)

    def copy(self) -> "Vec":
        v = type(self)(self.field)
        v.terms = dict(self.terms)
        return v

    def items(self) -> Iterable:
        return self.terms.items()

    def keys(self) -> Iterable:
        return self.terms.keys()

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, key: Hashable):
        return self.terms.get(key, self.field.zero)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Vec") -> "Vec":
        v = self.copy()
        v.add_vec(other)
        return v

    def __sub__(self, other: "Vec") -> "Vec":
        v = self.copy()
        v.add_vec(other, -1)
        return v

    def __neg__(self) -> "Vec":
        return self.scale(-1)

    def scale(self, c: Any) -> "Vec":
        v = type(self)(self.field)
        c = self.field.norm(c)
        if c:
            v.terms = {k: self.field.norm(x * c) for k, x in self.terms.items()}
        return v

    def __rmul__(self, c: Any) -> "Vec":
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Vec is mutable and unhashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{self.field.fmt(c)}*{k!r}" for k, c in sorted(self.terms.items(), key=lambda t: repr(t[0]))]
        return " + ".join(parts)
