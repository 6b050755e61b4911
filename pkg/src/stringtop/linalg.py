"""Exact sparse Gaussian elimination over Q and F_p.

Vectors are :class:`~stringtop.vectors.Vec` objects with hashable keys.  The
echelon form keeps, for every stored row, the combination of inserted vectors
it came from, so reductions can be read back in terms of the inputs.

>>> from stringtop.fields import QQ
>>> E = Echelon(QQ)
>>> E.insert(Vec(QQ, {"a": 1, "b": 1}), tag=0)
True
>>> E.insert(Vec(QQ, {"a": 2, "b": 2}), tag=1)
False
>>> E.rank
1
"""
from __future__ import annotations

from typing import Any, Hashable, Iterable, Sequence

from .fields import Field
from .vectors import Vec


class Echelon:
    """Incrementally built row echelon basis with provenance tracking."""

    def __init__(self, field: Field, order: dict[Hashable, int] | None = None):
        self.field = field
        self.order: dict[Hashable, int] = dict(order or {})
        # pivot key -> (row terms, combination {tag: coeff}), row[pivot] == 1
        self.rows: dict[Hashable, tuple[dict, dict]] = {}
        self.born: dict[Hashable, int] = {}

    def _rank_key(self, k: Hashable) -> int:
        r = self.order.get(k)
        if r is None:
            r = self.order[k] = len(self.order)
        return r

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> tuple[dict, dict]:
        """Reduce ``v`` against the stored rows.

        Returns ``(residual, combo)`` with ``v = residual + sum combo[t] * input_t``.
        """
        F = self.field
        res = dict(v.terms)
        combo: dict = {}
        # a stored row only mentions pivots created after it, so eliminating
        # in creation order terminates
        while True:
            cand = [k for k in res if k in self.rows]
            if not cand:
                break
            k = min(cand, key=self.born.__getitem__)
            c = res[k]
            row, rc = self.rows[k]
            for key, x in row.items():
                y = F.norm(res.get(key, 0) - c * x)
                if y:
                    res[key] = y
                else:
                    res.pop(key, None)
            for t, x in rc.items():
                y = F.norm(combo.get(t, 0) + c * x)
                if y:
                    combo[t] = y
                else:
                    combo.pop(t, None)
        return res, combo

    def insert(self, v: Vec, tag: Hashable = None) -> bool:
        """Add ``v``; returns False if it was already in the span."""
        F = self.field
        res, combo = self.reduce(v)
        if not res:
            return False
        piv = min(res, key=self._rank_key)
        inv = F.inv(res[piv])
        row = {k: F.norm(x * inv) for k, x in res.items()}
        # row = (v - sum combo) * inv
        rc = {t: F.norm(-x * inv) for t, x in combo.items()}
        rc[tag] = F.norm(rc.get(tag, 0) + inv)
        if not rc[tag]:
            del rc[tag]
        self.rows[piv] = (row, rc)
        self.born[piv] = len(self.born)
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[Vec], field: Field) -> int:
    E = Echelon(field)
    for i, v in enumerate(vectors):
        E.insert(v, i)
    return E.rank


def kernel(images: Sequence[tuple[Hashable, Vec]], field: Field) -> list[Vec]:
    """Kernel of the map sending basis key ``b`` to ``img`` for each pair.

    One kernel vector per column that depends on earlier columns, so the
    result is deterministic in the column order.
    """
    E = Echelon(field)
    out: list[Vec] = []
    for key, img in images:
        res, combo = E.reduce(img)
        if res:
            E.insert(img, key)
            continue
        z = Vec(field, {key: 1})
        for t, c in combo.items():
            z.add_term(t, -c)
        out.append(z)
    return out


def solve(columns: Sequence[tuple[Hashable, Vec]], target: Vec, field: Field) -> dict | None:
    """Find ``x`` with ``sum x[key] * col = target``; ``None`` if impossible."""
    E = Echelon(field)
    for key, col in columns:
        E.insert(col, key)
    res, combo = E.reduce(target)
    return None if res else combo


def invert_matrix(rows: list[list[Any]], field: Field) -> list[list[Any]]:
    """Exact inverse of a square matrix given as nested lists."""
    n = len(rows)
    M = [[field.norm(x) for x in r] + [field.one if i == j else field.zero for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = field.inv(M[col][col])
        M[col] = [field.norm(x * inv) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [field.norm(a - f * b) for a, b in zip(M[r], M[col])]
    return [r[n:] for r in M]
