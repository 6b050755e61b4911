"""Graded spaces, dg algebras and an A-infinity relation checker.

Everything is indexed by basis-label strings.  A product or differential is a
sparse table ``label -> {label: coeff}``.  Degrees are cohomological and the
differential has degree +1.

>>> A = exterior_model(QQ, 3)
>>> validate_dga(A)
[]
>>> A.mul(A.elt("v"), A.elt("v"))
0
>>> koszul_sign([1, 0], [3, 3])
-1
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Sequence

from .fields import QQ, Field
from .vectors import Vec


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering graded factors.

    ``permutation[i]`` is the index of the factor that ends up in slot ``i``.
    Every pair of factors whose relative order is reversed contributes
    ``(-1)^(|x||y|)``.
    """
    if len(permutation) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    if sorted(permutation) != list(range(len(degrees))):
        raise ValueError("not a permutation")
    odd = 0
    for i in range(len(permutation)):
        for j in range(i + 1, len(permutation)):
            a, b = permutation[i], permutation[j]
            if a > b and degrees[a] % 2 and degrees[b] % 2:
                odd ^= 1
    return -1 if odd else 1


def sign(e: int) -> int:
    return -1 if e % 2 else 1


class GradedSpace:
    """Ordered basis of (label, degree) pairs over a field."""

    def __init__(self, field: Field, basis: Iterable[tuple[str, int]]):
        self.field = field
        self.basis: list[tuple[str, int]] = [(str(l), int(k)) for l, k in basis]
        self.degree: dict[str, int] = {}
        for l, k in self.basis:
            if l in self.degree:
                raise ValueError(f"duplicate basis label {l!r}")
            self.degree[l] = k
        self.labels: list[str] = [l for l, _ in self.basis]
        self.index: dict[str, int] = {l: i for i, l in enumerate(self.labels)}

    def __contains__(self, label: str) -> bool:
        return label in self.degree

    def __len__(self) -> int:
        return len(self.basis)

    def in_degree(self, k: int) -> list[str]:
        return [l for l, j in self.basis if j == k]

    def degrees(self) -> list[int]:
        return sorted(set(self.degree.values()))

    def betti(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, k in self.basis:
            out[k] = out.get(k, 0) + 1
        return out

    def vector_degree(self, v: Vec) -> int | None:
        """Degree of a homogeneous vector, ``None`` for zero or mixed."""
        ds = {self.degree[l] for l in v}
        return ds.pop() if len(ds) == 1 else None


class GradedMap:
    """Sparse linear map of fixed degree between graded spaces."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 table: dict[str, dict[str, Any]] | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self.table: dict[str, dict[str, Any]] = {}
        F = target.field
        for l, img in (table or {}).items():
            if l not in source:
                raise ValueError(f"unknown source label {l!r}")
            row = {}
            for t, c in img.items():
                if t not in target:
                    raise ValueError(f"unknown target label {t!r}")
                c = F.norm(c)
                if c:
                    row[t] = c
            if row:
                self.table[l] = row

    def blocks(self) -> dict[int, dict[str, dict[str, Any]]]:
        """Rows grouped by source degree."""
        out: dict[int, dict[str, dict[str, Any]]] = {}
        for l, row in self.table.items():
            out.setdefault(self.source.degree[l], {})[l] = row
        return out

    def homogeneity_errors(self) -> list[str]:
        errs = []
        for l, row in self.table.items():
            for t in row:
                if self.target.degree[t] != self.source.degree[l] + self.degree:
                    errs.append(f"{l} -> {t} breaks degree {self.degree:+d}")
        return errs

    def on_label(self, label: str) -> Vec:
        return Vec(self.target.field, self.table.get(label))

    def __call__(self, v: Vec) -> Vec:
        out = Vec(self.target.field)
        for l, c in v.items():
            for t, x in self.table.get(l, {}).items():
                out.add_term(t, c * x)
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        table = {l: self(other.on_label(l)).terms for l in other.source.labels}
        return GradedMap(other.source, self.target, self.degree + other.degree, table)

    def is_zero(self) -> bool:
        return not self.table


class DgAlgebra:
    """Finite-dimensional unital dg algebra given by structure constants.

    :param field: coefficient field
    :param basis: ordered (label, degree) pairs
    :param unit: label of the unit
    :param mul: ``{(left, right): {label: coeff}}``; missing pairs multiply to 0
    :param d: ``{label: {label: coeff}}``; missing labels are cycles
    """

    def __init__(self, field: Field, basis: Iterable[tuple[str, int]], unit: str,
                 mul: dict[tuple[str, str], dict[str, Any]],
                 d: dict[str, dict[str, Any]] | None = None, name: str = ""):
        self.space = GradedSpace(field, basis)
        self.field = field
        self.name = name
        if unit not in self.space:
            raise ValueError(f"unit {unit!r} is not a basis label")
        self.unit = unit
        self.table: dict[tuple[str, str], dict[str, Any]] = {}
        for (l, r), res in mul.items():
            if l not in self.space or r not in self.space:
                raise ValueError(f"multiplication table mentions unknown pair {(l, r)!r}")
            row = {}
            for t, c in res.items():
                if t not in self.space:
                    raise ValueError(f"multiplication result mentions unknown label {t!r}")
                c = field.norm(c)
                if c:
                    row[t] = c
            if row:
                self.table[(l, r)] = row
        self.d = GradedMap(self.space, self.space, 1, d or {})

    # basic accessors

    @property
    def labels(self) -> list[str]:
        return self.space.labels

    @property
    def basis(self) -> list[tuple[str, int]]:
        return self.space.basis

    def deg(self, label: str) -> int:
        return self.space.degree[label]

    def elt(self, label: str, coeff: Any = 1) -> Vec:
        return Vec.basis(self.field, label, coeff)

    def zero(self) -> Vec:
        return Vec(self.field)

    @property
    def reduced_labels(self) -> list[str]:
        """Basis of the augmentation-free part (everything but the unit)."""
        return [l for l in self.labels if l != self.unit]

    def mul_basis(self, l: str, r: str) -> dict[str, Any]:
        return self.table.get((l, r), {})

    def mul(self, x: Vec, y: Vec) -> Vec:
        out = Vec(self.field)
        for l, a in x.items():
            for r, b in y.items():
                for t, c in self.table.get((l, r), {}).items():
                    out.add_term(t, a * b * c)
        return out

    def dif(self, x: Vec) -> Vec:
        return self.d(x)

    # flags

    def is_connected(self) -> bool:
        return all(k >= 0 for _, k in self.basis) and self.space.in_degree(0) == [self.unit]

    def is_simply_connected(self) -> bool:
        return self.is_connected() and not self.space.in_degree(1)

    def is_commutative(self) -> bool:
        for l in self.labels:
            for r in self.labels:
                s = sign(self.deg(l) * self.deg(r))
                lr = self.mul_basis(l, r)
                rl = self.mul_basis(r, l)
                if Vec(self.field, lr) != Vec(self.field, rl).scale(s):
                    return False
        return True

    def top_degree(self) -> int:
        return max(k for _, k in self.basis)

    def __repr__(self) -> str:
        return f"DgAlgebra({self.name or '?'}, dim={len(self.space)}, field={self.field!r})"

    # serialization

    def to_dict(self) -> dict:
        F = self.field
        return {
            "field": repr(F),
            "basis": [{"label": l, "degree": k} for l, k in self.basis],
            "unit": self.unit,
            "mul": [
                {"left": l, "right": r,
                 "result": [{"label": t, "coeff": F.fmt(c)} for t, c in res.items()]}
                for (l, r), res in self.table.items()
            ],
            "d": [
                {"left": l, "result": [{"label": t, "coeff": F.fmt(c)} for t, c in row.items()]}
                for l, row in self.d.table.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "DgAlgebra":
        try:
            F = Field.parse(data["field"])
            basis = [(b["label"], int(b["degree"])) for b in data["basis"]]
            unit = data["unit"]
            mul: dict[tuple[str, str], dict[str, Any]] = {}
            for entry in data.get("mul", []):
                key = (entry["left"], entry["right"])
                row = mul.setdefault(key, {})
                for t in entry["result"]:
                    row[t["label"]] = F.norm(row.get(t["label"], 0) + F.parse_scalar(t["coeff"]))
            d: dict[str, dict[str, Any]] = {}
            for entry in data.get("d", []):
                src = entry.get("left", entry.get("label"))
                row = d.setdefault(src, {})
                for t in entry["result"]:
                    row[t["label"]] = F.norm(row.get(t["label"], 0) + F.parse_scalar(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed algebra description: {exc!r}") from exc
        return cls(F, basis, unit, mul, d, name=name)

    def change_field(self, field: Field) -> "DgAlgebra":
        """Reduce or extend scalars (integral structure constants expected)."""
        mul = {k: {t: field.norm(c) for t, c in row.items()} for k, row in self.table.items()}
        d = {k: {t: field.norm(c) for t, c in row.items()} for k, row in self.d.table.items()}
        return DgAlgebra(field, self.basis, self.unit, mul, d, name=self.name)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        w = ", ".join(map(str, self.witness))
        return f"{self.axiom} fails at ({w})" + (f": {self.detail}" if self.detail else "")


def validate_dga(A: DgAlgebra) -> list[Violation]:
    """Exhaustive check of d^2 = 0, Leibniz, associativity and unitality.

    Also reports structure constants that are not homogeneous.  The empty
    list means every axiom holds on every basis pair or triple.
    """
    out: list[Violation] = []
    deg = A.deg
    for err in A.d.homogeneity_errors():
        out.append(Violation("degree", (), err))
    for (l, r), row in A.table.items():
        for t in row:
            if deg(t) != deg(l) + deg(r):
                out.append(Violation("degree", (l, r), f"product lands on {t}"))
    L = A.labels
    for a in L:
        if A.dif(A.dif(A.elt(a))):
            out.append(Violation("d^2=0", (a,)))
    for a in L:
        u = A.elt(A.unit)
        x = A.elt(a)
        if A.mul(u, x) != x or A.mul(x, u) != x:
            out.append(Violation("unit", (a,)))
    for a, b in product(L, L):
        x, y = A.elt(a), A.elt(b)
        lhs = A.dif(A.mul(x, y))
        rhs = A.mul(A.dif(x), y) + A.mul(x, A.dif(y)).scale(sign(deg(a)))
        if lhs != rhs:
            out.append(Violation("Leibniz", (a, b), f"{lhs!r} != {rhs!r}"))
    for a, b, c in product(L, L, L):
        x, y, z = A.elt(a), A.elt(b), A.elt(c)
        if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
            out.append(Violation("associativity", (a, b, c)))
    return out


def tensor_dga(A: DgAlgebra, B: DgAlgebra, sep: str = "|") -> DgAlgebra:
    """Graded tensor product with Koszul-signed multiplication.

    Labels are ``a|b``.  ``(a|b)(c|e) = (-1)^(|b||c|) ac|be`` and
    ``d(a|b) = da|b + (-1)^|a| a|db``.
    """
    if A.field != B.field:
        raise ValueError("tensor factors live over different fields")
    F = A.field
    basis = [(f"{a}{sep}{b}", ka + kb) for a, ka in A.basis for b, kb in B.basis]
    mul: dict[tuple[str, str], dict[str, Any]] = {}
    for a, b in product(A.labels, B.labels):
        for c, e in product(A.labels, B.labels):
            s = sign(B.deg(b) * A.deg(c))
            row: dict[str, Any] = {}
            for t1, x in A.mul_basis(a, c).items():
                for t2, y in B.mul_basis(b, e).items():
                    row[f"{t1}{sep}{t2}"] = F.norm(s * x * y)
            if row:
                mul[(f"{a}{sep}{b}", f"{c}{sep}{e}")] = row
    d: dict[str, dict[str, Any]] = {}
    for a, b in product(A.labels, B.labels):
        row = Vec(F)
        for t, x in A.d.table.get(a, {}).items():
            row.add_term(f"{t}{sep}{b}", x)
        for t, x in B.d.table.get(b, {}).items():
            row.add_term(f"{a}{sep}{t}", sign(A.deg(a)) * x)
        if row:
            d[f"{a}{sep}{b}"] = row.terms
    name = f"{A.name}x{B.name}" if A.name and B.name else ""
    return DgAlgebra(F, basis, f"{A.unit}{sep}{B.unit}", mul, d, name=name)


def exterior_model(field: Field, n: int, top: str = "v") -> DgAlgebra:
    """Cohomology of the n-sphere: basis {1, v}, |v| = n, v^2 = 0."""
    if n < 1:
        raise ValueError("sphere dimension must be positive")
    mul = {("1", "1"): {"1": 1}, ("1", top): {top: 1}, (top, "1"): {top: 1}}
    return DgAlgebra(field, [("1", 0), (top, n)], "1", mul, {}, name=f"S{n}")


# A-infinity structures

MultiMap = Callable[[tuple], Vec]


@dataclass
class AInfinityStructure:
    """Operations ``m_n`` on a graded space given by basis keys.

    ``maps[n]`` takes a tuple of n basis keys and returns a :class:`Vec`.
    Arities missing from ``maps`` but listed in ``zero_arities`` are zero.
    """

    field: Field
    basis: list
    degree: Callable[[Hashable], int]
    maps: dict[int, MultiMap] = dc_field(default_factory=dict)
    zero_arities: set = dc_field(default_factory=set)

    def apply(self, n: int, args: Sequence[Hashable]) -> Vec:
        if n in self.maps:
            return self.maps[n](tuple(args))
        if n in self.zero_arities:
            return Vec(self.field)
        raise KeyError(f"m_{n} not supplied")

    @classmethod
    def from_dga(cls, A: DgAlgebra, N: int) -> "AInfinityStructure":
        return cls(A.field, list(A.labels), A.deg,
                   {1: lambda t: A.d.on_label(t[0]),
                    2: lambda t: Vec(A.field, A.mul_basis(t[0], t[1]))},
                   set(range(3, N + 1)))


def stasheff_term(S: AInfinityStructure, args: Sequence[Hashable]) -> Vec:
    """Left side of the arity-n relation evaluated on basis keys.

    Sum over p + q + r = n of (-1)^(p+qr) m_(p+1+r)(1^p, m_q, 1^r), where
    m_q passing the first p inputs costs the Koszul sign (-1)^((2-q)(|x_1|+...+|x_p|)).
    """
    n = len(args)
    out = Vec(S.field)
    for q in range(1, n + 1):
        for p in range(0, n - q + 1):
            r = n - p - q
            s0 = sign(p + q * r + (2 - q) * sum(S.degree(x) for x in args[:p]))
            inner = S.apply(q, args[p:p + q])
            for y, c in inner.items():
                outer = S.apply(p + 1 + r, tuple(args[:p]) + (y,) + tuple(args[p + q:]))
                out.add_vec(outer, s0 * c)
    return out


def validate_a_infinity(S: AInfinityStructure, N: int) -> tuple[int, tuple] | None:
    """Check the Stasheff relations up to arity N on every basis tuple.

    Returns ``None`` on success, otherwise ``(n, args)`` for the first failure.
    Raises ``KeyError`` if some ``m_q`` with ``q <= N`` is not supplied.
    """
    for q in range(1, N + 1):
        if q not in S.maps and q not in S.zero_arities:
            raise KeyError(f"m_{q} not supplied")
    for n in range(1, N + 1):
        for args in product(S.basis, repeat=n):
            if stasheff_term(S, args):
                return (n, args)
    return None


__all__ = [
    "AInfinityStructure", "DgAlgebra", "GradedMap", "GradedSpace", "QQ", "Violation",
    "exterior_model", "koszul_sign", "sign", "stasheff_term", "tensor_dga",
    "validate_a_infinity", "validate_dga",
]
