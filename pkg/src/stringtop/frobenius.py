"""Symmetric dg Frobenius algebras and the shipped models.

A Frobenius algebra of dimension n is a dg algebra with a pairing of degree -n.
From the pairing we get the diagonal class Delta(1) = sum e_i (x) f_i, the
coproduct Delta(a) = Delta(1) a and the Euler class mu(Delta(1)).

The diagonal is normalized by the snake identity

    sum_i (-1)^(n|e_i|) e_i <f_i, a> = a       for every a,

which gives Delta(1) = 1(x)v + v(x)1 on the 2-sphere and 1(x)v - v(x)1 on
the 3-sphere.

>>> S3 = sphere_model(3)
>>> sorted(S3.diagonal().items())
[(('1', 'v'), Fraction(1, 1)), (('v', '1'), Fraction(-1, 1))]
>>> cp_model(2).euler_class()
3*'x2'
"""
from __future__ import annotations

import json
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any

from .algebra import DgAlgebra, Violation, sign, tensor_dga, validate_dga
from .fields import QQ, Field
from .linalg import invert_matrix
from .vectors import Vec

Pair = tuple[str, str]


class FrobeniusAlgebra:
    """A dg algebra with a pairing of degree -n.

    :param algebra: underlying :class:`DgAlgebra`
    :param pairing: ``{(left, right): value}`` on basis labels
    :param n: the dimension (pairing degree is -n)
    """

    def __init__(self, algebra: DgAlgebra, pairing: dict[Pair, Any], n: int):
        self.algebra = algebra
        self.field = algebra.field
        self.n = int(n)
        if self.n < 0:
            raise ValueError("Frobenius dimension must be nonnegative")
        self.pairing: dict[Pair, Any] = {}
        for (l, r), c in pairing.items():
            if l not in algebra.space or r not in algebra.space:
                raise ValueError(f"pairing mentions unknown labels {(l, r)!r}")
            c = self.field.norm(c)
            if c:
                self.pairing[(l, r)] = c
        self._diag: Vec | None = None
        self._rho_inv: dict[int, tuple[list[str], list[str], list[list[Any]]]] = {}

    # pass-throughs used everywhere
    @property
    def name(self) -> str:
        return self.algebra.name

    def deg(self, label: str) -> int:
        return self.algebra.deg(label)

    @property
    def labels(self) -> list[str]:
        return self.algebra.labels

    @property
    def unit(self) -> str:
        return self.algebra.unit

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def elt(self, label: str, coeff: Any = 1) -> Vec:
        return self.algebra.elt(label, coeff)

    def pair(self, x: Vec, y: Vec):
        F = self.field
        s = F.zero
        for l, a in x.items():
            for r, b in y.items():
                c = self.pairing.get((l, r))
                if c:
                    s += a * b * c
        return F.norm(s)

    def pair_basis(self, l: str, r: str):
        return self.pairing.get((l, r), self.field.zero)

    def __repr__(self) -> str:
        return f"FrobeniusAlgebra({self.name or '?'}, n={self.n}, field={self.field!r})"

    # duality

    def _block(self, k: int) -> tuple[list[str], list[str], list[list[Any]]]:
        """Gram block A^k x A^(n-k) and its inverse."""
        if k not in self._rho_inv:
            rows = self.algebra.space.in_degree(k)
            cols = self.algebra.space.in_degree(self.n - k)
            if len(rows) != len(cols):
                raise ValueError(f"pairing block in degree {k} is not square")
            G = [[self.pair_basis(a, b) for b in cols] for a in rows]
            inv = invert_matrix(G, self.field) if rows else []
            self._rho_inv[k] = (rows, cols, inv)
        return self._rho_inv[k]

    def rho(self, a: Vec) -> dict[str, Any]:
        """The functional <a, -> as ``{label: value}``."""
        out = {}
        for b in self.labels:
            v = self.pair(a, self.elt(b))
            if v:
                out[b] = v
        return out

    def rho_inverse(self, functional: dict[str, Any]) -> Vec:
        """The unique a with <a, b> = functional(b) for all basis b."""
        out = Vec(self.field)
        for k in self.algebra.space.degrees():
            rows, cols, inv = self._block(k)
            # a = sum x_i rows_i with sum_i x_i G_ij = phi_j, so x = phi G^-1
            for i, a in enumerate(rows):
                s = sum((functional.get(b, 0) * inv[j][i] for j, b in enumerate(cols)), self.field.zero)
                out.add_term(a, s)
        return out

    def diagonal(self) -> Vec:
        """Delta(1) as a vector keyed by label pairs.

        For each basis element e, f_e solves <f_e, b> = (-1)^(n|e|) delta(e, b).
        """
        if self._diag is None:
            D = Vec(self.field)
            for e in self.labels:
                s = sign(self.n * self.deg(e))
                for f, c in self.rho_inverse({e: 1}).items():
                    D.add_term((e, f), s * c)
            self._diag = D
        return self._diag

    def diagonal_terms(self) -> list[tuple[str, str, Any]]:
        """Delta(1) = sum c e (x) f as a sorted list of (e, f, c)."""
        idx = self.algebra.space.index
        return sorted(((e, f, c) for (e, f), c in self.diagonal().items()),
                      key=lambda t: (idx[t[0]], idx[t[1]]))

    def coproduct(self, a: Vec) -> Vec:
        """Delta(a) = Delta(1) . a, a bimodule map of degree n."""
        out = Vec(self.field)
        for (e, f), c in self.diagonal().items():
            for t, x in a.items():
                for u, y in self.algebra.mul_basis(f, t).items():
                    out.add_term((e, u), c * x * y)
        return out

    def euler_class(self) -> Vec:
        out = Vec(self.field)
        for (e, f), c in self.diagonal().items():
            for t, x in self.algebra.mul_basis(e, f).items():
                out.add_term(t, c * x)
        return out

    def top_label(self) -> str:
        tops = self.algebra.space.in_degree(self.n)
        if len(tops) != 1:
            raise ValueError("top degree is not one-dimensional")
        return tops[0]

    def euler_characteristic(self):
        """Coefficient of the Euler class on the top class."""
        return self.euler_class()[self.top_label()]

    # serialization

    def to_dict(self) -> dict:
        data = self.algebra.to_dict()
        data["pairing"] = [{"left": l, "right": r, "value": self.field.fmt(c)}
                           for (l, r), c in self.pairing.items()]
        data["frobenius_dimension"] = self.n
        return data

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "FrobeniusAlgebra":
        A = DgAlgebra.from_dict(data, name=name)
        if "pairing" not in data or "frobenius_dimension" not in data:
            raise ValueError("Frobenius model needs 'pairing' and 'frobenius_dimension'")
        pairing: dict[Pair, Any] = {}
        try:
            for entry in data["pairing"]:
                key = (entry["left"], entry["right"])
                pairing[key] = A.field.norm(pairing.get(key, 0) + A.field.parse_scalar(entry["value"]))
            n = int(data["frobenius_dimension"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed pairing: {exc!r}") from exc
        return cls(A, pairing, n)

    def change_field(self, field: Field) -> "FrobeniusAlgebra":
        return FrobeniusAlgebra(self.algebra.change_field(field),
                                {k: field.norm(c) for k, c in self.pairing.items()}, self.n)

    def is_commutative(self) -> bool:
        return self.algebra.is_commutative()

    def is_connected(self) -> bool:
        return self.algebra.is_connected()


def validate_frobenius(F: FrobeniusAlgebra) -> list[Violation]:
    """Exhaustive check of the pairing axioms.

    (1) the pairing lives on A^i (x) A^(n-i); (2) rho is invertible in each
    degree; (3) <ab, c> = <a, bc>; (4) <da, b> = -(-1)^|a| <a, db>; and
    graded symmetry <a, b> = (-1)^(|a||b|) <b, a>.
    """
    A = F.algebra
    out: list[Violation] = []
    deg = A.deg
    for (l, r) in F.pairing:
        if deg(l) + deg(r) != F.n:
            out.append(Violation("(1) degree", (l, r), f"pairs degrees {deg(l)} and {deg(r)}"))
    for k in A.space.degrees():
        try:
            F._rho_inv.pop(k, None)
            F._block(k)
        except (ValueError, ZeroDivisionError) as exc:
            out.append(Violation("(2) non-degeneracy", (k,), str(exc)))
    L = A.labels
    for a, b, c in product(L, L, L):
        x, y, z = A.elt(a), A.elt(b), A.elt(c)
        if F.pair(A.mul(x, y), z) != F.pair(x, A.mul(y, z)):
            out.append(Violation("(3) invariance", (a, b, c)))
    for a, b in product(L, L):
        x, y = A.elt(a), A.elt(b)
        lhs = F.pair(A.dif(x), y)
        rhs = F.field.norm(-sign(deg(a)) * F.pair(x, A.dif(y)))
        if lhs != rhs:
            out.append(Violation("(4) differential", (a, b)))
        if F.pair_basis(a, b) != F.field.norm(sign(deg(a) * deg(b)) * F.pair_basis(b, a)):
            out.append(Violation("symmetry", (a, b)))
    return out


def validate(F: FrobeniusAlgebra) -> list[Violation]:
    """Both the dg algebra axioms and the pairing axioms."""
    return validate_dga(F.algebra) + validate_frobenius(F)


# builders

def sphere_model(n: int, field: Field = QQ) -> FrobeniusAlgebra:
    """H*(S^n): basis {1, v}, |v| = n, <1, v> = <v, 1> = 1."""
    if n < 1:
        raise ValueError("sphere dimension must be positive")
    mul = {("1", "1"): {"1": 1}, ("1", "v"): {"v": 1}, ("v", "1"): {"v": 1}}
    A = DgAlgebra(field, [("1", 0), ("v", n)], "1", mul, {}, name=f"S{n}")
    return FrobeniusAlgebra(A, {("1", "v"): 1, ("v", "1"): 1}, n)


def _power_label(i: int) -> str:
    return {0: "1", 1: "x"}.get(i, f"x{i}")


def cp_model(m: int, field: Field = QQ) -> FrobeniusAlgebra:
    """H*(CP^m) = K[x]/(x^(m+1)), |x| = 2, <x^i, x^(m-i)> = 1."""
    if m < 1:
        raise ValueError("complex dimension must be positive")
    basis = [(_power_label(i), 2 * i) for i in range(m + 1)]
    mul = {}
    for i in range(m + 1):
        for j in range(m + 1 - i):
            mul[(_power_label(i), _power_label(j))] = {_power_label(i + j): 1}
    A = DgAlgebra(field, basis, "1", mul, {}, name=f"CP{m}")
    pairing = {(_power_label(i), _power_label(m - i)): 1 for i in range(m + 1)}
    return FrobeniusAlgebra(A, pairing, 2 * m)


def product_model(F: FrobeniusAlgebra, G: FrobeniusAlgebra, sep: str = "|") -> FrobeniusAlgebra:
    """Tensor product with <a|b, c|e> = (-1)^(|b||c|) <a, c><b, e>."""
    A = tensor_dga(F.algebra, G.algebra, sep)
    pairing = {}
    for (a, c), x in F.pairing.items():
        for (b, e), y in G.pairing.items():
            pairing[(f"{a}{sep}{b}", f"{c}{sep}{e}")] = sign(G.deg(b) * F.deg(c)) * x * y
    return FrobeniusAlgebra(A, pairing, F.n + G.n)


def dg_sphere3_model(field: Field = QQ) -> FrobeniusAlgebra:
    """A 3-dimensional model with nonzero differential.

    Basis 1, x, y, xy with |x| = 1, |y| = 2, dx = y.  Its cohomology is that
    of the 3-sphere, but the algebra is not simply connected.
    """
    basis = [("1", 0), ("x", 1), ("y", 2), ("xy", 3)]
    mul = {("1", l): {l: 1} for l, _ in basis}
    mul.update({(l, "1"): {l: 1} for l, _ in basis})
    mul[("x", "y")] = {"xy": 1}
    mul[("y", "x")] = {"xy": 1}
    A = DgAlgebra(field, basis, "1", mul, {"x": {"y": 1}}, name="S3dg")
    pairing = {("1", "xy"): 1, ("xy", "1"): 1, ("x", "y"): 1, ("y", "x"): 1}
    return FrobeniusAlgebra(A, pairing, 3)


def from_spec_file(path: str | Path) -> FrobeniusAlgebra:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{p}: malformed JSON ({exc})") from exc
    return FrobeniusAlgebra.from_dict(data, name=p.stem)


BUILTIN = ("s2", "s3", "cp2", "s3xs3", "s3dg")


def builtin_model(name: str, field: Field = QQ) -> FrobeniusAlgebra:
    """Shipped models by short name."""
    table = {
        "s2": lambda: sphere_model(2, field),
        "s3": lambda: sphere_model(3, field),
        "cp2": lambda: cp_model(2, field),
        "s3xs3": lambda: product_model(sphere_model(3, field), sphere_model(3, field)),
        "s3dg": lambda: dg_sphere3_model(field),
    }
    if name not in table:
        raise ValueError(f"unknown model {name!r}; choose from {', '.join(BUILTIN)}")
    return table[name]()


def shipped_model_path(name: str) -> Path:
    """Location of a shipped JSON model file."""
    return Path(str(resources.files("stringtop") / "models" / f"{name}.json"))
