"""Normalized Hochschild chains and cochains.

A chain basis element is a pair ``(word, module)``: ``word`` is a tuple of
labels of the augmentation-free part (the shifted factors) and ``module`` is any
basis label.  Its total degree is ``sum(|a_i| - 1) + |module|``.

A cochain basis element ``(word, out)`` is the multilinear map sending the
shifted word ``word`` to ``out`` and every other word to zero.  Its degree is
``|out| - sum(|a_i| - 1)``.

Both differentials raise the total degree by one.  The chain differential
shortens words by at most one, the cochain differential lengthens them by at
most one.

>>> from stringtop.frobenius import sphere_model
>>> S3 = sphere_model(3).algebra
>>> chain_differential(S3, chain(S3, ("v",), "v"))
0
>>> chain_degree(S3, (("v", "v"), "1"))
4
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from .algebra import DgAlgebra, sign
from .fields import Field
from .vectors import Vec

Word = tuple[str, ...]
Key = tuple[Word, str]


class HochschildElement(Vec):
    """Sparse sum of chain words ``(word, module)``."""

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"word": list(w), "module": m, "coeff": F.fmt(c)}
                for (w, m), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, field: Field, data: Iterable[dict]) -> "HochschildElement":
        out = cls(field)
        try:
            for t in data:
                out.add_term((tuple(t["word"]), t["module"]), field.parse_scalar(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed chain entry: {exc!r}") from exc
        return out


class CochainTensor(Vec):
    """Sparse sum of basis cochains ``(inputs, output)``."""

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"inputs": list(w), "output": o, "coeff": F.fmt(c)}
                for (w, o), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, field: Field, data: Iterable[dict]) -> "CochainTensor":
        out = cls(field)
        try:
            for t in data:
                out.add_term((tuple(t["inputs"]), t["output"]), field.parse_scalar(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed cochain entry: {exc!r}") from exc
        return out

    def evaluate(self, A: "DgAlgebra", word: Sequence[str]) -> Vec:
        """The value on a shifted word, an element of A."""
        word = tuple(word)
        out = Vec(self.field)
        for (w, o), c in self.terms.items():
            if w == word:
                out.add_term(o, c)
        return out


@dataclass(frozen=True)
class TruncationWindow:
    """Word length bound ``L`` and total degree range."""

    L: int
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.L < 0:
            raise ValueError("word length bound must be nonnegative")
        if self.k_min > self.k_max:
            raise ValueError("empty degree window")

    def degrees(self) -> range:
        return range(self.k_min, self.k_max + 1)


class TruncationOverflow(ValueError):
    """An operation produced words longer than the window allows."""


def _alg(X: Any) -> DgAlgebra:
    return getattr(X, "algebra", X)


class _Tables:
    """Lookups derived from the structure constants of one algebra."""

    def __init__(self, A: DgAlgebra):
        self.deg = A.space.degree
        self.unit = A.unit
        self.bar = A.reduced_labels
        self.bar_set = frozenset(self.bar)
        # c -> [(a, b, coeff)] with ab = ... + coeff c, over bar labels only
        self.mul_pre: dict[str, list[tuple[str, str, Any]]] = {}
        for (a, b), row in A.table.items():
            if a in self.bar_set and b in self.bar_set:
                for c, x in row.items():
                    self.mul_pre.setdefault(c, []).append((a, b, x))
        self.d_pre: dict[str, list[tuple[str, Any]]] = {}
        for a, row in A.d.table.items():
            for b, x in row.items():
                self.d_pre.setdefault(b, []).append((a, x))


def tables(A: Any) -> _Tables:
    A = _alg(A)
    t = A.__dict__.get("_hh_tables")
    if t is None:
        t = _Tables(A)
        A.__dict__["_hh_tables"] = t
    return t


# degrees and constructors

def eps(A: Any, word: Sequence[str]) -> int:
    """Sum of shifted degrees ``|a_1| + ... + |a_m| - m``."""
    deg = _alg(A).space.degree
    return sum(deg[a] for a in word) - len(word)


def chain_degree(A: Any, key: Key) -> int:
    w, m = key
    return eps(A, w) + _alg(A).space.degree[m]


def cochain_degree(A: Any, key: Key) -> int:
    w, o = key
    return _alg(A).space.degree[o] - eps(A, w)


def chain(A: Any, word: Sequence[str], module: str, coeff: Any = 1) -> HochschildElement:
    """A single chain word; zero if a shifted slot holds the unit."""
    A = _alg(A)
    out = HochschildElement(A.field)
    for a in list(word) + [module]:
        if a not in A.space:
            raise KeyError(f"unknown basis label {a!r}")
    if A.unit in word:
        return out
    out.add_term((tuple(word), module), coeff)
    return out


def cochain(A: Any, inputs: Sequence[str], output: str, coeff: Any = 1) -> CochainTensor:
    """A single basis cochain; zero if an input slot holds the unit."""
    A = _alg(A)
    out = CochainTensor(A.field)
    for a in list(inputs) + [output]:
        if a not in A.space:
            raise KeyError(f"unknown basis label {a!r}")
    if A.unit in inputs:
        return out
    out.add_term((tuple(inputs), output), coeff)
    return out


def unit_cochain(A: Any) -> CochainTensor:
    A = _alg(A)
    return cochain(A, (), A.unit)


def _check_chain(A: DgAlgebra, x: Vec) -> None:
    for (w, m) in x:
        for a in w + (m,):
            if a not in A.space:
                raise KeyError(f"unknown basis label {a!r}")
        if A.unit in w:
            raise ValueError(f"word {w!r} is not normalized")


# chain differential

def chain_differential(X: Any, x: Vec) -> HochschildElement:
    """The Hochschild boundary, vertical plus horizontal part."""
    A = _alg(X)
    _check_chain(A, x)
    T = tables(A)
    out = HochschildElement(A.field)
    for key, c in x.items():
        for k2, c2 in _chain_d_basis(A, T, key):
            out.add_term(k2, c * c2)
    return out


def _chain_d_basis(A: DgAlgebra, T: _Tables, key: Key) -> Iterator[tuple[Key, Any]]:
    w, a_last = key
    deg = T.deg
    m = len(w)
    bar = T.bar_set
    d = A.d.table
    # vertical part
    e = 0
    for i, a in enumerate(w):
        s = -sign(e)
        for b, x in d.get(a, {}).items():
            if b in bar:
                yield (w[:i] + (b,) + w[i + 1:], a_last), s * x
        e += deg[a] - 1
    s = sign(e)
    for b, x in d.get(a_last, {}).items():
        yield (w, b), s * x
    if m == 0:
        return
    # horizontal part: inner products
    e = 0
    for i in range(m - 1):
        e += deg[w[i]] - 1
        s = sign(e)
        for b, x in A.mul_basis(w[i], w[i + 1]).items():
            if b in bar:
                yield (w[:i] + (b,) + w[i + 2:], a_last), s * x
    # last factor into the module
    e_prev = eps(A, w[:-1])
    s = -sign(e_prev)
    for b, x in A.mul_basis(w[-1], a_last).items():
        yield (w[:-1], b), s * x
    # cyclic term: module times first factor
    a1 = w[0]
    rest = sum(deg[a] for a in w[1:]) + deg[a_last] - m + 1
    s = sign(rest * deg[a1])
    for b, x in A.mul_basis(a_last, a1).items():
        yield (w[1:], b), s * x


# cochain differential

def cochain_differential(X: Any, f: Vec, L: int | None = None, overflow: str = "error") -> CochainTensor:
    """The Hochschild coboundary, vertical plus horizontal part.

    With a word bound ``L``, terms of arity above ``L`` either raise
    :class:`TruncationOverflow` (``overflow="error"``) or are dropped
    (``overflow="drop"``, the quotient by long words, which is a complex).
    """
    A = _alg(X)
    T = tables(A)
    out = CochainTensor(A.field)
    for key, c in f.items():
        for k2, c2 in _cochain_d_basis(A, T, key):
            if L is not None and len(k2[0]) > L:
                if overflow == "drop":
                    continue
                raise TruncationOverflow(f"coboundary of arity {len(key[0])} exceeds L={L}")
            out.add_term(k2, c * c2)
    return out


def _cochain_d_basis(A: DgAlgebra, T: _Tables, key: Key) -> Iterator[tuple[Key, Any]]:
    w, o = key
    deg = T.deg
    m = len(w)
    fdeg = deg[o] - eps(A, w)
    bar = T.bar
    # vertical: d after f
    for b, x in A.d.table.get(o, {}).items():
        yield (w, b), x
    # vertical: f after d in slot i; inputs w' with d(w'_i) containing w_i
    e = 0
    for i in range(m):
        for a, x in T.d_pre.get(w[i], ()):
            if a in T.bar_set:
                yield (w[:i] + (a,) + w[i + 1:], o), sign(fdeg + e) * x
        e += deg[w[i]] - 1
    # horizontal: left multiplication by the first input
    for a1 in bar:
        s = -sign((deg[a1] - 1) * fdeg)
        for b, x in A.mul_basis(a1, o).items():
            yield ((a1,) + w, b), s * x
    # horizontal: inputs i, i+1 multiplied together
    e_before = 0
    for i in range(m):
        for a, b, x in T.mul_pre.get(w[i], ()):
            e_i = e_before + deg[a] - 1
            yield (w[:i] + (a, b) + w[i + 1:], o), -sign(fdeg + e_i) * x
        e_before += deg[w[i]] - 1
    # horizontal: right multiplication by the last input
    s0 = fdeg + eps(A, w)
    for a in bar:
        for b, x in A.mul_basis(o, a).items():
            yield (w + (a,), b), sign(s0) * x


# pairing and duality

def duality_pair(F: Any, f: Vec, x: Vec):
    """<f, x> = sum (-1)^|f| <f(a_1..a_m), a_(m+1)> over matching words.

    The sign makes the coboundary and the boundary adjoint in the form
    <delta f, x> = (-1)^|f| <f, dx>.  Words of different length pair to zero.
    """
    A = _alg(F)
    field = F.field
    s = field.zero
    by_word: dict[Word, list[tuple[str, Any]]] = {}
    for (w, o), c in f.items():
        by_word.setdefault(w, []).append((o, c))
    for (w, m), c in x.items():
        for o, c2 in by_word.get(w, ()):
            v = F.pair_basis(o, m)
            if v:
                s += sign(cochain_degree(A, (w, o))) * c * c2 * v
    return field.norm(s)


def dualize(F: Any, x: Vec) -> CochainTensor:
    """The cochain g with duality_pair(g, y) equal to the coordinate dot product of x and y."""
    A = _alg(F)
    out = CochainTensor(F.field)
    for (w, m), c in x.items():
        for o, v in F.rho_inverse({m: 1}).items():
            out.add_term((w, o), sign(cochain_degree(A, (w, o))) * c * v)
    return out


# Connes operator

def connes_B(X: Any, x: Vec) -> HochschildElement:
    """Cyclic operator of degree -1 on normalized chains.

    The module factor a joins the shifted word and the cyclic sequence
    (a_1, ..., a_m, a) is rotated through all m + 1 positions, with the unit as
    the new module factor.  A rotation carries the Koszul sign of moving the
    shifted letters, and the whole sum carries (-1)^(|a_1| + ... + |a_m| - m).
    Words whose module factor is the unit map to zero.
    """
    A = _alg(X)
    _check_chain(A, x)
    deg = A.space.degree
    out = HochschildElement(A.field)
    for (w, a), c in x.items():
        if a == A.unit:
            continue
        cyc = w + (a,)
        sh = [deg[b] - 1 for b in cyc]
        base = sign(sum(sh[:-1]))
        for j in range(len(cyc)):
            s = sign(sum(sh[j:]) * sum(sh[:j]))
            out.add_term((cyc[j:] + cyc[:j], A.unit), base * s * c)
    return out


# subcomplexes

def reduced(X: Any, x: Vec) -> HochschildElement:
    """Kill the component in C_(0,0) = A^0."""
    A = _alg(X)
    if not A.is_connected():
        raise ValueError("reduced chains need a connected algebra")
    out = HochschildElement(A.field)
    for (w, m), c in x.items():
        if not w and A.deg(m) == 0:
            continue
        out.add_term((w, m), c)
    return out


def relative(X: Any, x: Vec) -> HochschildElement:
    """Keep only words with at least one shifted factor."""
    A = _alg(X)
    if not A.is_commutative():
        raise ValueError("relative chains need a commutative algebra")
    out = HochschildElement(A.field)
    for (w, m), c in x.items():
        if w:
            out.add_term((w, m), c)
    return out


# bases in a window

def words(A: Any, length: int, shifted_degree: int | None = None) -> list[Word]:
    """Shifted words of a given length, optionally of a given shifted degree."""
    A = _alg(A)
    bar = A.reduced_labels
    deg = A.space.degree
    out: list[Word] = []

    def rec(prefix: Word, e: int):
        if len(prefix) == length:
            if shifted_degree is None or e == shifted_degree:
                out.append(prefix)
            return
        for a in bar:
            rec(prefix + (a,), e + deg[a] - 1)

    rec((), 0)
    return out


def words_upto(A: Any, L: int) -> list[Word]:
    return [w for m in range(L + 1) for w in words(A, m)]


def chain_basis(A: Any, k: int, L: int, m: int | None = None) -> list[Key]:
    """Chain words of total degree k and length at most L (or exactly m)."""
    A = _alg(A)
    out = []
    lengths = range(L + 1) if m is None else [m]
    for mm in lengths:
        for b in A.labels:
            for w in words(A, mm, k - A.deg(b)):
                out.append((w, b))
    return out


def cochain_basis(A: Any, k: int, L: int, m: int | None = None) -> list[Key]:
    """Basis cochains of degree k and arity at most L (or exactly m)."""
    A = _alg(A)
    out = []
    lengths = range(L + 1) if m is None else [m]
    for mm in lengths:
        for o in A.labels:
            for w in words(A, mm, A.deg(o) - k):
                out.append((w, o))
    return out


def exact_chain_length(A: Any, k: int) -> int | None:
    """Word length bound that makes chains of degree k (and k +- 1) complete.

    Every shifted factor has shifted degree at least one when the algebra is
    simply connected, so a chain of degree j has length at most j.  Returns
    ``None`` when no bound exists.
    """
    A = _alg(A)
    if not A.is_simply_connected():
        return None
    return max(k + 1, 0)


def exact_cochain_length(A: Any, k: int) -> int | None:
    """Arity bound making cochains of degree k (and k +- 1) complete."""
    A = _alg(A)
    if not A.is_simply_connected():
        return None
    return max(A.top_degree() - k + 1, 0)


def element_to_json(x: Vec) -> str:
    return json.dumps(x.to_json(), sort_keys=True)
