"""Exact homology of the Hochschild and Tate complexes in a degree window.

A complex is described by a basis function (total degree -> ordered keys) and
a differential on sparse vectors.  Homology in degree k is computed from the
blocks in degrees k - 1, k and k + 1 by exact elimination; representatives are
picked in the order of the canonical basis, so results are reproducible.

>>> from stringtop.frobenius import sphere_model
>>> cx = hochschild_chain_complex(sphere_model(3), L=5)
>>> [homology(cx, [k]).dims()[k] for k in range(0, 5)]
[1, 0, 1, 1, 1]
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .algebra import sign
from .frobenius import FrobeniusAlgebra
from .hochschild import (
    CochainTensor, HochschildElement, _alg, chain_basis, chain_differential, cochain_basis, cochain_differential,
    exact_chain_length, exact_cochain_length,
)
from .linalg import Echelon, kernel
from .products import TateElement, cup, gh_star, tate_differential
from .vectors import Vec


class WindowError(ValueError):
    """The requested degrees are outside the region where truncation is exact."""


@dataclass
class ComplexDescriptor:
    """A cochain complex (differential of degree +1) given by callbacks."""

    name: str
    field: Any
    basis: Callable[[int], list]
    differential: Callable[[Vec], Vec]
    exact: Callable[[int], bool]
    diagnostic: Callable[[int], str] = lambda k: ""
    degree_of: Callable[[Hashable], int] | None = None
    element: type = Vec


def _window_check(exact_len: int | None, L: int, k: int, what: str) -> tuple[bool, str]:
    if exact_len is None:
        return False, f"{what}: algebra is not simply connected, no finite length bound is exact"
    if L < exact_len:
        return False, f"{what}: degree {k} needs word length {exact_len}, window has L={L}"
    return True, ""


def hochschild_chain_complex(F: Any, L: int, reduced: bool = False) -> ComplexDescriptor:
    """C_*(A, A) truncated at word length L (optionally the reduced complex)."""
    A = _alg(F)

    def basis(k: int) -> list:
        keys = chain_basis(A, k, L)
        if reduced:
            keys = [(w, m) for (w, m) in keys if w or A.deg(m) != 0]
        return keys

    def diff(v: Vec) -> Vec:
        out = chain_differential(A, v)
        if reduced:
            out = Vec(A.field, {key: c for key, c in out.items() if key[0] or A.deg(key[1]) != 0})
        return out

    return ComplexDescriptor(
        "reduced chains" if reduced else "chains", A.field, basis, diff,
        lambda k: _window_check(exact_chain_length(A, k), L, k, "chains")[0],
        lambda k: _window_check(exact_chain_length(A, k), L, k, "chains")[1],
        element=HochschildElement,
    )


def hochschild_cochain_complex(F: Any, L: int) -> ComplexDescriptor:
    """C^*(A, A) truncated at arity L (quotient by longer words)."""
    A = _alg(F)
    return ComplexDescriptor(
        "cochains", A.field, lambda k: cochain_basis(A, k, L),
        lambda v: cochain_differential(A, v, L, overflow="drop"),
        lambda k: _window_check(exact_cochain_length(A, k), L, k, "cochains")[0],
        lambda k: _window_check(exact_cochain_length(A, k), L, k, "cochains")[1],
        element=CochainTensor,
    )


def tate_complex(F: FrobeniusAlgebra, L: int) -> ComplexDescriptor:
    """D^k = C^k(A, A) + C_(k-n+1)(A, A), both parts truncated at length L."""
    A = F.algebra
    n = F.n

    def basis(k: int) -> list:
        return ([("C",) + key for key in cochain_basis(A, k, L)]
                + [("H",) + key for key in chain_basis(A, k - n + 1, L)])

    def ok(k: int) -> tuple[bool, str]:
        a = _window_check(exact_cochain_length(A, k), L, k, "cochain part")
        b = _window_check(exact_chain_length(A, k - n + 1), L, k, "chain part")
        return (a[0] and b[0], "; ".join(s for s in (a[1], b[1]) if s))

    return ComplexDescriptor(
        "tate", F.field, basis,
        lambda v: tate_differential(F, v, L, overflow="drop"),
        lambda k: ok(k)[0], lambda k: ok(k)[1],
        element=TateElement,
    )


@dataclass
class DegreeHomology:
    degree: int
    dim: int
    representatives: list
    cycles_dim: int
    boundaries_dim: int
    _ech: Echelon = dc_field(repr=False, default=None)

    def class_of(self, v: Vec) -> list:
        """Coordinates of the class of a cycle in terms of the representatives."""
        res, combo = self._ech.reduce(v)
        if res:
            raise ValueError("vector is not a cycle of this degree")
        F = self._ech.field
        return [combo.get(("rep", i), F.zero) for i in range(self.dim)]

    def is_boundary(self, v: Vec) -> bool:
        res, combo = self._ech.reduce(v)
        return not res and not any(t[0] == "rep" for t in combo)


@dataclass
class HomologyClassTable:
    complex_name: str
    degrees: dict[int, DegreeHomology]

    def dims(self) -> dict[int, int]:
        return {k: h.dim for k, h in sorted(self.degrees.items())}

    def __getitem__(self, k: int) -> DegreeHomology:
        return self.degrees[k]

    def to_json(self) -> list[dict]:
        out = []
        for k, h in sorted(self.degrees.items()):
            reps = [r.to_json() if hasattr(r, "to_json") else sorted(map(repr, r.keys()))
                    for r in h.representatives]
            out.append({"degree": k, "dim": h.dim, "representatives": reps})
        return out


def homology_in_degree(cx: ComplexDescriptor, k: int) -> DegreeHomology:
    F = cx.field
    prev = cx.basis(k - 1)
    cur = cx.basis(k)
    images = [(key, cx.differential(Vec(F, {key: 1}))) for key in cur]
    Z = kernel(images, F)
    E = Echelon(F)
    nb = 0
    for i, key in enumerate(prev):
        if E.insert(cx.differential(Vec(F, {key: 1})), ("bd", i)):
            nb += 1
    reps = []
    for z in Z:
        if E.insert(z, ("rep", len(reps))):
            reps.append(cx.element(F, z.terms))
    return DegreeHomology(k, len(reps), reps, len(Z), nb, E)


def homology(cx: ComplexDescriptor, degrees: Iterable[int], force: bool = False) -> HomologyClassTable:
    """Homology in the given degrees; refuses degrees where truncation is not exact."""
    degrees = list(degrees)
    if not force:
        bad = [k for k in degrees if not cx.exact(k)]
        if bad:
            raise WindowError(f"{cx.name}: degrees {bad} outside the exact window ({cx.diagnostic(bad[0])})")
    return HomologyClassTable(cx.name, {k: homology_in_degree(cx, k) for k in degrees})


def wrap_like(template: Vec, v: Vec) -> Vec:
    out = type(template)(v.field)
    out.terms = dict(v.terms)
    return out


def induced_product(table: HomologyClassTable, op: Callable[[Vec, Vec], Vec],
                    reps: dict[int, list[Vec]] | None = None,
                    differential: Callable[[Vec], Vec] | None = None) -> dict:
    """Structure constants ``{(k1, i, k2, j): (k1 + k2, coords)}`` on homology.

    ``reps`` overrides the representatives (for instance pure-sector cycles);
    pairs whose product degree is outside the table are skipped.  With a
    differential supplied, each product is checked to be a cycle.
    """
    reps = reps or {k: h.representatives for k, h in table.degrees.items()}
    out = {}
    for k1, r1 in reps.items():
        for k2, r2 in reps.items():
            k = k1 + k2
            if k not in table.degrees:
                continue
            for i, x in enumerate(r1):
                for j, y in enumerate(r2):
                    p = op(x, y)
                    if differential is not None and differential(p):
                        raise ValueError(f"product of classes ({k1},{i}) and ({k2},{j}) is not a cycle")
                    out[(k1, i, k2, j)] = (k, table[k].class_of(p))
    return out


# pure-sector Tate classes

def pure_tate_cycles(F: FrobeniusAlgebra, cx: ComplexDescriptor, k: int, sector: str) -> list[Vec]:
    """Cycles of D^k supported in one sector ("C" cochains or "H" chains)."""
    keys = [key for key in cx.basis(k) if key[0] == sector]
    images = [(key, cx.differential(TateElement(F.field, {key: 1}))) for key in keys]
    return [TateElement(F.field, z.terms) for z in kernel(images, F.field)]


def tate_product(F: FrobeniusAlgebra, x: Vec, y: Vec) -> TateElement:
    """Tate product on pure sectors: cup on cochains, * on shifted chains.

    Mixed sectors are not defined here and raise ValueError.
    """
    tx = {k[0] for k in x}
    ty = {k[0] for k in y}
    if len(tx) > 1 or len(ty) > 1 or tx != ty:
        if not x or not y:
            return TateElement(F.field)
        raise ValueError("mixed-sector products are not available")
    x = x if isinstance(x, TateElement) else TateElement(F.field, x.terms)
    y = y if isinstance(y, TateElement) else TateElement(F.field, y.terms)
    if tx == {"C"}:
        return TateElement.from_parts(F.field, cochain=cup(F, x.cochain_part, y.cochain_part))
    return TateElement.from_parts(F.field, chain=gh_star(F, x.chain_part, y.chain_part))


@dataclass
class CommutativityReport:
    checked: int
    failures: list
    skipped_not_cycle: int
    products: dict


def tate_commutativity(F: FrobeniusAlgebra, L: int, degrees: Sequence[int]) -> CommutativityReport:
    """Check x*y = (-1)^(|x||y|) y*x on pure-sector Tate classes.

    Every degree that a product can land in must lie in ``degrees``.
    """
    cx = tate_complex(F, L)
    table = homology(cx, degrees)
    pure: dict[int, list[Vec]] = {}
    for k in degrees:
        vs = []
        for sector in ("C", "H"):
            for z in pure_tate_cycles(F, cx, k, sector):
                if not table[k].is_boundary(z):
                    vs.append(z)
        pure[k] = vs
    checked = 0
    skipped = 0
    failures = []
    products = {}
    for k1 in degrees:
        for k2 in degrees:
            if k1 + k2 not in table.degrees:
                continue
            for i, x in enumerate(pure[k1]):
                for j, y in enumerate(pure[k2]):
                    if {t[0] for t in x} != {t[0] for t in y}:
                        continue
                    xy = tate_product(F, x, y)
                    yx = tate_product(F, y, x)
                    if cx.differential(xy) or cx.differential(yx):
                        skipped += 1
                        continue
                    diff = xy - yx.scale(sign(k1 * k2))
                    checked += 1
                    products[(k1, i, k2, j)] = table[k1 + k2].class_of(xy)
                    if not table[k1 + k2].is_boundary(diff):
                        failures.append((k1, i, k2, j))
    return CommutativityReport(checked, failures, skipped, products)
