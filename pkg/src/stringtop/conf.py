"""Models of the two-point configuration space and the unit tangent bundle.

For a commutative Frobenius algebra A of dimension n:

* U_A has basis A + A.t with |t| = n - 1, t^2 = 0 and dt = e (the Euler class).
  The label ``a.t`` stands for the product a t.
* F_A has basis A(x)A + A.w with |w| = n - 1, w^2 = 0, dw = Delta(1) and
  (a(x)1)w = (1(x)a)w.  The label ``a⊗b`` is a(x)b and ``a.w`` is (a(x)1)w;
  every w-term is rewritten eagerly as (a(x)b)w = (ab(x)1)w.

Cones of a chain map f: X -> Y are pairs (x, sy) with
d(x, sy) = (dx, s(f(x) - dy)).

>>> from stringtop.frobenius import sphere_model
>>> FA = build_FA(sphere_model(2))
>>> FA.dif(FA.elt("1.w"))
1*'1⊗v' + 1*'v⊗1'
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .algebra import DgAlgebra, sign
from .frobenius import FrobeniusAlgebra
from .hochschild import HochschildElement, eps
from .vectors import Vec

SEP = "\u2297"


def _require_commutative(F: FrobeniusAlgebra) -> None:
    if not F.is_commutative():
        raise ValueError("configuration models need a commutative Frobenius algebra")


def pair_label(a: str, b: str) -> str:
    return f"{a}{SEP}{b}"


def omega_label(a: str) -> str:
    return f"{a}.w"


def theta_label(a: str) -> str:
    return f"{a}.t"


def build_UA(F: FrobeniusAlgebra) -> DgAlgebra:
    """The unit tangent bundle model A + A.t."""
    _require_commutative(F)
    A = F.algebra
    n = F.n
    e = F.euler_class()
    basis = list(A.basis) + [(theta_label(a), k + n - 1) for a, k in A.basis]
    mul: dict[tuple[str, str], dict[str, Any]] = {}
    for a in A.labels:
        for b in A.labels:
            ab = A.mul_basis(a, b)
            if not ab:
                continue
            mul[(a, b)] = dict(ab)
            mul[(a, theta_label(b))] = {theta_label(t): c for t, c in ab.items()}
            s = sign((n - 1) * A.deg(b))
            mul[(theta_label(a), b)] = {theta_label(t): s * c for t, c in ab.items()}
    d: dict[str, dict[str, Any]] = {}
    for a in A.labels:
        da = A.d.table.get(a, {})
        if da:
            d[a] = dict(da)
        row = Vec(A.field, {theta_label(t): c for t, c in da.items()})
        row.add_vec(A.mul(A.elt(a), e), sign(A.deg(a)))
        if row:
            d[theta_label(a)] = row.terms
    return DgAlgebra(A.field, basis, A.unit, mul, d, name=f"U({A.name})")


def build_FA(F: FrobeniusAlgebra) -> DgAlgebra:
    """The configuration space model A(x)A + A.w."""
    _require_commutative(F)
    A = F.algebra
    n = F.n
    fld = A.field
    diag = F.diagonal()
    basis = [(pair_label(a, b), ka + kb) for a, ka in A.basis for b, kb in A.basis]
    basis += [(omega_label(a), k + n - 1) for a, k in A.basis]
    mul: dict[tuple[str, str], dict[str, Any]] = {}
    L = A.labels
    for a in L:
        for b in L:
            ab_lab = pair_label(a, b)
            for c in L:
                # (a|b)(c.w) = (-1)^(|b||c|) (acb).w
                acb = A.mul(A.mul(A.elt(a), A.elt(c)), A.elt(b))
                if acb:
                    s = sign(A.deg(b) * A.deg(c))
                    mul[(ab_lab, omega_label(c))] = {omega_label(t): s * x for t, x in acb.items()}
                # (c.w)(a|b) = (-1)^((n-1)(|a|+|b|)) (cab).w
                cab = A.mul(A.mul(A.elt(c), A.elt(a)), A.elt(b))
                if cab:
                    s = sign((n - 1) * (A.deg(a) + A.deg(b)))
                    mul[(omega_label(c), ab_lab)] = {omega_label(t): s * x for t, x in cab.items()}
                for e in L:
                    s = sign(A.deg(b) * A.deg(c))
                    row: dict[str, Any] = {}
                    for t1, x in A.mul_basis(a, c).items():
                        for t2, y in A.mul_basis(b, e).items():
                            row[pair_label(t1, t2)] = fld.norm(row.get(pair_label(t1, t2), 0) + s * x * y)
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        mul[(ab_lab, pair_label(c, e))] = row
    d: dict[str, dict[str, Any]] = {}
    for a in L:
        for b in L:
            row = Vec(fld)
            for t, x in A.d.table.get(a, {}).items():
                row.add_term(pair_label(t, b), x)
            for t, x in A.d.table.get(b, {}).items():
                row.add_term(pair_label(a, t), sign(A.deg(a)) * x)
            if row:
                d[pair_label(a, b)] = row.terms
        # d((a|1)w) = (da|1)w + (-1)^|a| (a|1) Delta(1)
        row = Vec(fld)
        for t, x in A.d.table.get(a, {}).items():
            row.add_term(omega_label(t), x)
        for (e, f), c in diag.items():
            for t, x in A.mul_basis(a, e).items():
                row.add_term(pair_label(t, f), sign(A.deg(a)) * c * x)
        if row:
            d[omega_label(a)] = row.terms
    return DgAlgebra(fld, basis, pair_label(A.unit, A.unit), mul, d, name=f"F({A.name})")


def fa_to_ua(F: FrobeniusAlgebra, x: Vec) -> Vec:
    """The dg algebra map F_A -> U_A: a|b -> ab and (a|1)w -> a.t."""
    A = F.algebra
    out = Vec(A.field)
    for lab, c in x.items():
        if lab.endswith(".w"):
            out.add_term(theta_label(lab[:-2]), c)
        else:
            a, b = lab.split(SEP)
            for t, y in A.mul_basis(a, b).items():
                out.add_term(t, c * y)
    return out


def tensor_to_FA(v: Vec) -> Vec:
    """Relabel an element of A(x)A keyed by pairs as an element of F_A."""
    out = Vec(v.field)
    for (a, b), c in v.items():
        out.add_term(pair_label(a, b), c)
    return out


# cones

@dataclass
class ConeElement:
    """(x, s y) in the cone of a chain map source -> target."""

    x: Vec
    y: Vec

    def __add__(self, other: "ConeElement") -> "ConeElement":
        return ConeElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        return ConeElement(self.x - other.x, self.y - other.y)

    def scale(self, c: Any) -> "ConeElement":
        return ConeElement(self.x.scale(c), self.y.scale(c))

    def __bool__(self) -> bool:
        return bool(self.x) or bool(self.y)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConeElement) and self.x == other.x and self.y == other.y

    def __repr__(self) -> str:
        return f"({self.x!r}, s[{self.y!r}])"


class Cone:
    """The cone of a chain map f between dg algebras."""

    def __init__(self, source: DgAlgebra, target: DgAlgebra, f: Callable[[Vec], Vec]):
        self.source = source
        self.target = target
        self.f = f

    def d(self, z: ConeElement) -> ConeElement:
        return ConeElement(self.source.dif(z.x), self.f(z.x) - self.target.dif(z.y))

    def basis(self) -> list[ConeElement]:
        F = self.source.field
        return ([ConeElement(self.source.elt(a), Vec(F)) for a in self.source.labels]
                + [ConeElement(Vec(F), self.target.elt(b)) for b in self.target.labels])

    def degree(self, z: ConeElement) -> int | None:
        ds = {self.source.deg(a) for a in z.x} | {self.target.deg(b) + 1 for b in z.y}
        return ds.pop() if len(ds) == 1 else None


class ConfModels:
    """F_A, U_A, the two cones and the maps between them for one algebra."""

    def __init__(self, F: FrobeniusAlgebra):
        _require_commutative(F)
        self.F = F
        self.A = F.algebra
        self.UA = build_UA(F)
        self.FA = build_FA(F)
        AA = [(pair_label(a, b), ka + kb) for a, ka in self.A.basis for b, kb in self.A.basis]
        self.cone_U = Cone(self.A, self.UA, lambda v: v.copy())
        self.cone_F = Cone(_SubAlgebraView(self.FA, [l for l, _ in AA]), self.FA, lambda v: v.copy())

    def thom_class(self) -> ConeElement:
        """tau = (e, s t) in the cone of A -> U_A."""
        return ConeElement(self.F.euler_class(), self.UA.elt(theta_label(self.A.unit)))

    def split_U(self, y: Vec) -> tuple[Vec, Vec]:
        """Write y = y0 + z t with y0, z in A."""
        y0, z = Vec(y.field), Vec(y.field)
        for lab, c in y.items():
            if lab.endswith(".t"):
                z.add_term(lab[:-2], c)
            else:
                y0.add_term(lab, c)
        return y0, z

    def phi(self, xi: ConeElement) -> ConeElement:
        """(x, s(y0 + z t)) -> ((-1)^((n+1)|z|) Delta(z), s (z|1)w), degree by degree."""
        _, z = self.split_U(xi.y)
        n = self.F.n
        first = Vec(self.A.field)
        second = Vec(self.A.field)
        for a, c in z.items():
            s = sign((n + 1) * self.A.deg(a))
            first.add_vec(tensor_to_FA(self.F.coproduct(self.A.elt(a))), s * c)
            second.add_term(omega_label(a), c)
        return ConeElement(first, second)

    def mhat(self, xi: ConeElement) -> ConeElement:
        """Induced map of cones: multiplication on A(x)A, fa_to_ua on F_A."""
        return ConeElement(fa_to_ua(self.F, xi.x), fa_to_ua(self.F, xi.y))

    def homotopy_h(self, xi: ConeElement) -> ConeElement:
        """(x, s(y0 + z t)) -> (y0, 0)."""
        y0, _ = self.split_U(xi.y)
        return ConeElement(y0, Vec(self.A.field))

    def act_U(self, r: str, xi: ConeElement) -> ConeElement:
        """Action of a basis element r = a|b of A(x)A through multiplication."""
        a, b = r.split(SEP)
        m = self.A.mul(self.A.elt(a), self.A.elt(b))
        s = sign(self.A.deg(a) + self.A.deg(b))
        return ConeElement(self.A.mul(m, xi.x), self.UA.mul(m, xi.y).scale(s))

    def act_F(self, r: str, xi: ConeElement) -> ConeElement:
        s = sign(self.FA.deg(r))
        rr = self.FA.elt(r)
        return ConeElement(self.FA.mul(rr, xi.x), self.FA.mul(rr, xi.y).scale(s))


class _SubAlgebraView:
    """A(x)A seen inside F_A: same labels, same differential."""

    def __init__(self, FA: DgAlgebra, labels: list[str]):
        self._FA = FA
        self.labels = labels
        self.field = FA.field

    def dif(self, v: Vec) -> Vec:
        return self._FA.dif(v)

    def elt(self, label: str, coeff: Any = 1) -> Vec:
        return self._FA.elt(label, coeff)

    def deg(self, label: str) -> int:
        return self._FA.deg(label)


# the geometric coproduct, element by element

def geometric_coproduct_pipeline(F: FrobeniusAlgebra, alpha: Vec, beta: Vec,
                                 models: ConfModels | None = None) -> HochschildElement:
    """Cut, multiply by the Thom class, apply phi, project to A(x)A, interleave.

    For words alpha = (a_1..a_p; a) and beta = (b_1..b_q; b), the output is a
    sum of words (a_1..a_p, c, b_1..b_q; d) where Delta(ab) = sum c(x)d after
    the Thom class and phi; shifted slots holding the unit are dropped.
    """
    M = models or ConfModels(F)
    A = F.algebra
    out = HochschildElement(F.field)
    for (wa, a), ca in alpha.items():
        if not wa:
            raise ValueError("pipeline inputs must have at least one shifted factor")
        for (wb, b), cb in beta.items():
            if not wb:
                raise ValueError("pipeline inputs must have at least one shifted factor")
            # cut: (wa; a)(wb; b) -> (wa)(wb) (x) ab, moving a past wb
            s_cut = sign(A.deg(a) * eps(A, wb))
            x = A.mul(A.elt(a), A.elt(b))
            # multiply by tau = (e, s t): x.tau = (xe, (-1)^|x| s(x t))
            for lab, cx in x.items():
                xv = A.elt(lab)
                tau = M.thom_class()
                xi = ConeElement(A.mul(xv, tau.x), M.UA.mul(xv, tau.y).scale(sign(A.deg(lab))))
                img = M.phi(xi)
                # project to A(x)A and interleave: (wa)(wb) c (x) d -> (wa, c, wb; d)
                for pl, cp in img.x.items():
                    c, d = pl.split(SEP)
                    if c == A.unit:
                        continue
                    s_j = sign((A.deg(c) - 1) * eps(A, wb))
                    out.add_term((wa + (c,) + wb, d), s_cut * s_j * ca * cb * cx * cp)
    return out


def compare_up_to_sign(x: Vec, y: Vec) -> dict | None:
    """Per-word ratio x/y when every ratio is +1 or -1 and supports agree."""
    if set(x.keys()) != set(y.keys()):
        return None
    out = {}
    for k in x.keys():
        if x[k] == y[k]:
            out[k] = 1
        elif x[k] == -y[k]:
            out[k] = -1
        else:
            return None
    return out
