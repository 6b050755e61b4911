"""Cup product, the Goresky-Hingston type product on chains, and the Tate complex.

Tate elements are sparse vectors whose keys are tagged: ``("C", word, out)``
for the cochain part and ``("H", word, module)`` for the chain part.  A chain
word of Hochschild degree k sits in Tate degree k + n - 1.

>>> from stringtop.frobenius import sphere_model
>>> S2 = sphere_model(2)
>>> gamma(S2, S2.elt("1"))
2*'v'
"""
from __future__ import annotations

from typing import Any

from .algebra import sign
from .fields import Field
from .frobenius import FrobeniusAlgebra
from .hochschild import (
    CochainTensor, HochschildElement, TruncationOverflow, _alg, chain_degree,
    chain_differential, cochain_degree, cochain_differential, eps,
)
from .vectors import Vec


def cup(X: Any, f: Vec, g: Vec, L: int | None = None) -> CochainTensor:
    """(f u g)(a_1..a_(m+k)) = (-1)^(|g| eps_m) f(a_1..a_m) g(a_(m+1)..)."""
    A = _alg(X)
    out = CochainTensor(A.field)
    for (w1, o1), c1 in f.items():
        e1 = eps(A, w1)
        for (w2, o2), c2 in g.items():
            if L is not None and len(w1) + len(w2) > L:
                raise TruncationOverflow(f"cup product arity exceeds L={L}")
            s = sign(cochain_degree(A, (w2, o2)) * e1)
            for t, x in A.mul_basis(o1, o2).items():
                out.add_term((w1 + w2, t), s * c1 * c2 * x)
    return out


def _require_connected(F: FrobeniusAlgebra) -> None:
    if not F.algebra.is_connected():
        raise ValueError("the chain product needs a connected Frobenius algebra")
    if F.n <= 0:
        raise ValueError("the chain product needs positive dimension")


def gh_star(F: FrobeniusAlgebra, alpha: Vec, beta: Vec) -> HochschildElement:
    """alpha * beta = sum_i (-1)^eta_i (b_1..b_q, b_(q+1) e_i, a_1..a_p; a_(p+1) f_i).

    eta_i = |alpha||f_i| + |b_(q+1)| + (|alpha| + n - 1)(|beta| + n - 1), with
    Hochschild degrees.  Shifted slots holding the unit are dropped.
    """
    _require_connected(F)
    A = F.algebra
    unit = A.unit
    n = F.n
    diag = F.diagonal_terms()
    out = HochschildElement(F.field)
    for (wa, a_last), ca in alpha.items():
        da = chain_degree(A, (wa, a_last))
        for (wb, b_last), cb in beta.items():
            db = chain_degree(A, (wb, b_last))
            base = A.deg(b_last) + (da + n - 1) * (db + n - 1)
            for e, f, c in diag:
                s = sign(base + da * A.deg(f))
                left = A.mul_basis(b_last, e)
                if not left:
                    continue
                right = A.mul_basis(a_last, f)
                for u, x in left.items():
                    if u == unit:
                        continue
                    for v, y in right.items():
                        out.add_term((wb + (u,) + wa, v), s * c * ca * cb * x * y)
    return out


def leibniz_defect(F: FrobeniusAlgebra, alpha: Vec, beta: Vec) -> HochschildElement:
    """d(a*b) - d(a)*b - (-1)^(|a|+n-1) a*d(b) for homogeneous alpha."""
    A = F.algebra
    degs = {chain_degree(A, k) for k in alpha}
    if len(degs) > 1:
        raise ValueError("alpha must be homogeneous")
    da = degs.pop() if degs else 0
    out = chain_differential(F, gh_star(F, alpha, beta))
    out = out - gh_star(F, chain_differential(F, alpha), beta)
    out = out - gh_star(F, alpha, chain_differential(F, beta)).scale(sign(da + F.n - 1))
    return out


def predicted_defect_left(F: FrobeniusAlgebra, a1: str, beta: Vec) -> HochschildElement:
    """Correction term when alpha = (; a1) has no shifted factors.

    sum_i (-1)^(eta_i + |beta| - 1 - |b_(q+1)|) (b_1..b_q; b_(q+1) e_i a1 f_i).
    """
    A = F.algebra
    n = F.n
    da = A.deg(a1)
    out = HochschildElement(F.field)
    for (wb, b_last), cb in beta.items():
        db = chain_degree(A, (wb, b_last))
        for e, f, c in F.diagonal_terms():
            eta = da * A.deg(f) + A.deg(b_last) + (da + n - 1) * (db + n - 1)
            s = sign(eta + db - 1 - A.deg(b_last))
            v = A.mul(A.mul(A.mul(A.elt(b_last), A.elt(e)), A.elt(a1)), A.elt(f))
            for t, x in v.items():
                out.add_term((wb, t), s * c * cb * x)
    return out


def predicted_defect_right(F: FrobeniusAlgebra, alpha: Vec, b1: str) -> HochschildElement:
    """Correction term when beta = (; b1) has no shifted factors.

    sum_i (-1)^(|alpha| + 1 + |f_i||b1|) (a_1..a_p; a_(p+1) e_i b1 f_i).
    When both factors have length zero the defect is the sum of both corrections.
    """
    A = F.algebra
    out = HochschildElement(F.field)
    for (wa, a_last), ca in alpha.items():
        da = chain_degree(A, (wa, a_last))
        for e, f, c in F.diagonal_terms():
            s = sign(da + 1 + A.deg(f) * A.deg(b1))
            v = A.mul(A.mul(A.mul(A.elt(a_last), A.elt(e)), A.elt(b1)), A.elt(f))
            for t, x in v.items():
                out.add_term((wa, t), s * c * ca * x)
    return out


def predicted_defect(F: FrobeniusAlgebra, alpha: Vec, beta: Vec) -> HochschildElement:
    """Expected value of :func:`leibniz_defect` for basis words alpha, beta."""
    (wa, a_last), = alpha.keys()
    (wb, b_last), = beta.keys()
    ca, cb = alpha[(wa, a_last)], beta[(wb, b_last)]
    out = HochschildElement(F.field)
    if not wa:
        out.add_vec(predicted_defect_left(F, a_last, beta), ca)
    if not wb:
        out.add_vec(predicted_defect_right(F, alpha, b_last), cb)
    return out


def gamma(F: FrobeniusAlgebra, a: Vec) -> Vec:
    """gamma(a) = sum_i (-1)^(|f_i||a|) e_i a f_i, of degree n."""
    A = F.algebra
    out = Vec(F.field)
    for t, ct in a.items():
        for e, f, c in F.diagonal_terms():
            s = sign(A.deg(f) * A.deg(t))
            v = A.mul(A.mul(A.elt(e), A.elt(t)), A.elt(f))
            out.add_vec(v, s * c * ct)
    return out


# Tate complex

class TateElement(Vec):
    """Pair (cochain part, shifted chain part) stored with tagged keys."""

    @classmethod
    def from_parts(cls, field: Field, cochain: Vec | None = None, chain: Vec | None = None) -> "TateElement":
        out = cls(field)
        for (w, o), c in (cochain.items() if cochain else ()):
            out.add_term(("C", w, o), c)
        for (w, m), c in (chain.items() if chain else ()):
            out.add_term(("H", w, m), c)
        return out

    @property
    def cochain_part(self) -> CochainTensor:
        out = CochainTensor(self.field)
        for (tag, w, o), c in self.terms.items():
            if tag == "C":
                out.add_term((w, o), c)
        return out

    @property
    def chain_part(self) -> HochschildElement:
        out = HochschildElement(self.field)
        for (tag, w, m), c in self.terms.items():
            if tag == "H":
                out.add_term((w, m), c)
        return out

    def to_json(self) -> dict:
        return {"cochain": self.cochain_part.to_json(), "chain": self.chain_part.to_json()}


def tate_degree(F: FrobeniusAlgebra, key: tuple) -> int:
    tag, w, x = key
    if tag == "C":
        return cochain_degree(F.algebra, (w, x))
    return chain_degree(F.algebra, (w, x)) + F.n - 1


def tate_differential(F: FrobeniusAlgebra, x: Vec, L: int | None = None, overflow: str = "error") -> TateElement:
    """delta(f, alpha) = (delta f + gamma~(alpha), (-1)^(n+1) d alpha).

    gamma~ is gamma on the length-zero part of alpha and zero elsewhere; the
    sign on the chain part is the one of the (1-n)-fold shift.
    """
    x = x if isinstance(x, TateElement) else TateElement(F.field, x.terms)
    co = cochain_differential(F, x.cochain_part, L, overflow)
    ch_in = x.chain_part
    for (w, m), c in ch_in.items():
        if not w:
            for t, y in gamma(F, F.elt(m)).items():
                co.add_term(((), t), c * y)
    ch = chain_differential(F, ch_in).scale(sign(F.n + 1))
    return TateElement.from_parts(F.field, co, ch)


def _pair_basis(F: FrobeniusAlgebra, w: tuple, o: str, w2: tuple, m: str):
    return F.pair_basis(o, m) if w == w2 else 0


def tate_pairing(F: FrobeniusAlgebra, x: Vec, y: Vec):
    """Two-sided pairing of Tate elements.

    <x, y> = sum <f(a_1..a_m), a_(m+1)> over cochain terms f of x against chain
    terms of y, plus the mirrored sum over cochain terms of y against chain
    terms of x, each term signed by (-1)^(n|f|) and the mirrored terms further
    by (-1)^(n - 1 + |x||y|).  Nonzero only in total degree 2n - 1.
    """
    A = F.algebra
    n = F.n
    s = F.field.zero
    for kx, cx in x.items():
        for ky, cy in y.items():
            if kx[0] == "C" and ky[0] == "H":
                v = _pair_basis(F, kx[1], kx[2], ky[1], ky[2])
                if v:
                    fd = cochain_degree(A, (kx[1], kx[2]))
                    s += sign(n * fd) * cx * cy * v
            elif kx[0] == "H" and ky[0] == "C":
                v = _pair_basis(F, ky[1], ky[2], kx[1], kx[2])
                if v:
                    gd = cochain_degree(A, (ky[1], ky[2]))
                    dx, dy = tate_degree(F, kx), tate_degree(F, ky)
                    s += sign(n * gd + n - 1 + dx * dy) * cx * cy * v
    return F.field.norm(s)
