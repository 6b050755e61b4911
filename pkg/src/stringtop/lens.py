"""Loop product and coproduct bookkeeping on 3-dimensional lens spaces.

Degree-three classes rho_(l,m) multiply by adding indices.  Their coproduct
lands in degree-one classes beta_(k,k') with 0 < k, k' < p, coefficients in
Z/p.  A degree-one homotopy equivalence L(p,q1) -> L(p,q2) acts on
fundamental groups by multiplication by some l with l^2 q2 = q1 mod p; the
decision procedure asks whether it can preserve the coproduct.

>>> rho_coproduct(LensSpace(7, 2), 2, 0)
LensH1Class(p=7, {(1, 1): 5, (4, 5): 4, (5, 4): 4})
>>> homotopy_equiv_degrees(7, 1, 2)
[2, 5]
>>> coproduct_invariance_search(7, 1, 2).witness is None
True
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be at least 2")
        q = self.q % self.p
        if q == 0 or gcd(q, self.p) != 1:
            raise ValueError(f"q={self.q} is not a unit mod p={self.p}")
        object.__setattr__(self, "q", q)

    @property
    def q_inv(self) -> int:
        return pow(self.q, -1, self.p)


class RhoClass:
    """Integer combination of symbols rho_(l,m) with l, m >= 0."""

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms: dict[tuple[int, int], int] = {}
        for (l, m), c in (terms or {}).items():
            if l < 0 or m < 0:
                raise ValueError("rho indices must be nonnegative")
            if c:
                self.terms[(l, m)] = self.terms.get((l, m), 0) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def symbol(cls, l: int, m: int) -> "RhoClass":
        return cls({(l, m): 1})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RhoClass) and self.terms == other.terms

    def __repr__(self) -> str:
        return "RhoClass(" + repr(dict(sorted(self.terms.items()))) + ")"


def rho_product(x: RhoClass, y: RhoClass) -> RhoClass:
    """Bilinear extension of rho_(l1,m1) rho_(l2,m2) = rho_(l1+l2, m1+m2)."""
    out: dict[tuple[int, int], int] = {}
    for (l1, m1), a in x.terms.items():
        for (l2, m2), b in y.terms.items():
            k = (l1 + l2, m1 + m2)
            out[k] = out.get(k, 0) + a * b
    return RhoClass(out)


class LensH1Class:
    """Z/p combination of beta_(k,k'); symbols with a zero index vanish."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, int], int] | None = None):
        self.p = p
        self.terms: dict[tuple[int, int], int] = {}
        for (k, kp), c in (terms or {}).items():
            self.add(k, kp, c)

    def add(self, k: int, kp: int, c: int) -> None:
        p = self.p
        k, kp = k % p, kp % p
        if k == 0 or kp == 0:
            return
        v = (self.terms.get((k, kp), 0) + c) % p
        if v:
            self.terms[(k, kp)] = v
        else:
            self.terms.pop((k, kp), None)

    def __add__(self, other: "LensH1Class") -> "LensH1Class":
        out = LensH1Class(self.p, self.terms)
        for (k, kp), c in other.terms.items():
            out.add(k, kp, c)
        return out

    def scale(self, c: int) -> "LensH1Class":
        return LensH1Class(self.p, {k: v * c for k, v in self.terms.items()})

    def __sub__(self, other: "LensH1Class") -> "LensH1Class":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LensH1Class) and self.p == other.p and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LensH1Class(p={self.p}, {dict(sorted(self.terms.items()))})"

    def to_json(self) -> list[dict]:
        return [{"k": k, "kp": kp, "coeff": c} for (k, kp), c in sorted(self.terms.items())]


def _count(N: int, r: int, p: int) -> int:
    """Number of integers t with 0 < t < N and t = r mod p, for 0 < r < p."""
    return 0 if N - 1 < r else (N - 1 - r) // p + 1


def rho_coproduct(L: LensSpace, l: int, m: int) -> LensH1Class:
    """Coproduct of rho_(l,m).

    sum over 0 < t < l of beta_(t, l-t), plus q' times the sum over
    0 < t < ql + pm of beta_(tq', l-tq'), skipping terms with an index that is
    zero mod p; q' is the inverse of q mod p.  Only t mod p matters, so the
    sums are evaluated by counting residues.
    """
    if l < 0 or m < 0:
        raise ValueError("rho indices must be nonnegative")
    p, q, qi = L.p, L.q, L.q_inv
    out = LensH1Class(p)
    for r in range(1, p):
        n1 = _count(l, r, p)
        if n1:
            out.add(r, l - r, n1)
        n2 = _count(q * l + p * m, r, p)
        if n2:
            out.add(r * qi, l - r * qi, n2 * qi)
    return out


def beta_prime_convert(L: LensSpace, k: int, kp: int) -> LensH1Class:
    """beta'_(k,k') in the beta basis: q' beta_(q'k, q'k')."""
    if k % L.p == 0 or kp % L.p == 0:
        raise ValueError("indices must be nonzero mod p")
    qi = L.q_inv
    return LensH1Class(L.p, {(qi * k, qi * kp): qi})


def transfer(l: int, x: LensH1Class) -> LensH1Class:
    """beta_(k,k') -> l beta_(lk, lk') under a map that is multiplication by l on pi_1."""
    p = x.p
    if gcd(l % p, p) != 1:
        raise ValueError(f"{l} is not a unit mod {p}")
    out = LensH1Class(p)
    for (k, kp), c in x.terms.items():
        out.add(l * k, l * kp, l * c)
    return out


def homotopy_equiv_degrees(p: int, q1: int, q2: int) -> list[int]:
    """All l in 1..p-1 with l^2 q2 = q1 mod p."""
    return [l for l in range(1, p) if (l * l * q2 - q1) % p == 0]


def reversing_equiv_degrees(p: int, q1: int, q2: int) -> list[int]:
    """All l in 1..p-1 with l^2 q2 = -q1 mod p (degree -1 equivalences)."""
    return [l for l in range(1, p) if (l * l * q2 + q1) % p == 0]


def homeomorphic(p: int, q1: int, q2: int) -> bool:
    """q1 q2 = +-1 or q1 = +-q2 mod p."""
    return ((q1 * q2 - 1) % p == 0 or (q1 * q2 + 1) % p == 0
            or (q1 - q2) % p == 0 or (q1 + q2) % p == 0)


def orientation_preserving_homeomorphic(p: int, q1: int, q2: int) -> bool:
    """q1 q2 = 1 or q1 = q2 mod p."""
    return (q1 * q2 - 1) % p == 0 or (q1 - q2) % p == 0


@dataclass
class SearchResult:
    p: int
    q1: int
    q2: int
    degrees: list[int]
    witness: tuple[int, int] | None

    @property
    def vacuous(self) -> bool:
        return not self.degrees

    @property
    def preserved(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {"p": self.p, "q1": self.q1, "q2": self.q2, "degrees": self.degrees,
                "vacuous": self.vacuous, "preserved": self.preserved,
                "witnesses": [] if self.witness is None else [{"l": self.witness[0], "a": self.witness[1]}]}


def coproduct_invariance_search(p: int, q1: int, q2: int, orientations: str = "preserving") -> SearchResult:
    """Look for l and a with cop((1-a) rho_(l,0) + a rho_(l,1)) = transfer(l, cop rho_(1,0)).

    The left side lives on L(p,q2), the right side is pushed forward from
    L(p,q1).  Only degree-one equivalences (l^2 q2 = q1) are tried unless
    ``orientations="both"``, which afterwards also tries the degree -1 ones
    (l^2 q2 = -q1) with the same comparison.  With no admissible l the result
    is vacuous and has no witness.
    """
    if orientations not in ("preserving", "both"):
        raise ValueError("orientations must be 'preserving' or 'both'")
    src_space = LensSpace(p, q1)
    tgt_space = LensSpace(p, q2)
    degs = homotopy_equiv_degrees(p, src_space.q, tgt_space.q)
    if orientations == "both":
        degs = degs + [l for l in reversing_equiv_degrees(p, src_space.q, tgt_space.q) if l not in degs]
    src = rho_coproduct(src_space, 1, 0)
    for l in degs:
        tgt = transfer(l, src)
        c0 = rho_coproduct(tgt_space, l, 0)
        c1 = rho_coproduct(tgt_space, l, 1)
        d0 = c0 - tgt
        d1 = c1 - c0
        keys = set(d0.terms) | set(d1.terms)
        for a in range(p):
            if all((d0.terms.get(k, 0) + a * d1.terms.get(k, 0)) % p == 0 for k in keys):
                return SearchResult(p, q1, q2, degs, (l, a))
    return SearchResult(p, q1, q2, degs, None)


def scan_pair(p: int, q1: int, q2: int, orientations: str = "preserving") -> SearchResult:
    """Search with the roles swapped when q2 = 1 (both criteria are symmetric)."""
    if q2 % p == 1 and q1 % p != 1:
        r = coproduct_invariance_search(p, q2, q1, orientations)
        return SearchResult(p, q1, q2, r.degrees, r.witness)
    return coproduct_invariance_search(p, q1, q2, orientations)


@dataclass
class ScanReport:
    p_max: int
    orientations: str = "preserving"
    pairs: int = 0
    witnesses: int = 0
    vacuous: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    witness_not_homeomorphic: list = field(default_factory=list)
    oriented_counterexamples: list = field(default_factory=list)
    non_preserving: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max,
            "orientations": self.orientations,
            "pairs": self.pairs,
            "witnesses": self.witnesses,
            "vacuous": len(self.vacuous),
            "counterexamples": [list(t) for t in self.counterexamples],
            "witness_not_homeomorphic": [list(t) for t in self.witness_not_homeomorphic],
            "oriented_counterexamples": [list(t) for t in self.oriented_counterexamples],
            "non_preserving": [list(t) for t in self.non_preserving],
        }


def _scan_p(args: tuple[int, str]) -> list[tuple[int, int, int, bool, bool]]:
    p, orientations = args
    units = [q for q in range(1, p) if gcd(q, p) == 1]
    out = []
    for q1 in units:
        for q2 in units:
            r = scan_pair(p, q1, q2, orientations)
            out.append((p, q1, q2, r.preserved, r.vacuous))
    return out


def thm_lens_scan(p_max: int, threads: int | None = None, orientations: str = "preserving") -> ScanReport:
    """Compare "a witness exists" with the homeomorphism criterion for all p <= p_max.

    Every ordered pair of units (q1, q2) is tested.  ``counterexamples`` lists
    the triples where the two disagree.  The report also lists vacuous triples
    (no admissible l), triples where a witness exists without a homeomorphism
    and non-vacuous triples without a witness.  In ``"preserving"`` mode it
    also lists disagreements with the orientation-preserving criterion.

    With degree-one equivalences only, a pair that is homeomorphic just by an
    orientation-reversing map, or that admits no degree-one equivalence at
    all, shows up as a counterexample.
    """
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    if threads is None:
        threads = int(os.environ.get("ST_THREADS", "1") or 1)
    jobs = [(p, orientations) for p in range(2, p_max + 1)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            rows = [r for chunk in ex.map(_scan_p, jobs) for r in chunk]
    else:
        rows = [r for job in jobs for r in _scan_p(job)]
    rep = ScanReport(p_max, orientations=orientations)
    for p, q1, q2, preserved, vacuous in sorted(rows):
        rep.pairs += 1
        t = (p, q1, q2)
        homeo = homeomorphic(p, q1, q2)
        if preserved:
            rep.witnesses += 1
        if vacuous:
            rep.vacuous.append(t)
        elif not preserved:
            rep.non_preserving.append(t)
        if preserved != homeo:
            rep.counterexamples.append(t)
        if preserved and not homeo:
            rep.witness_not_homeomorphic.append(t)
        if orientations == "preserving" and preserved != orientation_preserving_homeomorphic(p, q1, q2):
            rep.oriented_counterexamples.append(t)
    return rep
