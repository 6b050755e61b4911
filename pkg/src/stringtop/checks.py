"""Exact axiom suite over a Frobenius model.

Each check walks basis elements of the truncated complexes (word length at
most ``L``, degrees inside ``[-K, K]``) and records every element or tuple on
which an identity fails.  Product checks run over pairs and triples whose
total word length fits in the window.  When there are more than ``samples``
candidates a seeded random subset is used instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable, Sequence

from .algebra import sign, validate_dga
from .frobenius import FrobeniusAlgebra, validate_frobenius
from .hochschild import (chain, chain_degree, chain_differential, cochain, cochain_degree,
                         cochain_differential, connes_B, unit_cochain, words_upto)
from .products import (TateElement, cup, leibniz_defect, predicted_defect, tate_degree,
                       tate_differential, tate_pairing)

DEFAULT_SEED = 20240101


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.name, "checked": self.checked, "ok": self.ok,
                "sampled": self.sampled, "failures": [repr(f) for f in self.failures[:10]]}


@dataclass
class SuiteReport:
    model: str
    field: str
    L: int
    K: int
    seed: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"model": self.model, "field": self.field, "L": self.L, "K": self.K,
                "seed": self.seed, "ok": self.ok, "results": [r.to_json() for r in self.results]}


def _run(name: str, items: Iterable, bad: Callable[[Any], bool]) -> CheckResult:
    res = CheckResult(name)
    for it in items:
        res.checked += 1
        if bad(it):
            res.failures.append(it)
    return res


def _limit(items: list, samples: int | None, rng: random.Random) -> tuple[list, bool]:
    if samples is None or len(items) <= samples:
        return items, False
    return rng.sample(items, samples), True


def _tuples(keys: list, arity: int, budget: int) -> list[tuple]:
    """Tuples of keys whose word lengths add up to at most ``budget``."""
    by_len: dict[int, list] = {}
    for k in keys:
        by_len.setdefault(len(k[0]), []).append(k)
    out: list[tuple] = []
    for lens in product(sorted(by_len), repeat=arity):
        if sum(lens) <= budget:
            out.extend(product(*(by_len[n] for n in lens)))
    return out


def run_suite(F: FrobeniusAlgebra, L: int = 4, K: int = 12, samples: int | None = None,
              seed: int = DEFAULT_SEED) -> SuiteReport:
    """Every identity of the suite on one model; ``samples=None`` means exhaustive."""
    A = F.algebra
    rng = random.Random(seed)
    rep = SuiteReport(F.name, repr(F.field), L, K, seed)
    rep.results.append(CheckResult("dga", 1, validate_dga(A)))
    rep.results.append(CheckResult("frobenius", 1, validate_frobenius(F)))

    ws = words_upto(A, L)
    ch = [(w, m) for w in ws for m in A.labels if abs(chain_degree(A, (w, m))) <= K]
    co = [(w, o) for w in ws for o in A.labels if abs(cochain_degree(A, (w, o))) <= K]

    def chv(key):
        return chain(A, *key)

    def cov(key):
        return cochain(A, *key)

    rep.results.append(_run("chain d^2", ch, lambda k: bool(chain_differential(A, chain_differential(A, chv(k))))))
    rep.results.append(_run("cochain d^2", co, lambda k: bool(cochain_differential(A, cochain_differential(A, cov(k))))))

    tk = [("C",) + k for k in co] + [("H",) + k for k in ch]

    def tate_sq(k):
        x = TateElement(F.field, {k: 1})
        return bool(tate_differential(F, tate_differential(F, x)))

    rep.results.append(_run("tate d^2", tk, tate_sq))

    rep.results.append(_run("B^2", ch, lambda k: bool(connes_B(A, connes_B(A, chv(k))))))
    rep.results.append(_run("B d + d B", ch, lambda k: bool(
        connes_B(A, chain_differential(A, chv(k))) + chain_differential(A, connes_B(A, chv(k))))))

    # cup product
    pairs = _tuples(co, 2, L - 1)
    pairs, s1 = _limit(pairs, samples, rng)

    def cup_leibniz(fg):
        f, g = cov(fg[0]), cov(fg[1])
        lhs = cochain_differential(A, cup(A, f, g))
        rhs = (cup(A, cochain_differential(A, f), g)
               + cup(A, f, cochain_differential(A, g)).scale(sign(cochain_degree(A, fg[0]))))
        return lhs != rhs

    r = _run("cup leibniz", pairs, cup_leibniz)
    r.sampled = s1
    rep.results.append(r)

    triples = _tuples(co, 3, L)
    triples, s2 = _limit(triples, samples, rng)

    def cup_assoc(t):
        f, g, h = (cov(x) for x in t)
        return cup(A, cup(A, f, g), h) != cup(A, f, cup(A, g, h))

    r = _run("cup associativity", triples, cup_assoc)
    r.sampled = s2
    rep.results.append(r)
    u = unit_cochain(A)
    rep.results.append(_run("cup unit", co, lambda k: cup(A, u, cov(k)) != cov(k) or cup(A, cov(k), u) != cov(k)))

    # the coproduct on chains: Leibniz away from empty words, displayed defect otherwise
    cpairs = _tuples(ch, 2, L)
    cpairs, s3 = _limit(cpairs, samples, rng)
    r = _run("star leibniz", cpairs, lambda ab: leibniz_defect(F, chv(ab[0]), chv(ab[1]))
             != predicted_defect(F, chv(ab[0]), chv(ab[1])))
    r.sampled = s3
    rep.results.append(r)

    # pairing compatibility, only pairs of complementary degree can contribute
    deg = {k: tate_degree(F, k) for k in tk}
    target = 2 * F.n - 2
    tpairs = [(x, y) for x, y in product(tk, tk) if deg[x] + deg[y] == target]
    tpairs, s4 = _limit(tpairs, samples, rng)
    dcache: dict = {}

    def dtate(k):
        if k not in dcache:
            dcache[k] = tate_differential(F, TateElement(F.field, {k: 1}))
        return dcache[k]

    def pairing_bad(xy):
        kx, ky = xy
        x = TateElement(F.field, {kx: 1})
        y = TateElement(F.field, {ky: 1})
        lhs = tate_pairing(F, dtate(kx), y)
        rhs = F.field.norm(sign(deg[kx]) * tate_pairing(F, x, dtate(ky)))
        return lhs != rhs

    r = _run("tate pairing", tpairs, pairing_bad)
    r.sampled = s4
    rep.results.append(r)
    return rep


def suite_models(field) -> list[FrobeniusAlgebra]:
    """The four models of the standard suite over one field."""
    from .frobenius import cp_model, product_model, sphere_model
    return [sphere_model(2, field), sphere_model(3, field), cp_model(2, field),
            product_model(sphere_model(3, field), sphere_model(3, field))]


def run_all(fields: Sequence, L: int = 4, K: int = 12, samples: int | None = None,
            seed: int = DEFAULT_SEED) -> list[SuiteReport]:
    return [run_suite(F, L, K, samples, seed) for fl in fields for F in suite_models(fl)]


def run_conf_suite(F: FrobeniusAlgebra) -> SuiteReport:
    """dg algebra axioms for U_A and F_A, the map F_A -> U_A, the Thom class and phi."""
    from .conf import ConfModels, fa_to_ua, pair_label

    M = ConfModels(F)
    A = F.algebra
    rep = SuiteReport(F.name, repr(F.field), 0, 0, 0)
    rep.results.append(CheckResult("U_A dga", 1, validate_dga(M.UA)))
    rep.results.append(CheckResult("F_A dga", 1, validate_dga(M.FA)))
    FA, UA = M.FA, M.UA

    def dg_map_bad(a):
        x = FA.elt(a)
        if fa_to_ua(F, FA.dif(x)) != UA.dif(fa_to_ua(F, x)):
            return True
        return any(fa_to_ua(F, FA.mul(x, FA.elt(b))) != UA.mul(fa_to_ua(F, x), fa_to_ua(F, FA.elt(b)))
                   for b in FA.labels)

    rep.results.append(_run("F_A -> U_A dg map", FA.labels, dg_map_bad))
    rep.results.append(_run("d tau = 0", [M.thom_class()], lambda t: bool(M.cone_U.d(t))))
    cone_basis = M.cone_U.basis()
    rep.results.append(_run("phi chain map", range(len(cone_basis)), lambda i: (
        M.phi(M.cone_U.d(cone_basis[i])) != M.cone_F.d(M.phi(cone_basis[i])))))
    rs = [pair_label(a, b) for a in A.labels for b in A.labels]
    rep.results.append(_run("phi module map", [(i, r) for i in range(len(cone_basis)) for r in rs],
                            lambda ir: M.phi(M.act_U(ir[1], cone_basis[ir[0]]))
                            != M.act_F(ir[1], M.phi(cone_basis[ir[0]]))))

    def htpy_bad(i):
        z = cone_basis[i]
        C = M.cone_U
        return z - M.mhat(M.phi(z)) != C.d(M.homotopy_h(z)) + M.homotopy_h(C.d(z))

    rep.results.append(_run("id - mhat phi = dh + hd", range(len(cone_basis)), htpy_bad))
    return rep


def run_pipeline_oracle(F: FrobeniusAlgebra, L: int = 2) -> CheckResult:
    """Compare the configuration-space pipeline with star on relative basis chains.

    In characteristic 2 the two must agree exactly, otherwise word by word up
    to sign.  Failures record the pair of basis words.
    """
    from .conf import ConfModels, compare_up_to_sign, geometric_coproduct_pipeline
    from .products import gh_star

    A = F.algebra
    M = ConfModels(F)
    rel = [(w, m) for w in words_upto(A, L) if w for m in A.labels]
    exact = F.field.char == 2

    def bad(ab):
        a, b = chain(A, *ab[0]), chain(A, *ab[1])
        P = geometric_coproduct_pipeline(F, a, b, M)
        G = gh_star(F, b, a)
        return P != G if exact else compare_up_to_sign(P, G) is None

    return _run("pipeline = star" + ("" if exact else " up to sign"), list(product(rel, rel)), bad)
