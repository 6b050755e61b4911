"""Acceptance suite: one test per headline criterion, each printing a PASS/FAIL line."""

import json
import time
from contextlib import contextmanager

import pytest

from stringtop.checks import run_all, run_conf_suite, run_pipeline_oracle
from stringtop.cli import run
from stringtop.fields import GF, QQ
from stringtop.frobenius import cp_model, product_model, sphere_model
from stringtop.hochschild import (chain, chain_basis, chain_differential, cochain, cochain_basis,
                                  cochain_degree, cochain_differential, duality_pair)
from stringtop.homology import tate_commutativity
from stringtop.lens import LensH1Class, LensSpace, homotopy_equiv_degrees, rho_coproduct
from stringtop.products import gamma
from stringtop.vectors import Vec


@pytest.fixture
def verdict(capsys, request):
    @contextmanager
    def block(limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            if ok and limit is not None and dt >= limit:
                ok = False
            with capsys.disabled():
                print(f"\n{'PASS' if ok else 'FAIL'} {request.node.name} ({dt:.2f}s)")
        if limit is not None:
            assert dt < limit, f"took {dt:.1f}s, limit {limit}s"
    return block


def test_lens_exact_values(verdict, capsys):
    with verdict(1.0):
        assert not rho_coproduct(LensSpace(7, 1), 1, 0)
        L = LensSpace(7, 2)
        assert rho_coproduct(L, 2, 0) == LensH1Class(7, {(1, 1): 5, (4, 5): 4, (5, 4): 4})
        assert rho_coproduct(L, 2, 1) == LensH1Class(
            7, {(1, 1): 2, (4, 5): 1, (5, 4): 1, (3, 6): 4, (6, 3): 4})
        assert run(["lens", "coproduct", "--p", "7", "--q", "2", "--l", "2", "--m", "1"]) == 0
        js = json.loads(capsys.readouterr().out)
        assert js["beta"] == [{"k": 1, "kp": 1, "coeff": 2}, {"k": 3, "kp": 6, "coeff": 4},
                              {"k": 4, "kp": 5, "coeff": 1}, {"k": 5, "kp": 4, "coeff": 1},
                              {"k": 6, "kp": 3, "coeff": 4}]


def test_non_invariance(verdict, capsys):
    with verdict(1.0):
        assert run(["lens", "invariance", "--p", "7", "--q1", "1", "--q2", "2"]) == 0
        js = json.loads(capsys.readouterr().out)
        assert js["degrees"] == [2, 5]
        assert js["preserved"] is False and js["witnesses"] == []


def test_lens_scan_61(verdict, capsys, monkeypatch):
    monkeypatch.setenv("ST_THREADS", "1")
    with verdict(300.0):
        rc = run(["lens", "scan", "--pmax", "61"])
        js = json.loads(capsys.readouterr().out)
        vacuous = [t for t in js["counterexamples"] if not homotopy_equiv_degrees(*t)]
        print(f"pairs={js['pairs']} witnesses={js['witnesses']} "
              f"counterexamples={len(js['counterexamples'])} (no degree-one equivalence: {len(vacuous)}) "
              f"witness_not_homeomorphic={len(js['witness_not_homeomorphic'])} "
              f"oriented_counterexamples={len(js['oriented_counterexamples'])}")
        assert js["witness_not_homeomorphic"] == []
        assert js["counterexamples"] == []
        assert rc == 0


def test_axiom_suites(verdict):
    with verdict(60.0):
        reports = run_all([QQ, GF(2), GF(7)], L=4, K=12)
        assert len(reports) == 12
        bad = [(r.model, r.field, x.name) for r in reports for x in r.results if not x.ok]
        assert bad == []
        assert not any(x.sampled for r in reports for x in r.results)


def test_euler_gamma(verdict):
    with verdict():
        S3 = sphere_model(3)
        cases = [(sphere_model(2), 2), (S3, 0), (cp_model(2), 3), (product_model(S3, S3), 0)]
        for F, chi in cases:
            assert F.euler_characteristic() == chi
            expect = Vec(QQ, {F.top_label(): chi}) if chi else Vec(QQ)
            assert gamma(F, F.elt(F.algebra.unit)) == expect, F.name


def test_pipeline_oracle(verdict):
    with verdict(30.0):
        for F in (sphere_model(3), cp_model(2)):
            for fld in (GF(2), QQ):
                rep = run_pipeline_oracle(F.change_field(fld), L=2)
                assert rep.checked > 0 and rep.ok, (F.name, fld, rep.failures[:3])


def test_configuration_models(verdict):
    with verdict():
        S3 = sphere_model(3)
        for F in (sphere_model(2), S3, cp_model(2), product_model(S3, S3)):
            rep = run_conf_suite(F)
            assert rep.ok, [x.to_json() for x in rep.results if not x.ok]


def test_duality(verdict):
    with verdict():
        S3 = sphere_model(3)
        models = [sphere_model(2), S3, cp_model(2), product_model(S3, S3)]
        for F in models:
            A = F.algebra
            for m in range(0, 5):
                for k in range(-12, 13):
                    assert len(chain_basis(A, k, 4, m)) == len(cochain_basis(A, F.n - k, 4, m)), (F.name, k, m)
        for F in models[:3]:
            A = F.algebra
            for k in range(-12, 13):
                for x in chain_basis(A, k, 3):
                    dx = chain_differential(A, chain(A, *x))
                    for f in cochain_basis(A, F.n - k - 1, 3):
                        fv = cochain(A, *f)
                        lhs = duality_pair(F, cochain_differential(A, fv), chain(A, *x))
                        rhs = F.field.norm((-1) ** cochain_degree(A, f) * duality_pair(F, fv, dx))
                        assert lhs == rhs, (F.name, f, x)


def test_tate_commutativity(verdict):
    with verdict():
        for F in (sphere_model(2), sphere_model(3)):
            rep = tate_commutativity(F, L=9, degrees=range(-4, 9))
            assert rep.checked > 0
            assert rep.failures == [], (F.name, rep.failures[:3])
