import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extra_models import nc_dg, s4dg
from stringtop.fields import GF, QQ
from stringtop.frobenius import cp_model, dg_sphere3_model, product_model, sphere_model
from stringtop.hochschild import (CochainTensor, HochschildElement, TruncationOverflow, TruncationWindow,
                                  chain, chain_basis, chain_degree, chain_differential, cochain,
                                  cochain_basis, cochain_degree, cochain_differential, connes_B,
                                  dualize, duality_pair, reduced, relative, unit_cochain, words,
                                  words_upto)
from stringtop.vectors import Vec

CP2 = cp_model(2)
NC = nc_dg()


def _elements(A, L, cls, keyfun):
    keys = [keyfun(w, m) for w in words_upto(A, L) for m in A.labels]
    return st.dictionaries(st.sampled_from(keys), st.integers(-3, 3), max_size=6).map(
        lambda d: cls(A.field, d))


def chains(A, L):
    return _elements(A, L, HochschildElement, lambda w, m: (w, m))


def cochains(A, L):
    return _elements(A, L, CochainTensor, lambda w, o: (w, o))


def test_length_zero_chain_is_internal_differential():
    A = dg_sphere3_model().algebra
    assert chain_differential(A, chain(A, (), "x")) == chain(A, (), "y")


def test_s3_bar_v_v_is_cycle():
    A = sphere_model(3).algebra
    assert not chain_differential(A, chain(A, ("v",), "v"))


def test_chain_degree():
    A = sphere_model(3).algebra
    assert chain_degree(A, (("v", "v"), "v")) == 7
    assert cochain_degree(A, (("v", "v"), "1")) == -4


@settings(max_examples=80, deadline=None)
@given(chains(CP2.algebra, 4))
def test_boundary_squares_to_zero_cp2(x):
    A = CP2.algebra
    assert not chain_differential(A, chain_differential(A, x))


@settings(max_examples=80, deadline=None)
@given(chains(NC, 3))
def test_boundary_squares_to_zero_noncommutative(x):
    assert not chain_differential(NC, chain_differential(NC, x))


@settings(max_examples=80, deadline=None)
@given(cochains(CP2.algebra, 3))
def test_coboundary_squares_to_zero_cp2(f):
    A = CP2.algebra
    assert not cochain_differential(A, cochain_differential(A, f))


@settings(max_examples=80, deadline=None)
@given(cochains(NC, 3))
def test_coboundary_squares_to_zero_noncommutative(f):
    assert not cochain_differential(NC, cochain_differential(NC, f))


def test_arity_zero_coboundary():
    A = sphere_model(3).algebra
    assert not cochain_differential(A, cochain(A, (), "v"))
    # noncommutative: delta(x) evaluated on y is a commutator
    d = cochain_differential(NC, cochain(NC, (), "x|1"))
    assert d[(("y|1",), "xy|1")] in (1, -1)


@pytest.mark.parametrize("F", [sphere_model(2), cp_model(2), dg_sphere3_model()], ids=lambda F: F.name)
def test_unit_cochain_is_cocycle(F):
    assert not cochain_differential(F.algebra, unit_cochain(F.algebra))


def test_truncation_overflow():
    A = sphere_model(2).algebra
    f = cochain(A, ("v",), "1")
    with pytest.raises(TruncationOverflow):
        cochain_differential(A, f, L=1)
    assert cochain_differential(A, f, L=1, overflow="drop") == CochainTensor(A.field)
    with pytest.raises(ValueError):
        TruncationWindow(2, 3, 1)


def test_pairing_examples():
    F = sphere_model(3)
    A = F.algebra
    assert duality_pair(F, unit_cochain(A), chain(A, (), "v")) == 1
    assert duality_pair(F, unit_cochain(A), chain(A, ("v",), "v")) == 0
    # degree -2 cochain: no sign
    assert duality_pair(F, cochain(A, ("v",), "1"), chain(A, ("v",), "v")) == 1
    S2 = sphere_model(2)
    B = S2.algebra
    # degree 1 cochain: the pairing picks up (-1)^|f|
    assert duality_pair(S2, cochain(B, ("v",), "v"), chain(B, ("v",), "1")) == -1


@pytest.mark.parametrize("F", [sphere_model(2), sphere_model(3), cp_model(2), dg_sphere3_model(),
                               s4dg(), cp_model(2, GF(7))], ids=lambda F: f"{F.name}-{F.field}")
def test_adjointness_on_full_basis(F):
    A = F.algebra
    n = F.n
    L = 3
    for k in range(-6, 7):
        for x in chain_basis(A, k, L):
            dx = chain_differential(A, chain(A, *x))
            for f in cochain_basis(A, n - k - 1, L):
                fv = cochain(A, *f)
                lhs = duality_pair(F, cochain_differential(A, fv), chain(A, *x))
                rhs = F.field.norm((-1) ** cochain_degree(A, f) * duality_pair(F, fv, dx))
                assert lhs == rhs, (f, x)


@pytest.mark.parametrize("F", [sphere_model(3), sphere_model(2), cp_model(2),
                               product_model(sphere_model(3), sphere_model(3))], ids=lambda F: F.name)
def test_block_dimensions_match_dual(F):
    A = F.algebra
    for m in range(0, 4):
        for k in range(-12, 13):
            assert len(chain_basis(A, k, 4, m)) == len(cochain_basis(A, F.n - k, 4, m))


def test_dualize_is_coordinate_dual():
    F = cp_model(2)
    A = F.algebra
    keys = chain_basis(A, 4, 2)
    for x in keys:
        g = dualize(F, chain(A, *x))
        for y in keys:
            assert duality_pair(F, g, chain(A, *y)) == (1 if x == y else 0)


def test_connes_B_length_zero():
    A = sphere_model(3).algebra
    assert connes_B(A, chain(A, (), "v")) == chain(A, ("v",), "1")
    assert not connes_B(A, chain(A, (), "1"))


@pytest.mark.parametrize("A", [CP2.algebra, NC, s4dg().algebra, dg_sphere3_model().algebra],
                         ids=["CP2", "nc", "S4dg", "S3dg"])
def test_connes_B_identities(A):
    for w in words_upto(A, 3):
        for m in A.labels:
            x = chain(A, w, m)
            assert not connes_B(A, connes_B(A, x))
            assert not (connes_B(A, chain_differential(A, x)) + chain_differential(A, connes_B(A, x)))


def test_connes_B_preserves_reduced():
    A = CP2.algebra
    for w in words_upto(A, 3):
        for m in A.labels:
            y = connes_B(A, chain(A, w, m))
            assert reduced(A, y) == y


def test_reduced_and_relative():
    A = sphere_model(3).algebra
    assert not reduced(A, chain(A, (), "1"))
    assert reduced(A, chain(A, (), "v")) == chain(A, (), "v")
    assert not relative(A, chain(A, (), "v"))
    assert relative(A, chain(A, ("v",), "1")) == chain(A, ("v",), "1")
    with pytest.raises(ValueError):
        relative(NC, chain(NC, (), "1|1"))


@settings(max_examples=60, deadline=None)
@given(chains(CP2.algebra, 3))
def test_boundary_preserves_relative(x):
    A = CP2.algebra
    r = relative(A, x)
    assert relative(A, chain_differential(A, r)) == chain_differential(A, r)


@settings(max_examples=50, deadline=None)
@given(chains(CP2.algebra, 3), cochains(CP2.algebra, 3))
def test_json_round_trip(x, f):
    assert HochschildElement.from_json(QQ, x.to_json()) == x
    assert CochainTensor.from_json(QQ, f.to_json()) == f


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        HochschildElement.from_json(QQ, [{"word": []}])


def test_word_counts():
    A = cp_model(2).algebra
    assert len(words(A, 2)) == 4
    assert words(A, 2, shifted_degree=2) == [("x", "x")]
    assert len(words_upto(A, 3)) == 1 + 2 + 4 + 8


def test_cochain_evaluate():
    A = sphere_model(2).algebra
    f = cochain(A, ("v",), "v", 3)
    assert f.evaluate(A, ("v",)) == Vec(QQ, {"v": 3})
    assert not f.evaluate(A, ())
