import pytest

from stringtop.algebra import (AInfinityStructure, DgAlgebra, GradedMap, GradedSpace, exterior_model,
                               koszul_sign, stasheff_term, tensor_dga, validate_a_infinity, validate_dga)
from stringtop.fields import GF, QQ
from stringtop.hochschild import cochain, cochain_degree, cochain_differential, words_upto
from stringtop.products import cup
from stringtop.vectors import Vec


def test_koszul_sign_examples():
    assert koszul_sign([0, 1, 2], [1, 2, 3]) == 1
    assert koszul_sign([1, 0], [1, 1]) == -1
    assert koszul_sign([1, 0], [2, 3]) == 1
    # cyclic shift of three odd elements is even
    assert koszul_sign([1, 2, 0], [1, 1, 1]) == 1
    assert koszul_sign([2, 1, 0], [1, 1, 1]) == -1


def test_graded_space_and_map():
    V = GradedSpace(QQ, [("a", 0), ("b", 1), ("c", 1)])
    assert V.betti() == {0: 1, 1: 2}
    f = GradedMap(V, V, 1, {"a": {"b": 1, "c": 2}})
    assert f.homogeneity_errors() == []
    assert f(Vec(QQ, {"a": 3})) == Vec(QQ, {"b": 3, "c": 6})
    bad = GradedMap(V, V, 1, {"b": {"c": 1}})
    assert bad.homogeneity_errors()
    assert f.compose(f).is_zero()


def test_sphere_valid():
    for n in (1, 2, 3, 7):
        assert validate_dga(exterior_model(QQ, n)) == []


def _s3dg(yx: int) -> DgAlgebra:
    basis = [("1", 0), ("x", 1), ("y", 2), ("xy", 3)]
    mul = {("1", l): {l: 1} for l, _ in basis}
    mul.update({(l, "1"): {l: 1} for l, _ in basis})
    mul[("x", "y")] = {"xy": 1}
    mul[("y", "x")] = {"xy": yx}
    return DgAlgebra(QQ, basis, "1", mul, {"x": {"y": 1}})


def test_corrupted_fixture_reports_violation():
    assert validate_dga(_s3dg(1)) == []
    found = validate_dga(_s3dg(-1))
    assert [v.witness for v in found if v.axiom == "Leibniz"] == [("x", "x")]


def test_nonhomogeneous_table_reported():
    A = DgAlgebra(QQ, [("1", 0), ("x", 1), ("y", 2)], "1",
                  {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
                   ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}, ("x", "x"): {"x": 1}}, {})
    assert any(v.axiom == "degree" for v in validate_dga(A))


def test_tensor_products():
    S2, S3 = exterior_model(QQ, 2), exterior_model(QQ, 3, top="w")
    T = tensor_dga(S2, S3)
    assert validate_dga(T) == []
    S2b = exterior_model(QQ, 2, top="u")
    assert tensor_dga(S2, S2b).space.betti() == {0: 1, 2: 2, 4: 1}
    U = exterior_model(QQ, 3, top="v")
    W = tensor_dga(U, S3)
    x, y = W.elt("v|1"), W.elt("1|w")
    assert W.mul(x, y) == -W.mul(y, x)


def test_unit_algebra_is_neutral():
    K = DgAlgebra(QQ, [("1", 0)], "1", {("1", "1"): {"1": 1}}, {})
    A = exterior_model(QQ, 4)
    T = tensor_dga(A, K)
    assert T.space.betti() == A.space.betti()
    assert T.mul(T.elt("v|1"), T.elt("1|1")) == T.elt("v|1")


def test_json_round_trip():
    T = tensor_dga(exterior_model(GF(5), 2), exterior_model(GF(5), 3, top="w"))
    again = DgAlgebra.from_dict(T.to_dict())
    assert again.to_dict() == T.to_dict()
    with pytest.raises(ValueError):
        DgAlgebra.from_dict({"field": "Q"})


def test_a_infinity_from_dga():
    A = exterior_model(QQ, 3)
    assert validate_a_infinity(AInfinityStructure.from_dga(A, 4), 4) is None


def test_a_infinity_detects_bad_m1():
    V = [("a", 0), ("b", 1), ("c", 2)]
    S = AInfinityStructure(QQ, [l for l, _ in V], dict(V).__getitem__,
                           {1: lambda t: Vec(QQ, {"b": 1}) if t[0] == "a" else
                            (Vec(QQ, {"c": 1}) if t[0] == "b" else Vec(QQ))}, {2, 3})
    assert validate_a_infinity(S, 3) == (1, ("a",))
    with pytest.raises(KeyError):
        validate_a_infinity(AInfinityStructure(QQ, ["a"], lambda k: 0, {}), 1)


def test_hochschild_cochains_are_a_infinity():
    A = exterior_model(QQ, 3)
    keys = [(w, o) for w in words_upto(A, 3) for o in A.labels]
    S = AInfinityStructure(
        QQ, keys, lambda k: cochain_degree(A, k),
        {1: lambda t: cochain_differential(A, cochain(A, *t[0])),
         2: lambda t: cup(A, cochain(A, *t[0]), cochain(A, *t[1]))},
        {3})
    assert validate_a_infinity(S, 3) is None
    assert not stasheff_term(S, (keys[1], keys[2]))
