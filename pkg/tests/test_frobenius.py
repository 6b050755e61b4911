import json

import pytest

from stringtop.fields import GF, QQ
from stringtop.frobenius import (BUILTIN, FrobeniusAlgebra, builtin_model, cp_model, dg_sphere3_model,
                                 from_spec_file, product_model, shipped_model_path, sphere_model,
                                 validate, validate_frobenius)
from stringtop.vectors import Vec


def _diag(F):
    return {(e, f): c for e, f, c in F.diagonal_terms()}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_spheres_valid(n):
    assert validate(sphere_model(n)) == []


def test_diagonals():
    assert _diag(sphere_model(2)) == {("1", "v"): 1, ("v", "1"): 1}
    assert _diag(sphere_model(3)) == {("1", "v"): 1, ("v", "1"): -1}
    assert _diag(cp_model(2)) == {("1", "x2"): 1, ("x", "x"): 1, ("x2", "1"): 1}


def test_euler_classes():
    assert sphere_model(2).euler_class() == Vec(QQ, {"v": 2})
    assert not sphere_model(3).euler_class()
    assert cp_model(2).euler_class() == Vec(QQ, {"x2": 3})
    P = product_model(sphere_model(3), sphere_model(3))
    assert P.n == 6
    assert P.euler_characteristic() == 0
    assert product_model(sphere_model(2), sphere_model(2)).euler_characteristic() == 4
    assert cp_model(3).euler_characteristic() == 4


def test_euler_mod_p():
    assert sphere_model(2, GF(2)).euler_characteristic() == 0
    assert cp_model(2, GF(7)).euler_characteristic() == 3


@pytest.mark.parametrize("F", [cp_model(2), product_model(sphere_model(3), sphere_model(2)),
                               dg_sphere3_model()], ids=lambda F: F.name)
def test_coproduct_is_bimodule_map(F):
    A = F.algebra
    n = F.n
    for a in A.labels:
        for b in A.labels:
            x, y = A.elt(a), A.elt(b)
            assert F.coproduct(A.mul(x, y)) == _right(F, F.coproduct(x), y)
    # left action picks up the sign (-1)^(n|a|)
    D = F.diagonal()
    for a in A.labels:
        lhs = _left(F, A.elt(a), D)
        rhs = _right(F, D, A.elt(a)).scale((-1) ** (n * A.deg(a)))
        assert lhs == rhs


def _right(F, T, y):
    A = F.algebra
    out = Vec(F.field)
    for (e, f), c in T.items():
        for t, c2 in A.mul(A.elt(f), y).items():
            out.add_term((e, t), c * c2)
    return out


def _left(F, x, T):
    A = F.algebra
    out = Vec(F.field)
    for (e, f), c in T.items():
        for t, c2 in A.mul(x, A.elt(e)).items():
            out.add_term((t, f), c * c2)
    return out


def test_diagonal_is_closed(S4dg):
    F = S4dg
    A = F.algebra
    assert validate(F) == []
    out = Vec(F.field)
    for (e, f), c in F.diagonal().items():
        for t, c2 in A.dif(A.elt(e)).items():
            out.add_term((t, f), c * c2)
        for t, c2 in A.dif(A.elt(f)).items():
            out.add_term((e, t), (-1) ** A.deg(e) * c * c2)
    assert not out
    assert F.euler_characteristic() == 2


def test_zero_row_pairing_rejected():
    A = cp_model(2).algebra
    F = FrobeniusAlgebra(A, {("1", "x2"): 1, ("x2", "1"): 1}, 4)
    found = validate_frobenius(F)
    assert any(v.axiom.startswith("(2)") for v in found)


def test_wrong_degree_pairing_rejected():
    A = sphere_model(3).algebra
    F = FrobeniusAlgebra(A, {("1", "v"): 1, ("v", "1"): -1}, 3)
    assert any(v.axiom == "symmetry" for v in validate_frobenius(F))
    G = FrobeniusAlgebra(A, {("1", "v"): 1, ("v", "1"): 1, ("1", "1"): 1}, 3)
    assert any(v.axiom.startswith("(1)") for v in validate_frobenius(G))


@pytest.mark.parametrize("name", BUILTIN)
def test_shipped_files_match_builders(name):
    F = from_spec_file(shipped_model_path(name))
    assert F.to_dict() == builtin_model(name).to_dict()
    assert validate(F) == []


def test_shipped_cp2_round_trip():
    F = from_spec_file(shipped_model_path("cp2"))
    assert F.to_dict() == cp_model(2).to_dict()
    assert F.n == 4


def test_spec_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError, match="malformed"):
        from_spec_file(bad)
    nopair = tmp_path / "nopair.json"
    data = sphere_model(2).to_dict()
    del data["pairing"]
    nopair.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ValueError):
        from_spec_file(nopair)


def test_change_field_and_json():
    F = cp_model(2).change_field(GF(7))
    assert F.field == GF(7)
    assert FrobeniusAlgebra.from_dict(F.to_dict()).to_dict() == F.to_dict()
    with pytest.raises(ValueError):
        builtin_model("rp2")
