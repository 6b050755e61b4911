from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringtop.fields import GF, QQ, Field
from stringtop.linalg import Echelon, invert_matrix, kernel, rank, solve
from stringtop.vectors import Vec

FIELDS = [QQ, GF(2), GF(7)]


def test_parse_and_format():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:7") == GF(7)
    assert QQ.parse_scalar("3/6") == Fraction(1, 2)
    assert QQ.fmt(Fraction(4, 2)) == 2
    assert QQ.fmt(Fraction(-1, 3)) == "-1/3"
    assert GF(7).fmt(GF(7).norm(-1)) == 6
    assert GF(7).parse_scalar("1/2") == 4


@pytest.mark.parametrize("bad", ["R", "Fp:6", "Fp:", "Fp:x"])
def test_bad_field(bad):
    with pytest.raises(ValueError):
        Field.parse(bad)


def test_bad_scalar():
    with pytest.raises(ValueError):
        QQ.parse_scalar(True)
    with pytest.raises(ValueError):
        QQ.parse_scalar(1.5)
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)


def test_vec_arithmetic():
    F = GF(5)
    v = Vec(F, {"a": 3, "b": 1})
    w = Vec(F, {"a": 2})
    assert v + w == Vec(F, {"b": 1})
    assert (v - v).terms == {}
    assert not (v - v)
    assert v.scale(5) == Vec(F)
    assert v["missing"] == 0


def _rows(field, data, ncols):
    return [Vec(field, {j: c for j, c in enumerate(row[:ncols])}) for row in data]


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6))


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from(FIELDS))
def test_rank_equals_transpose_rank(m, field):
    n = len(m[0])
    rows = _rows(field, m, n)
    cols = [Vec(field, {i: m[i][j] for i in range(len(m))}) for j in range(n)]
    assert rank(rows, field) == rank(cols, field)


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from(FIELDS))
def test_kernel_is_kernel(m, field):
    n = len(m[0])
    images = [(j, Vec(field, {i: m[i][j] for i in range(len(m))})) for j in range(n)]
    K = kernel(images, field)
    assert len(K) == n - rank([v for _, v in images], field)
    for z in K:
        total = Vec(field)
        for j, c in z.items():
            total.add_vec(images[j][1], c)
        assert not total
    assert rank(K, field) == len(K)


@settings(max_examples=40, deadline=None)
@given(matrices, st.sampled_from(FIELDS), st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_solve_reconstructs_reachable_targets(m, field, coeffs):
    n = len(m[0])
    cols = [(j, Vec(field, {i: m[i][j] for i in range(len(m))})) for j in range(n)]
    target = Vec(field)
    for (j, v), c in zip(cols, coeffs):
        target.add_vec(v, c)
    sol = solve(cols, target, field)
    assert sol is not None
    back = Vec(field)
    for j, c in sol.items():
        back.add_vec(cols[j][1], c)
    assert back == target


def test_solve_unreachable():
    cols = [(0, Vec(QQ, {0: 1}))]
    assert solve(cols, Vec(QQ, {1: 1}), QQ) is None


def test_echelon_reduce_tracks_combination():
    E = Echelon(QQ)
    assert E.insert(Vec(QQ, {"x": 1, "y": 1}), "u")
    assert E.insert(Vec(QQ, {"y": 2}), "w")
    assert not E.insert(Vec(QQ, {"x": 1, "y": 3}), "dup")
    res, combo = E.reduce(Vec(QQ, {"x": 2, "y": 4}))
    assert not res
    assert combo == {"u": 2, "w": 1}


@pytest.mark.parametrize("field", FIELDS)
def test_invert_matrix(field):
    M = [[field.norm(2), field.norm(1)], [field.norm(1), field.norm(1)]]
    inv = invert_matrix(M, field)
    prod = [[field.norm(sum(M[i][k] * inv[k][j] for k in range(2))) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_invert_singular():
    with pytest.raises(ZeroDivisionError):
        invert_matrix([[1, 2], [2, 4]], QQ)


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from([QQ, GF(2), GF(7)]))
def test_rank_agrees_with_sympy(m, field):
    sympy = pytest.importorskip("sympy")
    from sympy.polys.matrices import DomainMatrix
    dom = sympy.QQ if field.char == 0 else sympy.GF(field.char)
    M = DomainMatrix([[dom(c) for c in row] for row in m], (len(m), len(m[0])), dom)
    assert rank(_rows(field, m, len(m[0])), field) == M.rank()
