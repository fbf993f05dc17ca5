"""Exact arithmetic layer: construction, pairings, inertia, serialization."""

import json
import random
from fractions import Fraction

import pytest
import sympy

from percop.core import (SymMat, basis_e, coord_index, dim_sym, identity,
                         inertia, inner, mat_dumps, mat_from_json, mat_loads,
                         mat_to_json, quad_form, rank_one, span_rank,
                         span_rank_of_vectors)
from percop.families import fixtures, q_an, p_k


def test_from_rows_requires_symmetry():
    with pytest.raises(ValueError):
        SymMat.from_rows([[1, 2], [3, 1]])


def test_from_rows_requires_square():
    with pytest.raises(ValueError):
        SymMat.from_rows([[1, 2, 3], [2, 1, 0]])


def test_coord_index_covers_upper_triangle():
    n = 5
    seen = sorted(coord_index(n, i, j) for i in range(n) for j in range(i, n))
    assert seen == list(range(dim_sym(n)))


def test_entry_round_trip():
    m = SymMat.from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert m.entry(0, 1) == -1
    assert m.entry(1, 0) == -1
    assert m.entry(2, 2) == 2
    assert m.rows() == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_quad_form_examples():
    assert quad_form(q_an(2), (1, 1)) == 2
    assert quad_form(q_an(2), (0, 0)) == 0
    n = SymMat.from_rows([[4, -2, 0], [-2, 2, -1], [0, -1, 2]])
    assert quad_form(n, (1, 2, 1)) == 2


def test_quad_form_dimension_mismatch():
    with pytest.raises(ValueError):
        quad_form(q_an(2), (1, 0, 0))


def test_quad_form_accepts_rational_vectors():
    assert quad_form(q_an(2), (Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)


def test_inner_examples():
    e12 = basis_e(2, 0, 1)
    assert inner(e12, rank_one((1, 1))) == 2
    assert inner(q_an(2), identity(2)) == 4
    fx = fixtures()
    assert inner(fx.E, fx.Q_dnn) < 0
    assert inner(fx.E, fx.Q_dnn) == Fraction(-4, 3)


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        inner(q_an(2), q_an(3))


def test_quad_form_is_inner_with_rank_one():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = Fraction(rng.randint(-9, 9),
                                                   rng.randint(1, 5))
        q = SymMat.from_rows(rows)
        v = tuple(rng.randint(-4, 4) for _ in range(n))
        assert quad_form(q, v) == inner(q, rank_one(v))


def test_quad_form_linear_in_matrix():
    rng = random.Random(11)
    p = q_an(3)
    r = SymMat.from_rows([[0, -2, 0], [-2, 8, -2], [0, -2, 0]])
    for _ in range(20):
        lam = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        v = tuple(rng.randint(0, 5) for _ in range(3))
        combined = p + r.scale(lam)
        assert quad_form(combined, v) == \
            quad_form(p, v) + lam * quad_form(r, v)


def test_inertia_examples():
    assert inertia(q_an(3)) == inertia(q_an(3)).__class__(3, 0, 0)
    ine = inertia(p_k(1))
    assert (ine.n_pos, ine.n_zero, ine.n_neg) == (2, 1, 0)
    ine = inertia(fixtures().I)
    assert (ine.n_pos, ine.n_zero, ine.n_neg) == (2, 0, 1)


def test_inertia_zero_matrix():
    z = SymMat.from_rows([[0, 0], [0, 0]])
    ine = inertia(z)
    assert (ine.n_pos, ine.n_zero, ine.n_neg) == (0, 2, 0)


def test_inertia_zero_diagonal_pivot():
    # forces the off-diagonal handling: no nonzero diagonal pivot available
    m = SymMat.from_rows([[0, 1], [1, 0]])
    ine = inertia(m)
    assert (ine.n_pos, ine.n_zero, ine.n_neg) == (1, 0, 1)


def _random_unimodular(rng, n):
    m = sympy.eye(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        m[i, :] = m[i, :] + rng.randint(-2, 2) * m[j, :]
    return m


def test_inertia_sylvester_invariance():
    """Congruence by a unimodular matrix preserves the signature."""
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(2, 5)
        diag = [rng.choice([-1, 0, 1]) for _ in range(n)]
        a = _random_unimodular(rng, n)
        d = sympy.diag(*diag)
        m = a.T * d * a
        got = inertia(SymMat.from_rows(m.tolist()))
        assert got.n_pos == sum(1 for x in diag if x > 0)
        assert got.n_zero == sum(1 for x in diag if x == 0)
        assert got.n_neg == sum(1 for x in diag if x < 0)


def test_inertia_rank_helpers():
    ine = inertia(p_k(2))
    assert ine.rank == 2
    assert ine.is_positive_semidefinite()
    assert not ine.is_positive_definite()
    assert inertia(q_an(4)).is_positive_definite()


def test_span_rank_examples():
    n = 4
    diags = [rank_one(tuple(int(k == i) for k in range(n))) for i in range(n)]
    assert span_rank(diags) == n
    assert span_rank([]) == 0
    fx = fixtures()
    assert span_rank_of_vectors(((1, 0), (0, 1), (1, 1))) == 3
    assert span_rank_of_vectors(fx.minc_E) == 15


def test_span_rank_matches_sympy():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(2, 4)
        vecs = [tuple(rng.randint(0, 3) for _ in range(n))
                for _ in range(rng.randint(1, 8))]
        mats = [rank_one(v) for v in vecs]
        stacked = sympy.Matrix([[sympy.Rational(c) for c in m.coords]
                                for m in mats])
        assert span_rank(mats) == stacked.rank()


def test_span_rank_bounded_by_dim():
    rng = random.Random(37)
    vecs = [tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(40)]
    assert span_rank_of_vectors(vecs) <= dim_sym(3)


def test_json_round_trip():
    fx = fixtures()
    for m in (q_an(3), fx.E, fx.I, p_k(4).scale(Fraction(1, 2))):
        assert mat_from_json(mat_to_json(m)) == m
        assert mat_loads(mat_dumps(m)) == m


def test_json_reader_rejects_floats():
    with pytest.raises(ValueError):
        mat_from_json({"n": 1, "entries": [[1.5]]})


def test_json_reader_rejects_asymmetry():
    with pytest.raises(ValueError):
        mat_from_json({"n": 2, "entries": [["1", "2"], ["3", "1"]]})


def test_json_reader_rejects_bad_shape():
    with pytest.raises(ValueError):
        mat_from_json({"n": 2, "entries": [["1", "2"]]})
    with pytest.raises(ValueError):
        mat_loads("[1, 2, 3]")
    with pytest.raises(ValueError):
        mat_loads("not json at all")


def test_json_writer_emits_reduced_fractions():
    m = SymMat.from_rows([[Fraction(2, 4)]])
    text = mat_dumps(m)
    assert json.loads(text)["entries"] == [["1/2"]]


def test_scale_and_add():
    a = q_an(2)
    assert a.scale(Fraction(1, 2)) + a.scale(Fraction(1, 2)) == a
    assert (a - a) == SymMat.from_rows([[0, 0], [0, 0]])


def test_nonneg_entry_check():
    assert SymMat.from_rows([[1, 0], [0, 2]]).has_nonneg_entries()
    assert not q_an(2).has_nonneg_entries()
