from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieinv import linalg
from lieinv.core import (
    LieAlgebra,
    abelian,
    bracket,
    centre,
    change_basis,
    derived_series,
    direct_sum,
    is_abelian,
    is_nilpotent,
    is_solvable,
    jacobi_check,
    lower_central_series,
    matrix_lie_algebra,
)
from lieinv.reps import sl2_standard, so3_standard
from strategies import bracket_tables, invertible_matrices, small_catalog_algebras, small_fractions


def vectors(n):
    return st.lists(small_fractions, min_size=n, max_size=n)


@given(bracket_tables(), st.data())
def test_bracket_is_bilinear_and_antisymmetric(alg, data):
    n = alg.dim
    u, v, w = (data.draw(vectors(n)) for _ in range(3))
    a = data.draw(small_fractions)
    assert bracket(alg, u, v) == [-x for x in bracket(alg, v, u)]
    lhs = bracket(alg, [x + a * y for x, y in zip(u, w)], v)
    rhs = [x + a * y for x, y in zip(bracket(alg, u, v), bracket(alg, w, v))]
    assert lhs == rhs


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(so3_standard(), [1, 0], [0, 1, 0])


def test_from_brackets_rules():
    g = LieAlgebra.from_brackets(3, {(2, 1): [(3, 1)]})
    assert g.bracket_terms(0, 1) == ((2, Fraction(-1)),)
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(3, [((1, 2), [(3, 1)]), ((2, 1), [(3, 1)])])
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(3, {(1, 1): [(3, 1)]})


def test_jacobi_detects_violation():
    # [X1,[X2,X3]] + [X2,[X3,X1]] + [X3,[X1,X2]] = 2 X3
    bad = LieAlgebra.from_brackets(3, {(1, 2): [(3, 1)], (1, 3): [(1, 1)], (2, 3): [(2, 1)]})
    assert jacobi_check(bad) == [((1, 2, 3), [0, 0, 2])]
    assert jacobi_check(so3_standard()) == []


@given(small_catalog_algebras(), small_catalog_algebras())
def test_direct_sum_structure(a, b):
    s = direct_sum(a, b)
    assert s.dim == a.dim + b.dim
    assert len(set(s.basis)) == s.dim
    assert jacobi_check(s) == []
    for i in range(a.dim):
        for j in range(b.dim):
            assert s.bracket_terms(i, a.dim + j) == ()
    assert centre(s).dimension == centre(a).dimension + centre(b).dimension


@given(small_catalog_algebras(), st.data())
def test_change_basis_round_trip(alg, data):
    P = data.draw(invertible_matrices(alg.dim))
    h = change_basis(alg, P)
    assert jacobi_check(h) == []
    assert change_basis(h, linalg.inverse(P)).brackets == alg.brackets
    assert len(derived_series(h)) == len(derived_series(alg))
    assert [s.dimension for s in lower_central_series(h)] == [s.dimension for s in lower_central_series(alg)]


def test_change_basis_rejects_singular():
    with pytest.raises(ValueError):
        change_basis(so3_standard(), [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


@given(st.integers(1, 6))
def test_abelian_series(n):
    g = abelian(n)
    assert is_abelian(g) and is_nilpotent(g) and is_solvable(g)
    assert [s.dimension for s in derived_series(g)] == [n, 0]
    assert centre(g).dimension == n


def test_semisimple_is_perfect_with_trivial_centre():
    for g in (so3_standard(), sl2_standard()):
        assert [s.dimension for s in derived_series(g)] == [3]
        assert centre(g).dimension == 0
        assert not is_solvable(g)


def test_heisenberg_series():
    h = LieAlgebra.from_brackets(3, {(1, 2): [(3, 1)]})
    assert [s.dimension for s in lower_central_series(h)] == [3, 1, 0]
    assert centre(h).dimension == 1


def test_matrix_lie_algebra_closure():
    e = [[0, 1], [0, 0]]
    f = [[0, 0], [1, 0]]
    with pytest.raises(ValueError):
        matrix_lie_algebra([linalg.to_matrix(e), linalg.to_matrix(f)])
