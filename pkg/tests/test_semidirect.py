import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieinv import linalg
from lieinv.catalog import catalog_entries
from lieinv.core import LieAlgebra, abelian, derived_series, jacobi_check
from lieinv.reproduce import codim_one_instance, equivariant_derivation
from lieinv.reps import rep_direct_sum_all, sl2_irrep, sl2_standard, so3_odd_irrep, trivial_rep
from lieinv.semidirect import (
    LeviPair,
    ModuleError,
    codim_one_extension,
    extend_with_affine,
    levi_pair_from_algebra,
    semidirect_sum,
    validate_levi,
)

PAIRED = [e for e in catalog_entries() if e.levi_dim is not None or e.pair_builder is not None]


@pytest.mark.parametrize("entry", PAIRED, ids=lambda e: e.name)
def test_catalog_pairs_reassemble(entry):
    pair = entry.levi_pair()
    g = semidirect_sum(pair)
    assert jacobi_check(g) == []
    assert g.brackets == entry.build().brackets
    assert validate_levi(pair).module_ok


def test_mixed_brackets_follow_the_matrices():
    R = sl2_irrep(1)
    g = semidirect_sum(LeviPair(sl2_standard(), R, abelian(2)))
    # [X2, Y2] = rho(X2) e_1 = 1 * e_0
    assert g.bracket_terms(1, 4) == ((3, 1),)
    assert g.dim == 5


def test_module_check_failure_is_rejected():
    heis = LieAlgebra.from_brackets(3, {(1, 2): [(3, 1)]})
    pair = LeviPair(sl2_standard(), sl2_irrep(2), heis)
    with pytest.raises(ModuleError):
        semidirect_sum(pair)
    report = validate_levi(pair)
    assert not report.clean
    assert "irreducible representation but non-abelian radical" in report.flags


def test_no_trivial_summand_on_non_nilpotent_radical_is_flagged():
    r2 = LieAlgebra.from_brackets(2, {(1, 2): [(2, 1)]})
    report = validate_levi(LeviPair(sl2_standard(), sl2_irrep(1), r2))
    assert "no trivial summand but non-nilpotent radical" in report.flags


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_extend_with_affine(k):
    pair = next(e for e in catalog_entries() if e.name == "T1_1").levi_pair()
    ext = extend_with_affine(pair, k)
    g = semidirect_sum(ext)
    assert g.dim == semidirect_sum(pair).dim + 2 * k
    assert jacobi_check(g) == []
    assert ext.R.module_dim == pair.R.module_dim + 2 * k


def test_levi_pair_from_algebra_rejects_leaky_split():
    g = LieAlgebra.from_brackets(4, {(1, 2): [(3, 1)], (1, 3): [(2, -1)], (2, 3): [(1, 1)], (1, 4): [(2, 1)]})
    with pytest.raises(ValueError):
        levi_pair_from_algebra(g, 3)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["with_trivial", "large"]))
def test_codim_one_instances(seed, shape):
    pair = codim_one_instance(random.Random(seed), shape)
    g = semidirect_sum(pair)
    assert jacobi_check(g) == []
    m = pair.r.dim
    derived = derived_series(pair.r)
    assert derived[1].dimension == m - 1  # [r, r] = V has codimension one
    assert all(not pair.r.bracket_terms(a, b) for a in range(m - 1) for b in range(m - 1))  # V abelian
    if shape == "large":
        assert m >= 7


def test_non_equivariant_derivation_fails_module_check():
    R = rep_direct_sum_all([sl2_irrep(1), trivial_rep(sl2_standard(), 1)], sl2_standard())
    D = [[1, 0, 1], [0, 1, 0], [0, 0, 1]]  # mixes D(1/2) into D0
    with pytest.raises(ModuleError):
        semidirect_sum(codim_one_extension(R, D))


def test_equivariant_derivation_commutes_with_action():
    rng = random.Random(3)
    parts = [so3_odd_irrep(1), so3_odd_irrep(1), trivial_rep(so3_odd_irrep(1).algebra, 1)]
    D = equivariant_derivation(parts, rng)
    R = rep_direct_sum_all(parts, parts[0].algebra)
    assert linalg.det(D) != 0
    for m in R.matrices:
        assert linalg.matmul(m, D) == linalg.matmul(D, [list(r) for r in m])


def test_irreducible_action_on_non_abelian_radical_is_flagged():
    # D(3/2) is 4-dimensional, so the 3-dimensional A_{3,3} is widened to [Y_a, Y_4] = Y_a
    r = LieAlgebra.from_brackets(4, {(1, 4): [(1, 1)], (2, 4): [(2, 1)], (3, 4): [(3, 1)]})
    report = validate_levi(LeviPair(sl2_standard(), sl2_irrep(3), r))
    assert "irreducible representation but non-abelian radical" in report.flags


def test_heisenberg_centre_in_a_nontrivial_slot_fails_the_derivation_check():
    # h1 + L1 on D(1/2)+D(1/2), with [Y1, Y2] landing in the second doublet
    r = LieAlgebra.from_brackets(4, {(1, 2): [(3, 1)]})
    R = rep_direct_sum_all([sl2_irrep(1), sl2_irrep(1)], sl2_standard())
    report = validate_levi(LeviPair(sl2_standard(), R, r))
    assert report.flags == ["representation does not act by derivations of the radical"]


def test_heisenberg_with_trivial_centre_is_clean():
    from lieinv.catalog import catalog_lookup

    report = validate_levi(catalog_lookup("sl2_h1").levi_pair())
    assert report.clean and report.module_ok
