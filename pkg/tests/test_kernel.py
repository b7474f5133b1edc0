from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lieinv import kernel
from strategies import small_fractions


@st.composite
def sparse_systems(draw):
    ncols = draw(st.integers(1, 8))
    rows = []
    for _ in range(draw(st.integers(0, 8))):
        cols = draw(st.lists(st.integers(0, ncols - 1), unique=True, max_size=4))
        rows.append({c: draw(small_fractions.filter(bool)) for c in cols})
    return rows, ncols


def exact_check(rows):
    def verify(vecs):
        return all(sum((r.get(c, 0) * x for c, x in v.items()), Fraction(0)) == 0 for v in vecs for r in rows)

    return verify


def sympy_kernel(rows, ncols):
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M = sympy.Matrix([[sympy.Rational(str(r.get(c, 0))) for c in range(ncols)] for r in rows])
    return [[Fraction(str(x)) for x in v] for v in M.nullspace()]


def dense(v, n):
    return [v.get(c, Fraction(0)) for c in range(n)]


@given(sparse_systems())
def test_kernel_spans_the_sympy_kernel(system):
    rows, n = system
    ours = kernel.sparse_kernel(rows, n, exact_check(rows))
    theirs = sympy_kernel(rows, n)
    assert len(ours) == len(theirs)
    # same span: stacking never raises the rank
    assert sympy.Matrix([dense(v, n) for v in ours] + theirs).rank() == len(theirs) if theirs else not ours


@given(sparse_systems())
def test_kernel_is_canonical(system):
    rows, n = system
    vecs = kernel.sparse_kernel(rows, n, exact_check(rows))
    leads = [max(v) for v in vecs]
    assert leads == sorted(set(leads))
    for v in vecs:
        assert v[max(v)] == 1
        assert all(v.get(c, 0) == 0 for c in leads if c != max(v))


@given(sparse_systems())
def test_dense_and_exact_routes_agree_with_modular(system):
    rows, n = system
    modular = kernel.sparse_kernel(rows, n, exact_check(rows))
    assert kernel.dense_kernel(rows, n) == modular
    assert kernel.sparse_kernel(rows, n, exact_check(rows), primes=()) == modular


def test_fill_budget_switches_to_dense(monkeypatch):
    rows = [{0: Fraction(1), 1: Fraction(1), 2: Fraction(1)}, {1: Fraction(1), 2: Fraction(-1)}, {0: Fraction(2), 2: Fraction(3)}]
    expected = kernel.sparse_kernel(rows, 3, exact_check(rows))
    monkeypatch.setattr(kernel, "FILL_BUDGET", 0)
    assert kernel.sparse_kernel(rows, 3, exact_check(rows)) == expected


@settings(max_examples=200)
@given(st.integers(-(10**6), 10**6), st.integers(1, 10**6))
def test_rational_reconstruction_recovers_small_fractions(num, den):
    q = Fraction(num, den)
    m = kernel.PRIMES[0]
    residue = q.numerator * pow(q.denominator, -1, m) % m
    assert kernel.rational_reconstruct(residue, m) == q


def test_canonical_kernel_reduces():
    vecs = [{0: Fraction(2), 1: Fraction(4)}, {1: Fraction(1), 2: Fraction(1)}]
    assert kernel.canonical_kernel(vecs) == [{0: Fraction(1, 2), 1: Fraction(1)}, {0: Fraction(-1, 2), 2: Fraction(1)}]
