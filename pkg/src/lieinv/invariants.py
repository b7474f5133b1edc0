"""Counting and finding generalized Casimir invariants.

The coadjoint fields ``X_i^ = -C_ij^k x_k d/dx_j`` act on functions of the
dual coordinates; N(g) is ``dim g`` minus the generic rank of the skew
commutator matrix, and polynomial invariants are the joint kernel of the
fields, computed one homogeneous degree at a time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernel, linalg
from .core import LieAlgebra, is_abelian
from .polynomial import Exponent, Polynomial, VectorField, apply_field, grlex_key, monomials
from .semidirect import LeviPair

DEFAULT_TRIALS = 5
DEFAULT_RANGE = 1000
DEFAULT_MAX_DEGREE = 4
PARANOID_RANGE = 10**6


@dataclass(frozen=True)
class CommutatorMatrix:
    """Skew matrix with entries ``A[i][j] = sum_k C_ij^k x_k``."""

    dim: int
    entries: tuple[tuple[Polynomial, ...], ...]

    def evaluate(self, point: Sequence) -> linalg.Matrix:
        return [[p.evaluate(point) for p in row] for row in self.entries]


def commutator_matrix(alg: LieAlgebra) -> CommutatorMatrix:
    n = alg.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [Fraction(0)] * n
            for k, c in alg.bracket_terms(i, j):
                coeffs[k] = c
            row.append(Polynomial.linear(coeffs) if n else Polynomial(0))
        rows.append(tuple(row))
    return CommutatorMatrix(n, tuple(rows))


def random_point(n: int, seed: int, trial: int, coord_range: int = DEFAULT_RANGE) -> list[int]:
    """Integer point in ``[-coord_range, coord_range]^n`` derived from ``(seed, trial)``; never all zero."""
    rng = random.Random(f"{seed}:{trial}")
    while True:
        pt = [rng.randint(-coord_range, coord_range) for _ in range(n)]
        if any(pt) or n == 0:
            return pt


def _evaluate_commutator(alg: LieAlgebra, point: Sequence[int]) -> linalg.Matrix:
    n = alg.dim
    m = linalg.zeros(n, n)
    for (i, j), terms in alg.brackets.items():
        v = sum((c * point[k] for k, c in terms), Fraction(0))
        m[i][j], m[j][i] = v, -v
    return m


def rank_trials(alg: LieAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0, coord_range: int = DEFAULT_RANGE) -> list[int]:
    """Exact rank of the commutator matrix at each sampled point."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return [linalg.rank(_evaluate_commutator(alg, random_point(alg.dim, seed, t, coord_range))) for t in range(trials)]


def generic_rank(alg: LieAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0, coord_range: int = DEFAULT_RANGE) -> int:
    r = max(rank_trials(alg, trials, seed, coord_range))
    if r % 2:
        raise ArithmeticError("odd rank of a skew-symmetric matrix")
    return r


def num_invariants(alg: LieAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0, coord_range: int = DEFAULT_RANGE) -> int:
    """Number of functionally independent invariants, ``dim - generic rank``."""
    return alg.dim - generic_rank(alg, trials, seed, coord_range)


def coadjoint_fields(alg: LieAlgebra) -> list[VectorField]:
    n = alg.dim
    fields = []
    for i in range(n):
        comps = []
        for j in range(n):
            coeffs = [Fraction(0)] * n
            for k, c in alg.bracket_terms(i, j):
                coeffs[k] = -c
            comps.append(Polynomial.linear(coeffs))
        fields.append(VectorField(n, tuple(comps)))
    return fields


def is_invariant(alg: LieAlgebra, P: Polynomial) -> bool:
    if P.num_vars != alg.dim:
        raise ValueError("polynomial and algebra have different numbers of variables")
    return all(apply_field(f, P).is_zero() for f in coadjoint_fields(alg))


# -- polynomial kernel -----------------------------------------------------------


def gradings(fields: Sequence[VectorField]) -> list[list[int]]:
    """Integer weight vectors on the variables making every field homogeneous.

    A term ``x^a d/dx_j`` shifts weight by ``w.a - w_j``; each field must have
    a single shift. Monomials of different weight never mix in the kernel.
    """
    if not fields:
        return []
    n = fields[0].num_vars
    nf = len(fields)
    rows = set()
    for t, f in enumerate(fields):
        for j, a, _ in f.terms():
            row = [0] * (n + nf)
            for i, x in enumerate(a):
                row[i] += x
            row[j] -= 1
            row[n + t] = -1
            rows.add(tuple(row))
    if not rows:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    null = linalg.nullspace([list(map(Fraction, r)) for r in sorted(rows)], n + nf)
    ws = linalg.row_space_basis([v[:n] for v in null if any(v[:n])])
    out = []
    for w in ws:
        den = lcm(*(x.denominator for x in w))
        out.append([int(x * den) for x in w])
    return out


def _weight_blocks(n: int, degree: int, weights: Sequence[Sequence[int]]) -> list[list[Exponent]]:
    blocks: dict[tuple[int, ...], list[Exponent]] = {}
    for e in monomials(n, degree):
        key = tuple(sum(w * x for w, x in zip(ws, e)) for ws in weights)
        blocks.setdefault(key, []).append(e)
    return [blocks[k] for k in sorted(blocks)]


def _image(terms: Sequence[tuple[int, Exponent, Fraction]], e: Exponent) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for j, a, c in terms:
        if e[j]:
            f = tuple(x + y - (1 if i == j else 0) for i, (x, y) in enumerate(zip(e, a)))
            out[f] = out.get(f, 0) + c * e[j]
    return {k: v for k, v in out.items() if v}


def _block_kernel(field_terms, block: list[Exponent]) -> list[Polynomial]:
    n = len(block[0])
    cols = sorted(block, key=grlex_key, reverse=True)  # ascending grlex: leading monomial is the free one
    rows: dict[tuple[int, Exponent], dict[int, Fraction]] = {}
    for c, e in enumerate(cols):
        for t, terms in enumerate(field_terms):
            for out, v in _image(terms, e).items():
                rows.setdefault((t, out), {})[c] = v
    row_list = [rows[k] for k in sorted(rows)]

    def verify(vecs):
        for v in vecs:
            for t in range(len(field_terms)):
                acc: dict[Exponent, Fraction] = {}
                for c, x in v.items():
                    for out, y in _image(field_terms[t], cols[c]).items():
                        acc[out] = acc.get(out, 0) + x * y
                if any(acc.values()):
                    return False
        return True

    vecs = kernel.sparse_kernel(row_list, len(cols), verify)
    return [Polynomial(n, {cols[c]: x for c, x in v.items()}) for v in vecs]


def field_kernel(fields: Sequence[VectorField], degree: int) -> list[Polynomial]:
    """Basis of homogeneous degree-``degree`` polynomials killed by every field.

    Fields must have linear homogeneous coefficients. The basis is in reduced
    echelon form for descending grlex order, then made primitive.
    """
    if not fields:
        raise ValueError("no fields given")
    n = fields[0].num_vars
    for f in fields:
        for _, a, _ in f.terms():
            if sum(a) != 1:
                raise ValueError("field coefficients must be linear forms")
    field_terms = [f.terms() for f in fields]
    field_terms = [t for t in field_terms if t]
    out: list[Polynomial] = []
    for block in _weight_blocks(n, degree, gradings(fields)):
        if not field_terms:
            out.extend(Polynomial.monomial(e) for e in block)
        else:
            out.extend(_block_kernel(field_terms, block))
    out.sort(key=lambda p: grlex_key(p.leading_term()[0]))
    return [p.primitive() for p in out]


def polynomial_invariants(alg: LieAlgebra, max_degree: int = DEFAULT_MAX_DEGREE) -> list[Polynomial]:
    """Invariant polynomials of degree ``1..max_degree``, a basis per degree."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    fields = coadjoint_fields(alg)
    out = []
    for d in range(1, max_degree + 1):
        out.extend(field_kernel(fields, d))
    return out


def functional_independence_count(polys: Sequence[Polynomial], seed: int = 0, attempts: int = 5, coord_range: int = DEFAULT_RANGE) -> int:
    """Rank of the Jacobian at random integer points (best of ``attempts``)."""
    if not polys:
        return 0
    n = polys[0].num_vars
    if any(p.num_vars != n for p in polys):
        raise ValueError("polynomials use different numbers of variables")
    grads = [p.gradient() for p in polys]
    ceiling = min(len(polys), n)
    best = 0
    for t in range(attempts):
        pt = random_point(n, seed, 10_000 + t, coord_range)
        jac = [[g.evaluate(pt) for g in row] for row in grads]
        best = max(best, linalg.rank(jac))
        if best == ceiling:
            break
    return best


# -- radical subsystem -------------------------------------------------------------


def reduced_fields(p: LeviPair) -> list[VectorField]:
    """Levi-generator fields restricted to the radical variables.

    With an abelian radical these only involve the radical coordinates.
    """
    if not is_abelian(p.r):
        raise ValueError("radical subsystem extraction needs an abelian radical")
    ds, m = p.s.dim, p.r.dim
    fields = []
    for i in range(ds):
        mat = p.R.matrices[i]
        comps = []
        for a in range(m):
            # [X_i, Y_a] = sum_b rho_ba Y_b contributes -rho_ba y_b d/dy_a
            comps.append(Polynomial.linear([-mat[b][a] for b in range(m)]))
        fields.append(VectorField(m, tuple(comps)))
    return fields


def radical_subsystem(p: LeviPair, trials: int = DEFAULT_TRIALS, seed: int = 0, coord_range: int = DEFAULT_RANGE) -> tuple[list[VectorField], int]:
    """Reduced fields over the radical variables and their solution count."""
    fields = reduced_fields(p)
    m = p.r.dim
    best = 0
    for t in range(trials):
        pt = random_point(m, seed, t, coord_range)
        mat = [[c.evaluate(pt) for c in f.components] for f in fields]
        best = max(best, linalg.rank(mat) if mat else 0)
    return fields, m - best


def subsystem_invariants(p: LeviPair, max_degree: int = DEFAULT_MAX_DEGREE) -> list[Polynomial]:
    """Polynomial solutions of the reduced system, lifted to all variables."""
    fields = reduced_fields(p)
    positions = list(p.radical_indices)
    out = []
    for d in range(1, max_degree + 1):
        out.extend(q.embed(p.dim, positions) for q in field_kernel(fields, d))
    return out


# -- report --------------------------------------------------------------------------


@dataclass
class InvariantReport:
    N: int
    generic_rank: int
    polynomial_invariants: list[Polynomial]
    independent_count: int
    degree_bound_used: int
    rank_trials: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.independent_count == self.N


def full_report(
    alg: LieAlgebra,
    max_degree: int = DEFAULT_MAX_DEGREE,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    coord_range: int = DEFAULT_RANGE,
) -> InvariantReport:
    ranks = rank_trials(alg, trials, seed, coord_range)
    grank = max(ranks)
    if grank % 2:
        raise ArithmeticError("odd rank of a skew-symmetric matrix")
    N = alg.dim - grank
    polys = polynomial_invariants(alg, max_degree) if N else []
    count = functional_independence_count(polys, seed) if polys else 0
    notes = []
    if count < N:
        notes.append(
            f"{N - count} invariant(s) not found as polynomials of degree <= {max_degree}: "
            "either of higher degree or not polynomial"
        )
    if count > N:
        raise ArithmeticError("more independent invariants than N; rank sampling failed")
    return InvariantReport(N, grank, polys, count, max_degree, ranks, notes)
