"""Lie algebras given by exact structure constants.

A :class:`LieAlgebra` stores ``[X_i, X_j] = sum_k C_ij^k X_k`` sparsely for
``i < j`` only. Indices are 0-based internally; labels and file formats are
1-based like the usual ``X_1 .. X_n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg

Terms = tuple[tuple[int, Fraction], ...]


def default_basis(n: int, offset: int = 0) -> tuple[str, ...]:
    return tuple(f"X{k + 1 + offset}" for k in range(n))


def _canonical_terms(terms: Iterable[tuple[int, object]]) -> Terms:
    acc: dict[int, Fraction] = {}
    for k, c in terms:
        acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
    return tuple(sorted((k, c) for k, c in acc.items() if c != 0))


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional real Lie algebra with rational structure constants.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to the sorted nonzero terms
    ``((k, C_ij^k), ...)``. Use :meth:`from_brackets` to build one from
    arbitrary (possibly unordered, unreduced) input.
    """

    dim: int
    basis: tuple[str, ...]
    brackets: Mapping[tuple[int, int], Terms]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.basis) != self.dim:
            raise ValueError(f"expected {self.dim} basis labels, got {len(self.basis)}")
        if len(set(self.basis)) != self.dim:
            raise ValueError("basis labels must be distinct")
        for (i, j), terms in self.brackets.items():
            if not 0 <= i < j < self.dim:
                raise ValueError(f"bad bracket key {(i + 1, j + 1)}")
            if not terms:
                raise ValueError(f"empty term list stored for {(i + 1, j + 1)}")
            for k, c in terms:
                if not 0 <= k < self.dim or c == 0:
                    raise ValueError(f"bad term {(k + 1, c)} in bracket {(i + 1, j + 1)}")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Iterable[tuple[int, object]]] | Iterable,
        basis: Sequence[str] | None = None,
        name: str = "",
        one_based: bool = True,
    ) -> "LieAlgebra":
        """Build from ``{(i, j): [(k, c), ...]}``; ``(j, i)`` entries are negated.

        Giving both ``(i, j)`` and ``(j, i)`` is an error.
        """
        items = brackets.items() if isinstance(brackets, Mapping) else brackets
        shift = 1 if one_based else 0
        table: dict[tuple[int, int], Terms] = {}
        for (i, j), terms in items:
            i, j = i - shift, j - shift
            if i == j:
                raise ValueError(f"bracket of X{i + 1} with itself")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if (i, j) in table:
                raise ValueError(f"duplicate bracket for pair {(i + 1, j + 1)}")
            t = _canonical_terms((k - shift, sign * Fraction(c)) for k, c in terms)
            table[(i, j)] = t
        table = {key: t for key, t in sorted(table.items()) if t}
        return cls(dim, tuple(basis) if basis else default_basis(dim), table, name)

    # -- structure constants -------------------------------------------------

    def bracket_terms(self, i: int, j: int) -> Terms:
        """Terms of ``[X_i, X_j]`` (0-based), antisymmetry applied."""
        if i < j:
            return self.brackets.get((i, j), ())
        if i > j:
            return tuple((k, -c) for k, c in self.brackets.get((j, i), ()))
        return ()

    def structure_constants(self) -> list[list[list[Fraction]]]:
        """Dense ``C[i][j][k]``."""
        n = self.dim
        C = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in self.brackets.items():
            for k, c in terms:
                C[i][j][k] = c
                C[j][i][k] = -c
        return C

    def ad(self, i: int) -> linalg.Matrix:
        """Matrix of ``ad X_i``; column ``j`` holds ``[X_i, X_j]``."""
        n = self.dim
        m = linalg.zeros(n, n)
        for j in range(n):
            for k, c in self.bracket_terms(i, j):
                m[k][j] = c
        return m

    def relabel(self, basis: Sequence[str], name: str | None = None) -> "LieAlgebra":
        return LieAlgebra(self.dim, tuple(basis), self.brackets, self.name if name is None else name)

    def __repr__(self):
        return f"LieAlgebra(name={self.name!r}, dim={self.dim}, brackets={len(self.brackets)})"


def abelian(n: int, basis: Sequence[str] | None = None, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(n, tuple(basis) if basis else default_basis(n), {}, name or f"{n}L1")


def _vec(v: Sequence, n: int) -> list[Fraction]:
    if len(v) != n:
        raise ValueError(f"vector has length {len(v)}, algebra has dimension {n}")
    return [Fraction(x) for x in v]


def bracket(alg: LieAlgebra, u: Sequence, v: Sequence) -> list[Fraction]:
    """Bilinear extension of the stored brackets."""
    u, v = _vec(u, alg.dim), _vec(v, alg.dim)
    out = [Fraction(0)] * alg.dim
    for (i, j), terms in alg.brackets.items():
        w = u[i] * v[j] - u[j] * v[i]
        if w:
            for k, c in terms:
                out[k] += w * c
    return out


def _bracket_basis_vec(alg: LieAlgebra, i: int, v: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * alg.dim
    for j, x in enumerate(v):
        if x:
            for k, c in alg.bracket_terms(i, j):
                out[k] += x * c
    return out


def jacobi_check(alg: LieAlgebra) -> list[tuple[tuple[int, int, int], list[Fraction]]]:
    """All triples (1-based) where the Jacobi identity fails, with residuals."""
    n = alg.dim
    basis_brackets = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = [Fraction(0)] * n
            for k, c in alg.bracket_terms(i, j):
                v[k] = c
            basis_brackets[i][j] = v
    failures = []
    for i, j, k in itertools.combinations(range(n), 3):
        res = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = basis_brackets[b][c]
            part = _bracket_basis_vec(alg, a, inner)
            res = [x + y for x, y in zip(res, part)]
        if any(res):
            failures.append(((i + 1, j + 1, k + 1), res))
    return failures


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Block direct sum; clashing labels get a ``'`` suffix."""
    table = dict(a.brackets)
    off = a.dim
    for (i, j), terms in b.brackets.items():
        table[(i + off, j + off)] = tuple((k + off, c) for k, c in terms)
    labels = list(a.basis)
    seen = set(labels)
    a_default = a.basis == default_basis(a.dim)
    for t, lab in enumerate(b.basis):
        new = lab
        if a_default and lab == f"X{t + 1}":
            new = f"X{off + t + 1}"
        while new in seen:
            new += "'"
        seen.add(new)
        labels.append(new)
    return LieAlgebra(a.dim + b.dim, tuple(labels), table, name or f"{a.name}+{b.name}")


def change_basis(alg: LieAlgebra, P: Sequence[Sequence], name: str | None = None) -> LieAlgebra:
    """Rewrite ``alg`` in the basis ``Y_a = sum_b P[b][a] X_b``.

    Column ``a`` of ``P`` holds the old coordinates of the new basis vector
    ``Y_a``; raises ``ValueError`` if ``P`` is singular.
    """
    n = alg.dim
    P = linalg.to_matrix(P)
    if len(P) != n or any(len(r) != n for r in P):
        raise ValueError("basis change matrix must be square of the algebra dimension")
    if linalg.det(P) == 0:
        raise ValueError("basis change matrix is singular")
    Pinv = linalg.inverse(P)
    cols = linalg.transpose(P)
    table = {}
    for a, b in itertools.combinations(range(n), 2):
        w = linalg.matvec(Pinv, bracket(alg, cols[a], cols[b]))
        terms = tuple((k, c) for k, c in enumerate(w) if c != 0)
        if terms:
            table[(a, b)] = terms
    return LieAlgebra(n, alg.basis, table, alg.name if name is None else name)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q^n`` with a canonical (reduced echelon) basis."""

    ambient_dim: int
    basis_vectors: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = linalg.row_space_basis([[Fraction(x) for x in v] for v in vectors])
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @property
    def dimension(self) -> int:
        return len(self.basis_vectors)

    def contains(self, v: Sequence) -> bool:
        if not self.basis_vectors:
            return not any(v)
        return linalg.rank([list(b) for b in self.basis_vectors] + [list(v)]) == self.dimension

    def __len__(self):
        return self.dimension


def full_space(n: int) -> Subspace:
    return Subspace.span(n, linalg.identity(n))


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vecs = [bracket(alg, u, v) for u in a.basis_vectors for v in b.basis_vectors]
    return Subspace.span(alg.dim, vecs)


def centre(alg: LieAlgebra) -> Subspace:
    """All ``z`` with ``[z, X_i] = 0`` for every ``i``."""
    n = alg.dim
    rows = []
    for i in range(n):
        rows.extend(alg.ad(i))
    rows = [r for r in rows if any(r)]
    return Subspace.span(n, linalg.nullspace(rows, n) if rows else linalg.identity(n))


def derived_series(alg: LieAlgebra) -> list[Subspace]:
    """``g, [g, g], ...`` until the terms stop shrinking."""
    series = [full_space(alg.dim)]
    while True:
        nxt = bracket_span(alg, series[-1], series[-1])
        if nxt.dimension == series[-1].dimension:
            return series
        series.append(nxt)


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    g = full_space(alg.dim)
    series = [g]
    while True:
        nxt = bracket_span(alg, g, series[-1])
        if nxt.dimension == series[-1].dimension:
            return series
        series.append(nxt)


def is_abelian(alg: LieAlgebra) -> bool:
    return not alg.brackets


def is_solvable(alg: LieAlgebra) -> bool:
    return derived_series(alg)[-1].dimension == 0


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].dimension == 0


def matrix_lie_algebra(mats: Sequence[linalg.Matrix], basis: Sequence[str] | None = None, name: str = "") -> LieAlgebra:
    """Structure constants of the span of linearly independent matrices.

    Raises ``ValueError`` if the span is not closed under commutators.
    """
    flat = [[x for row in m for x in row] for m in mats]
    n = len(mats)
    A = linalg.transpose(flat)
    table = {}
    for i, j in itertools.combinations(range(n), 2):
        a, b = mats[i], mats[j]
        comm = [
            [x - y for x, y in zip(r1, r2)]
            for r1, r2 in zip(linalg.matmul(a, b), linalg.matmul(b, a))
        ]
        coeffs = linalg.solve(A, [x for row in comm for x in row])
        if coeffs is None:
            raise ValueError("matrices do not span a Lie algebra")
        terms = tuple((k, c) for k, c in enumerate(coeffs) if c != 0)
        if terms:
            table[(i, j)] = terms
    return LieAlgebra(n, tuple(basis) if basis else default_basis(n), table, name)


def subalgebra_on(alg: LieAlgebra, indices: Sequence[int], name: str = "") -> LieAlgebra:
    """Restriction of the brackets to the basis elements ``indices`` (0-based).

    Raises ``ValueError`` if they do not span a subalgebra.
    """
    pos = {k: t for t, k in enumerate(indices)}
    table = {}
    for a, b in itertools.combinations(range(len(indices)), 2):
        terms = alg.bracket_terms(indices[a], indices[b])
        if any(k not in pos for k, _ in terms):
            raise ValueError("indices do not span a subalgebra")
        t = _canonical_terms((pos[k], c) for k, c in terms)
        if t:
            table[(a, b)] = t
    return LieAlgebra(len(indices), tuple(alg.basis[k] for k in indices), table, name)
