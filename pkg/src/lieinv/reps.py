"""Representations of sl(2,R) and so(3) used to build semidirect sums."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import isqrt
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import linalg
from .core import LieAlgebra, bracket

Half = Fraction(1, 2)


def sl2_standard() -> LieAlgebra:
    """``[X1,X2] = 2X2, [X1,X3] = -2X3, [X2,X3] = X1``."""
    return LieAlgebra.from_brackets(3, {(1, 2): [(2, 2)], (1, 3): [(3, -2)], (2, 3): [(1, 1)]}, name="sl2")


def so3_standard() -> LieAlgebra:
    """``[X1,X2] = X3, [X1,X3] = -X2, [X2,X3] = X1``."""
    return LieAlgebra.from_brackets(3, {(1, 2): [(3, 1)], (1, 3): [(2, -1)], (2, 3): [(1, 1)]}, name="so3")


# -- labels -------------------------------------------------------------------


@dataclass(frozen=True)
class Sl2Irrep:
    weight: int  # highest weight, twice the spin

    @property
    def dim(self) -> int:
        return self.weight + 1

    def __str__(self):
        if self.weight == 0:
            return "D0"
        j = Fraction(self.weight, 2)
        return f"D({j})"


@dataclass(frozen=True)
class So3Odd:
    j: int

    @property
    def dim(self) -> int:
        return 2 * self.j + 1

    def __str__(self):
        return f"R{self.dim}"


@dataclass(frozen=True)
class So3R4:
    dim = 4

    def __str__(self):
        return "R4"


@dataclass(frozen=True)
class Trivial:
    k: int = 1

    @property
    def dim(self) -> int:
        return self.k

    def __str__(self):
        return "D0" if self.k == 1 else f"{self.k}D0"


Summand = Union[Sl2Irrep, So3Odd, So3R4, Trivial]


@dataclass(frozen=True)
class RepLabel:
    """Direct-sum decomposition, e.g. ``2D(1/2)+D0``."""

    summands: tuple[Summand, ...]

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)

    def is_irreducible(self) -> bool:
        parts = [s for s in self.summands if s.dim]
        return len(parts) == 1 and (not isinstance(parts[0], Trivial) or parts[0].k == 1)

    def has_trivial(self) -> bool:
        return any(isinstance(s, Trivial) and s.k > 0 for s in self.summands)

    def __str__(self):
        out = []
        for key, group in itertools.groupby(self.summands):
            n = len(list(group))
            if isinstance(key, Trivial):
                total = key.k * n
                out.append("D0" if total == 1 else f"{total}D0")
            else:
                out.append(("" if n == 1 else str(n)) + str(key))
        return "+".join(out)


# -- representations ----------------------------------------------------------


def _freeze(m: linalg.Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


@dataclass(frozen=True)
class Representation:
    """Matrices ``rho(X_i)`` acting on column vectors of length ``module_dim``."""

    algebra: LieAlgebra
    module_dim: int
    matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]
    label: RepLabel | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.matrices) != self.algebra.dim:
            raise ValueError("need one matrix per basis element of the acting algebra")
        for m in self.matrices:
            if len(m) != self.module_dim or any(len(r) != self.module_dim for r in m):
                raise ValueError("representation matrices have the wrong shape")

    @classmethod
    def from_matrices(cls, algebra: LieAlgebra, mats: Sequence[Sequence[Sequence]], label: RepLabel | None = None):
        mats = [linalg.to_matrix(m) for m in mats]
        d = len(mats[0]) if mats else 0
        return cls(algebra, d, tuple(_freeze(m) for m in mats), label)

    def matrix(self, i: int) -> linalg.Matrix:
        return [list(r) for r in self.matrices[i]]

    def act(self, x: Sequence, v: Sequence) -> list[Fraction]:
        """``rho(x) v`` for ``x`` in coordinates of the acting algebra."""
        out = [Fraction(0)] * self.module_dim
        for i, xi in enumerate(x):
            if xi:
                for a, row in enumerate(self.matrices[i]):
                    out[a] += xi * sum((m * y for m, y in zip(row, v)), Fraction(0))
        return out


def _matrices(n: int, entries: dict[tuple[int, int, int], Fraction], count: int = 3) -> list[linalg.Matrix]:
    mats = [linalg.zeros(n, n) for _ in range(count)]
    for (g, row, col), v in entries.items():
        mats[g][row][col] = Fraction(v)
    return mats


def sl2_irrep(weight: int) -> Representation:
    """Irreducible module of highest weight ``weight`` on ``e_0 .. e_weight``.

    ``X1 e_i = (w - 2i) e_i``, ``X2 e_i = (w - i + 1) e_{i-1}``,
    ``X3 e_i = (i + 1) e_{i+1}``.
    """
    if weight < 0:
        raise ValueError("highest weight must be nonnegative")
    w = weight
    ent = {}
    for i in range(w + 1):
        if w - 2 * i:
            ent[(0, i, i)] = w - 2 * i
        if i >= 1:
            ent[(1, i - 1, i)] = w - i + 1
        if i < w:
            ent[(2, i + 1, i)] = i + 1
    label = RepLabel((Trivial(1),)) if w == 0 else RepLabel((Sl2Irrep(w),))
    return Representation.from_matrices(sl2_standard(), _matrices(w + 1, ent), label)


def so3_R4() -> Representation:
    """The 4-dimensional real irreducible so(3)-module (entries +-1/2)."""
    h = Half
    ent = {
        (0, 3, 0): h, (0, 2, 1): h, (0, 1, 2): -h, (0, 0, 3): -h,
        (1, 1, 0): h, (1, 0, 1): -h, (1, 3, 2): h, (1, 2, 3): -h,
        (2, 2, 0): h, (2, 3, 1): -h, (2, 0, 2): -h, (2, 1, 3): h,
    }
    return Representation.from_matrices(so3_standard(), _matrices(4, ent), RepLabel((So3R4(),)))


def _cmatvec(mr, mi, vr, vi):
    ar, ai = linalg.matvec(mr, vr), linalg.matvec(mi, vi)
    br, bi = linalg.matvec(mr, vi), linalg.matvec(mi, vr)
    return [x - y for x, y in zip(ar, ai)], [x + y for x, y in zip(br, bi)]


def _ladder_odd_irrep(j: int) -> list[linalg.Matrix]:
    """Real form of the spin-``j`` ladder module.

    Complexify to sl(2,C) (``X3 = -iH/2``, ``X1 = -i(E+F)/2``,
    ``X2 = (F-E)/2``), take the highest-weight-``2j`` module and restrict to
    the real form fixed by ``e_i -> (-1)^i e_{2j-i}`` composed with complex
    conjugation. Basis: ``a_0, b_0, a_1, b_1, ..., a_j`` with
    ``a_i = e_i + (-1)^i e_{2j-i}``, ``b_i = i(e_i - (-1)^i e_{2j-i})``, so
    ``X3`` acts by rotation blocks of frequency ``j, j-1, ..., 1``. The
    invariant form is diagonal here but not the identity.
    """
    if j < 1:
        raise ValueError("j must be positive")
    w = 2 * j
    n = w + 1
    E, F, H = sl2_irrep(w).matrices[1], sl2_irrep(w).matrices[2], sl2_irrep(w).matrices[0]
    zero = linalg.zeros(n, n)
    EF = [[(a + b) * -Half for a, b in zip(r1, r2)] for r1, r2 in zip(E, F)]
    FE = [[(b - a) * Half for a, b in zip(r1, r2)] for r1, r2 in zip(E, F)]
    Hh = [[a * -Half for a in r] for r in H]
    complex_mats = [(zero, EF), (FE, zero), (zero, Hh)]

    sign = [(-1) ** i for i in range(n)]
    basis = []  # (real part, imaginary part) over e_0 .. e_w
    for i in range(j):
        ar = [Fraction(0)] * n
        ar[i], ar[w - i] = Fraction(1), Fraction(sign[i])
        basis.append((ar, [Fraction(0)] * n))
        bi = [Fraction(0)] * n
        bi[i], bi[w - i] = Fraction(1), Fraction(-sign[i])
        basis.append(([Fraction(0)] * n, bi))
    mid_r, mid_i = [Fraction(0)] * n, [Fraction(0)] * n
    (mid_r if j % 2 == 0 else mid_i)[j] = Fraction(1)
    basis.append((mid_r, mid_i))

    def coords(vr, vi):
        out = []
        for i in range(j):
            # the e_{w-i} coefficient is fixed by the real structure
            if vr[w - i] != sign[i] * vr[i] or vi[w - i] != -sign[i] * vi[i]:
                raise ArithmeticError("vector left the real form")
            out += [vr[i], vi[i]]
        out.append(vr[j] if j % 2 == 0 else vi[j])
        return out

    mats = []
    for mr, mi in complex_mats:
        cols = [coords(*_cmatvec(mr, mi, br, bi)) for br, bi in basis]
        mats.append(linalg.transpose(cols))
    return mats


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _two_squares(n: int) -> tuple[int, int] | None:
    """``(x, y)`` with ``x^2 + y^2 = n``, or None when no such integers exist."""
    if any(p % 4 == 3 and e % 2 for p, e in _factor(n).items()):
        return None
    for x in range(isqrt(n) + 1):
        y = isqrt(n - x * x)
        if x * x + y * y == n:
            return x, y
    return None


class _PairedForm:
    """Positive form ``G`` with a complex structure ``J`` preserving it.

    A J-stable plane ``(u, Ju)`` has norm class in Q*/(sums of two squares);
    pairs of nontrivial class are merged two at a time, which is always
    possible because a positive 4-dimensional rational form represents 1
    whenever it does so locally.
    """

    def __init__(self, G, pairs):
        self.G, self.pairs, self.n = G, pairs, len(G)

    def norm(self, u):
        G = self.G
        return sum(u[a] * G[a][b] * u[b] for a in range(self.n) if u[a] for b in range(self.n) if u[b] and G[a][b])

    def dot(self, u, v):
        G = self.G
        return sum(u[a] * G[a][b] * v[b] for a in range(self.n) if u[a] for b in range(self.n) if v[b] and G[a][b])

    def J(self, v):
        w = [Fraction(0)] * self.n
        for a, b in self.pairs:
            w[a], w[b] = -v[b], v[a]
        return w

    def rotate(self, u, x, y, scale=1):
        Ju = self.J(u)
        return [(x * p + y * q) / scale for p, q in zip(u, Ju)]

    def normalise(self, u):
        """Rescale within the plane of ``u`` so its norm is a squarefree product of primes 3 mod 4."""
        h = self.norm(u)
        fac = _factor(h.numerator * h.denominator)
        s = c = g = 1
        for p, e in fac.items():
            s *= p ** (e // 2)
            if e % 2:
                if p % 4 == 3:
                    c *= p
                else:
                    g *= p
        x, y = _two_squares(g)
        u = [t * h.denominator / s for t in u]
        return self.rotate(u, x, y, g), c

    def merge(self, u, a, v, b):
        """Unit vector in the span of two planes of classes ``a`` and ``b``, and the complementary plane."""
        Ju, Jv = self.J(u), self.J(v)
        for bound in itertools.count(1):
            for z in itertools.product(range(-bound, bound + 1), repeat=4):
                if max(map(abs, z)) != bound:
                    continue
                V = a * (z[0] ** 2 + z[1] ** 2) + b * (z[2] ** 2 + z[3] ** 2)
                rep = _two_squares(V)
                if rep is None:
                    continue
                x = [z[0] * p + z[1] * q + z[2] * r + z[3] * s for p, q, r, s in zip(u, Ju, v, Jv)]
                w = self.rotate(x, rep[0], rep[1], V)
                Jw = self.J(w)
                for y in (u, v):
                    y = [t - self.dot(w, y) * p - self.dot(Jw, y) * q for t, p, q in zip(y, w, Jw)]
                    if any(y):
                        return w, y

    def orthonormal_pairs(self, start):
        units, pending = [], []
        for u in start:
            u, c = self.normalise(u)
            (units if c == 1 else pending).append(u if c == 1 else (u, c))
        while pending:
            if len(pending) == 1:
                raise ArithmeticError("form is not rationally equivalent to the identity")
            (u, a), (v, b) = pending[0], pending[1]
            w, y = self.merge(u, a, v, b)
            units.append(w)
            y, c = self.normalise(y)
            pending = pending[2:]
            if c == 1:
                units.append(y)
            else:
                pending.insert(0, (y, c))
        return [x for u in units for x in (u, self.J(u))]


@lru_cache(maxsize=None)
def so3_odd_irrep(j: int) -> Representation:
    """Real ``(2j+1)``-dimensional irreducible so(3)-module with skew-symmetric matrices.

    Starts from the ladder construction and passes to a rational basis that
    is orthonormal for its invariant form.
    """
    if j < 1:
        raise ValueError("j must be positive")
    mats = _ladder_odd_irrep(j)
    n = 2 * j + 1
    R = Representation.from_matrices(so3_standard(), mats)
    (G,) = invariant_forms(R)
    if G[n - 1][n - 1] < 0:
        G = [[-x for x in row] for row in G]
    scale = G[n - 1][n - 1]
    G = [[x / scale for x in row] for row in G]
    pairs = [(2 * i, 2 * i + 1) for i in range(j)]
    form = _PairedForm(G, pairs)
    start = []
    for a, _ in pairs:
        e = [Fraction(0)] * n
        e[a] = Fraction(1)
        start.append(e)
    cols = form.orthonormal_pairs(start)
    mid = [Fraction(0)] * n
    mid[n - 1] = Fraction(1)
    cols.append(mid)
    P = linalg.transpose(cols)
    Pinv = linalg.matmul(linalg.transpose(P), G)
    out = [linalg.matmul(Pinv, linalg.matmul(m, P)) for m in mats]
    return Representation.from_matrices(so3_standard(), out, RepLabel((So3Odd(j),)))


def adjoint_rep(alg: LieAlgebra) -> Representation:
    return Representation.from_matrices(alg, [alg.ad(i) for i in range(alg.dim)])


def trivial_rep(s: LieAlgebra, k: int = 1) -> Representation:
    label = RepLabel((Trivial(k),) if k else ())
    return Representation(s, k, tuple(_freeze(linalg.zeros(k, k)) for _ in range(s.dim)), label)


def rep_direct_sum(a: Representation, b: Representation) -> Representation:
    if a.algebra != b.algebra:
        raise ValueError("representations of different algebras")
    n = a.module_dim + b.module_dim
    mats = []
    for ma, mb in zip(a.matrices, b.matrices):
        m = linalg.zeros(n, n)
        for r, row in enumerate(ma):
            m[r][: a.module_dim] = list(row)
        for r, row in enumerate(mb):
            m[a.module_dim + r][a.module_dim :] = list(row)
        mats.append(m)
    label = None
    if a.label is not None and b.label is not None:
        label = RepLabel(a.label.summands + b.label.summands)
    return Representation(a.algebra, n, tuple(_freeze(m) for m in mats), label)


def rep_direct_sum_all(reps: Sequence[Representation], s: LieAlgebra) -> Representation:
    out = trivial_rep(s, 0)
    for r in reps:
        out = rep_direct_sum(out, r)
    return out


def rep_check(R: Representation) -> bool:
    """``rho([X_i, X_j]) == [rho(X_i), rho(X_j)]`` for all basis pairs."""
    s = R.algebra
    n = s.dim
    mats = [R.matrix(i) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        lhs = linalg.zeros(R.module_dim, R.module_dim)
        for k, c in s.bracket_terms(i, j):
            lhs = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, mats[k])]
        ab, ba = linalg.matmul(mats[i], mats[j]), linalg.matmul(mats[j], mats[i])
        rhs = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
        if lhs != rhs:
            return False
    return True


def module_check(R: Representation, r: LieAlgebra) -> bool:
    """Every ``rho(X_i)`` is a derivation of ``r``."""
    if R.module_dim != r.dim:
        raise ValueError(f"module dimension {R.module_dim} != radical dimension {r.dim}")
    n = r.dim
    e = linalg.identity(n)
    for i in range(R.algebra.dim):
        m = R.matrix(i)
        cols = linalg.transpose(m)
        for a, b in itertools.combinations(range(n), 2):
            lhs = linalg.matvec(m, bracket(r, e[a], e[b]))
            rhs = [x + y for x, y in zip(bracket(r, cols[a], e[b]), bracket(r, e[a], cols[b]))]
            if lhs != rhs:
                return False
    return True


def rep_from_label(label: RepLabel, s: LieAlgebra) -> Representation:
    """Build the module named by ``label`` for ``s`` (sl2_standard or so3_standard)."""
    is_sl2, is_so3 = s == sl2_standard(), s == so3_standard()
    parts = []
    for item in label.summands:
        if isinstance(item, Trivial):
            parts.append(trivial_rep(s, item.k))
        elif isinstance(item, Sl2Irrep):
            if not is_sl2:
                raise ValueError(f"{item} is an sl(2,R) module")
            parts.append(sl2_irrep(item.weight))
        elif isinstance(item, So3R4):
            if not is_so3:
                raise ValueError("R4 is an so(3) module")
            parts.append(so3_R4())
        elif isinstance(item, So3Odd):
            if not is_so3:
                raise ValueError(f"{item} is an so(3) module")
            parts.append(so3_odd_irrep(item.j))
    out = rep_direct_sum_all(parts, s)
    return Representation(s, out.module_dim, out.matrices, label)


def invariant_forms(R: Representation) -> list[linalg.Matrix]:
    """Basis of symmetric bilinear forms ``B`` with ``rho(X)^T B + B rho(X) = 0``."""
    d = R.module_dim
    idx = [(a, b) for a in range(d) for b in range(a, d)]
    pos = {p: t for t, p in enumerate(idx)}

    def var(a, b):
        return pos[(min(a, b), max(a, b))]

    rows = []
    for m in R.matrices:
        for a in range(d):
            for b in range(a, d):
                row = [Fraction(0)] * len(idx)
                for c in range(d):
                    row[var(c, b)] += m[c][a]
                    row[var(a, c)] += m[c][b]
                rows.append(row)
    out = []
    for v in linalg.nullspace(rows, len(idx)):
        B = linalg.zeros(d, d)
        for (a, b), t in pos.items():
            B[a][b] = B[b][a] = v[t]
        out.append(B)
    return out
