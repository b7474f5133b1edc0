"""Exact kernels of large sparse rational matrices.

Columns are eliminated modulo word-sized primes; the kernel basis is lifted
by rational reconstruction and then checked exactly by the caller. A prime
can only lose rank, so the modular kernel dimension bounds the rational one
from above; a lifted basis of that size that passes the exact check is
therefore the whole kernel.

Pivots are chosen for sparsity, so the basis that comes out of elimination
depends on pivot order. It is then brought to one canonical form: each
vector has a 1 at its last nonzero column and 0 there in the others.
"""

from __future__ import annotations

import heapq
from collections import Counter
from fractions import Fraction
from math import isqrt, lcm
from typing import Callable, Sequence

import flint

PRIMES = (
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
)

Row = dict[int, object]

# entry updates allowed before sparse elimination hands over to the dense route
FILL_BUDGET = 5_000_000


class _TooDense(Exception):
    pass


def _reduce_rows(rows: Sequence[dict[int, Fraction]], p: int | None) -> list[dict[int, object]] | None:
    if p is None:
        return [{c: Fraction(v) for c, v in r.items()} for r in rows]
    out = []
    for r in rows:
        red = {}
        for c, v in r.items():
            v = Fraction(v)
            if v.denominator % p == 0:
                return None
            x = v.numerator * pow(v.denominator, -1, p) % p
            if x:
                red[c] = x
        out.append(red)
    return out


def _inverse(x, p):
    return pow(x, -1, p) if p is not None else 1 / Fraction(x)


def _scaled(row: Row, f, p: int | None) -> Row:
    return {k: (v * f % p if p is not None else v * f) for k, v in row.items()}


def _axpy(row: Row, f, pivot: Row, p: int | None) -> list[int]:
    """``row -= f * pivot`` in place; returns the columns that became nonzero."""
    fresh = []
    for k, v in pivot.items():
        old = row.get(k, 0)
        x = old - f * v
        if p is not None:
            x %= p
        if x:
            row[k] = x
            if not old:
                fresh.append(k)
        else:
            row.pop(k, None)
    return fresh


def echelon(rows: Sequence[Row], ncols: int, p: int | None, budget: int | None = None) -> list[tuple[int, Row]]:
    """Pivot rows in creation order, each monic at its pivot and free of earlier pivot columns.

    Short rows go first and the pivot is the entry whose column is rarest in
    the input, which keeps fill-in low on the sparse systems met here.
    """
    counts = Counter(c for r in rows for c in r)
    order: list[int] = []
    index: dict[int, int] = {}
    pivots: dict[int, Row] = {}
    for row in sorted(rows, key=len):
        row = dict(row)
        heap = [index[c] for c in row if c in index]
        heapq.heapify(heap)
        while heap:
            c = order[heapq.heappop(heap)]
            f = row.get(c)
            if not f:
                continue
            if budget is not None:
                budget -= len(pivots[c])
                if budget < 0:
                    raise _TooDense
            for k in _axpy(row, f, pivots[c], p):
                if k in index:
                    heapq.heappush(heap, index[k])
        if not row:
            continue
        c = min(row, key=lambda k: (counts[k], k))
        pivots[c] = _scaled(row, _inverse(row[c], p), p)
        index[c] = len(order)
        order.append(c)
        if len(order) == ncols:
            break
    return [(c, pivots[c]) for c in order]


def kernel_from_echelon(pivots: list[tuple[int, Row]], ncols: int, p: int | None) -> list[dict[int, object]]:
    """A kernel basis, one vector per non-pivot column, by back substitution."""
    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(ncols) if c not in pivot_cols]
    value: dict[int, dict[int, object]] = {f: {f: 1} for f in free}
    for c, row in reversed(pivots):
        acc: dict[int, object] = {}
        for k, v in row.items():
            if k == c:
                continue
            for f, y in value[k].items():
                x = acc.get(f, 0) - v * y
                if p is not None:
                    x %= p
                acc[f] = x
        value[c] = {f: x for f, x in acc.items() if x}
    vecs: list[dict[int, object]] = [{} for _ in free]
    where = {f: t for t, f in enumerate(free)}
    for c, coeffs in value.items():
        for f, x in coeffs.items():
            vecs[where[f]][c] = x
    return vecs


def canonical_kernel(vecs: Sequence[Row], p: int | None = None) -> list[dict[int, object]]:
    """Basis of span(vecs) with a 1 at each vector's last nonzero column and 0 there in the others.

    Sorted by that column; it is the reduced echelon form for reversed column order.
    """
    piv: dict[int, Row] = {}
    for v in vecs:
        row = {c: x for c, x in v.items() if x}
        while row:
            c = max(row)
            if c not in piv:
                piv[c] = _scaled(row, _inverse(row[c], p), p)
                break
            _axpy(row, row[c], piv[c], p)
    for c in sorted(piv):
        for d in piv:
            if d > c and c in piv[d]:
                _axpy(piv[d], piv[d][c], piv[c], p)
    return [piv[c] for c in sorted(piv)]


def dense_kernel(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Exact kernel through FLINT's integer nullspace, for blocks that fill in under sparse elimination."""
    flat = []
    for r in rows:
        den = lcm(*(Fraction(v).denominator for v in r.values())) if r else 1
        line = [0] * ncols
        for c, v in r.items():
            line[c] = int(v * den)
        flat.extend(line)
    X, nullity = flint.fmpz_mat(len(rows), ncols, flat).nullspace()
    basis = [{i: Fraction(int(X[i, j])) for i in range(ncols) if int(X[i, j])} for j in range(nullity)]
    return canonical_kernel(basis)


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """``n/d`` with ``n = a d (mod m)`` and ``|n|, d <= sqrt(m/2)``, if it exists."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _lift(vecs: list[dict[int, int]], m: int) -> list[dict[int, Fraction]] | None:
    out = []
    for v in vecs:
        w = {}
        for c, x in v.items():
            q = rational_reconstruct(x, m)
            if q is None:
                return None
            if q:
                w[c] = q
        out.append(w)
    return out


def sparse_kernel(
    rows: Sequence[dict[int, Fraction]],
    ncols: int,
    verify: Callable[[list[dict[int, Fraction]]], bool],
    primes: Sequence[int] = PRIMES,
) -> list[dict[int, Fraction]]:
    """Kernel of the rational matrix ``rows`` (each a sparse ``{col: value}``), in canonical form.

    ``verify`` must check a candidate basis exactly; if modular lifting never
    verifies, falls back to exact rational elimination.
    """
    best: tuple[list[int], list[dict[int, int]], int] | None = None
    for p in primes:
        red = _reduce_rows(rows, p)
        if red is None:
            continue
        try:
            pivots = echelon(red, ncols, p, FILL_BUDGET)
        except _TooDense:
            return dense_kernel(rows, ncols)
        vecs = canonical_kernel(kernel_from_echelon(pivots, ncols, p), p)
        if not vecs:
            return []
        lead = [max(v) for v in vecs]
        if best is not None and len(lead) > len(best[0]):
            continue  # this prime lost rank
        if best is None or lead != best[0]:
            best = (lead, vecs, p)
        else:
            _, old, m = best
            combined = [{c: _crt(va.get(c, 0), m, vb.get(c, 0), p) for c in set(va) | set(vb)} for va, vb in zip(old, vecs)]
            best = (lead, combined, m * p)
        lifted = _lift(best[1], best[2])
        if lifted is not None and verify(lifted):
            return lifted
    exact = _reduce_rows(rows, None)
    return canonical_kernel(kernel_from_echelon(echelon(exact, ncols, None), ncols, None))


def _crt(a: int, m: int, b: int, p: int) -> int:
    t = (b - a) * pow(m, -1, p) % p
    return a + m * t
