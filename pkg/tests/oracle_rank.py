"""Independent rank oracle: symbolic minors of the commutator matrix.

Nothing from the package's rank or sampling code is used; only the stored
structure constants are read. Entries are sympy polynomials in x1..xn and
every k x k minor is expanded by Laplace along its first row, memoized on
(row set, column set). The rank is the largest k with a nonzero minor.
"""

from functools import lru_cache
from itertools import combinations

import sympy


def commutator_matrix(alg):
    xs = sympy.symbols(f"x1:{alg.dim + 1}")
    zero = sympy.Poly(0, *xs, domain="QQ")
    M = [[zero] * alg.dim for _ in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(alg.dim):
            expr = sum((sympy.Rational(c.numerator, c.denominator) * xs[k] for k, c in alg.bracket_terms(i, j)), sympy.Integer(0))
            M[i][j] = sympy.Poly(expr, *xs, domain="QQ")
    return M, zero


def symbolic_rank(alg) -> int:
    M, zero = commutator_matrix(alg)
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(rows, cols):
        if len(rows) == 1:
            return M[rows[0]][cols[0]]
        r, rest = rows[0], rows[1:]
        total = zero
        for t, c in enumerate(cols):
            if M[r][c].is_zero:
                continue
            term = M[r][c] * minor(rest, cols[:t] + cols[t + 1 :])
            total = total + term if t % 2 == 0 else total - term
        return total

    for k in range(n, 0, -1):
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                if not minor(rows, cols).is_zero:
                    return k
    return 0
