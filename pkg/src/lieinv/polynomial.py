"""Sparse multivariate polynomials with rational coefficients, and
first-order differential operators with polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def grlex_key(e: Exponent):
    """Sort key putting monomials in descending graded-lex order (x1 > x2 > ...)."""
    return (-sum(e), tuple(-x for x in e))


class Polynomial:
    """Immutable sparse polynomial in ``num_vars`` commuting variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    """

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        self.num_vars = num_vars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != num_vars:
                raise ValueError(f"exponent {e} does not have {num_vars} entries")
            acc[e] = acc.get(e, 0) + Fraction(c)
        self.terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        """The coordinate ``x_{i+1}`` (``i`` is 0-based)."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "Polynomial":
        return cls(len(e), {tuple(e): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        return self.sorted_terms()[0]

    def variables(self) -> set[int]:
        """0-based indices of the variables that actually occur."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise ValueError("polynomials live in different numbers of variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.num_vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.num_vars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial(self.num_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.num_vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .formats import emit_polynomial

        return f"Polynomial({emit_polynomial(self)!r})"

    # -- calculus -------------------------------------------------------------

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to the 0-based variable ``i``."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.num_vars, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.diff(i) for i in range(self.num_vars)]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.num_vars:
            raise ValueError("point has the wrong number of coordinates")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x**k
            total += t
        return total

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- normalisation --------------------------------------------------------

    def primitive(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = gcd(*nums)
        if self.leading_term()[1] < 0:
            g = -g
        return Polynomial(self.num_vars, {e: c * den / g for e, c in self.terms.items()})

    def embed(self, num_vars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-express in ``num_vars`` variables, variable ``i`` going to ``positions[i]``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * num_vars
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return Polynomial(num_vars, out)


@dataclass(frozen=True)
class VectorField:
    """``sum_j components[j] * d/dx_j``."""

    num_vars: int
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.num_vars:
            raise ValueError("need one component per variable")
        if any(c.num_vars != self.num_vars for c in self.components):
            raise ValueError("component polynomials use the wrong number of variables")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_field(self, p)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.num_vars, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.num_vars, tuple(a - b for a, b in zip(self.components, other.components)))

    def __mul__(self, c) -> "VectorField":
        return VectorField(self.num_vars, tuple(a * c for a in self.components))

    __rmul__ = __mul__

    def commutator(self, other: "VectorField") -> "VectorField":
        """Lie bracket ``[V, W] = V W - W V`` as a first-order operator."""
        return VectorField(
            self.num_vars,
            tuple(apply_field(self, w) - apply_field(other, v) for v, w in zip(self.components, other.components)),
        )

    def terms(self) -> list[tuple[int, Exponent, Fraction]]:
        """``(j, exponent, coefficient)`` for every term of every component."""
        return [(j, e, c) for j, comp in enumerate(self.components) for e, c in comp.terms.items()]

    def canonical(self) -> "VectorField":
        """Scale so the first nonzero component has positive leading coefficient."""
        for comp in self.components:
            if comp.terms:
                return self if comp.leading_term()[1] > 0 else self * -1
        return self


def apply_field(f: VectorField, p: Polynomial) -> Polynomial:
    if f.num_vars != p.num_vars:
        raise ValueError("vector field and polynomial use different numbers of variables")
    out = Polynomial.zero(p.num_vars)
    for j, comp in enumerate(f.components):
        if comp.terms:
            d = p.diff(j)
            if d.terms:
                out = out + comp * d
    return out


def monomials(num_vars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree ``degree``, in descending grlex order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, slots - 1)

    if num_vars == 0:
        return [()] if degree == 0 else []
    rec([], degree, num_vars)
    return out
