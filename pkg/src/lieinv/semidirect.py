"""Semidirect sums ``s ⋉_R r`` and the affine extension that preserves N = 0."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .core import LieAlgebra, default_basis, direct_sum, is_abelian, is_nilpotent, subalgebra_on
from .reps import Representation, RepLabel, module_check, rep_direct_sum, trivial_rep


class ModuleError(ValueError):
    """The representation does not act on the radical by derivations."""


@dataclass(frozen=True)
class LeviPair:
    """Levi factor ``s``, its action ``R`` and the radical ``r``.

    In the assembled algebra the basis of ``s`` comes first, then ``r``.
    """

    s: LieAlgebra
    R: Representation
    r: LieAlgebra
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.R.algebra != self.s:
            raise ValueError("representation does not act by the given Levi factor")
        if self.R.module_dim != self.r.dim:
            raise ValueError(f"module dimension {self.R.module_dim} != radical dimension {self.r.dim}")

    @property
    def dim(self) -> int:
        return self.s.dim + self.r.dim

    @property
    def levi_indices(self) -> range:
        return range(self.s.dim)

    @property
    def radical_indices(self) -> range:
        return range(self.s.dim, self.dim)


def semidirect_sum(p: LeviPair, basis=None, name: str | None = None) -> LieAlgebra:
    """Assemble ``s ⋉_R r``; mixed brackets are ``[X_i, Y_a] = rho(X_i) Y_a``."""
    if not module_check(p.R, p.r):
        raise ModuleError("representation does not act by derivations of the radical; Jacobi would fail")
    ds = p.s.dim
    table = dict(p.s.brackets)
    for i in range(ds):
        m = p.R.matrices[i]
        for a in range(p.r.dim):
            terms = tuple((ds + b, m[b][a]) for b in range(p.r.dim) if m[b][a] != 0)
            if terms:
                table[(i, ds + a)] = terms
    for (a, b), terms in p.r.brackets.items():
        table[(ds + a, ds + b)] = tuple((ds + k, c) for k, c in terms)
    labels = basis or _labels(p)
    return LieAlgebra(p.dim, tuple(labels), dict(sorted(table.items())), name if name is not None else p.name)


def _labels(p: LeviPair):
    labels = tuple(p.s.basis) + tuple(p.r.basis)
    if p.r.basis == default_basis(p.r.dim) or len(set(labels)) < len(labels):
        return default_basis(p.dim)
    return labels


def affine_r2() -> LieAlgebra:
    """Two-dimensional non-abelian algebra ``[Y, Z] = Z``."""
    return LieAlgebra.from_brackets(2, {(1, 2): [(2, 1)]}, basis=("Y", "Z"), name="r2")


def extend_with_affine(p: LeviPair, k: int) -> LeviPair:
    """Replace ``(R, r)`` by ``(R + 2k D0, r + k r2)``; pairs are appended ``Y, Z``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return p
    r = p.r
    for _ in range(k):
        r = direct_sum(r, affine_r2())
    r = r.relabel(default_basis(r.dim))
    R = rep_direct_sum(p.R, trivial_rep(p.s, 2 * k))
    return LeviPair(p.s, R, r, name=f"{p.name}+{k}r2" if p.name else "")


def levi_pair_from_algebra(alg: LieAlgebra, levi_dim: int, label: RepLabel | None = None, name: str = "") -> LeviPair:
    """Split an algebra whose first ``levi_dim`` basis elements span the Levi factor.

    Raises ``ValueError`` if either block is not a subalgebra or ``[s, r]``
    leaves ``r``.
    """
    n = alg.dim
    s = subalgebra_on(alg, list(range(levi_dim)), name="s")
    r = subalgebra_on(alg, list(range(levi_dim, n)), name="r")
    m = n - levi_dim
    mats = []
    for i in range(levi_dim):
        mat = linalg.zeros(m, m)
        for a in range(m):
            for k, c in alg.bracket_terms(i, levi_dim + a):
                if k < levi_dim:
                    raise ValueError("the Levi factor does not preserve the radical")
                mat[k - levi_dim][a] = c
        mats.append(mat)
    R = Representation.from_matrices(s, mats, label)
    if m == 0:
        R = trivial_rep(s, 0)
    return LeviPair(s, R, r, name or alg.name)


@dataclass
class LeviReport:
    module_ok: bool
    irreducible: bool | None
    has_trivial: bool | None
    radical_abelian: bool
    radical_nilpotent: bool
    flags: list[str]
    notes: list[str]

    @property
    def clean(self) -> bool:
        return not self.flags

    def to_dict(self) -> dict:
        return {
            "clean": self.clean,
            "flags": self.flags,
            "has_trivial_summand": self.has_trivial,
            "irreducible": self.irreducible,
            "module_check": self.module_ok,
            "notes": self.notes,
            "radical_abelian": self.radical_abelian,
            "radical_nilpotent": self.radical_nilpotent,
        }


def validate_levi(p: LeviPair) -> LeviReport:
    """Structural checks on a Levi pair.

    Flags an irreducible action on a non-abelian radical, an action with no
    trivial summand on a non-nilpotent radical, and a failed derivation check.
    """
    flags, notes = [], []
    module_ok = module_check(p.R, p.r)
    ab, nil = is_abelian(p.r), is_nilpotent(p.r)
    label = p.R.label
    irreducible = has_trivial = None
    if label is None:
        notes.append("no representation label; irreducibility checks skipped")
    else:
        irreducible, has_trivial = label.is_irreducible(), label.has_trivial()
        if irreducible and not ab:
            flags.append("irreducible representation but non-abelian radical")
        if not has_trivial and not nil:
            flags.append("no trivial summand but non-nilpotent radical")
    if not module_ok:
        flags.append("representation does not act by derivations of the radical")
    return LeviReport(module_ok, irreducible, has_trivial, ab, nil, flags, notes)


def codim_one_extension(R: Representation, derivation, name: str = "") -> LeviPair:
    """Radical ``V + <T>`` with ``V`` abelian, ``[T, v] = D v`` and ``s`` fixing ``T``.

    ``V`` is the module of ``R``; ``D`` must commute with the action. When
    ``D`` is invertible, ``[r, r] = V`` is an abelian ideal of codimension one.
    """
    m = R.module_dim
    D = linalg.to_matrix(derivation)
    if len(D) != m or any(len(row) != m for row in D):
        raise ValueError("derivation has the wrong size")
    table = {}
    for a in range(m):
        terms = [(b + 1, -D[b][a]) for b in range(m) if D[b][a]]
        if terms:
            table[(a + 1, m + 1)] = terms
    r = LieAlgebra.from_brackets(m + 1, table)
    return LeviPair(R.algebra, rep_direct_sum(R, trivial_rep(R.algebra, 1)), r, name)
