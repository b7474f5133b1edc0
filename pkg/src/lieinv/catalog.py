"""Named algebras with their expected invariant counts and known invariants.

Table-style entries are transcribed as 1-based constants ``C_ij^k``; the
others are assembled from a Levi factor, a representation and a radical.
A coefficient written as the string ``"p"`` is the entry's parameter.
"""

from __future__ import annotations

import difflib
import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .core import LieAlgebra, abelian, matrix_lie_algebra
from .reps import (
    RepLabel,
    Representation,
    adjoint_rep,
    rep_direct_sum,
    rep_direct_sum_all,
    sl2_irrep,
    sl2_standard,
    so3_R4,
    so3_odd_irrep,
    so3_standard,
    trivial_rep,
)
from .formats import parse_rep_label
from .semidirect import LeviPair, levi_pair_from_algebra, semidirect_sum

Half = Fraction(1, 2)
DOCUMENTED_P = (Fraction(-3), Fraction(-1), Half, Fraction(1), Fraction(2))


class UnknownEntry(KeyError):
    def __init__(self, name: str, suggestions: list[str]):
        hint = f"; did you mean {', '.join(suggestions)}?" if suggestions else ""
        super().__init__(f"unknown catalog entry {name!r}{hint}")
        self.name = name
        self.suggestions = suggestions

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class CatalogEntry:
    """A named algebra; ``expected_N`` is an int or ``"derived"``."""

    name: str
    description: str
    builder: Callable[..., LieAlgebra]
    expected_N: int | str
    levi_dim: int | None = None
    rep: str | None = None
    params: tuple[str, ...] = ()
    defaults: dict = field(default_factory=dict)
    ignored_params: tuple[str, ...] = ()
    known_invariants: tuple[str, ...] = ()
    provenance: str = ""
    notes: tuple[str, ...] = ()
    pair_builder: Callable[..., LeviPair] | None = None

    def bind(self, params: dict | None = None) -> dict[str, Fraction]:
        params = dict(params or {})
        for key in params:
            if key not in self.params and key not in self.ignored_params:
                raise ValueError(f"{self.name} takes no parameter {key!r}")
        out = {k: Fraction(v) for k, v in self.defaults.items()}
        out.update({k: Fraction(v) for k, v in params.items() if k in self.params})
        return out

    def flags(self, params: dict | None = None) -> list[str]:
        bound = self.bind(params)
        if "p" in bound and bound["p"] == 0:
            return ["p = 0 lies outside the documented parameter range"]
        return []

    def build(self, params: dict | None = None) -> LieAlgebra:
        bound = self.bind(params)
        for flag in self.flags(params):
            warnings.warn(f"{self.name}: {flag}", stacklevel=2)
        return self.builder(**bound)

    def levi_pair(self, params: dict | None = None) -> LeviPair | None:
        bound = self.bind(params)
        if self.pair_builder is not None:
            return self.pair_builder(**bound)
        if self.levi_dim is None:
            return None
        label = parse_rep_label(self.rep) if self.rep else None
        return levi_pair_from_algebra(self.builder(**bound), self.levi_dim, label, self.name)

    def rep_label(self) -> RepLabel | None:
        return parse_rep_label(self.rep) if self.rep else None


def _constants(dim: int, consts, name: str, basis=None, **params) -> LieAlgebra:
    table: dict[tuple[int, int], list] = {}
    for i, j, k, c in consts:
        if isinstance(c, str):
            c = params[c]
        if c:
            table.setdefault((i, j), []).append((k, Fraction(c)))
    return LieAlgebra.from_brackets(dim, table, basis=basis, name=name)


def _pair_algebra(make_pair: Callable[..., LeviPair], name: str) -> Callable[..., LieAlgebra]:
    def build(**params):
        return semidirect_sum(make_pair(**params), name=name)

    return build


# -- fixed pieces ---------------------------------------------------------------------

SL2 = [(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)]
SO3 = [(1, 2, 3, 1), (1, 3, 2, -1), (2, 3, 1, 1)]
D_HALF = [(1, 4, 4, 1), (1, 5, 5, -1), (2, 5, 4, 1), (3, 4, 5, 1)]
TWO_D_HALF = D_HALF + [(1, 6, 6, 1), (1, 7, 7, -1), (2, 7, 6, 1), (3, 6, 7, 1)]
R4 = [
    (1, 4, 7, Half), (1, 5, 6, Half), (1, 6, 5, -Half), (1, 7, 4, -Half),
    (2, 4, 5, Half), (2, 5, 4, -Half), (2, 6, 7, Half), (2, 7, 6, -Half),
    (3, 4, 6, Half), (3, 5, 7, -Half), (3, 6, 4, -Half), (3, 7, 5, Half),
]  # fmt: skip

TABLE1 = {
    "T1_1": (6, "D(1/2)+D0", (), SL2 + D_HALF + [(4, 6, 4, 1), (5, 6, 5, 1)]),
    "T1_2": (8, "R4+D0", (), SO3 + R4 + [(4, 8, 4, 1), (5, 8, 5, 1), (6, 8, 6, 1), (7, 8, 7, 1)]),
    "T1_3": (8, "R4+D0", ("p",), SO3 + R4 + [
        (4, 8, 4, "p"), (4, 8, 6, -1), (5, 8, 5, "p"), (5, 8, 7, -1),
        (6, 8, 4, 1), (6, 8, 6, "p"), (7, 8, 5, 1), (7, 8, 7, "p"),
    ]),
    "T1_4": (8, "2D(1/2)+D0", (), SL2 + TWO_D_HALF + [
        (4, 8, 4, 1), (5, 8, 5, 1), (6, 8, 4, 1), (6, 8, 6, 1), (7, 8, 5, 1), (7, 8, 7, 1),
    ]),
    "T1_5": (8, "2D(1/2)+D0", ("p",), SL2 + TWO_D_HALF + [(4, 8, 4, 1), (5, 8, 5, 1), (6, 8, 6, "p"), (7, 8, 7, "p")]),
    "T1_6": (8, "2D(1/2)+D0", ("p",), SL2 + TWO_D_HALF + [
        (4, 8, 4, "p"), (4, 8, 6, -1), (5, 8, 5, "p"), (5, 8, 7, -1),
        (6, 8, 4, 1), (6, 8, 6, "p"), (7, 8, 5, 1), (7, 8, 7, "p"),
    ]),
    "T1_7": (8, "D(1/2)+3D0", (), SL2 + D_HALF + [(4, 6, 4, 1), (5, 6, 5, 1), (7, 8, 8, 1)]),
    "T1_8": (8, "D(3/2)+D0", (), SL2 + [
        (1, 4, 4, 3), (1, 5, 5, 1), (1, 6, 6, -1), (1, 7, 7, -3),
        (2, 5, 4, 3), (2, 6, 5, 2), (2, 7, 6, 1), (3, 4, 5, 1), (3, 5, 6, 2), (3, 6, 7, 3),
        (4, 8, 4, 1), (5, 8, 5, 1), (6, 8, 6, 1), (7, 8, 7, 1),
    ]),
}  # fmt: skip

MINUS_READING = "the printed constant C_17^7 = '-' is read as -1; it is the only value passing the Jacobi identity"


def _table1_entry(name: str, row: int) -> CatalogEntry:
    dim, rep, params, consts = TABLE1[name]
    notes = []
    if name in ("T1_4", "T1_5"):
        notes.append(MINUS_READING)
    ignored = ()
    if name in ("T1_2", "T1_4"):
        ignored = ("p",)
        notes.append("parameter-free as printed; a supplied p is accepted and ignored")
    if params:
        notes.append("p = 0 is flagged: the printed family is not asserted there")

    def build(**bound):
        return _constants(dim, consts, name, **bound)

    return CatalogEntry(
        name,
        f"Table 1 row {row}: {'sl(2,R)' if consts[:3] == SL2 else 'so(3)'} with {rep}, dimension {dim}",
        build,
        0,
        levi_dim=3,
        rep=rep,
        params=params,
        defaults={"p": Fraction(1)} if params else {},
        ignored_params=ignored,
        provenance=f"Table 1, row {row}",
        notes=tuple(notes),
    )


# -- assembled entries ------------------------------------------------------------------


def _so3_ad_3L1():
    s = so3_standard()
    return LeviPair(s, adjoint_rep(s), abelian(3), "so3_ad_3L1")


def _sl2_half_trivial():
    s = sl2_standard()
    return rep_direct_sum(sl2_irrep(1), trivial_rep(s, 1))


def _sl2_h1():
    h1 = LieAlgebra.from_brackets(3, {(1, 2): [(3, 1)]})
    return LeviPair(sl2_standard(), _sl2_half_trivial(), h1, "sl2_h1")


def _sl2_A33():
    a33 = LieAlgebra.from_brackets(3, {(1, 3): [(1, 1)], (2, 3): [(2, 1)]})
    return LeviPair(sl2_standard(), _sl2_half_trivial(), a33, "sl2_A33")


def _abelian_pair(s: LieAlgebra, parts, name: str):
    def make():
        R = rep_direct_sum_all(parts(), s)
        return LeviPair(s, R, abelian(R.module_dim), name)

    return make


def _so3_R4_3D0_r():
    s = so3_standard()
    R = rep_direct_sum(so3_R4(), trivial_rep(s, 3))
    # radical basis X4..X10, written 1-based within the radical
    r = LieAlgebra.from_brackets(7, {
        (1, 5): [(1, 1)], (2, 5): [(2, 1)], (3, 5): [(3, 1)], (4, 5): [(4, 1)],
        (1, 6): [(3, 1)], (2, 6): [(4, 1)], (3, 6): [(1, -1)], (4, 6): [(2, -1)],
        (6, 7): [(7, 1)],
    })  # fmt: skip
    return LeviPair(s, R, r, "so3_R4_3D0_r")


def _sl2_D1_D12_5L1():
    s = sl2_standard()
    return LeviPair(s, rep_direct_sum(sl2_irrep(2), sl2_irrep(1)), abelian(5), "sl2_D1_D12_5L1")


SCHRODINGER_BASIS = ("J1", "J2", "J3", "P0", "C", "D", "K1", "K2", "K3", "P1", "P2", "P3")


def _rotations() -> list[tuple[str, str, str, int]]:
    """``[J_i, V_j] = eps_ijk V_k`` for V = J, K, P."""
    out = []
    for i, j, k in itertools.permutations(range(3)):
        e = 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        for g in ("J", "K", "P"):
            if g != "J" or i < j:
                out.append((f"J{i + 1}", f"{g}{j + 1}", f"{g}{k + 1}", e))
    return out


def schrodinger_brackets() -> list[tuple[str, str, str, int]]:
    """Brackets ``[a, b] = c * z`` as ``(a, b, z, c)``, with ``[D, K_j] = K_j``."""
    out = _rotations()
    for i in range(1, 4):
        out += [
            (f"K{i}", "P0", f"P{i}", 1),
            (f"P{i}", "D", f"P{i}", 1),
            ("D", f"K{i}", f"K{i}", 1),
            ("C", f"P{i}", f"K{i}", 1),
        ]
    out += [("D", "P0", "P0", -2), ("C", "P0", "D", -1), ("C", "D", "C", -2)]
    return out


def _labelled(basis, brackets, name) -> LieAlgebra:
    pos = {b: t + 1 for t, b in enumerate(basis)}
    table: dict[tuple[int, int], list] = {}
    for a, b, z, c in brackets:
        i, j = pos[a], pos[b]
        table.setdefault((i, j), []).append((pos[z], c))
    return LieAlgebra.from_brackets(len(basis), table, basis=basis, name=name)


def _schrodinger():
    return _labelled(SCHRODINGER_BASIS, schrodinger_brackets(), "schrodinger_3p1")


GALILEI_BASIS = ("J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "P0")


def _galilei():
    br = _rotations()
    br += [(f"K{i}", "P0", f"P{i}", 1) for i in range(1, 4)]
    return _labelled(GALILEI_BASIS, br, "galilei_3p1")


def sl_matrices(n: int) -> list[linalg.Matrix]:
    """Basis of sl(n): ``E_ij`` for ``i != j`` then ``E_ii - E_{i+1,i+1}``."""
    mats = []
    for i, j in itertools.permutations(range(n), 2):
        m = linalg.zeros(n, n)
        m[i][j] = Fraction(1)
        mats.append(m)
    for i in range(n - 1):
        m = linalg.zeros(n, n)
        m[i][i], m[i + 1][i + 1] = Fraction(1), Fraction(-1)
        mats.append(m)
    return mats


def _sa_pair(n):
    if Fraction(n).denominator != 1 or n < 2:
        raise ValueError("sa(n) needs n >= 2")
    n = int(n)
    mats = sl_matrices(n)
    s = matrix_lie_algebra(mats, name=f"sl{n}")
    R = Representation.from_matrices(s, mats)
    return LeviPair(s, R, abelian(n), f"sa_{n}")


def _sa(n):
    return semidirect_sum(_sa_pair(n), name=f"sa_{int(n)}")


SL2_H1_CUBIC = "2*x1*x4*x5 + 4*x2*x3*x6 + 2*x2*x5^2 - 2*x3*x4^2 + x1^2*x6"
P4 = (
    "K1^2*P2^2 + K1^2*P3^2 + K2^2*P1^2 + K2^2*P3^2 + K3^2*P1^2 + K3^2*P2^2"
    " - 2*P1*P2*K1*K2 - 2*P1*P3*K1*K3 - 2*P2*P3*K2*K3"
)


def _entries() -> list[CatalogEntry]:
    so3, sl2 = so3_standard, sl2_standard
    out = [
        CatalogEntry(
            "so3_ad_3L1", "so(3) acting on 3L1 by the adjoint representation",
            _pair_algebra(_so3_ad_3L1, "so3_ad_3L1"), 2, 3, "R3",
            known_invariants=("x4^2 + x5^2 + x6^2", "x1*x4 + x2*x5 + x3*x6"),
            provenance="worked example of the coadjoint method", pair_builder=_so3_ad_3L1,
        ),
        CatalogEntry(
            "sl2_h1", "sl(2,R) acting on the Heisenberg algebra h1 by D(1/2)+D0",
            _pair_algebra(_sl2_h1, "sl2_h1"), 2, 3, "D(1/2)+D0",
            known_invariants=("x6", SL2_H1_CUBIC),
            provenance="semidirect sums, Heisenberg radical", pair_builder=_sl2_h1,
        ),
        CatalogEntry(
            "sl2_A33", "sl(2,R) acting on A_{3,3} by D(1/2)+D0",
            _pair_algebra(_sl2_A33, "sl2_A33"), 0, 3, "D(1/2)+D0",
            provenance="semidirect sums, A_{3,3} radical", pair_builder=_sl2_A33,
        ),
    ]
    out += [_table1_entry(name, row) for row, name in enumerate(TABLE1, start=1)]
    table2 = [
        ("L10_14", so3, "R7", lambda: [so3_odd_irrep(3)]),
        ("L10_15", so3, "R4+R3", lambda: [so3_R4(), adjoint_rep(so3_standard())]),
        ("L10_27", sl2, "D(3)", lambda: [sl2_irrep(6)]),
        ("L10_28", sl2, "D(2)+D(1/2)", lambda: [sl2_irrep(4), sl2_irrep(1)]),
        ("L10_29", sl2, "D(3/2)+D(1)", lambda: [sl2_irrep(3), sl2_irrep(2)]),
        ("L10_30", sl2, "D(1)+2D(1/2)", lambda: [sl2_irrep(2), sl2_irrep(1), sl2_irrep(1)]),
    ]
    for name, s, rep, parts in table2:
        make = _abelian_pair(s(), parts, name)
        out.append(CatalogEntry(
            name, f"{s().name or 'Levi factor'} acting on 7L1 by {rep}",
            _pair_algebra(make, name), 4, 3, rep,
            provenance="Table 2", pair_builder=make,
            notes=("so(3) irreps other than R4 are realised up to equivalence",) if rep == "R7" else (),
        ))
    out += [
        CatalogEntry(
            "so3_R4_3D0_r", "so(3) acting by R4+3D0 on an indecomposable 7-dimensional solvable radical",
            _pair_algebra(_so3_R4_3D0_r, "so3_R4_3D0_r"), 0, 3, "R4+3D0",
            provenance="ten-dimensional so(3) example", pair_builder=_so3_R4_3D0_r,
        ),
        CatalogEntry(
            "sl2_D1_D12_5L1", "sl(2,R) acting on 5L1 by D(1)+D(1/2)",
            _pair_algebra(_sl2_D1_D12_5L1, "sl2_D1_D12_5L1"), 2, 3, "D(1)+D(1/2)",
            known_invariants=("4*x4*x6 - x5^2", "x4*x8^2 - x5*x7*x8 + x6*x7^2"),
            provenance="reducible-representation example", pair_builder=_sl2_D1_D12_5L1,
        ),
        CatalogEntry(
            "schrodinger_3p1", "Schrodinger algebra in 3+1 dimensions, Levi factor so(3)+sl(2,R) first",
            lambda: _schrodinger(), "derived", levi_dim=6,
            known_invariants=(P4,),
            provenance="Schrodinger algebra",
            notes=(
                "the printed bracket [D, K_j] = D_j is read as [D, K_j] = K_j; it is the only reading passing the Jacobi identity",
                "the printed generator list {J_i, K_i, P_i, P0, C, D} has 12 elements; the algebra is 12-dimensional",
            ),
        ),
        CatalogEntry(
            "galilei_3p1", "Galilei algebra in 3+1 dimensions without central extension",
            lambda: _galilei(), "derived", levi_dim=3,
            known_invariants=("P1^2 + P2^2 + P3^2",),
            provenance="Galilei remark",
            notes=("brackets are the standard ones: rotations act on J, K, P and [K_i, P0] = P_i",),
        ),
        CatalogEntry(
            "sa_n", "special affine algebra sl(n,R) acting on R^n",
            _sa, 1, params=("n",), defaults={"n": Fraction(2)},
            provenance="special affine algebras",
            pair_builder=_sa_pair,
            notes=("n must be an integer >= 2",),
        ),
    ]
    return out


_REGISTRY: dict[str, CatalogEntry] | None = None


def catalog_entries() -> list[CatalogEntry]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {e.name: e for e in _entries()}
    return list(_REGISTRY.values())


def catalog_lookup(name: str) -> CatalogEntry:
    catalog_entries()
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownEntry(name, difflib.get_close_matches(name, list(_REGISTRY), n=3, cutoff=0.5)) from None


def documented_parameters(entry: CatalogEntry) -> list[dict[str, Fraction]]:
    """Parameter bindings the entry is tested at."""
    if entry.name == "sa_n":
        return [{"n": Fraction(2)}, {"n": Fraction(3)}]
    if "p" in entry.params:
        return [{"p": p} for p in DOCUMENTED_P]
    return [{}]
