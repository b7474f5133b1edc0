import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieinv.catalog import catalog_entries
from lieinv.core import LieAlgebra, default_basis
from lieinv.formats import (
    ParseError,
    coordinate_names,
    emit_algebra,
    emit_polynomial,
    format_rational,
    parse_algebra,
    parse_algebra_file,
    parse_polynomial,
    parse_rational,
    parse_rep_label,
)
from lieinv.polynomial import Polynomial
from lieinv.reps import Sl2Irrep, So3Odd, So3R4, Trivial

from strategies import bracket_tables, polynomials, small_fractions

SO3_FILE = {
    "version": 1,
    "name": "so3",
    "dim": 3,
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}]},
        {"i": 2, "j": 3, "terms": [{"k": 1, "c": 1}]},
        {"i": 3, "j": 1, "terms": [{"k": 2, "c": 1}]},
    ],
}


def same_algebra(a, b):
    return (a.dim, a.basis, a.brackets, a.name) == (b.dim, b.basis, b.brackets, b.name)


def test_parse_so3():
    g = parse_algebra(json.dumps(SO3_FILE))
    assert g.basis == default_basis(3)
    # the (3, 1) record is stored as [X1, X3] = -X2
    assert g.bracket_terms(0, 2) == ((1, Fraction(-1)),)


@pytest.mark.parametrize("entry", catalog_entries(), ids=lambda e: e.name)
def test_catalog_round_trip(entry):
    g = entry.build()
    data = emit_algebra(g)
    back = parse_algebra(data)
    assert same_algebra(g, back)
    assert emit_algebra(back) == data


@settings(max_examples=200)
@given(bracket_tables(max_dim=7))
def test_random_algebra_round_trip(alg):
    data = emit_algebra(alg)
    assert same_algebra(parse_algebra(data), alg)
    assert emit_algebra(parse_algebra(data)) == data


def test_emit_is_compact_and_sorted():
    data = emit_algebra(parse_algebra(json.dumps(SO3_FILE)), levi_dim=3)
    text = data.decode()
    assert " " not in text and "\n" not in text
    assert list(json.loads(text)) == sorted(json.loads(text))
    assert json.loads(text)["levi"] == {"dim": 3}


def test_parameters_and_overrides():
    doc = dict(SO3_FILE, params={"p": "1/2"})
    doc["brackets"] = [{"i": 1, "j": 2, "terms": [{"k": 3, "c": {"param": "p"}}]}]
    f = parse_algebra_file(json.dumps(doc))
    assert f.params == {"p": Fraction(1, 2)}
    assert f.algebra.bracket_terms(0, 1) == ((2, Fraction(1, 2)),)
    g = parse_algebra(json.dumps(doc), {"p": "-3"})
    assert g.bracket_terms(0, 1) == ((2, Fraction(-3)),)


def test_levi_block():
    doc = dict(SO3_FILE, levi={"dim": 3, "rep": "D(1)"})
    f = parse_algebra_file(json.dumps(doc))
    assert f.levi_dim == 3
    assert str(f.rep) == "D(1)"


def _error(doc):
    text = doc if isinstance(doc, (str, bytes)) else json.dumps(doc)
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    return info.value, text


@pytest.mark.parametrize(
    "mutate, reason",
    [
        (lambda d: d.update(extra=1), "unknown field"),
        (lambda d: d.pop("dim"), "missing field"),
        (lambda d: d.update(version=2), "unsupported version"),
        (lambda d: d.update(dim=0), "dim must be"),
        (lambda d: d.update(basis=["a", "a", "b"]), "distinct"),
        (lambda d: d["brackets"][1].update(i=9), "out of range"),
        (lambda d: d["brackets"][1].update(j=2), "with itself"),
        (lambda d: d["brackets"].append({"i": 2, "j": 1, "terms": []}), "duplicate bracket"),
        (lambda d: d["brackets"][2]["terms"][0].update(c="1/0"), "zero denominator"),
        (lambda d: d["brackets"][2]["terms"][0].update(c={"param": "q"}), "unresolved parameter"),
        (lambda d: d["brackets"][2]["terms"][0].update(c=True), "booleans"),
        (lambda d: d["brackets"][0]["terms"].append({"k": 3, "c": 2}), "repeated index"),
        (lambda d: d.update(levi={"dim": 3, "rep": "D(1/3)"}), "bad representation label"),
    ],
)
def test_file_errors_carry_reason_and_offset(mutate, reason):
    doc = json.loads(json.dumps(SO3_FILE))
    mutate(doc)
    err, text = _error(doc)
    assert reason in err.reason
    assert 0 <= err.offset <= len(text.encode())
    assert f"at byte {err.offset}" in str(err)


def test_error_offset_points_at_the_field():
    text = '{"version": 1, "dim": 3, "brackets": [], "bogus": 5}'
    err, _ = _error(text)
    assert text.encode()[err.offset :].startswith(b'"bogus"') or text.encode()[err.offset :].startswith(b"5")


def test_malformed_json_and_encoding():
    err, _ = _error('{"version": 1,')
    assert "malformed JSON" in err.reason
    err, _ = _error('{"a": 1, "a": 2}')
    assert "duplicate key" in err.reason
    with pytest.raises(ParseError) as info:
        parse_algebra(b'{"name": "\xff"}')
    assert info.value.offset == 10


def test_offsets_count_bytes_not_characters():
    text = '{"name": "éé", "version": 1, "dim": 2, "brackets": [], "zz": 0}'
    err, _ = _error(text)
    assert text.encode()[err.offset :].startswith(b'"zz"') or text.encode()[err.offset :].startswith(b"0")


# -- polynomials ----------------------------------------------------------------


def test_emit_so3_casimir():
    basis = default_basis(6)
    P = parse_polynomial("x4^2 + x5^2 + x6^2", basis)
    assert emit_polynomial(P, basis) == "x4^2 + x5^2 + x6^2"
    assert emit_polynomial(Polynomial(6, {})) == "0"


def test_emit_signs_and_fractions():
    basis = default_basis(3)
    P = parse_polynomial("-x1*x2 + 1/2*x3 - 3", basis)
    assert emit_polynomial(P, basis) == "-x1*x2 + 1/2*x3 - 3"


@settings(max_examples=200)
@given(polynomials(num_vars=10, max_degree=6))
def test_polynomial_round_trip(P):
    basis = default_basis(10)
    text = emit_polynomial(P, basis)
    assert parse_polynomial(text, basis) == P
    assert emit_polynomial(parse_polynomial(text, basis), basis) == text


def test_polynomial_parser_accepts_labels_and_parentheses():
    basis = ("H", "E", "F")
    assert coordinate_names(basis) == ["H", "E", "F"]
    P = parse_polynomial("(H + E)^2 - 2*H*E", basis)
    assert P == parse_polynomial("H^2 + E^2", basis)
    assert parse_polynomial("x3", basis) == parse_polynomial("F", basis)


@pytest.mark.parametrize(
    "text, reason, offset",
    [
        ("x1 x2", "implicit multiplication", 3),
        ("x1 + ", "unexpected end of input", 5),
        ("x9", "unknown variable", 0),
        ("1/0", "zero denominator", 2),
        ("(x1 + x2", "expected ')'", 8),
        ("x1^", "expected an integer", 3),
        ("x1^20000", "exceeds", 3),
        ("x1 ) ", "unexpected ')'", 3),
    ],
)
def test_polynomial_errors(text, reason, offset):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, default_basis(3))
    assert reason in info.value.reason
    assert info.value.offset == offset


@given(small_fractions)
def test_rational_round_trip(c):
    assert parse_rational(format_rational(c)) == c


# -- representation labels ---------------------------------------------------------


@pytest.mark.parametrize(
    "text, summands, dim",
    [
        ("D(1/2)", (Sl2Irrep(1),), 2),
        ("D(1)", (Sl2Irrep(2),), 3),
        ("D0", (Trivial(1),), 1),
        ("3D0", (Trivial(3),), 3),
        ("2D(1/2)+D0", (Sl2Irrep(1), Sl2Irrep(1), Trivial(1)), 5),
        ("R4", (So3R4(),), 4),
        ("R5 + 2D0", (So3Odd(2), Trivial(2)), 7),
        ("D(0)", (Trivial(1),), 1),
    ],
)
def test_rep_labels(text, summands, dim):
    label = parse_rep_label(text)
    assert label.summands == summands
    assert label.dim == dim
    assert parse_rep_label(str(label)) == label


@pytest.mark.parametrize("text", ["", "D(1/3)", "R2", "R6", "0D0", "D(1)+", "D(1) D0", "E7"])
def test_bad_rep_labels(text):
    with pytest.raises(ParseError):
        parse_rep_label(text)


def test_irreducibility_from_labels():
    assert parse_rep_label("D(3/2)").is_irreducible()
    assert parse_rep_label("D0").is_irreducible()
    assert not parse_rep_label("2D0").is_irreducible()
    assert parse_rep_label("D(1)+D0").has_trivial()
    assert not parse_rep_label("R4").has_trivial()
