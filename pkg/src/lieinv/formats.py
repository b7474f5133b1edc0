"""Text formats: algebra files (JSON), polynomial expressions, representation labels.

Algebra file, version 1::

    {"version": 1, "name": "so3", "dim": 3, "basis": ["X1", "X2", "X3"],
     "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}]}, ...],
     "params": {"p": "1/2"},
     "levi": {"dim": 3, "rep": "D(1/2)+D0"}}

Indices are 1-based. A coefficient ``c`` is a JSON integer, a string
``"p/q"``, or ``{"param": "p"}`` bound through ``params``. ``basis``,
``params`` and ``levi`` are optional; any other key is an error.

Polynomial grammar (whitespace ignored, no implicit multiplication)::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' int)?
    atom   := int ('/' posint)? | variable | '(' expr ')'

Variables are basis labels, ``x<k>``, or the coordinate names produced by
:func:`coordinate_names`.

Representation labels: ``item ('+' item)*`` with ``item := posint? base``
and ``base := 'D(' J ')' | 'D0' | 'R4' | 'R' odd``; ``J`` is an integer or
``n/2``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import LieAlgebra, default_basis
from .polynomial import Polynomial
from .reps import RepLabel, Sl2Irrep, So3Odd, So3R4, Trivial

FORMAT_VERSION = 1
MAX_EXPONENT = 10_000

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")


class ParseError(ValueError):
    """Malformed input; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, reason: str, offset: int = 0):
        super().__init__(f"{reason} (at byte {offset})")
        self.reason = reason
        self.offset = offset


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def parse_rational(s: str) -> Fraction:
    if not _RATIONAL.match(s.strip()):
        raise ValueError(f"not a rational number: {s!r}")
    num, _, den = s.strip().partition("/")
    if den and int(den) == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- algebra files ---------------------------------------------------------------


@dataclass
class AlgebraFile:
    algebra: LieAlgebra
    name: str = ""
    params: dict[str, Fraction] = field(default_factory=dict)
    levi_dim: int | None = None
    rep: RepLabel | None = None


def _locate(text: str, path: Sequence) -> int:
    """Character offset of the JSON value at ``path`` (best effort)."""
    dec = json.JSONDecoder()
    ws = re.compile(r"\s*")

    def skip(i):
        return ws.match(text, i).end()

    try:
        i = skip(0)
        for key in path:
            if text[i] == "{":
                i = skip(i + 1)
                while text[i] != "}":
                    k, i = dec.raw_decode(text, i)
                    i = skip(skip(i) + 1)
                    if k == key:
                        break
                    _, i = dec.raw_decode(text, i)
                    i = skip(i)
                    if text[i] == ",":
                        i = skip(i + 1)
                else:
                    return i
            elif text[i] == "[":
                i = skip(i + 1)
                for _ in range(key):
                    _, i = dec.raw_decode(text, i)
                    i = skip(skip(i) + 1)
            else:
                return i
        return i
    except (IndexError, ValueError, TypeError):
        return 0


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def parse_algebra_file(data: bytes | str, params: Mapping[str, object] | None = None) -> AlgebraFile:
    """Parse a version-1 algebra file; ``params`` override the file's own bindings."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    else:
        text = data

    def fail(reason, path=()):
        raise ParseError(reason, _byte_offset(text, _locate(text, path)))

    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", _byte_offset(text, exc.pos)) from None
    except ValueError as exc:
        raise ParseError(f"malformed JSON: {exc}", 0) from None
    if not isinstance(doc, dict):
        fail("top level must be an object")
    allowed = {"version", "name", "dim", "basis", "brackets", "params", "levi"}
    for key in doc:
        if key not in allowed:
            fail(f"unknown field {key!r}", [key])
    for key in ("version", "dim", "brackets"):
        if key not in doc:
            fail(f"missing field {key!r}")
    if doc["version"] != FORMAT_VERSION or isinstance(doc["version"], bool):
        fail(f"unsupported version {doc['version']!r}", ["version"])
    name = doc.get("name", "")
    if not isinstance(name, str):
        fail("name must be a string", ["name"])
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        fail("dim must be a positive integer", ["dim"])
    basis = doc.get("basis", list(default_basis(n)))
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) and _IDENT.fullmatch(b) for b in basis):
        fail(f"basis must be a list of {n} identifier labels", ["basis"])
    if len(set(basis)) != n:
        fail("basis labels must be distinct", ["basis"])

    bound: dict[str, Fraction] = {}
    raw_params = doc.get("params", {})
    if not isinstance(raw_params, dict):
        fail("params must be an object", ["params"])
    for key, val in raw_params.items():
        try:
            bound[key] = _coefficient(val, {})
        except (ValueError, ZeroDivisionError) as exc:
            fail(f"bad parameter {key!r}: {exc}", ["params", key])
    for key, val in (params or {}).items():
        bound[key] = val if isinstance(val, Fraction) else parse_rational(str(val))

    if not isinstance(doc["brackets"], list):
        fail("brackets must be a list", ["brackets"])
    table = {}
    for t, rec in enumerate(doc["brackets"]):
        where = ["brackets", t]
        if not isinstance(rec, dict) or set(rec) != {"i", "j", "terms"}:
            fail("bracket record must have exactly the fields i, j, terms", where)
        i, j = rec["i"], rec["j"]
        for key, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                fail(f"index {key}={v!r} out of range 1..{n}", where + [key])
        if i == j:
            fail("bracket of a generator with itself", where)
        key = (min(i, j), max(i, j))
        if key in table:
            fail(f"duplicate bracket for pair {key}", where)
        sign = 1 if i < j else -1
        if not isinstance(rec["terms"], list):
            fail("terms must be a list", where + ["terms"])
        terms, seen = [], set()
        for u, term in enumerate(rec["terms"]):
            tw = where + ["terms", u]
            if not isinstance(term, dict) or set(term) != {"k", "c"}:
                fail("term must have exactly the fields k, c", tw)
            k = term["k"]
            if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
                fail(f"index k={k!r} out of range 1..{n}", tw + ["k"])
            if k in seen:
                fail(f"repeated index k={k}", tw + ["k"])
            seen.add(k)
            try:
                c = _coefficient(term["c"], bound)
            except ZeroDivisionError:
                fail("zero denominator", tw + ["c"])
            except KeyError as exc:
                fail(f"unresolved parameter {exc.args[0]!r}", tw + ["c"])
            except ValueError as exc:
                fail(str(exc), tw + ["c"])
            terms.append((k, sign * c))
        table[key] = terms
    alg = LieAlgebra.from_brackets(n, table, basis=basis, name=name)

    levi_dim = rep = None
    if "levi" in doc:
        levi = doc["levi"]
        if not isinstance(levi, dict) or not set(levi) <= {"dim", "rep"} or "dim" not in levi:
            fail("levi must be an object with dim and optional rep", ["levi"])
        levi_dim = levi["dim"]
        if not isinstance(levi_dim, int) or isinstance(levi_dim, bool) or not 1 <= levi_dim <= n:
            fail("levi dim out of range", ["levi", "dim"])
        if "rep" in levi:
            if not isinstance(levi["rep"], str):
                fail("levi rep must be a string", ["levi", "rep"])
            try:
                rep = parse_rep_label(levi["rep"])
            except ParseError as exc:
                fail(f"bad representation label: {exc.reason}", ["levi", "rep"])
    return AlgebraFile(alg, name, bound, levi_dim, rep)


def _coefficient(val, bound: Mapping[str, Fraction]) -> Fraction:
    if isinstance(val, bool):
        raise ValueError("booleans are not coefficients")
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str):
        return parse_rational(val)
    if isinstance(val, dict) and set(val) == {"param"} and isinstance(val["param"], str):
        return bound[val["param"]]
    raise ValueError(f"coefficient must be an integer, a 'p/q' string or a parameter reference, not {val!r}")


def parse_algebra(data: bytes | str, params: Mapping[str, object] | None = None) -> LieAlgebra:
    """Algebra described by a version-1 file. The Jacobi identity is not checked here."""
    return parse_algebra_file(data, params).algebra


def _coef_json(c: Fraction):
    return c.numerator if c.denominator == 1 else format_rational(c)


def emit_algebra(alg: LieAlgebra, levi_dim: int | None = None, rep: RepLabel | None = None) -> bytes:
    """Canonical encoding: sorted keys, no insignificant whitespace."""
    doc = {
        "version": FORMAT_VERSION,
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis),
        "brackets": [
            {"i": i + 1, "j": j + 1, "terms": [{"k": k + 1, "c": _coef_json(c)} for k, c in terms]}
            for (i, j), terms in sorted(alg.brackets.items())
        ],
    }
    if levi_dim is not None:
        doc["levi"] = {"dim": levi_dim}
        if rep is not None:
            doc["levi"]["rep"] = str(rep)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


# -- polynomials --------------------------------------------------------------------


def coordinate_names(basis: Sequence[str]) -> list[str]:
    """Dual coordinate of each generator: ``X<k>`` becomes ``x<k>``, other labels are kept."""
    return [f"x{k + 1}" if lab == f"X{k + 1}" else lab for k, lab in enumerate(basis)]


class _PolyParser:
    def __init__(self, text: str, basis: Sequence[str]):
        self.text = text
        self.pos = 0
        self.n = len(basis)
        self.names = {}
        for k, name in enumerate(coordinate_names(basis)):
            self.names.setdefault(name, k)
        for k, name in enumerate(basis):
            self.names.setdefault(name, k)

    def error(self, reason, pos=None):
        raise ParseError(reason, _byte_offset(self.text, self.pos if pos is None else pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        out = self.term() * sign
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Polynomial:
        out = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                out = out * self.factor()
            elif c and (c.isalnum() or c in "_("):
                self.error("implicit multiplication is not allowed")
            else:
                return out

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            k = self.integer()
            if k > MAX_EXPONENT:
                self.error(f"exponent {k} exceeds {MAX_EXPONENT}", start)
            return base**k
        return base

    def atom(self) -> Polynomial:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                start = self.pos
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", start)
            return Polynomial.constant(self.n, Fraction(num, den))
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a number, variable or '('" if c else "unexpected end of input")
        name = m.group()
        k = self.names.get(name)
        if k is None:
            xm = re.fullmatch(r"x(\d+)", name)
            if xm and 1 <= int(xm.group(1)) <= self.n:
                k = int(xm.group(1)) - 1
        if k is None:
            self.error(f"unknown variable {name!r}")
        self.pos = m.end()
        return Polynomial.var(self.n, k)


def parse_polynomial(text: str, basis: Sequence[str]) -> Polynomial:
    return _PolyParser(text, basis).parse()


def emit_polynomial(P: Polynomial, basis: Sequence[str] | None = None) -> str:
    """Graded-lex order with explicit ``*`` and ``^``; ``"0"`` for the zero polynomial."""
    names = coordinate_names(basis) if basis is not None else [f"x{k + 1}" for k in range(P.num_vars)]
    if P.is_zero():
        return "0"
    parts = []
    for t, (e, c) in enumerate(P.sorted_terms()):
        factors = [names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x]
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if t == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# -- representation labels ------------------------------------------------------


def parse_rep_label(text: str) -> RepLabel:
    pos = 0
    summands = []

    def err(reason, at):
        raise ParseError(reason, _byte_offset(text, at))

    def skip(i):
        while i < len(text) and text[i].isspace():
            i += 1
        return i

    item = re.compile(r"(\d+)?\s*(?:D\s*\(\s*(\d+)\s*(?:/\s*(\d+)\s*)?\)|D0|R(\d+))")
    while True:
        pos = skip(pos)
        m = item.match(text, pos)
        if not m:
            err("expected a representation such as D(1/2), D0, R4 or R7", pos)
        mult = int(m.group(1)) if m.group(1) else 1
        if mult == 0:
            err("multiplicity must be positive", pos)
        if m.group(4):
            d = int(m.group(4))
            if d == 4:
                base = So3R4()
            elif d >= 3 and d % 2 == 1:
                base = So3Odd((d - 1) // 2)
            else:
                err(f"no real so(3) irrep R{d} is supported", m.start(4))
        elif m.group(2) is not None:
            num = int(m.group(2))
            if m.group(3) is not None:
                if int(m.group(3)) != 2:
                    err("spin must be an integer or a half-integer n/2", m.start(3))
                weight = num
            else:
                weight = 2 * num
            base = Sl2Irrep(weight) if weight else Trivial(1)
        else:
            base = Trivial(1)
        if isinstance(base, Trivial):
            summands.append(Trivial(mult))
        else:
            summands.extend([base] * mult)
        pos = skip(m.end())
        if pos == len(text):
            break
        if text[pos] != "+":
            err("expected '+'", pos)
        pos += 1
    return RepLabel(tuple(summands))
