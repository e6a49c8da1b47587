"""Transcribed reference cases (matrices and symbolic formulas) plus a parser
for the subscripted formula notation they use.

The transcriptions are data, not code: the comparison harness evaluates them
against the pipeline's own output and reports per-item verdicts, so any
transcription defect in the source text is quarantined in the fixture file
instead of leaking into correctness claims.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import ParseError
from .homogpoly import HomogPoly, parse_poly
from .parampoly import ParamPoly, ParamPolyRing
from .pipeline import SyzygyParams, compute_dims, param_names
from .polymatrix import PolyMatrix
from .scalars import QQ


def load_reference_cases() -> dict:
    text = resources.files("tangentrank").joinpath(
        "fixtures/reference_cases.json").read_text(encoding="utf-8")
    return json.loads(text)


# -- formula parsing ----------------------------------------------------------


def _tokenize(text: str):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("NUM", int(text[i:j])))
            i = j
        elif ch in ("l", "p") and i + 1 < n and (text[i + 1] == "_" or text[i + 1].isdigit()):
            j = i + 1
            if text[j] == "_":
                j += 1
                if j >= n or text[j] != "{":
                    raise ParseError(f"malformed subscript in {text!r}")
                j += 1
                k = j
                while k < n and text[k] != "}":
                    k += 1
                digits = text[j:k].replace(",", "")
                i2 = k + 1
            else:
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                digits = text[j:k]
                i2 = k
            if not digits.isdigit():
                raise ParseError(f"malformed name near index {i} in {text!r}")
            out.append(("NAME", f"{ch}{digits}"))
            i = i2
        elif ch in ("s", "t"):
            out.append(("VAR", ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
    return out


class _Bivar:
    """Polynomial in s, t with ParamPoly coefficients, keyed by (s_exp, t_exp)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ParamPolyRing, terms=None):
        self.ring = ring
        self.terms = terms or {}

    @classmethod
    def const(cls, ring, c: ParamPoly):
        return cls(ring, {(0, 0): c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            s = v if cur is None else cur + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _Bivar(self.ring, out)

    def __neg__(self):
        return _Bivar(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for (s1, t1), c1 in self.terms.items():
            for (s2, t2), c2 in other.terms.items():
                k = (s1 + s2, t1 + t2)
                prod = c1 * c2
                cur = out.get(k)
                s = prod if cur is None else cur + prod
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return _Bivar(self.ring, out)

    def __pow__(self, e: int):
        result = _Bivar.const(self.ring, self.ring.one)
        for _ in range(e):
            result = result * self
        return result


class FormulaParser:
    """Recursive-descent parser with implicit multiplication."""

    def __init__(self, ring: ParamPolyRing):
        self.ring = ring

    def parse(self, text: str) -> _Bivar:
        self.tokens = _tokenize(text)
        self.pos = 0
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing tokens in {text!r}")
        return value

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _expr(self) -> _Bivar:
        sign = 1
        tok = self._peek()
        if tok in ("+", "-"):
            sign = -1 if tok == "-" else 1
            self.pos += 1
        value = self._term()
        if sign < 0:
            value = -value
        while self._peek() in ("+", "-"):
            op = self.tokens[self.pos]
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> _Bivar:
        value = self._factor()
        while True:
            tok = self._peek()
            if tok == "*":
                self.pos += 1
                value = value * self._factor()
            elif tok is not None and (tok == "(" or isinstance(tok, tuple)):
                value = value * self._factor()
            else:
                return value

    def _factor(self) -> _Bivar:
        atom = self._atom()
        if self._peek() == "^":
            self.pos += 1
            tok = self._peek()
            if not (isinstance(tok, tuple) and tok[0] == "NUM"):
                raise ParseError("exponent must be an integer")
            self.pos += 1
            return atom ** tok[1]
        return atom

    def _atom(self) -> _Bivar:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of formula")
        if tok == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise ParseError("missing closing parenthesis")
            self.pos += 1
            return value
        self.pos += 1
        kind = tok[0] if isinstance(tok, tuple) else None
        if kind == "NUM":
            return _Bivar.const(self.ring, self.ring.from_int(tok[1]))
        if kind == "NAME":
            return _Bivar.const(self.ring, self.ring.var_named(tok[1]))
        if kind == "VAR":
            key = (1, 0) if tok[1] == "s" else (0, 1)
            return _Bivar(self.ring, {key: self.ring.one})
        raise ParseError(f"unexpected token {tok!r}")


def parse_param_formula(text: str, ring: ParamPolyRing) -> ParamPoly:
    """Formula with no s/t occurrences, as a single ParamPoly."""
    value = FormulaParser(ring).parse(text)
    if not value.terms:
        return ring.zero
    if set(value.terms) != {(0, 0)}:
        raise ParseError(f"formula {text!r} involves s or t")
    return value.terms[(0, 0)]


def parse_st_formula(text: str, ring: ParamPolyRing) -> HomogPoly:
    """Formula homogeneous in s, t with ParamPoly coefficients."""
    value = FormulaParser(ring).parse(text)
    if not value.terms:
        raise ParseError(f"formula {text!r} is zero; degree is ambiguous")
    degrees = {se + te for se, te in value.terms}
    if len(degrees) != 1:
        raise ParseError(f"formula {text!r} is not homogeneous in s, t: {degrees}")
    deg = degrees.pop()
    coeffs = [value.terms.get((j, deg - j), ring.zero) for j in range(deg + 1)]
    return HomogPoly(ring, deg, coeffs)


# -- worked-case loaders --------------------------------------------------------


def worked_params(case: dict, ring=QQ) -> SyzygyParams:
    dims = compute_dims(case["n"], case["d"])
    l = [[[ring.from_int(x) for x in row] for row in block] for block in case["params"]["l"]]
    p = [[[ring.from_int(x) for x in row] for row in block] for block in case["params"]["p"]]
    return SyzygyParams(dims, ring, l, p)


def parse_poly_list(texts, degree: int, ring=QQ):
    return [parse_poly(text, degree, ring) for text in texts]


def parse_matrix(rows_text, row_degrees, ring=QQ) -> PolyMatrix:
    rows = [[parse_poly(text, deg, ring) for text in row]
            for row, deg in zip(rows_text, row_degrees)]
    return PolyMatrix(ring, rows, row_degrees)


def symbolic_ring_for(n: int, d: int) -> ParamPolyRing:
    return ParamPolyRing(param_names(compute_dims(n, d)))
