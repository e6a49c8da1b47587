"""Homogeneous polynomials in s, t of fixed degree over an exact ring.

Coefficients are stored ascending in the power of s: entry j is the
coefficient of s^j t^(degree-j).  The zero polynomial keeps its degree so
matrix slots with structural zeros stay well-typed.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BothZero, DegreeMismatch, DegreeZero, NotDivisible, ParseError


class HomogPoly:
    __slots__ = ("ring", "degree", "coeffs")

    def __init__(self, ring, degree: int, coeffs):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        coeffs = list(coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError(
                f"degree {degree} needs {degree + 1} coefficients, got {len(coeffs)}")
        self.ring = ring
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ring, degree: int) -> "HomogPoly":
        return cls(ring, degree, [ring.zero] * (degree + 1))

    @classmethod
    def monomial(cls, ring, degree: int, s_power: int, coeff=None) -> "HomogPoly":
        if not 0 <= s_power <= degree:
            raise ValueError("s_power out of range")
        coeffs = [ring.zero] * (degree + 1)
        coeffs[s_power] = ring.one if coeff is None else coeff
        return cls(ring, degree, coeffs)

    @classmethod
    def from_terms(cls, ring, degree: int, terms: dict) -> "HomogPoly":
        coeffs = [ring.zero] * (degree + 1)
        for j, c in terms.items():
            coeffs[j] = c
        return cls(ring, degree, coeffs)

    @classmethod
    def var_s(cls, ring) -> "HomogPoly":
        return cls.monomial(ring, 1, 1)

    @classmethod
    def var_t(cls, ring) -> "HomogPoly":
        return cls.monomial(ring, 1, 0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degrees {self.degree} and {other.degree}")
        return HomogPoly(self.ring, self.degree,
                         [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot subtract degrees {self.degree} and {other.degree}")
        return HomogPoly(self.ring, self.degree,
                         [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return HomogPoly(self.ring, self.degree, [-a for a in self.coeffs])

    def __mul__(self, other):
        deg = self.degree + other.degree
        out = [self.ring.zero] * (deg + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return HomogPoly(self.ring, deg, out)

    def scaled(self, c) -> "HomogPoly":
        return HomogPoly(self.ring, self.degree, [c * a for a in self.coeffs])

    def div_linear(self, var: str) -> "HomogPoly":
        """Exact quotient by s or t; NotDivisible if the blocking term is nonzero."""
        if self.degree == 0:
            raise NotDivisible("degree-0 polynomial has no linear factors")
        if var == "s":
            if self.coeffs[0]:
                raise NotDivisible("t^deg coefficient is nonzero, s does not divide")
            return HomogPoly(self.ring, self.degree - 1, self.coeffs[1:])
        if var == "t":
            if self.coeffs[-1]:
                raise NotDivisible("s^deg coefficient is nonzero, t does not divide")
            return HomogPoly(self.ring, self.degree - 1, self.coeffs[:-1])
        raise ValueError("var must be 's' or 't'")

    def partial(self, var: str) -> "HomogPoly":
        """Formal partial derivative; integer multiples go through ring.from_int."""
        if self.degree == 0:
            raise DegreeZero("cannot differentiate a degree-0 polynomial")
        ring = self.ring
        d = self.degree
        if var == "s":
            out = [ring.from_int(j + 1) * self.coeffs[j + 1] for j in range(d)]
        elif var == "t":
            out = [ring.from_int(d - j) * self.coeffs[j] for j in range(d)]
        else:
            raise ValueError("var must be 's' or 't'")
        return HomogPoly(ring, d - 1, out)

    def eval_at(self, s0, t0):
        """Value at (s0, t0): sum of coeffs[j] * s0^j * t0^(degree-j)."""
        ring = self.ring
        total = ring.zero
        s_pow = ring.one
        s_powers = []
        for _ in range(self.degree + 1):
            s_powers.append(s_pow)
            s_pow = s_pow * s0
        t_pow = ring.one
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c:
                total = total + c * s_powers[j] * t_pow
            t_pow = t_pow * t0
        return total

    def exact_div(self, other: "HomogPoly") -> "HomogPoly":
        """Exact quotient by a nonzero homogeneous divisor (NotDivisible otherwise)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            if self.degree < other.degree:
                raise NotDivisible("quotient degree would be negative")
            return HomogPoly.zero(self.ring, self.degree - other.degree)
        tb = other._t_order()
        if self._t_order() < tb or self.degree < other.degree:
            raise NotDivisible("t-order or degree obstruction")
        ring = self.ring
        ua = list(self.coeffs[:self.degree - self._t_order() + 1])
        ub = other.coeffs[:other.degree - tb + 1]
        dq = len(ua) - len(ub)
        if dq < 0:
            raise NotDivisible("degree obstruction after removing t factors")
        q = [ring.zero] * (dq + 1)
        lead = ub[-1]
        for shift in range(dq, -1, -1):
            c = ring.div(ua[shift + len(ub) - 1], lead)
            q[shift] = c
            if c:
                for i, bc in enumerate(ub):
                    ua[shift + i] = ua[shift + i] - c * bc
        if any(ua):
            raise NotDivisible("nonzero remainder")
        out_deg = self.degree - other.degree
        coeffs = q + [ring.zero] * (out_deg - dq)
        return HomogPoly(ring, out_deg, coeffs)

    # -- gcd over a field -------------------------------------------------

    def _t_order(self) -> int:
        """Largest k with t^k dividing self (degree+1 for the zero poly)."""
        for k in range(self.degree + 1):
            if self.coeffs[self.degree - k]:
                return k
        return self.degree + 1

    def gcd(self, other: "HomogPoly") -> "HomogPoly":
        """Monic-normalized gcd; requires a field coefficient ring."""
        if self.is_zero() and other.is_zero():
            raise BothZero("gcd(0, 0) is undefined")
        if self.is_zero():
            return other._monic()
        if other.is_zero():
            return self._monic()
        ring = self.ring
        t_common = min(self._t_order(), other._t_order())
        ua = self.coeffs[:self.degree - self._t_order() + 1]
        ub = other.coeffs[:other.degree - other._t_order() + 1]
        g = _univ_gcd(ring, ua, ub)
        e = len(g) - 1
        coeffs = list(g) + [ring.zero] * t_common
        return HomogPoly(ring, e + t_common, coeffs)._monic()

    def _monic(self) -> "HomogPoly":
        ring = self.ring
        lead = None
        for j in range(self.degree, -1, -1):
            if self.coeffs[j]:
                lead = self.coeffs[j]
                break
        if lead is None:
            return self
        inv = ring.div(ring.one, lead)
        return self.scaled(inv)

    # -- text form ---------------------------------------------------------

    def render(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = _monomial_str(j, self.degree - j)
            terms.append((_coeff_prefix(self.ring, c, bool(mono)), mono))
        if not terms:
            return "0"
        pieces = []
        for (neg, coeff_str), mono in terms:
            body = f"{coeff_str}*{mono}" if coeff_str and mono else (coeff_str or mono)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"HomogPoly({self.degree}: {self.render()})"


def _monomial_str(sj: int, tj: int) -> str:
    parts = []
    if sj == 1:
        parts.append("s")
    elif sj > 1:
        parts.append(f"s^{sj}")
    if tj == 1:
        parts.append("t")
    elif tj > 1:
        parts.append(f"t^{tj}")
    return "*".join(parts)


def _coeff_prefix(ring, c, has_mono: bool):
    """((negative, magnitude-string)) with '1' omitted before a monomial."""
    if isinstance(c, (int, Fraction)):
        frac = Fraction(c)
        neg = frac < 0
        mag = -frac if neg else frac
        if has_mono and mag == 1:
            return (neg, "")
        return (neg, str(mag))
    if hasattr(c, "r") and hasattr(c, "p"):
        return (False, str(c.r))
    return (False, f"({ring.render(c)})")


def _univ_gcd(ring, a, b):
    """Euclidean gcd of univariate coefficient lists (ascending), monic output."""
    a = _trim(a)
    b = _trim(b)
    while b:
        a, b = b, _trim(_umod(ring, a, b))
    inv = ring.div(ring.one, a[-1])
    return [inv * c for c in a]


def _trim(a):
    n = len(a)
    while n > 0 and not a[n - 1]:
        n -= 1
    return a[:n]


def _umod(ring, a, b):
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        if not a[-1]:
            a.pop()
            continue
        q = ring.div(a[-1], lead)
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        a.pop()
    return a


# -- parsing ----------------------------------------------------------------

def parse_poly(text: str, degree: int, ring) -> HomogPoly:
    """Inverse of render for the canonical text form (rationals and residues)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    coeffs = [ring.zero] * (degree + 1)
    if tokens == ["0"]:
        return HomogPoly(ring, degree, coeffs)
    pos = 0
    sign = 1
    n = len(tokens)
    while pos < n:
        tok = tokens[pos]
        if tok in ("+", "-"):
            sign = -1 if tok == "-" else 1
            pos += 1
            if pos >= n:
                raise ParseError(f"dangling sign in {text!r}")
            continue
        num, den = 1, 1
        s_exp, t_exp = 0, 0
        saw_factor = False
        while pos < n and tokens[pos] not in ("+", "-"):
            tok = tokens[pos]
            if tok == "*":
                pos += 1
                continue
            if tok in ("s", "t"):
                exp = 1
                if pos + 1 < n and tokens[pos + 1] == "^":
                    exp = _parse_int(tokens[pos + 2], text)
                    pos += 2
                if tok == "s":
                    s_exp += exp
                else:
                    t_exp += exp
                saw_factor = True
            elif tok == "/":
                den *= _parse_int(tokens[pos + 1], text)
                pos += 1
            else:
                num *= _parse_int(tok, text)
                saw_factor = True
            pos += 1
        if not saw_factor:
            raise ParseError(f"dangling sign in {text!r}")
        if s_exp + t_exp != degree:
            raise ParseError(
                f"term of degree {s_exp + t_exp} in a degree-{degree} polynomial")
        c = ring.div(ring.from_int(sign * num), ring.from_int(den)) if den != 1 \
            else ring.from_int(sign * num)
        coeffs[s_exp] = coeffs[s_exp] + c
        sign = 1
    return HomogPoly(ring, degree, coeffs)


def _parse_int(tok: str, context: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise ParseError(f"expected an integer, got {tok!r} in {context!r}") from exc


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
            out.append(text[i:j])
            i = j
        elif ch in ("s", "t"):
            out.append(ch)
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
    return out
