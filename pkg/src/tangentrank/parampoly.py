"""Sparse multivariate polynomials in named parameters.

Monomials are packed into a single int: variable v occupies the bit field
[bits*v, bits*(v+1)), so multiplying monomials is integer addition.  A ring
carries a total-degree cap that guarantees the fields can never overflow,
which keeps the hot multiplication loop free of per-term checks.

Coefficients are exact scalars of the base ring (ints count as rationals).
Canonical ordering for printing and leading terms is graded lexicographic
with earlier names ranked higher.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonExactDivision
from .scalars import QQ


def _as_int_if_whole(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class ParamPolyRing:
    """Polynomial ring over named parameters with a fixed variable order."""

    is_field = False

    def __init__(self, names, base=QQ, bits_per_var: int = 6, max_degree: int = 24):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate parameter names")
        self.base = base
        self.bits = bits_per_var
        if 2 * max_degree >= (1 << bits_per_var):
            raise ValueError("degree cap too large for the exponent field width")
        self.max_degree = max_degree
        self.n_vars = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._mask = (1 << bits_per_var) - 1
        self.zero = ParamPoly(self, {})
        self.one = ParamPoly(self, {0: base.one})

    @property
    def name(self) -> str:
        return f"params({self.n_vars} over {self.base.name})"

    @property
    def characteristic(self):
        return self.base.characteristic

    def from_int(self, k: int) -> "ParamPoly":
        c = self.base.from_int(k)
        return ParamPoly(self, {0: c} if c else {})

    def constant(self, c) -> "ParamPoly":
        return ParamPoly(self, {0: c} if c else {})

    def var(self, index: int) -> "ParamPoly":
        if not 0 <= index < self.n_vars:
            raise IndexError(f"variable index {index} out of range")
        return ParamPoly(self, {1 << (self.bits * index): self.base.one})

    def var_named(self, name: str) -> "ParamPoly":
        return self.var(self._index[name])

    def var_index(self, name: str) -> int:
        return self._index[name]

    def encode(self, pairs) -> int:
        """Pack (var_index, exponent) pairs into a monomial key."""
        key = 0
        for v, e in pairs:
            if not 0 <= e <= self.max_degree:
                raise ValueError(f"exponent {e} out of range")
            key |= e << (self.bits * v)
        return key

    def decode(self, key: int):
        """Monomial key back to a tuple of (var_index, exponent), sparse."""
        out = []
        v = 0
        bits, mask = self.bits, self._mask
        while key:
            e = key & mask
            if e:
                out.append((v, e))
            key >>= bits
            v += 1
        return tuple(out)

    def grlex_key(self, key: int):
        """Sort key: graded, then lexicographic with the first name highest."""
        exps = [0] * self.n_vars
        total = 0
        for v, e in self.decode(key):
            exps[v] = e
            total += e
        return (total, tuple(exps))

    def div(self, a: "ParamPoly", b: "ParamPoly") -> "ParamPoly":
        return a.exact_div(b)

    def render(self, a: "ParamPoly") -> str:
        return a.render()

    def __eq__(self, other):
        return (isinstance(other, ParamPolyRing) and other.names == self.names
                and other.base == self.base and other.bits == self.bits)

    def __hash__(self):
        return hash(("parampoly", self.names, self.base, self.bits))

    def __repr__(self):
        return f"ParamPolyRing({self.n_vars} vars, base={self.base!r})"


class ParamPoly:
    """Immutable-by-convention sparse polynomial; no stored zero coefficients."""

    __slots__ = ("ring", "terms", "_deg")

    def __init__(self, ring: ParamPolyRing, terms: dict):
        self.ring = ring
        self.terms = {k: c for k, c in terms.items() if c} if terms else {}
        self._deg = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring, p.terms, p._deg = ring, terms, None
        return p

    def degree(self) -> int:
        """Max total degree over terms; -1 for the zero polynomial."""
        if self._deg is None:
            bits, mask = self.ring.bits, self.ring._mask
            best = -1
            for key in self.terms:
                total = 0
                while key:
                    total += key & mask
                    key >>= bits
                if total > best:
                    best = total
            self._deg = best
        return self._deg

    def _check(self, other: "ParamPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("mixed parameter rings")

    def __add__(self, other):
        self._check(other)
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        out = dict(big)
        for k, c in small.items():
            cur = out.get(k)
            if cur is None:
                out[k] = c
            else:
                cur = cur + c
                if cur:
                    out[k] = cur
                else:
                    del out[k]
        return ParamPoly._raw(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = -c
            else:
                cur = cur - c
                if cur:
                    out[k] = cur
                else:
                    del out[k]
        return ParamPoly._raw(self.ring, out)

    def __neg__(self):
        p = ParamPoly._raw(self.ring, {k: -c for k, c in self.terms.items()})
        p._deg = self._deg
        return p

    def __mul__(self, other):
        self._check(other)
        if not (self.terms and other.terms):
            return self.ring.zero
        if self.degree() + other.degree() > self.ring.max_degree:
            raise OverflowError(
                f"product degree {self.degree() + other.degree()} exceeds the "
                f"ring cap {self.ring.max_degree}")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                cur = get(k)
                if cur is None:
                    out[k] = c1 * c2
                else:
                    cur = cur + c1 * c2
                    if cur:
                        out[k] = cur
                    else:
                        del out[k]
        return ParamPoly._raw(self.ring, out)

    def scaled(self, c) -> "ParamPoly":
        if not c:
            return self.ring.zero
        p = ParamPoly._raw(self.ring, {k: c * v for k, v in self.terms.items()})
        p._deg = self._deg
        return p

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        square = self
        while e:
            if e & 1:
                result = result * square
            e >>= 1
            if e:
                square = square * square
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, ParamPoly) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def leading(self):
        """(key, coeff) of the graded-lex leading term; None for zero."""
        if not self.terms:
            return None
        key = max(self.terms, key=self.ring.grlex_key)
        return key, self.terms[key]

    def exact_div(self, other: "ParamPoly") -> "ParamPoly":
        """Exact polynomial quotient; NonExactDivision when it does not divide."""
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        ring = self.ring
        bits, mask = ring.bits, ring._mask
        lk, lc = other.leading()
        l_exps = ring.decode(lk)
        rem = self
        qterms: dict = {}
        while rem.terms:
            rk, rc = rem.leading()
            for v, e in l_exps:
                if ((rk >> (bits * v)) & mask) < e:
                    raise NonExactDivision(
                        "leading monomial of the divisor does not divide the remainder")
            qc = _as_int_if_whole(ring.base.div(rc, lc))
            step = ParamPoly(ring, {rk - lk: qc})
            qterms[rk - lk] = qc
            rem = rem - step * other
        return ParamPoly(ring, qterms)

    def partial(self, var: int) -> "ParamPoly":
        """Formal partial derivative with respect to variable index var."""
        shift = self.ring.bits * var
        mask = self.ring._mask
        base = self.ring.base
        out: dict = {}
        for k, c in self.terms.items():
            e = (k >> shift) & mask
            if not e:
                continue
            nc = c * base.from_int(e)
            if nc:
                out[k - (1 << shift)] = nc
        return ParamPoly(self.ring, out)

    def evaluate(self, values):
        """Evaluate at a full vector of base-ring values (one per variable)."""
        if len(values) != self.ring.n_vars:
            raise ValueError("value vector length mismatch")
        base = self.ring.base
        total = base.zero
        for k, c in self.terms.items():
            term = c
            for v, e in self.ring.decode(k):
                term = term * values[v] ** e
            total = total + term
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        keys = sorted(self.terms, key=ring.grlex_key, reverse=True)
        pieces = []
        for k in keys:
            c = self.terms[k]
            mono = "*".join(
                f"{ring.names[v]}^{e}" if e > 1 else ring.names[v]
                for v, e in ring.decode(k))
            if isinstance(c, (int, Fraction)):
                frac = Fraction(c)
                neg = frac < 0
                mag = -frac if neg else frac
                if mono and mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}" if mono else f"{mag}"
            else:
                neg = False
                body = f"({ring.base.render(c)})*{mono}" if mono else f"({ring.base.render(c)})"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"ParamPoly({self.render()})"
