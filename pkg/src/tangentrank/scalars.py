"""Exact coefficient rings: rationals, prime fields, and first-order jets.

Every ring exposes the same small surface (``zero``, ``one``, ``from_int``,
``div``, ``render``/``parse``) and its elements overload ``+ - *`` with exact
semantics, so the polynomial and matrix layers stay ring-generic.  Plain
Python ints are accepted everywhere a rational is: they are exact rationals
with denominator 1 and interoperate with ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonExactDivision

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng, lower: int = 10**6) -> int:
    """First prime at or above a uniformly random start in [lower, 2*lower)."""
    candidate = rng.randrange(lower, 2 * lower) | 1
    while not is_prime(candidate):
        candidate += 2
    return candidate


class RationalField:
    """The field of arbitrary-precision rationals (Fraction plus int)."""

    name = "rationals"
    characteristic = 0
    is_field = True

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, k: int):
        return k

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in the rationals")
        return Fraction(a) / b

    def inv(self, a):
        return self.div(1, a)

    def render(self, a) -> str:
        return str(Fraction(a))

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc

    def sample(self, rng, bound: int) -> int:
        """Uniform nonzero integer in [-bound, bound]."""
        v = rng.randrange(1, bound + 1)
        return v if rng.randrange(2) else -v

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


@dataclass(frozen=True, slots=True)
class PrimeFieldElem:
    """Residue in [0, p); the modulus travels with the element."""

    r: int
    p: int

    def _check(self, other: "PrimeFieldElem") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other):
        self._check(other)
        return PrimeFieldElem((self.r + other.r) % self.p, self.p)

    def __sub__(self, other):
        self._check(other)
        return PrimeFieldElem((self.r - other.r) % self.p, self.p)

    def __mul__(self, other):
        self._check(other)
        return PrimeFieldElem(self.r * other.r % self.p, self.p)

    def __neg__(self):
        return PrimeFieldElem(-self.r % self.p, self.p)

    def __truediv__(self, other):
        self._check(other)
        if other.r == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElem(self.r * pow(other.r, -1, self.p) % self.p, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return PrimeFieldElem(pow(self.r, -1, self.p), self.p) ** (-e)
        return PrimeFieldElem(pow(self.r, e, self.p), self.p)

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return f"{self.r} mod {self.p}"


class PrimeField:
    """F_p for prime p; primality is checked at construction."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = PrimeFieldElem(0, p)
        self.one = PrimeFieldElem(1, p)

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def from_int(self, k: int) -> PrimeFieldElem:
        return PrimeFieldElem(k % self.p, self.p)

    def div(self, a: PrimeFieldElem, b: PrimeFieldElem) -> PrimeFieldElem:
        return a / b

    def inv(self, a: PrimeFieldElem) -> PrimeFieldElem:
        return self.one / a

    def render(self, a: PrimeFieldElem) -> str:
        return f"{a.r} mod {self.p}"

    def parse(self, text: str) -> PrimeFieldElem:
        head = text.split("mod")[0].strip()
        return self.from_int(int(head))

    def sample(self, rng, bound: int = 0) -> PrimeFieldElem:
        """Uniform residue; the bound argument is ignored for finite fields."""
        return PrimeFieldElem(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("primefield", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


@dataclass(frozen=True, slots=True)
class Jet:
    """Base-ring value paired with an exact gradient (product rule built in)."""

    value: object
    grad: tuple

    def _check(self, other: "Jet") -> None:
        if len(self.grad) != len(other.grad):
            raise ValueError("jets carry gradients of different lengths")

    def __add__(self, other):
        self._check(other)
        return Jet(self.value + other.value,
                   tuple(a + b for a, b in zip(self.grad, other.grad)))

    def __sub__(self, other):
        self._check(other)
        return Jet(self.value - other.value,
                   tuple(a - b for a, b in zip(self.grad, other.grad)))

    def __mul__(self, other):
        self._check(other)
        u, v = self.value, other.value
        return Jet(u * v, tuple(u * b + v * a for a, b in zip(self.grad, other.grad)))

    def __neg__(self):
        return Jet(-self.value, tuple(-a for a in self.grad))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative jet power")
        result = Jet(self.value ** 0, tuple(a - a for a in self.grad))
        square = self
        while e:
            if e & 1:
                result = result * square
            e >>= 1
            if e:
                square = square * square
        return result

    def __bool__(self):
        return bool(self.value) or any(self.grad)

    def __repr__(self):
        return f"Jet({self.value}, {list(self.grad)})"


class JetRing:
    """Jets over a base ring with a fixed number of active parameters."""

    is_field = False

    def __init__(self, base, n_params: int):
        self.base = base
        self.n_params = n_params
        self._zero_grad = (base.zero,) * n_params
        self.zero = Jet(base.zero, self._zero_grad)
        self.one = Jet(base.one, self._zero_grad)

    @property
    def name(self) -> str:
        return f"jets({self.base.name}, {self.n_params})"

    @property
    def characteristic(self):
        return self.base.characteristic

    def from_int(self, k: int) -> Jet:
        return Jet(self.base.from_int(k), self._zero_grad)

    def constant(self, x) -> Jet:
        return Jet(x, self._zero_grad)

    def lift(self, x, param_index: int) -> Jet:
        """Lift x as the active parameter at param_index (unit gradient)."""
        if not 0 <= param_index < self.n_params:
            raise IndexError(
                f"param_index {param_index} out of range for {self.n_params} parameters")
        grad = list(self._zero_grad)
        grad[param_index] = self.base.one
        return Jet(x, tuple(grad))

    def div(self, a: Jet, b: Jet) -> Jet:
        """Quotient jet; requires the divisor's value to be invertible."""
        if not b.value:
            raise ZeroDivisionError("jet division needs an invertible value part")
        q = self.base.div(a.value, b.value)
        return Jet(q, tuple(self.base.div(ga - q * gb, b.value)
                            for ga, gb in zip(a.grad, b.grad)))

    def render(self, a: Jet) -> str:
        parts = ", ".join(self.base.render(g) for g in a.grad)
        return f"{self.base.render(a.value)} + d[{parts}]"

    def sample(self, rng, bound: int) -> Jet:
        return self.constant(self.base.sample(rng, bound))

    def __eq__(self, other):
        return (isinstance(other, JetRing) and other.base == self.base
                and other.n_params == self.n_params)

    def __hash__(self):
        return hash(("jets", self.base, self.n_params))


def jet_lift(ring: JetRing, x, param_index: int) -> Jet:
    return ring.lift(x, param_index)


def exact_div(ring, a, b):
    """Ring-level exact division; raises NonExactDivision where it fails."""
    div = getattr(ring, "div", None)
    if div is None:
        raise NonExactDivision(f"ring {ring!r} has no division")
    return div(a, b)
