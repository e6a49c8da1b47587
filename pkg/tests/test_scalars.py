import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangentrank.parampoly import ParamPolyRing
from tangentrank.scalars import (QQ, Jet, JetRing, PrimeField, is_prime,
                                 jet_lift, random_prime)

F7 = PrimeField(7)
BIG = PrimeField(1000003)


def test_rational_basics():
    assert QQ.parse("1/2") + QQ.parse("1/3") == Fraction(5, 6)
    assert QQ.render(Fraction(-4, 3)) == "-4/3"
    assert QQ.parse("-4/3") == Fraction(-4, 3)
    assert QQ.div(1, 3) == Fraction(1, 3)
    with pytest.raises(ZeroDivisionError):
        QQ.div(1, 0)


def test_rational_invariants():
    x = QQ.parse("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    y = Fraction(5, -10)
    assert y.denominator > 0 and y == Fraction(-1, 2)
    assert Fraction(0, 7) == Fraction(0, 1)


def test_prime_field_ops():
    a, b = F7.from_int(5), F7.from_int(4)
    assert (a * b).r == 6
    assert (a + b).r == 2
    assert (a / b).r == (5 * pow(4, -1, 7)) % 7
    assert F7.render(F7.from_int(12)) == "5 mod 7"
    assert F7.parse("5 mod 7") == F7.from_int(5)
    with pytest.raises(ZeroDivisionError):
        a / F7.zero
    with pytest.raises(ValueError):
        PrimeField(10)
    with pytest.raises(ValueError):
        a + BIG.from_int(1)


def test_prime_field_agrees_with_rationals_mod_p():
    rng = random.Random(11)
    p = 1000003
    fp = PrimeField(p)

    def reduce_frac(x: Fraction):
        return fp.from_int(x.numerator) / fp.from_int(x.denominator)

    for _ in range(50):
        x = Fraction(rng.randrange(-500, 500), rng.randrange(1, 60))
        y = Fraction(rng.randrange(-500, 500), rng.randrange(1, 60))
        assert reduce_frac(x + y) == reduce_frac(x) + reduce_frac(y)
        assert reduce_frac(x * y) == reduce_frac(x) * reduce_frac(y)


def test_jet_product_rule_example():
    a = Jet(3, (1, 0))
    b = Jet(3, (0, 1))
    assert a * b == Jet(9, (3, 3))


def test_jet_lift_examples():
    ring = JetRing(QQ, 3)
    assert jet_lift(ring, 5, 0) == Jet(5, (1, 0, 0))
    assert jet_lift(ring, 0, 2) == Jet(0, (0, 0, 1))
    x = ring.lift(2, 0)
    y = ring.lift(3, 1)
    assert x + y == Jet(5, (1, 1, 0))
    with pytest.raises(IndexError):
        ring.lift(1, 3)


def test_jet_division_inverts_multiplication():
    ring = JetRing(QQ, 2)
    a = Jet(Fraction(3), (Fraction(1), Fraction(2)))
    b = Jet(Fraction(5), (Fraction(-1), Fraction(4)))
    assert ring.div(a * b, b) == a
    with pytest.raises(ZeroDivisionError):
        ring.div(a, Jet(Fraction(0), (Fraction(1), Fraction(0))))


def test_jet_pow_matches_repeated_mul():
    ring = JetRing(QQ, 2)
    x = ring.lift(3, 0)
    assert x ** 3 == x * x * x
    assert (x ** 2).grad[0] == 6


scalar_q = st.fractions(min_value=-40, max_value=40, max_denominator=12)


@settings(max_examples=60, deadline=None)
@given(scalar_q, scalar_q, scalar_q)
def test_rational_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QQ.zero == a
    assert a * QQ.one == a


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_prime_field_ring_axioms(x, y, z):
    a, b, c = F7.from_int(x), F7.from_int(y), F7.from_int(z)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F7.zero == a
    assert a * F7.one == a


jet_scalars = st.integers(-9, 9)


@settings(max_examples=40, deadline=None)
@given(st.tuples(jet_scalars, jet_scalars, jet_scalars),
       st.tuples(jet_scalars, jet_scalars, jet_scalars),
       st.tuples(jet_scalars, jet_scalars, jet_scalars))
def test_jet_ring_axioms(ta, tb, tc):
    ring = JetRing(QQ, 2)
    a = Jet(ta[0], (ta[1], ta[2]))
    b = Jet(tb[0], (tb[1], tb[2]))
    c = Jet(tc[0], (tc[1], tc[2]))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ring.zero == a
    assert a * ring.one == a
    assert a * b == b * a


def _random_poly_expr(rng, ring, n_params):
    """Random polynomial expression of degree <= 3 as a ParamPoly."""
    poly = ring.zero
    for _ in range(rng.randrange(1, 5)):
        term = ring.from_int(rng.randrange(-4, 5))
        for _ in range(rng.randrange(0, 4)):
            term = term * ring.var(rng.randrange(n_params))
        poly = poly + term
    return poly


def test_jet_gradient_matches_parampoly_partials():
    rng = random.Random(2024)
    n_params = 6
    names = [f"x{i}" for i in range(n_params)]
    ring = ParamPolyRing(names)
    jets = JetRing(QQ, n_params)
    for _ in range(25):
        poly = _random_poly_expr(rng, ring, n_params)
        point = [rng.randrange(-9, 10) for _ in range(n_params)]
        jet_point = [jets.lift(x, i) for i, x in enumerate(point)]
        jet_value = jets.zero
        for key, coeff in poly.terms.items():
            term = jets.from_int(coeff)
            for v, e in ring.decode(key):
                term = term * jet_point[v] ** e
            jet_value = jet_value + term
        for v in range(n_params):
            symbolic = poly.partial(v).evaluate(point)
            assert jet_value.grad[v] == symbolic


def test_primality_and_random_primes():
    assert is_prime(2) and is_prime(1000003) and not is_prime(1)
    assert not is_prime(561)          # Carmichael number
    assert not is_prime(1000003 * 999983)
    rng = random.Random(3)
    for _ in range(5):
        p = random_prime(rng)
        assert p > 10 ** 6 and is_prime(p)


def test_field_sampling_ranges():
    rng = random.Random(0)
    vals = {QQ.sample(rng, 5) for _ in range(200)}
    assert vals <= set(range(-5, 6)) - {0}
    assert len(vals) == 10
    rng = random.Random(0)
    residues = {F7.sample(rng).r for _ in range(100)}
    assert residues <= set(range(7))
