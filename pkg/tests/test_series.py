import random

import pytest

from ccsym.errors import (
    IndeterminateAtPrecision,
    NonUnit,
    NotAUniformizer,
)
from ccsym.rings import PrimeField, TruncatedPolynomialRing, residue_map
from ccsym.series import INF, LaurentSeries

F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)
A2 = TruncatedPolynomialRing(F3, "e", 2)
F5E = TruncatedPolynomialRing(F5, "e", 2)
EPS = A2.generator()


def s(ring, terms, prec=INF):
    return LaurentSeries.from_terms(ring, terms, prec=prec)


def test_mul_examples():
    one, t = LaurentSeries.one(F5), LaurentSeries.t_power(F5, 1)
    prod = (one + t).truncate(5) * (one - t).truncate(5)
    assert prod == s(F5, {0: 1, 2: 4}, prec=5)
    h = s(A2, {-1: EPS})
    sq = h * h
    assert sq.is_zero_series and sq.prec == INF
    assert s(F5, {-1: 1}, 3) + s(F5, {1: 1}, 3) == s(F5, {-1: 1, 1: 1}, 3)


def test_precision_propagation():
    a = s(F5, {0: 1}, 5)
    b = s(F5, {-2: 1}, 4)
    assert (a * b).prec == 3  # min(-2 + 5, 0 + 4)
    assert (a + b).prec == 4
    assert a.derivative().prec == 4
    assert b.shift(3).prec == 7


def test_unit_detection():
    assert s(A2, {0: A2.one, -1: EPS}).is_unit()
    assert s(A2, {-1: EPS}).is_unit() is False
    assert LaurentSeries.t_power(F5, -1).is_unit()
    with pytest.raises(IndeterminateAtPrecision):
        s(A2, {0: EPS}, prec=3).is_unit()


def test_winding_number():
    assert s(F5, {1: 2, 2: 1}).winding_number() == 1
    assert s(A2, {0: A2.one, -1: A2.neg(EPS)}).winding_number() == 0
    assert s(F5E, {-1: (0, 1), 2: (3, 0)}).winding_number() == 2
    with pytest.raises(NonUnit):
        s(A2, {-1: EPS}).winding_number()


def test_inverse():
    one, t = LaurentSeries.one(F5), LaurentSeries.t_power(F5, 1)
    inv = (one - t).truncate(3).inverse()
    assert inv == s(F5, {0: 1, 1: 1, 2: 1}, prec=3)
    u = s(A2, {0: A2.one, -1: A2.neg(EPS)})
    ui = u.inverse()
    assert ui == s(A2, {0: A2.one, -1: EPS})
    assert u * ui == LaurentSeries.one(A2)
    with pytest.raises(NonUnit):
        LaurentSeries.t_power(A2, 1, EPS).inverse()


def test_inverse_random():
    rng = random.Random(0)
    for ring in (F7, A2, F5E):
        for _ in range(40):
            terms = {i: ring.random_element(rng) for i in range(5)}
            terms[0] = ring.random_unit(rng)
            if not ring.is_field:
                terms[-1] = ring.random_nilpotent(rng)
            f = s(ring, terms, prec=8).shift(rng.randint(-2, 2))
            g = f.inverse()
            assert (f * g).agrees_with(LaurentSeries.one(ring))


def test_derivative():
    assert LaurentSeries.t_power(F5, 2).derivative() == s(F5, {1: 2})
    assert LaurentSeries.t_power(F5, -1).derivative() == s(F5, {-2: 4})
    assert LaurentSeries.constant(A2, EPS).derivative().is_zero_series


def test_derivative_leibniz():
    rng = random.Random(1)
    for _ in range(30):
        f = s(F7, {i: rng.randrange(7) for i in range(-2, 4)}, prec=6)
        g = s(F7, {i: rng.randrange(7) for i in range(-1, 4)}, prec=6)
        lhs = (f * g).derivative()
        rhs = f.derivative() * g + f * g.derivative()
        assert lhs.agrees_with(rhs)


def test_substitute():
    t = LaurentSeries.t_power(F5, 1)
    sigma = s(F5, {1: 1, 2: 1})
    assert t.substitute(sigma) == sigma
    # the inverse example: exact sigma, requested window
    out = LaurentSeries.t_power(F5, -1).substitute(s(F5, {1: 1, 2: 4}), prec=2)
    assert out == s(F5, {-1: 1, 0: 1, 1: 1}, prec=2)
    with pytest.raises(NotAUniformizer):
        t.substitute(s(F5, {0: 1, 1: 1}))
    with pytest.raises(NotAUniformizer):
        t.substitute(s(F5, {1: 0, 2: 1}))
    with pytest.raises(NotAUniformizer):
        LaurentSeries.t_power(A2, 1).substitute(LaurentSeries.t_power(A2, 1, EPS))


def test_substitute_multiplicative_and_winding():
    rng = random.Random(2)
    for _ in range(20):
        f = s(F7, {i: rng.randrange(7) for i in range(-2, 5)}, prec=8)
        g = s(F7, {i: rng.randrange(7) for i in range(-1, 5)}, prec=8)
        sigma = s(
            F7,
            {1: rng.randrange(1, 7), 2: rng.randrange(7), 3: rng.randrange(7)},
            prec=10,
        )
        lhs = (f * g).substitute(sigma)
        rhs = f.substitute(sigma) * g.substitute(sigma)
        assert lhs.agrees_with(rhs)
        try:
            w = f.winding_number()
        except NonUnit:
            continue
        assert f.substitute(sigma).winding_number() == w
        tau = sigma.substitute(
            s(F7, {1: rng.randrange(1, 7), 2: rng.randrange(7)}, prec=10)
        )
        assert tau.winding_number() == 1 and tau.ell >= 1


def test_map_coefficients():
    h = residue_map(A2)
    f = s(A2, {-1: EPS, 0: A2.one, 1: A2.one})
    out = f.map_coefficients(h)
    assert out == s(F3, {0: 1, 1: 1})
    rng = random.Random(3)
    for _ in range(25):
        f = s(A2, {i: A2.random_element(rng) for i in range(-2, 4)}, prec=7)
        g = s(A2, {i: A2.random_element(rng) for i in range(-1, 4)}, prec=7)
        assert (f * g).map_coefficients(h).agrees_with(
            f.map_coefficients(h) * g.map_coefficients(h)
        )
        assert (f + g).map_coefficients(h) == f.map_coefficients(h) + g.map_coefficients(h)
        assert f.derivative().map_coefficients(h) == f.map_coefficients(h).derivative()


def test_unit_multiplicativity():
    rng = random.Random(4)
    for _ in range(30):
        terms_f = {i: A2.random_element(rng) for i in range(-1, 4)}
        terms_g = {i: A2.random_element(rng) for i in range(-1, 4)}
        f, g = s(A2, terms_f, 8), s(A2, terms_g, 8)
        try:
            uf, ug = f.is_unit(), g.is_unit()
        except IndeterminateAtPrecision:
            continue
        try:
            assert (f * g).is_unit() == (uf and ug)
        except IndeterminateAtPrecision:
            assert not (uf and ug)


def test_coeff_out_of_precision():
    f = s(F5, {0: 1}, prec=3)
    assert f.coeff(2) == 0
    with pytest.raises(IndeterminateAtPrecision):
        f.coeff(3)


def test_format_roundtrip():
    from ccsym.parsing import parse_series

    rng = random.Random(5)
    for ring in (F5, A2, F5E):
        for _ in range(30):
            terms = {i: ring.random_element(rng) for i in range(-3, 4)}
            prec = rng.choice([INF, 5, 9])
            f = s(ring, terms, prec)
            assert parse_series(ring, f.format()) == f
