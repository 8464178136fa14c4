import random

import pytest

from wzcert import ffpoly
from wzcert.exactarith import (DEFAULT_MAX_EXT_DEGREE, ExponentResidue,
                               ExtDegreeError, ExtFieldElem, PrimeFieldElem,
                               ext_field, factor_univariate, gcd,
                               legendre_symbol)
from wzcert.primes import primes_up_to


def test_gcd_examples():
    assert gcd(25, 106) == 1
    assert gcd(37, 80) == 1
    assert gcd(15, 60) == 15


def test_gcd_brute_force_grid():
    for a in range(0, 201, 7):
        for b in range(0, 201, 3):
            g = gcd(a, b)
            if a == b == 0:
                assert g == 0
                continue
            assert g > 0 and a % g == 0 and b % g == 0
            for c in range(g + 1, min(a or b, b or a) + 1):
                if c > g and a % c == 0 and b % c == 0:
                    raise AssertionError(f"{c} is a larger common divisor")
    assert gcd(-12, 18) == 6
    assert gcd(12, -18) == 6


def test_legendre_examples():
    assert legendre_symbol(2, 107) == -1
    for p in (7, 11, 97, 107):
        assert legendre_symbol(1, p) == 1
    assert legendre_symbol(3, 7) == -1


def test_legendre_against_square_enumeration():
    for p in (7, 11, 13, 17, 19, 23):
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre_symbol(a, p) == expected


def test_legendre_errors():
    for bad in (2, 9, 15, 1):
        with pytest.raises(ValueError):
            legendre_symbol(3, bad)


def test_ext_field_canonical_moduli():
    assert ext_field(3, 2).modulus == (1, 0, 1)     # x^2 + 1
    assert ext_field(5, 2).modulus == (2, 0, 1)     # x^2 + 2
    K = ext_field(7, 1)
    assert K.degree == 1 and K.order == 7


def test_ext_field_determinism():
    m1 = ext_field(11, 3).modulus
    ffpoly.clear_caches()
    m2 = ext_field(11, 3).modulus
    assert m1 == m2


def test_ext_field_degree_cap():
    with pytest.raises(ExtDegreeError):
        ext_field(7, DEFAULT_MAX_EXT_DEGREE + 1)
    K = ext_field(7, 9, max_degree=9)
    assert K.degree == 9


def test_ext_field_moduli_are_irreducible():
    # no roots, and in degree 2 that settles it; cross-check a few degrees
    for p, d in ((3, 2), (5, 2), (7, 3), (11, 4)):
        mod = ffpoly.canonical_modulus(p, d)
        F = ffpoly.canonical_field(p, 1)
        f = ffpoly.pfrom_ints(F, mod)
        assert ffpoly.factor_monic(F, f) == [(f, 1)]


def test_field_axioms_random():
    rng = random.Random(20240811)
    for p, d in ((7, 1), (7, 2), (11, 2), (5, 3), (3, 4)):
        K = ffpoly.canonical_field(p, d)
        for _ in range(300):
            a = K.from_counter(rng.randrange(K.order))
            b = K.from_counter(rng.randrange(K.order))
            c = K.from_counter(rng.randrange(K.order))
            assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
            assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            if a != K.zero:
                assert K.mul(a, K.inv(a)) == K.one


def test_factor_examples():
    assert factor_univariate(5, (4, 0, 1)) == [((1, 1), 1), ((4, 1), 1)]
    assert factor_univariate(3, (1, 0, 1)) == [((1, 0, 1), 1)]
    assert factor_univariate(2, (0, 1, 0, 1)) == [((0, 1), 1), ((1, 1), 2)]


def test_factor_validation():
    with pytest.raises(ValueError):
        factor_univariate(5, (1,))
    with pytest.raises(ValueError):
        factor_univariate(5, (1, 2))   # not monic
    with pytest.raises(ValueError):
        factor_univariate(6, (1, 0, 1))


def test_factor_product_reconstruction():
    rng = random.Random(1)
    primes = [p for p in primes_up_to(100) if p > 2]
    for _ in range(150):
        p = rng.choice(primes)
        deg = rng.randrange(1, 13)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
        F = ffpoly.canonical_field(p, 1)
        f = tuple(coeffs)
        prod = (1,)
        for g, mult in factor_univariate(p, f):
            for _ in range(mult):
                prod = ffpoly.pmul(F, prod, g)
        assert prod == ffpoly.ptrim(F, f)
        for g, _ in factor_univariate(p, f):
            assert g[-1] == 1


def test_factor_sorted_canonically():
    out = factor_univariate(7, (6, 0, 0, 0, 0, 0, 1))   # x^6 - 1 splits
    degs = [len(g) - 1 for g, _ in out]
    assert degs == sorted(degs)
    keys = [g for g, _ in out]
    assert keys == sorted(keys, key=lambda g: (len(g), g))


def test_prime_field_elem():
    a = PrimeFieldElem(107, -48)
    assert a.value == 59
    b = PrimeFieldElem(107, 50)
    assert (a + b).value == 2
    assert (a * b).value == 59 * 50 % 107
    assert (a.inv() * a).value == 1
    assert not a.is_zero() and PrimeFieldElem(107, 0).is_zero()
    with pytest.raises(ValueError):
        PrimeFieldElem(10, 3)


def test_ext_field_elem_requires_canonical_modulus():
    with pytest.raises(ValueError):
        ExtFieldElem(5, 2, (3, 0, 1), (1, 1))
    x = ExtFieldElem(5, 2, (2, 0, 1), (0, 1))
    assert (x * x).coeffs == (3, 0)    # x^2 = -2 = 3
    assert (x * x.inv()).coeffs == (1, 0)


def test_exponent_residue():
    r = ExponentResidue(106, 231)
    assert r.e == 231 % 106
    assert (r + ExponentResidue(106, 1)).e == (232) % 106
    assert r.scaled(3).e == 693 % 106
    with pytest.raises(ValueError):
        r + ExponentResidue(60, 1)
