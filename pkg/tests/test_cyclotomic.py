import random
from fractions import Fraction

import pytest
import sympy

from qrank.cyclotomic import (
    Cyclotomic,
    convolve_int,
    cyclo_polynomial,
    get_field,
    root_of_unity,
    totient,
)
from qrank.errors import InverseOfZero


def zeta(num, den):
    return root_of_unity(num, den)


def rat(x):
    return Cyclotomic.from_fraction(Fraction(x))


def test_cyclo_polynomial_small():
    assert cyclo_polynomial(1) == (-1, 1)
    assert cyclo_polynomial(3) == (1, 1, 1)
    # divide x^12 - 1 by Phi_1 Phi_2 Phi_3 Phi_4 Phi_6 by hand: x^4 - x^2 + 1
    assert cyclo_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("L", [1, 2, 3, 4, 6, 8, 9, 12, 15, 21, 30, 63, 84, 105])
def test_cyclo_polynomial_against_sympy(L):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(L, x), x).all_coeffs()[::-1]
    assert list(cyclo_polynomial(L)) == [int(c) for c in expected]
    assert len(cyclo_polynomial(L)) == totient(L) + 1


def test_root_of_unity_orders():
    assert zeta(1, 1) == 1
    assert zeta(3, 6) == -1
    # zeta_3 embedded into Q(zeta_12) is zeta_12^4
    assert zeta(1, 3).embed(12) == zeta(4, 12)


def test_root_of_unity_relations():
    z3 = zeta(1, 3)
    assert z3 * zeta(2, 3) == 1
    assert z3 + zeta(2, 3) == -1
    assert z3 ** 3 == 1


def test_power_sums_of_roots():
    # sum_{j<n} zeta_n^{s j} is n when n | s and 0 otherwise
    for n in (1, 2, 3, 5, 6, 9):
        for s in range(-2 * n, 2 * n + 1):
            total = rat(0)
            for j in range(n):
                total = total + zeta(s * j, n)
            assert total == (n if s % n == 0 else 0), (n, s)


def test_inverse_examples():
    z3 = zeta(1, 3)
    inv = (1 - z3).inv()
    assert inv == (2 + z3) / 3
    assert inv * (1 - z3) == 1
    with pytest.raises(InverseOfZero):
        rat(0).inv()


def _random_element(rng, L, size=4):
    f = get_field(L)
    vec = [rng.randint(-size, size) for _ in range(f.phi)]
    den = rng.choice([1, 1, 2, 3])
    return Cyclotomic(f, f.normalize(den, vec))


@pytest.mark.parametrize("L", [1, 4, 6, 9, 12, 21])
def test_field_axioms_randomized(L):
    rng = random.Random(20240 + L)
    for _ in range(25):
        a = _random_element(rng, L)
        b = _random_element(rng, L)
        c = _random_element(rng, L)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inv() == 1


def test_embedding_transitivity():
    rng = random.Random(7)
    for _ in range(10):
        a = _random_element(rng, 3)
        assert a.embed(6).embed(36) == a.embed(36)
        assert a.embed(36) == a.embed(6).embed(12).embed(36)
        assert (a.embed(12) == a) is True  # embedding preserves equality


def test_cross_field_arithmetic():
    z3 = zeta(1, 3)
    z4 = zeta(1, 4)
    prod = z3 * z4
    assert prod == zeta(7, 12)
    assert prod.field.L == 12


def test_convolve_matches_schoolbook():
    rng = random.Random(99)
    for trial in range(30):
        n = rng.randint(1, 90)
        m = rng.randint(1, 90)
        a = [rng.randint(-10**6, 10**6) for _ in range(n)]
        b = [rng.randint(-10**6, 10**6) for _ in range(m)]
        if trial % 3 == 0:
            for k in rng.sample(range(n), k=n // 2):
                a[k] = 0
        expected = [0] * (n + m - 1)
        for i in range(n):
            for j in range(m):
                expected[i + j] += a[i] * b[j]
        got = convolve_int(a, b)
        got = got + [0] * (len(expected) - len(got))
        assert got == expected


def test_convolve_degenerate_shapes():
    def school(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    cases = [
        ([5] * 60, [5] * 60),                      # constant vectors
        ([-3] * 50, list(range(-25, 25))),          # constant times ramp
        ([10**40, -10**39] * 30, [7, -11] * 40),    # huge entries
        ([0] * 40 + [1], [1] + [0] * 40),           # sparse ends
        ([2**200] * 45, [-(2**180)] * 45),          # giant magnitudes
    ]
    for a, b in cases:
        got = convolve_int(a, b)
        expected = school(a, b)
        got = got + [0] * (len(expected) - len(got))
        assert got == expected


def test_str_formats():
    assert str(rat(Fraction(3, 2))) == "3/2"
    assert str(zeta(1, 5)) == "[0,1,0,0]@zeta5"
    assert str((1 - zeta(1, 3)).inv()) == "[2/3,1/3]@zeta3"
