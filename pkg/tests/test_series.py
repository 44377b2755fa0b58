import random
from fractions import Fraction

import pytest
import sympy

from qrank.cyclotomic import get_field, root_of_unity
from qrank.errors import FractionalExponents, NonGenericParameter
from qrank.series import Monomial, QSeries, eta_J, eta_quotient

F = Fraction


def poly(coeffs, order=None, start=0):
    """Series with integer coefficients coeffs[i] at exponent start + i."""
    field = get_field(1)
    terms = {F(start + i): field.from_fraction(c) for i, c in enumerate(coeffs) if c}
    if order is None:
        order = start + len(coeffs) + 10
    return QSeries.from_terms(terms, field, F(order))


def naive_eta(m, order):
    """Independent oracle: expand prod_{k <= order/m} (1 - q^{mk}) directly."""
    coeffs = {0: 1}
    k = 1
    while m * k < order:
        new = dict(coeffs)
        for e, c in coeffs.items():
            if e + m * k < order:
                new[e + m * k] = new.get(e + m * k, 0) - c
        coeffs = {e: c for e, c in new.items() if e < order}
        k += 1
    return coeffs


# -- monomials ----------------------------------------------------------------


def test_monomial_normalization():
    assert Monomial.zeta(2, 6) == Monomial.zeta(1, 3)
    assert Monomial.zeta(6, 6) == Monomial.one()
    assert -Monomial.one() == Monomial.minus_one()


def test_monomial_roots_consistent():
    z = Monomial.zeta(2, 7, F(3))
    w = z.root(3)
    assert w ** 3 == z
    assert z.pow_frac(2, 3) == w ** 2
    assert z.pow_frac(-2, 3) == (w ** 2).inverse()
    assert (z * z.inverse()).is_one()


def test_monomial_coeff_value():
    m = Monomial.zeta(1, 4)
    assert m.coeff() == root_of_unity(1, 4)
    assert (m ** 2).coeff() == -1


# -- series ring operations -----------------------------------------------------


def test_basic_products():
    one_plus = poly([1, 1], order=10)
    one_minus = poly([1, -1], order=10)
    prod = one_plus * one_minus
    assert prod.agrees_with(poly([1, 0, -1], order=10), 10)


def test_add_identity_and_truncation_propagation():
    a = poly([2, 0, 5], order=7)
    z = QSeries.zero(4)
    s = a + z
    assert s.order == 4
    assert s.agrees_with(a, 4)
    b = poly([1], order=3)
    assert (a * b).order == 3


def test_mul_prec_uses_valuations():
    # (q^2 + O(q^5)) * (q^3 + O(q^4)) is known through q^6
    a = poly([1], order=5, start=2)
    b = poly([1], order=4, start=3)
    assert (a * b).order == 6


def test_ring_axioms_randomized():
    rng = random.Random(11)
    for _ in range(20):
        a = poly([rng.randint(-4, 4) for _ in range(6)], order=8)
        b = poly([rng.randint(-4, 4) for _ in range(6)], order=8)
        c = poly([rng.randint(-4, 4) for _ in range(6)], order=8)
        assert ((a + b) + c).agrees_with(a + (b + c), 8)
        assert ((a * b) * c).agrees_with(a * (b * c), 8)
        assert (a * (b + c)).agrees_with(a * b + a * c, 8)


def test_invert_geometric():
    inv = poly([1, -1], order=8).invert()
    assert inv.agrees_with(poly([1] * 8, order=8), 8)


def test_invert_two_sided():
    rng = random.Random(5)
    for _ in range(10):
        coeffs = [rng.choice([1, -1, 2])] + [rng.randint(-3, 3) for _ in range(7)]
        a = poly(coeffs, order=8)
        inv = a.invert()
        assert (a * inv).agrees_with(QSeries.one(), 8)
        assert (inv * a).agrees_with(QSeries.one(), 8)


def test_invert_negative_valuation():
    # q^-2 * (1 - q), inverse must carry valuation +2 and gain precision
    a = poly([1, -1], order=4, start=-2)
    inv = a.invert()
    assert inv.valuation == 2
    assert (a * inv).agrees_with(QSeries.one(), 4)


def test_invert_zero_series_raises():
    with pytest.raises(NonGenericParameter):
        QSeries.zero(5).invert()


def test_invert_partition_counts():
    # 1/J_1 is the partition generating function; sympy provides the oracle
    from sympy.functions.combinatorial.numbers import partition

    inv = eta_J(1, 12).invert()
    for n in range(12):
        assert inv.coeff(n).as_fraction() == partition(n), n
    assert inv.coeff(4).as_fraction() == 5  # five partitions of 4


def test_eta_J_matches_naive_product():
    for m in (1, 2, 3):
        J = eta_J(m, 20)
        oracle = naive_eta(m, 20)
        for n in range(20):
            assert J.coeff(n).as_fraction() == oracle.get(n, 0), (m, n)


def test_eta_J_pentagonal():
    J = eta_J(1, 13)
    expected = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}
    for n in range(13):
        assert J.coeff(n).as_fraction() == expected.get(n, 0)
    J2 = eta_J(2, 5)
    assert str(J2).startswith("1 - q^2 - q^4")


def test_eta_J_beyond_order_is_one():
    assert eta_J(9, 5).agrees_with(QSeries.one(), 5)


def test_eta_quotient_overpartitions():
    # J_2 / J_1^2 generates overpartition counts; 14 overpartitions of 4
    pbar = eta_quotient({2: 1, 1: -2}, 10)
    assert [pbar.coeff(n).as_fraction() for n in range(7)] == [1, 2, 4, 8, 14, 24, 40]


def test_dissect_roundtrip():
    a = poly([1, 1, 1, 1], order=4)
    parts = a.dissect(2)
    assert parts[0].agrees_with(poly([1, 1], order=2), 2)
    assert parts[1].agrees_with(poly([1, 1], order=2), 2)
    J = eta_J(1, 15)
    comps = J.dissect(3)
    rebuilt = QSeries.zero(15)
    for k, c in enumerate(comps):
        rebuilt = rebuilt + c.substitute_q_power(3).shift(Monomial.q(k))
    assert rebuilt.agrees_with(J, 15)


def test_dissect_fractional_raises():
    s = eta_J(1, 6).substitute_q_power(F(1, 2))
    with pytest.raises(FractionalExponents):
        s.dissect(2)


def test_substitute_q_power():
    assert poly([1, 1], order=5).substitute_q_power(2).agrees_with(
        poly([1, 0, 1], order=10), 10)
    assert eta_J(1, 7).substitute_q_power(3).agrees_with(eta_J(3, 21), 21)
    a = poly([1, 2, 3], order=6)
    assert a.substitute_q_power(1) == a


def test_substitute_fractional_and_back():
    a = eta_J(1, 8)
    half = a.substitute_q_power(F(1, 2))
    assert half.order == 4
    assert half.substitute_q_power(2).agrees_with(a, 8)


def test_shift_by_monomial():
    a = poly([1, 1], order=6)
    m = Monomial.zeta(1, 3, F(2))
    shifted = a.shift(m)
    assert shifted.valuation == 2
    assert shifted.coeff(2) == root_of_unity(1, 3)
    assert shifted.order == 8


def test_cyclotomic_coefficients_mix():
    z = QSeries.from_monomial(Monomial.zeta(1, 3), order=5)
    s = z + QSeries.one(5)
    assert s.coeff(0) == 1 + root_of_unity(1, 3)
    prod = s * s
    expected = (1 + root_of_unity(1, 3)) ** 2
    assert prod.coeff(0) == expected


def test_zero_normal_form():
    s = poly([1], order=6) - poly([1], order=6)
    assert s.is_zero()
    assert s.coeffs == ()
    assert s.order == 6


def test_first_difference_reports_mismatch():
    a = poly([1, 2, 3], order=6)
    b = poly([1, 2, 4], order=6)
    diff = a.first_difference(b, 6)
    assert diff[0] == 2
    assert diff[1].as_fraction() == 3
    assert diff[2].as_fraction() == 4


def test_compare_beyond_order_raises():
    a = poly([1], order=3)
    with pytest.raises(ValueError):
        a.first_difference(poly([1], order=10), 5)


def test_json_serialization():
    s = (QSeries.from_monomial(Monomial.zeta(1, 3), order=3) + QSeries.one(3))
    doc = s.to_json_dict()
    assert doc["L"] == 3
    assert doc["D"] == 1
    assert doc["order"] == "3"
    assert doc["terms"] == [[0, ["1", "1"]]]
