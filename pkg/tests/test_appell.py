from fractions import Fraction

import pytest

from qrank.appell import (
    appell_m,
    delta,
    htom_check,
    lam,
    o_d_at_minus_one,
    o_d_direct,
    o_d_original,
    psi,
    s_bar_d,
)
from qrank.cyclotomic import root_of_unity
from qrank.errors import NonGenericParameter
from qrank.series import Monomial, QSeries, computed_to

F = Fraction
Z = Monomial.zeta
Q = Monomial.q

SAMPLES = [
    (Z(1, 5), 1, Z(1, 7)),
    (Z(1, 5, 1), 1, Z(3, 7)),
    (Z(2, 7, 2), 2, Z(1, 5, 1)),
]


def test_appell_half_constant():
    # m(q, q^2, -1) = 1/2 exactly
    m = appell_m(Q(1), 2, Z(1, 2), 30)
    assert m.agrees_with(QSeries.scalar(F(1, 2)), 30)


def test_appell_flip_inverse():
    # m(x,q,z) = x^{-1} m(x^{-1}, q, z^{-1})
    for x, p, z in SAMPLES:
        lhs = appell_m(x, p, z, 18)
        rhs = computed_to(
            lambda o: appell_m(x.inverse(), p, z.inverse(), o).shift(x.inverse()), 18)
        assert lhs.agrees_with(rhs, 18), (x, p, z)


def test_appell_increment():
    # m(x,q,z) = x^{-1} - x^{-1} m(qx, q, z)
    for x, p, z in SAMPLES:
        lhs = appell_m(x, p, z, 18)
        rhs = computed_to(
            lambda o: (QSeries.from_monomial(x.inverse())
                       - appell_m(x * Q(p), p, z, o).shift(x.inverse())), 18)
        assert lhs.agrees_with(rhs, 18), (x, p, z)


def test_appell_pole_detection():
    with pytest.raises(NonGenericParameter):
        appell_m(Q(2), 1, Q(-1), 10)  # xz = q
    with pytest.raises(NonGenericParameter):
        appell_m(Z(1, 5), 1, Q(3), 10)  # z integral power of base


def test_appell_base_substitution_consistency():
    # computing at base q^2 and then reading q -> q^2 matches computing the
    # base-q instance and substituting afterwards
    x, z = Z(1, 5, 1), Z(1, 7)
    direct = appell_m(x, 1, z, 12)
    x2 = Z(1, 5, 2)
    scaled = appell_m(x2, 2, z, 24)
    assert direct.substitute_q_power(2).agrees_with(scaled, 24)


def test_delta_matches_m_difference():
    # Delta(x, z1, z0; q) = m(x,q,z1) - m(x,q,z0)
    cases = [
        (Z(1, 5, 1), Z(1, 7), Z(1, 2), 2),
        (Z(1, 5), Z(2, 7), Z(3, 7), 1),
        (Z(1, 3, 1), Z(1, 5), Z(1, 7, 1), 2),
    ]
    for x, z1, z0, p in cases:
        lhs = delta(x, z1, z0, p, 15)
        rhs = appell_m(x, p, z1, 15) - appell_m(x, p, z0, 15)
        assert lhs.agrees_with(rhs, 15), (x, z1, z0, p)


def test_delta_equal_arguments_is_zero():
    assert delta(Z(1, 5, 1), Z(1, 7), Z(1, 7), 1, 12).is_zero_to(12)


def test_root_averaging_small():
    # sum_t zeta_n^{-kt} m(zeta_n^t x, q, z)
    #   = n q^{-C(k+1,2)} (-x)^k m(-q^{C(n,2)-nk} (-x)^n, q^{n^2}, z') + n Psi_k^n(x,z,z';q)
    from qrank.theta import binom2

    x, z, zp = Z(1, 5, 1), Z(1, 7), Z(2, 7)
    for n in (2, 3):
        for k in range(n):
            lhs = QSeries.zero(12)
            for t in range(n):
                term = appell_m(Z(t, n) * x, 1, z, 12)
                lhs = lhs + term.scale(root_of_unity(-k * t, n))
            head = Monomial.q(F(-binom2(k + 1))) * (-x) ** k
            inner_x = -(Q(binom2(n) - n * k) * (-x) ** n)
            rhs = computed_to(
                lambda o: appell_m(inner_x, n * n, zp, o).shift(head).scale(n), 12)
            rhs = rhs + psi(k, n, x, z, zp, 1, 12).scale(n)
            assert lhs.agrees_with(rhs, 12), (n, k)


def test_psi_vanishing_instance():
    assert psi(0, 3, Q(9), Z(1, 2), Z(1, 2), 18, 40).is_zero_to(40)


def test_htom():
    assert htom_check(Z(1, 5), 20).passed
    assert htom_check(Z(1, 7, 1), 20).passed
    with pytest.raises(NonGenericParameter):
        htom_check(Q(1), 10)


def test_o_d_direct_first_coefficients():
    # both overpartitions of 1 have rank 0, so [q] O_1(z;q) = 2
    s = o_d_direct(1, Z(1, 5), 12)
    assert s.coeff(0) == 1
    assert s.coeff(1) == 2


def test_o_d_direct_pole_cases():
    with pytest.raises(NonGenericParameter):
        o_d_direct(1, Monomial.one(), 10)
    with pytest.raises(NonGenericParameter):
        o_d_direct(2, Monomial.minus_one(), 10)


def test_o_d_forms_agree():
    for d in (1, 2):
        for z in (Z(1, 5), Z(2, 7)):
            a = o_d_direct(d, z, 16)
            b = o_d_original(d, z, 16)
            assert a.agrees_with(b, 16), (d, z)


def test_o_d_at_minus_one_even_part():
    # O_d(-1;q) counts by rank parity; at q^0 it is 1
    s = o_d_at_minus_one(1, 12)
    assert s.coeff(0) == 1
    # N(0,1)=2 gives coefficient 2 at q^1 for d=1
    assert s.coeff(1) == 2


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_s_bar_matches_folded_rank_series(d):
    z = Z(1, 5)
    z0, zp = Z(3, 7), Z(1, 7)
    lhs = s_bar_d(d, z, z0, zp, 14)
    rhs = computed_to(
        lambda o: (QSeries.one() + QSeries.from_monomial(z)) * o_d_direct(d, z, o), 14)
    assert lhs.agrees_with(rhs, 14)


def test_s_bar_parameter_independence():
    z = Z(2, 7)
    a = s_bar_d(1, z, Z(1, 5), Z(2, 5), 12)
    b = s_bar_d(1, z, Z(1, 11), Z(4, 11), 12)
    assert a.agrees_with(b, 12)


def test_lam_collapses_at_d_one():
    # single-term sums: Lambda(1, z, z0, z') = -(Psi_0^1(z^-2 q, z0, z'; q^2)
    #                                            + Delta(z^-2 q, z, z0; q^2))
    z, z0, zp = Z(1, 5), Z(1, 7), Z(2, 7)
    lhs = lam(1, z, z0, zp, 14)
    rhs = -(psi(0, 1, z ** (-2) * Q(1), z0, zp, 2, 14)
            + delta(z ** (-2) * Q(1), z, z0, 2, 14))
    assert lhs.agrees_with(rhs, 14)


def test_lam_rejects_even_d():
    with pytest.raises(ValueError):
        lam(2, Z(1, 5), Z(1, 7), Z(2, 7), 8)


def test_fractional_base_flip():
    # the Puiseux machinery carries fractional exponents end to end
    x, z = Z(1, 5, F(1, 2)), Z(1, 7)
    lhs = appell_m(x, F(1, 2), z, 8)
    assert lhs.den == 2
    rhs = computed_to(
        lambda o: appell_m(x.inverse(), F(1, 2), z.inverse(), o).shift(x.inverse()), 8)
    assert lhs.agrees_with(rhs, 8)


def test_fractional_base_delta():
    x = Z(1, 5, F(3, 2))
    lhs = delta(x, Z(1, 7), Z(2, 7), F(1, 2), 8)
    rhs = appell_m(x, F(1, 2), Z(1, 7), 8) - appell_m(x, F(1, 2), Z(2, 7), 8)
    assert lhs.agrees_with(rhs, 8)


def test_psi_boundary_k_values():
    # Psi is evaluated verbatim for any integer k, not only 0 <= k < n
    minus = Monomial.minus_one()
    for k in (3, -1):
        s = psi(k, 3, Q(9), minus, minus, 18, 24)
        assert s.order >= 24
