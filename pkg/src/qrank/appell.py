"""Appell-Lerch series m(x,q,z) and the derived Delta, Psi, Lambda blocks,
plus the direct expansions of the rank generating function O_d(z;q).

Every free parameter is a Monomial (root of unity times a rational power of
q), which makes each divisor 1/(1 - u) decidable: expand geometrically for
positive exponent, flip u -> 1/u for negative exponent, and use the constant
1/(1 - c) when the exponent vanishes; c = 1 there is a pole and raises
NonGenericParameter.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Raw, get_field, root_of_unity
from .errors import NonGenericParameter
from .reports import IdentityReport, compare_series
from .series import Monomial, QSeries, computed_to, eta_J
from .theta import binom2, is_theta_zero_pattern, theta_j

F = Fraction


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _field_for(*monomials: Monomial):
    L = 1
    for m in monomials:
        L = _lcm(L, m.zeta_den)
    return get_field(L)


def _add_term(acc: dict, e: Fraction, c: Raw, field) -> None:
    if e in acc:
        acc[e] = field.add(acc[e], c)
    else:
        acc[e] = c


def _accumulate_geometric(acc: dict, field, coeff: Raw, exp: Fraction,
                          u: Monomial, order: Fraction) -> None:
    """Add coeff * q^exp * (1/(1-u)) into the term accumulator, truncating
    everything at `order`."""
    e = u.q_exp
    if e == 0:
        if u.coeff_is_one:
            raise NonGenericParameter("divisor 1 - %s vanishes" % u)
        const = field.inv(field.sub(field.one, u.coeff_raw(field)))
        if exp < order:
            _add_term(acc, exp, field.mul(coeff, const), field)
        return
    if e > 0:
        step_mono = u
        cur = coeff
        k = 0
        while exp + k * e < order:
            _add_term(acc, exp + k * e, cur, field)
            cur = field.mul(cur, step_mono.coeff_raw(field))
            k += 1
    else:
        # 1/(1-u) = -u^{-1}/(1 - u^{-1})
        ui = u.inverse()
        cur = field.neg(field.mul(coeff, ui.coeff_raw(field)))
        k = 1
        while exp + k * (-e) < order:
            _add_term(acc, exp + k * (-e), cur, field)
            cur = field.mul(cur, ui.coeff_raw(field))
            k += 1


def _geom_min_exp(u: Monomial) -> Fraction:
    return -u.q_exp if u.q_exp < 0 else F(0)


# ---------------------------------------------------------------------------
# m(x, q, z)
# ---------------------------------------------------------------------------


def appell_m(x: Monomial, base, z: Monomial, order) -> QSeries:
    """m(x, q^p, z) = (1/j(z;q^p)) sum_r (-1)^r q^{p C(r,2)} z^r / (1 - q^{p(r-1)} x z)."""
    return computed_to(lambda o: _appell_m_once(x, F(base), z, o), order)


@lru_cache(maxsize=None)
def _appell_m_once(x: Monomial, p: Fraction, z: Monomial, order: Fraction) -> QSeries:
    if p <= 0:
        raise ValueError("base exponent must be positive")
    # genericity: neither z nor xz may be an integral power of the base
    if z.coeff_is_one and (z.q_exp / p).denominator == 1:
        raise NonGenericParameter("z = %s is an integral power of the base" % z)
    xz = x * z
    if xz.coeff_is_one and ((x.q_exp + z.q_exp) / p).denominator == 1:
        raise NonGenericParameter("xz = %s is an integral power of the base" % xz)
    field = _field_for(x, z)
    acc: dict[Fraction, Raw] = {}
    e_z = z.q_exp

    def term_min(r: int) -> Fraction:
        u = Monomial.q(p * (r - 1)) * xz
        return p * binom2(r) + r * e_z + _geom_min_exp(u)

    def add(r: int) -> None:
        mono_exp = p * F(binom2(r)) + r * e_z
        coeff = field.zeta_pow(z.zeta_num * r * (field.L // z.zeta_den))
        if r % 2:
            coeff = field.neg(coeff)
        u = Monomial.q(p * (r - 1)) * xz
        _accumulate_geometric(acc, field, coeff, mono_exp, u, order)

    vertex = int((abs(e_z) + abs(x.q_exp) + 3 * p) / p) + 3
    r = 0
    while r <= vertex or term_min(r) < order:
        add(r)
        r += 1
    add(r)  # one-term safety margin
    r = -1
    while r >= -vertex or term_min(r) < order:
        add(r)
        r -= 1
    add(r)
    series = QSeries.from_terms(acc, field, order)
    jz = theta_j(z, p, order)
    return series * jz.invert()


# ---------------------------------------------------------------------------
# Delta and Psi
# ---------------------------------------------------------------------------


def delta(x: Monomial, z1: Monomial, z0: Monomial, base, order) -> QSeries:
    """Delta(x, z1, z0; q^p) = z0 J_1^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)),
    everything at base q^p.  Equal to m(x,q^p,z1) - m(x,q^p,z0)."""
    return computed_to(lambda o: _delta_once(x, z1, z0, F(base), o), order)


@lru_cache(maxsize=None)
def _delta_once(x: Monomial, z1: Monomial, z0: Monomial, p: Fraction,
                order: Fraction) -> QSeries:
    if z1 == z0:
        # numerator factor j(1;q^p) vanishes identically
        return QSeries.zero(order)
    divisors = (z0, z1, x * z0, x * z1)
    for zz in divisors:
        if is_theta_zero_pattern(zz, p):
            raise NonGenericParameter("theta divisor j(%s; q^%s) vanishes" % (zz, p))
    den = QSeries.one(order)
    for zz in divisors:
        den = den * theta_j(zz, p, order)
    num = eta_J(p, order) ** 3
    num = num * theta_j(z1 / z0, p, order)
    num = num * theta_j(x * z0 * z1, p, order)
    return (num * den.invert()).shift(z0)


def psi(k: int, n: int, x: Monomial, z: Monomial, zp: Monomial, base, order) -> QSeries:
    """Psi_k^n(x, z, z'; q^p): the finite t-sum of theta quotients with the
    -x^k z^{k+1} J_{n^2}^3 / (j(z;q^p) j(z';q^{p n^2})) prefactor."""
    return computed_to(lambda o: _psi_once(k, n, x, z, zp, F(base), o), order)


@lru_cache(maxsize=None)
def _psi_once(k: int, n: int, x: Monomial, z: Monomial, zp: Monomial,
              p: Fraction, order: Fraction) -> QSeries:
    if n < 1:
        raise ValueError("n must be a positive integer")
    pn2 = p * n * n
    pref_mono = -(x ** k) * z ** (k + 1)
    inner = order + max(F(0), -pref_mono.q_exp)
    if is_theta_zero_pattern(z, p):
        raise NonGenericParameter("j(%s; q^%s) vanishes" % (z, p))
    if is_theta_zero_pattern(zp, pn2):
        raise NonGenericParameter("j(%s; q^%s) vanishes" % (zp, pn2))
    minus_x = -x
    minus_z = -z
    c_arg = -(Monomial.q(p * (binom2(n) - n * k)) * minus_x ** n * zp)
    if is_theta_zero_pattern(c_arg, pn2):
        raise NonGenericParameter("constant theta divisor vanishes")
    j_c = theta_j(c_arg, pn2, inner)
    xz_n = (x * z) ** n
    total = QSeries.zero(inner)
    for t in range(n):
        a_arg = -(Monomial.q(p * (binom2(n + 1) + n * k + n * t)) * minus_z ** n / zp)
        b_arg = Monomial.q(p * n * t) * xz_n * zp
        d_arg = Monomial.q(p * n * t) * xz_n
        if is_theta_zero_pattern(d_arg, pn2):
            raise NonGenericParameter("theta divisor j(%s; q^%s) vanishes" % (d_arg, pn2))
        num = theta_j(a_arg, pn2, inner) * theta_j(b_arg, pn2, inner)
        den = j_c * theta_j(d_arg, pn2, inner)
        t_mono = Monomial.q(p * (binom2(t + 1) + k * t)) * minus_z ** t
        total = total + (num * den.invert()).shift(t_mono)
    pref = eta_J(pn2, inner) ** 3
    pref = pref * theta_j(z, p, inner).invert()
    pref = pref * theta_j(zp, pn2, inner).invert()
    return (total * pref).shift(pref_mono)


# ---------------------------------------------------------------------------
# Lambda (odd d)
# ---------------------------------------------------------------------------


def lam(d: int, z: Monomial, z0: Monomial, zp: Monomial, order) -> QSeries:
    """Lambda(d, z, z0, z') for odd d, built from Psi and a t-sum of Deltas at
    base q^2, with prefactor (-1)^{(d+1)/2} q^{-(d-1)^2/4} z^{(d-1)/d}.

    z^{1/d} is taken on the canonical root branch and reused consistently for
    every fractional power of z inside."""
    return computed_to(lambda o: _lam_once(d, z, z0, zp, o), order)


@lru_cache(maxsize=None)
def _lam_once(d: int, z: Monomial, z0: Monomial, zp: Monomial,
              order: Fraction) -> QSeries:
    if d < 1 or d % 2 == 0:
        raise ValueError("Lambda is defined for odd d >= 1")
    w = z.root(d)
    pref = Monomial.zeta((d + 1) // 2, 2, -F((d - 1) ** 2, 4)) * w ** (d - 1)
    inner = order + max(F(0), -pref.q_exp)
    x_head = w ** (-2) * Monomial.q(d)
    total = psi((d - 1) // 2, d, x_head, z0, zp, 2, inner)
    half = F(d - 1, 2)
    for t in range(d):
        x_t = Monomial.zeta(-2 * t, d) * w ** (-2) * Monomial.q(d)
        z1_t = Monomial.zeta(t, d) * w * Monomial.q(-half)
        term = delta(x_t, z1_t, z0, 2, inner)
        total = total + term.scale(root_of_unity(-t, d)).scale(F(1, d))
    return total.shift(pref)


# ---------------------------------------------------------------------------
# rank generating function expansions
# ---------------------------------------------------------------------------


def o_d_direct(d: int, z: Monomial, order) -> QSeries:
    """O_d(z;q) from its single-sum form:
    (1-z)/(1+z) * (1 + 2z/j(q;q^2) * sum_n (-1)^n q^{n^2+dn} / (1 - z q^{dn})).

    This is the independent expansion used as the oracle for every deviation
    identity; it never touches the m/Psi/Lambda machinery.
    """
    return computed_to(lambda o: _o_d_direct_once(d, z, o), order)


@lru_cache(maxsize=None)
def _o_d_direct_once(d: int, z: Monomial, order: Fraction) -> QSeries:
    if d < 1:
        raise ValueError("d must be a positive integer")
    if z.coeff_is_one and (z.q_exp / d).denominator == 1:
        raise NonGenericParameter("z = %s hits a divisor pole" % z)
    if z == Monomial.minus_one():
        raise NonGenericParameter("z = -1 is a pole of the (1+z) prefactor")
    field = _field_for(z)
    acc: dict[Fraction, Raw] = {}
    e_z = z.q_exp

    def term_min(n: int) -> Fraction:
        return F(n * n + d * n) + _geom_min_exp(z * Monomial.q(d * n))

    def add(n: int) -> None:
        coeff = field.one if n % 2 == 0 else field.neg(field.one)
        _accumulate_geometric(acc, field, coeff, F(n * n + d * n),
                              z * Monomial.q(d * n), order)

    vertex = int(abs(e_z)) + 2 * d + 3
    n = 0
    while n <= vertex or term_min(n) < order:
        add(n)
        n += 1
    add(n)
    n = -1
    while n >= -vertex or term_min(n) < order:
        add(n)
        n -= 1
    add(n)
    s = QSeries.from_terms(acc, field, order)
    core = 1 + (s * theta_j(Monomial.q(1), 2, order).invert()).shift(z).scale(2)
    one_minus = QSeries.one() - QSeries.from_monomial(z)
    one_plus = QSeries.one() + QSeries.from_monomial(z)
    return core * one_minus * one_plus.invert(order)


def o_d_original(d: int, z: Monomial, order) -> QSeries:
    """O_d(z;q) from the symmetric double-divisor form:
    (J_2/J_1^2) (1 + 2 sum_{n>=1} (1-z)(1-1/z)(-1)^n q^{n^2+dn}
                                   / ((1-z q^{dn})(1-q^{dn}/z))).

    Valid at z = -1, where the single-sum form has a removable prefactor pole;
    this is the route used for O_d(-1;q).
    """
    return computed_to(lambda o: _o_d_original_once(d, z, o), order)


@lru_cache(maxsize=None)
def _o_d_original_once(d: int, z: Monomial, order: Fraction) -> QSeries:
    if z.coeff_is_one and z.q_exp == 0:
        raise NonGenericParameter("z = 1 is excluded")
    field = _field_for(z)
    zc = z.coeff_raw(field) if z.q_exp == 0 else None
    total = QSeries.one(order)
    n = 1
    while F(n * n + d * n) < order:
        acc_a: dict[Fraction, Raw] = {}
        acc_b: dict[Fraction, Raw] = {}
        base_exp = F(n * n + d * n)
        coeff = field.one if n % 2 == 0 else field.neg(field.one)
        _accumulate_geometric(acc_a, field, coeff, base_exp,
                              z * Monomial.q(d * n), order)
        _accumulate_geometric(acc_b, field, field.one, F(0),
                              z.inverse() * Monomial.q(d * n), order)
        term = QSeries.from_terms(acc_a, field, order) * \
            QSeries.from_terms(acc_b, field, order)
        if zc is not None:
            scalar = field.mul(field.sub(field.one, zc),
                               field.sub(field.one, field.inv(zc)))
            term = term.scale(2) * QSeries(field, 1, 0, (scalar,), None,
                                           _normalized=True)
        else:
            poly = (QSeries.one() - QSeries.from_monomial(z)) * \
                (QSeries.one() - QSeries.from_monomial(z.inverse()))
            term = term.scale(2) * poly
        total = total + term
        n += 1
    from .series import eta_quotient

    return total * eta_quotient({2: 1, 1: -2}, order)


def o_d_at_minus_one(d: int, order) -> QSeries:
    return o_d_original(d, Monomial.minus_one(), order)


# ---------------------------------------------------------------------------
# S_d: the (1+z)-folded rank series, via Appell-Lerch machinery
# ---------------------------------------------------------------------------


def s_bar_d(d: int, z: Monomial, z0: Monomial, zp: Monomial, order) -> QSeries:
    """(1+z) O_d(z;q) expressed through Appell-Lerch series.

    Odd d:  (1-z) (1 - 2 m(z^{-2} q^{d^2}, q^{2d^2}, z') + 2 Lambda(d, z, z0, z')).
    Even d: (1-z) (-1 + 2 m((-1)^{d/2+1} z q^{d^2/4}, q^{d^2/2}, z')
                       + 2 (-1)^{d/2} z q^{-d^2/4} Psi_0^{d/2}(z^{2/d} q^{1-d}, q, z'; q^2)).
    """
    return computed_to(lambda o: _s_bar_d_once(d, z, z0, zp, o), order)


def _s_bar_d_once(d: int, z: Monomial, z0: Monomial, zp: Monomial,
                  order: Fraction) -> QSeries:
    if d < 1:
        raise ValueError("d must be a positive integer")
    one_minus = QSeries.one() - QSeries.from_monomial(z)
    if d % 2:
        m_term = appell_m(z ** (-2) * Monomial.q(d * d), 2 * d * d, zp, order)
        lam_term = lam(d, z, z0, zp, order)
        bracket = 1 - m_term.scale(2) + lam_term.scale(2)
    else:
        h = d // 2
        x_m = Monomial.zeta(h + 1, 2) * z * Monomial.q(F(d * d, 4))
        m_term = appell_m(x_m, F(d * d, 2), zp, order)
        psi_term = psi(0, h, z.pow_frac(2, d) * Monomial.q(1 - d),
                       Monomial.q(1), zp, 2, order + F(d * d, 4))
        tail_mono = Monomial.zeta(h, 2, -F(d * d, 4)) * z
        bracket = -1 + m_term.scale(2) + psi_term.shift(tail_mono).scale(2)
    return bracket * one_minus


# ---------------------------------------------------------------------------
# the Lerch-sum-to-m rewriting
# ---------------------------------------------------------------------------


def lerch_fold_lhs(x: Monomial, order) -> QSeries:
    """(1/j(q;q^2)) sum_n (-1)^n q^{n^2+n} / (1 - x q^n)."""
    return computed_to(lambda o: _lerch_fold_lhs_once(x, o), order)


@lru_cache(maxsize=None)
def _lerch_fold_lhs_once(x: Monomial, order: Fraction) -> QSeries:
    if x.coeff_is_one and x.q_exp.denominator == 1:
        raise NonGenericParameter("divisor 1 - x q^n vanishes at n = %d" % (-x.q_exp))
    field = _field_for(x)
    acc: dict[Fraction, Raw] = {}

    def term_min(n: int) -> Fraction:
        return F(n * n + n) + _geom_min_exp(x * Monomial.q(n))

    def add(n: int) -> None:
        coeff = field.one if n % 2 == 0 else field.neg(field.one)
        _accumulate_geometric(acc, field, coeff, F(n * n + n),
                              x * Monomial.q(n), order)

    vertex = int(abs(x.q_exp)) + 5
    n = 0
    while n <= vertex or term_min(n) < order:
        add(n)
        n += 1
    add(n)
    n = -1
    while n >= -vertex or term_min(n) < order:
        add(n)
        n -= 1
    add(n)
    s = QSeries.from_terms(acc, field, order)
    return s * theta_j(Monomial.q(1), 2, order).invert()


def htom_check(x: Monomial, order) -> IdentityReport:
    """Check the fold: lhs above equals -x^{-1} m(x^{-2} q, q^2, x)."""
    order = F(order)
    lhs = lerch_fold_lhs(x, order)
    rhs = computed_to(
        lambda o: appell_m(x ** (-2) * Monomial.q(1), 2, x, o).shift(-x.inverse()),
        order)
    return compare_series("lerch-fold", lhs, rhs, order, {"x": x})
