"""Theta blocks j(z;q^p) for monomial arguments.

j(z;q) = (z;q)_oo (q/z;q)_oo (q;q)_oo = sum_{n in Z} (-1)^n q^C(n,2) z^n.

The bilateral sum is the production route: the quadratic exponent growth
gives a provable truncation radius for any monomial z, including ones with
negative or fractional q-exponent.  The triple product is kept as an
independent oracle for tests and for the catalog's two-route entry.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclotomic import get_field
from .reports import IdentityReport, compare_series
from .series import Monomial, QSeries, computed_to


def _base_exp(base) -> Fraction:
    if isinstance(base, Monomial):
        if not base.coeff_is_one:
            raise ValueError("theta base must be a pure power of q")
        p = base.q_exp
    else:
        p = Fraction(base)
    if p <= 0:
        raise ValueError("theta base exponent must be positive")
    return p


def binom2(n: int) -> int:
    """n(n-1)/2, valid for negative n as well (bilateral sums)."""
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def theta_j(z: Monomial, base, order) -> QSeries:
    """j(z; q^p) truncated below `order`, from the bilateral theta sum."""
    p = _base_exp(base)
    order = Fraction(order)
    e = z.q_exp
    field = get_field(z.zeta_den)
    terms: dict[Fraction, tuple] = {}

    def add_term(n: int) -> Fraction:
        exp = p * Fraction(binom2(n)) + n * e
        if exp < order:
            coeff = field.zeta_pow(z.zeta_num * n * (field.L // z.zeta_den))
            if n % 2:
                coeff = field.neg(coeff)
            if exp in terms:
                terms[exp] = field.add(terms[exp], coeff)
            else:
                terms[exp] = coeff
        return exp

    # upward: f(n+1) - f(n) = p*n + e, increasing once n > -e/p
    n = 0
    while True:
        exp = add_term(n)
        if exp >= order and n >= -e / p + 1:
            break
        n += 1
    # downward: f(n-1) - f(n) = -p*(n-1) - e, increasing once n < 1 - e/p
    n = -1
    while True:
        exp = add_term(n)
        if exp >= order and n <= 1 - e / p - 1:
            break
        n -= 1
    return QSeries.from_terms(terms, field, order)


def theta_j2(z1: Monomial, z2: Monomial, base, order) -> QSeries:
    """j(z1, z2; q^p) = j(z1; q^p) j(z2; q^p)."""
    return theta_j(z1, base, order) * theta_j(z2, base, order)


def theta_triple_product(z: Monomial, base, order) -> QSeries:
    """(z;q^p)_oo (q^p/z;q^p)_oo (q^p;q^p)_oo by direct product accumulation.

    Requires 0 <= exp(z) < p so every factor is 1 + O(q^positive) beyond
    finitely many; this covers the oracle's sampling domain.
    """
    p = _base_exp(base)
    order = Fraction(order)
    if not (0 <= z.q_exp < p):
        raise ValueError("product oracle needs 0 <= exp(z) < base exponent")
    out = QSeries.one(order)
    k = 0
    while z.q_exp + k * p < order:
        factor = QSeries.one(order) - QSeries.from_monomial(
            z * Monomial.q(k * p), order)
        out = out * factor
        k += 1
    k = 1
    zinv = z.inverse()
    while k * p - z.q_exp < order:
        factor = QSeries.one(order) - QSeries.from_monomial(
            zinv * Monomial.q(k * p), order)
        out = out * factor
        k += 1
    k = 1
    while k * p < order:
        factor = QSeries.one(order) - QSeries.from_monomial(Monomial.q(k * p), order)
        out = out * factor
        k += 1
    return out


def is_theta_zero_pattern(z: Monomial, base) -> bool:
    """True when j(z;q^p) vanishes identically, i.e. z is an integral power
    of the base with trivial root-of-unity part."""
    p = _base_exp(base)
    return z.coeff_is_one and (z.q_exp / p).denominator == 1


def theta_shift_check(x: Monomial, n: int, base, order) -> IdentityReport:
    """Verify the two theta rewriting laws at one instance by expansion:
    j(q^n x; q) = (-1)^n q^{-C(n,2)} x^{-n} j(x; q) and
    j(x; q) = j(q/x; q) = -x j(1/x; q), all with q -> q^p.
    """
    p = _base_exp(base)
    order = Fraction(order)
    inst = {"x": x, "n": n, "base": Fraction(p)}
    shift_mono = Monomial.zeta(n, 2, -p * Fraction(binom2(n))) * x ** (-n)
    lhs1 = theta_j(x * Monomial.q(n * p), p, order)
    rhs1 = computed_to(lambda o: theta_j(x, p, o).shift(shift_mono), order)
    rep = compare_series("theta-base-shift", lhs1, rhs1, order, inst)
    if not rep.passed:
        return rep
    lhs2 = theta_j(x, p, order)
    rhs2a = theta_j(Monomial.q(p) / x, p, order)
    rep = compare_series("theta-base-shift", lhs2, rhs2a, order, inst)
    if not rep.passed:
        return rep
    rhs2b = computed_to(lambda o: -theta_j(x.inverse(), p, o).shift(x), order)
    return compare_series("theta-base-shift", lhs2, rhs2b, order, inst)
