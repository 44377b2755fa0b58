"""Named series builders: eta-quotient blocks, dissection components, and the
assembled three-part decomposition of the rank series at a cube root of unity.

Builder names are short stable identifiers shared by the catalog and the CLI
(`expand --series`).  Every builder takes an order and returns a QSeries that
is exact below that order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .appell import appell_m, psi
from .cyclotomic import root_of_unity
from .errors import UnknownName
from .series import Monomial, QSeries, computed_to, eta_J, eta_quotient
from .theta import theta_j

F = Fraction
Z = Monomial.zeta
Q = Monomial.q


def _theta_ratio(z1: Monomial, z2: Monomial, base, order) -> QSeries:
    """j(z1;q^p) / j(z2;q^p)."""
    return computed_to(
        lambda o: theta_j(z1, base, o) * theta_j(z2, base, o).invert(), order)


# -- three-dissection blocks -------------------------------------------------


@lru_cache(maxsize=None)
def _w_small(order) -> QSeries:
    return eta_quotient({1: 1, 6: 3, 2: -1, 3: -3}, order)


@lru_cache(maxsize=None)
def _W(i: int, order) -> QSeries:
    head = eta_quotient({3: 9, 1: -12}, order)
    if i == 2:
        return head.scale(9)
    w = _w_small(order)
    if i == 0:
        inner = (w.invert() ** 2) + (w * Q(1)).scale(8) + ((w ** 4) * Q(2)).scale(16)
    else:
        inner = w.invert().scale(3) + ((w ** 2) * Q(1)).scale(12)
    return head * inner


@lru_cache(maxsize=None)
def _f(i: int, order) -> QSeries:
    den = eta_quotient({1: -1, 2: -1}, order)
    if i == 0:
        return theta_j(Q(7), 18, order) * den
    if i == 1:
        return -(theta_j(Q(5), 18, order) * den)
    return -(theta_j(Q(1), 18, order) * den * Q(1))


@lru_cache(maxsize=None)
def _g(i: int, order) -> QSeries:
    if i == 0:
        return eta_quotient({1: 1, 2: 2, 8: 2, 12: 2, 4: -5, 24: -1}, order)
    if i == 1:
        return eta_quotient({2: 7, 3: 1, 8: 2, 12: 4, 1: -2, 4: -7, 6: -3, 24: -1}, order)
    return eta_quotient({2: 2, 6: 2, 8: 3, 3: -1, 4: -5}, order).scale(-2)


@lru_cache(maxsize=None)
def _h(i: int, order) -> QSeries:
    if i == 0:
        return eta_quotient({4: 4, 6: 2, 2: -1, 3: -1, 8: -3}, order)
    if i == 1:
        return eta_quotient({1: 1, 4: 1, 6: 1, 24: 1, 8: -2, 12: -1}, order)
    return -eta_quotient({2: 5, 3: 1, 12: 1, 24: 1, 1: -2, 4: -1, 6: -2, 8: -2}, order)


@lru_cache(maxsize=None)
def _I(i: int, order) -> QSeries:
    if i == 0:
        return eta_quotient({2: 2, 6: 3, 4: -6}, order)
    if i == 1:
        return eta_quotient({2: 4, 12: 6, 4: -8, 6: -3}, order) * Q(1)
    return -eta_quotient({2: 3, 12: 3, 4: -7}, order)


DISSECTION_TARGETS = {
    "dis1": ({1: -3}, _W),
    "dis2": ({1: 1, 6: 1, 2: -1, 3: -2}, _f),
    "dis3": ({2: 4, 8: 1, 1: -1, 4: -3}, _g),
    "dis4": ({2: 3, 1: -1, 8: -1}, _h),
    "dis5": ({2: 1, 4: -2}, _I),
}


def dissection_lhs(key: str, order) -> QSeries:
    spec, _ = DISSECTION_TARGETS[key]
    return eta_quotient(spec, order)


def dissection_rhs(key: str, order) -> QSeries:
    _, block = DISSECTION_TARGETS[key]
    order = F(order)
    out = QSeries.zero(order)
    for k in range(3):
        comp = block(k, -(-order // 3) + 1)
        out = out + comp.substitute_q_power(3).shift(Q(k)).truncate(order)
    return out


# -- theta-ratio constants for the assembled decomposition --------------------


@lru_cache(maxsize=None)
def _letter(name: str, order) -> QSeries:
    if name == "A":
        return theta_j(-Q(12), 27, order)
    if name == "B":
        return theta_j(-Q(21), 27, order) * Q(1)
    if name == "C":
        return theta_j(-Q(3), 27, order) * Q(2)
    if name == "D":
        return _theta_ratio(Q(60), -Q(30), 108, order)
    if name == "E":
        return _theta_ratio(Q(84), -Q(42), 108, order) * Q(6)
    if name == "F":
        return _theta_ratio(Q(24), -Q(12), 108, order)
    if name == "G":
        return _theta_ratio(Q(96), -Q(48), 108, order) * Q(12)
    raise UnknownName(name)


@lru_cache(maxsize=None)
def _triple_sum(block, n_class: int, order) -> QSeries:
    """sum over k, l, m in {0,1,2} with k+l+m = n_class (mod 3) of
    q^{k+l+m} block_k(q^3) W_l(q^3) f_m(q^3)."""
    order = F(order)
    inner = -(-order // 3) + 1
    blocks = [block(k, inner).substitute_q_power(3) for k in range(3)]
    Ws = [_W(l, inner).substitute_q_power(3) for l in range(3)]
    fs = [_f(m, inner).substitute_q_power(3) for m in range(3)]
    out = QSeries.zero(order)
    for k in range(3):
        for l in range(3):
            for m in range(3):
                if (k + l + m) % 3 == n_class % 3:
                    out = out + (blocks[k] * Ws[l] * fs[m]).shift(Q(k + l + m)).truncate(order)
    return out


def script_G(n_class: int, order) -> QSeries:
    return _triple_sum(_g, n_class, order)


def script_H(n_class: int, order) -> QSeries:
    return _triple_sum(_h, n_class, order)


@lru_cache(maxsize=None)
def _pair_sum(block, n_class: int, order) -> QSeries:
    """sum over k, l in {0,1,2} with k+l = n_class (mod 3) of
    q^{k+l} block_k(q^3) W_l(q^3)."""
    order = F(order)
    inner = -(-order // 3) + 1
    blocks = [block(k, inner).substitute_q_power(3) for k in range(3)]
    Ws = [_W(l, inner).substitute_q_power(3) for l in range(3)]
    out = QSeries.zero(order)
    for k in range(3):
        for l in range(3):
            if (k + l) % 3 == n_class % 3:
                out = out + (blocks[k] * Ws[l]).shift(Q(k + l)).truncate(order)
    return out


def psi_difference_lhs(order) -> QSeries:
    """4 Psi_2^3(q^9,-1,-1;q^18) - 2 Psi_1^3(q^9,-1,-1;q^18)."""
    minus = Monomial.minus_one()
    a = psi(2, 3, Q(9), minus, minus, 18, order)
    b = psi(1, 3, Q(9), minus, minus, 18, order)
    return a.scale(4) - b.scale(2)


def psi_difference_rhs(order) -> QSeries:
    """-(3/2) q^{-9} (J_18 J_27 J_108 J_162^5 / (J_36^2 J_54 J_81 J_324^3))
    ( j(q^27;q^162)/j(-q^27;q^162) + j(q^81;q^162)/j(-q^81;q^162) )."""
    def build(o):
        quo = eta_quotient({18: 1, 27: 1, 108: 1, 162: 5,
                            36: -2, 54: -1, 81: -1, 324: -3}, o)
        bracket = _theta_ratio(Q(27), -Q(27), 162, o) + _theta_ratio(Q(81), -Q(81), 162, o)
        return (quo * bracket).shift(Q(-9)).scale(F(-3, 2))
    return computed_to(build, order)


def ratio_sum_lhs(order) -> QSeries:
    """j(w q^15;q^18)/j(-w q^15;q^18) + j(w q^21;q^18)/j(-w q^21;q^18), w = zeta_3."""
    w15 = Z(1, 3, 15)
    w21 = Z(1, 3, 21)
    return _theta_ratio(w15, -w15, 18, order) + _theta_ratio(w21, -w21, 18, order)


def ratio_sum_rhs(order) -> QSeries:
    """-2 q^3 zeta_3^2 (1 - zeta_3^2) J_6^2 J_9^2 J_36^2 J_54^2 / (J_3 J_18^6 J_27)."""
    w2 = root_of_unity(2, 3)
    quo = eta_quotient({6: 2, 9: 2, 36: 2, 54: 2, 3: -1, 18: -6, 27: -1}, order)
    return (quo * Q(3)).scale(w2 * (1 - w2)).scale(-2)


def bracket_reduction_lhs(order) -> QSeries:
    """-(zeta_3 - zeta_3^2) J_2 J_6 J_18^4 / (2 J_4^2 J_36^2 j(-zeta_3 q^9;q^18))
    times the two-ratio sum above."""
    w = root_of_unity(1, 3)

    def build(o):
        quo = eta_quotient({2: 1, 6: 1, 18: 4, 4: -2, 36: -2}, o)
        div = theta_j(-Z(1, 3, 9), 18, o).invert()
        return (quo * div * ratio_sum_lhs(o)).scale((w - w ** 2) * F(-1, 2))
    return computed_to(build, order)


def bracket_reduction_rhs(order) -> QSeries:
    """3 q^3 J_2 J_6^3 J_9 J_108 / (J_3 J_4^2 J_18 J_36)."""
    quo = eta_quotient({2: 1, 6: 3, 9: 1, 108: 1, 3: -1, 4: -2, 18: -1, 36: -1}, order)
    return (quo * Q(3)).scale(3)


# -- the assembled three-part decomposition ----------------------------------


@lru_cache(maxsize=None)
def _B_part(n_class: int, order) -> QSeries:
    def build(o):
        first = eta_quotient({6: 3, 9: 1, 108: 1, 3: -1, 18: -1, 36: -1}, o)
        first = (first * _I(n_class, o).substitute_q_power(3)).shift(Q(3 + n_class)).scale(3)
        outer = eta_quotient({3: 2, 6: 2, 36: 1, 12: -1, 18: -2}, o)
        gw_coeff = eta_quotient({3: 3, 12: 2, 18: 2, 72: 1, 108: 2,
                                 6: -4, 9: -1, 24: -1, 36: -1, 54: -1, 216: -1}, o)
        term_gw = gw_coeff * _pair_sum(_g, n_class, o)
        A, B, C, D, E, Fq, G = (_letter(x, o) for x in "ABCDEFG")
        g_coeff = eta_quotient({12: 2, 108: 1, 6: -1, 24: -1}, o)
        combo_G = (A * D).scale(2) - A * E
        term_G = combo_G * script_G(n_class + 1, o)
        term_G = term_G - (B * D + B * E) * script_G(n_class, o)
        term_G = term_G + ((C * E).scale(2) - C * D) * script_G(n_class + 2, o)
        term_G = (g_coeff * term_G).shift(Q(2)).scale(-2)
        hw_coeff = eta_quotient({3: 3, 18: 1, 24: 1, 36: 2, 216: 1,
                                 6: -3, 9: -1, 12: -1, 72: -1, 108: -1}, o)
        term_hw = (hw_coeff * _pair_sum(_h, n_class + 1, o)).shift(Q(5))
        h_coeff = eta_quotient({24: 1, 108: 1, 12: -1}, o)
        combo_H = ((A * G).scale(2) + A * Fq) * script_H(n_class + 2, o)
        combo_H = combo_H - ((B * Fq).scale(2) + B * G) * script_H(n_class + 1, o)
        combo_H = combo_H - (C * G - C * Fq) * script_H(n_class, o)
        term_H = (h_coeff * combo_H).shift(Q(1)).scale(-2)
        return first + outer * (term_gw + term_G + term_hw + term_H)
    return computed_to(build, order)


def b_block(n_class: int, order) -> QSeries:
    """Component n_class of the three-part decomposition, normalized so the
    full series is b_block(0) + q b_block(1) + q^2 b_block(2), each block a
    series in q^3.  Class 0 carries the Appell-Lerch head and the
    Psi-difference theta term."""
    if n_class in (1, 2):
        return computed_to(
            lambda o: _B_part(n_class, o).shift(Q(-n_class)), order)

    def build(o):
        minus = Monomial.minus_one()
        head = appell_m(Q(-27), 162, minus, o).shift(Q(-36)).scale(6)
        return head + psi_difference_rhs(o) + _B_part(0, o)
    return computed_to(build, order)


# -- registry ----------------------------------------------------------------


def _named_builders():
    builders = {}
    for i in range(3):
        builders["W%d" % i] = (lambda o, i=i: _W(i, o))
        builders["f%d" % i] = (lambda o, i=i: _f(i, o))
        builders["g%d" % i] = (lambda o, i=i: _g(i, o))
        builders["h%d" % i] = (lambda o, i=i: _h(i, o))
        builders["I%d" % i] = (lambda o, i=i: _I(i, o))
        builders["G%d" % i] = (lambda o, i=i: script_G(i, o))
        builders["H%d" % i] = (lambda o, i=i: script_H(i, o))
    builders["w"] = _w_small
    for x in "ABCDEFG":
        builders[x] = (lambda o, x=x: _letter(x, o))
    for key in DISSECTION_TARGETS:
        builders["%s-lhs" % key] = (lambda o, k=key: dissection_lhs(k, o))
        builders["%s-rhs" % key] = (lambda o, k=key: dissection_rhs(k, o))
    builders["Bbar0"] = (lambda o: b_block(0, o))
    builders["B1"] = (lambda o: b_block(1, o))
    builders["B2"] = (lambda o: b_block(2, o))
    builders["pbar"] = (lambda o: eta_quotient({2: 1, 1: -2}, o))
    return builders


NAMED_BUILDERS = _named_builders()


def build_named_series(name: str, order) -> QSeries:
    """Look up a named series and expand it below `order`."""
    if name.startswith("J") and name[1:].isdigit():
        return eta_J(int(name[1:]), F(order))
    try:
        builder = NAMED_BUILDERS[name]
    except KeyError:
        raise UnknownName("no series named %r" % name) from None
    return builder(F(order))


def named_series_names() -> list[str]:
    return sorted(NAMED_BUILDERS)
