"""Overpartition combinatorics and rank deviations.

Ground truth comes from three independent routes that the test suite plays
against each other: direct enumeration (d = 1, 2), coefficient extraction
from the rank generating function at roots of unity (any d), and the
Appell-Lerch formulas for deviation pairs and single deviations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .appell import appell_m, lam, o_d_at_minus_one, o_d_direct, psi
from .cyclotomic import get_field, root_of_unity
from .errors import NonGenericParameter, UnsupportedCase
from .series import Monomial, QSeries, computed_to, eta_quotient

F = Fraction


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Overpartition:
    """Parts in weakly decreasing order; within equal values the overlined
    copy (at most one per distinct value) comes first."""

    parts: tuple[tuple[int, bool], ...]

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    def rank(self) -> int:
        """Largest part minus number of parts; 0 for the empty overpartition."""
        if not self.parts:
            return 0
        return self.parts[0][0] - len(self.parts)

    def m2_rank(self) -> int:
        """ceil(l/2) - #parts + #(odd non-overlined parts) - chi(largest part
        is odd and non-overlined); 0 for the empty overpartition."""
        if not self.parts:
            return 0
        largest = self.parts[0][0]
        odd_plain = sum(1 for v, ov in self.parts if v % 2 and not ov)
        largest_overlined = any(v == largest and ov for v, ov in self.parts)
        chi = 1 if (largest % 2 and not largest_overlined) else 0
        return -(-largest // 2) - len(self.parts) + odd_plain - chi

    def __str__(self):
        return "+".join(("%d~" % v if ov else str(v)) for v, ov in self.parts) or "0"


def _partitions(n: int, max_part: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_overpartitions(n: int) -> list[Overpartition]:
    """All overpartitions of n, each exactly once."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for plain in _partitions(n, n):
        distinct = sorted(set(plain), reverse=True)
        for mask in range(1 << len(distinct)):
            overlined = {distinct[i] for i in range(len(distinct)) if mask >> i & 1}
            parts = []
            for v in plain:
                if v in overlined:
                    parts.append((v, True))
                    overlined.discard(v)
                else:
                    parts.append((v, False))
            out.append(Overpartition(tuple(parts)))
    return out


def p_bar_series(order) -> QSeries:
    """Generating function of overpartition counts, J_2 / J_1^2."""
    return eta_quotient({2: 1, 1: -2}, order)


@lru_cache(maxsize=None)
def p_bar(n: int) -> int:
    return int(p_bar_series(n + 1).coeff(n).as_fraction())


def enumeration_rank_counts(d: int, max_n: int) -> dict[tuple[int, int], int]:
    """Counts of overpartitions of n by rank (d=1) or M2-rank (d=2)."""
    if d not in (1, 2):
        raise ValueError("enumeration covers the rank (d=1) and M2-rank (d=2)")
    counts: dict[tuple[int, int], int] = {}
    for n in range(max_n + 1):
        for p in enumerate_overpartitions(n):
            m = p.rank() if d == 1 else p.m2_rank()
            counts[m, n] = counts.get((m, n), 0) + 1
    return counts


# ---------------------------------------------------------------------------
# rank tables via exact root-of-unity extraction
# ---------------------------------------------------------------------------


@dataclass
class RankTables:
    """N_d(m, n) for 0 <= n <= max_n and all m (entries outside |m| <= n are 0)."""

    d: int
    max_n: int
    counts: dict[tuple[int, int], int]

    def count(self, m: int, n: int) -> int:
        if n > self.max_n:
            raise ValueError("table only covers n <= %d" % self.max_n)
        return self.counts.get((m, n), 0)

    def residue_count(self, a: int, M: int, n: int) -> int:
        """Number of overpartitions of n with statistic congruent to a mod M."""
        total = 0
        for m in range(-n, n + 1):
            if (m - a) % M == 0:
                total += self.count(m, n)
        return total

    def column_sum(self, n: int) -> int:
        return sum(self.count(m, n) for m in range(-n, n + 1))

    def write_csv(self, fh) -> None:
        fh.write("d,m,n,count\n")
        for n in range(self.max_n + 1):
            for m in range(-n, n + 1):
                c = self.count(m, n)
                if c:
                    fh.write("%d,%d,%d,%d\n" % (self.d, m, n, c))


_TABLE_CACHE: dict[int, RankTables] = {}


def rank_tables(d: int, max_n: int) -> RankTables:
    cached = _TABLE_CACHE.get(d)
    if cached is not None and cached.max_n >= max_n:
        return cached
    built = _build_rank_tables(d, max_n)
    _TABLE_CACHE[d] = built
    return built


def _build_rank_tables(d: int, max_n: int) -> RankTables:
    """Invert the generating function at the K-th roots of unity, K odd and
    larger than twice the largest statistic.

    The inverse Fourier sums run in the group ring Z[x]/(x^K - 1): a
    multiplication by zeta_K^{-mj} is a cyclic shift there, and a final
    reduction mod Phi_K certifies the sum is the rational K * N_d(m, n).
    """
    K = 2 * max_n + 3
    order = F(max_n + 1)
    field = get_field(K)
    phi = field.phi
    # evaluations at zeta_K^j; j = 0 is the plain overpartition count
    per_j: list[tuple[int, list[list[int]]]] = []
    for j in range(K):
        if j == 0:
            series = p_bar_series(order)
        else:
            series = o_d_direct(d, Monomial.zeta(j, K), order)
        dens = []
        vecs = []
        for n in range(max_n + 1):
            raw = series.coeff(n).embed(K).raw
            dens.append(raw[0])
            vecs.append(list(raw[1]))
        den = 1
        for x in dens:
            den = den * x // math.gcd(den, x)
        scaled = [[v * (den // dens[n]) for v in vecs[n]] for n in range(max_n + 1)]
        per_j.append((den, scaled))
    counts: dict[tuple[int, int], int] = {}
    for n in range(max_n + 1):
        den_n = 1
        for den, _ in per_j:
            den_n = den_n * den // math.gcd(den_n, den)
        rows = [[v * (den_n // per_j[j][0]) for v in per_j[j][1][n]] for j in range(K)]
        for m in range(-n, n + 1):
            acc = [0] * K
            for j in range(K):
                shift = (-m * j) % K
                row = rows[j]
                for i in range(phi):
                    v = row[i]
                    if v:
                        acc[(i + shift) % K] += v
            red = field.reduce_vec(acc)
            if any(red[1:]):
                raise ArithmeticError("extraction did not yield a rational count")
            value = F(red[0], K * den_n)
            if value.denominator != 1 or value < 0:
                raise ArithmeticError("count N_%d(%d,%d) = %s is not a "
                                      "nonnegative integer" % (d, m, n, value))
            if value:
                counts[m, n] = int(value)
    return RankTables(d, max_n, counts)


# ---------------------------------------------------------------------------
# deviations: definition route
# ---------------------------------------------------------------------------


def deviation_by_definition(d: int, a: int, M: int, order) -> QSeries:
    """Sum over n of (N_d(a, M, n) - p(n)/M) q^n with exact rational
    coefficients, straight from the rank tables."""
    order = F(order)
    max_n = math.ceil(order) - 1
    tables = rank_tables(d, max_n)
    field = get_field(1)
    terms = {}
    for n in range(max_n + 1):
        c = F(tables.residue_count(a, M, n)) - F(tables.column_sum(n), M)
        if c:
            terms[F(n)] = field.from_fraction(c)
    return QSeries.from_terms(terms, field, order)


def pair_by_definition(d: int, a: int, M: int, order) -> QSeries:
    return deviation_by_definition(d, a, M, order) + \
        deviation_by_definition(d, a - 1, M, order)


def deviation_by_root_average(d: int, a: int, M: int, order) -> QSeries:
    """(1/M) sum_{k=1}^{M-1} O_d(zeta_M^k; q) zeta_M^{-ka}, the root-of-unity
    average that recovers a single deviation for every M."""
    order = F(order)
    total = QSeries.zero(order)
    for k in range(1, M):
        if 2 * k == M:
            value = o_d_at_minus_one(d, order)
        else:
            value = o_d_direct(d, Monomial.zeta(k, M), order)
        total = total + value.scale(root_of_unity(-k * a, M))
    return total.scale(F(1, M))


# ---------------------------------------------------------------------------
# deviations: Appell-Lerch formula route
# ---------------------------------------------------------------------------


def default_generics(M: int, d: int) -> tuple[Monomial, Monomial, Monomial]:
    """Generic parameters zeta_P, zeta_P^2, zeta_P^3 with P coprime to every
    root order the instantiated formulas touch."""
    relevant = 2 * M * d
    for P in (7, 11, 13):
        if relevant % P:
            return (Monomial.zeta(1, P), Monomial.zeta(2, P), Monomial.zeta(3, P))
    raise NonGenericParameter("no default generic parameter available")


def _chi(flag: bool) -> QSeries:
    return QSeries.one() if flag else QSeries.zero()


def _lambda_sum(d: int, a: int, M: int, z0: Monomial, order) -> QSeries:
    """(2/M) sum_{j=1}^{M-1} zeta_M^{-aj} (1 - zeta_M^j) Lambda(d, zeta_M^j, z0, -1)."""
    total = QSeries.zero(order)
    minus_one = Monomial.minus_one()
    for j in range(1, M):
        weight = root_of_unity(-a * j, M) * (1 - root_of_unity(j, M))
        term = lam(d, Monomial.zeta(j, M), z0, minus_one, order)
        total = total + term.scale(weight)
    return total.scale(F(2, M))


def _pair_even_even(d, a, M, zp, zpp, z0, order) -> QSeries:
    # d odd, a and M even.  The m and Psi pieces are the direct output of the
    # root-averaging identity at n = M/2, k = a/2 - 1, x = q^{-d^2}, base q^{2d^2}.
    dd = d * d
    head = Monomial.zeta(a // 2, 2, -F(dd * a * a, 4))
    x_m = Monomial.zeta(M // 2 + 1, 2, dd * (F(M * M, 4) - F(a * M, 2)))
    m_term = computed_to(
        lambda o: appell_m(x_m, F(dd * M * M, 2), zp, o).shift(head).scale(2), order)
    psi_term = computed_to(
        lambda o: psi(a // 2 - 1, M // 2, Monomial.q(-dd), Monomial.minus_one(),
                      zp, 2 * dd, o).shift(Monomial.q(-dd)).scale(2), order)
    return _chi(a == M) + m_term - psi_term + _lambda_sum(d, a, M, z0, order)


def _pair_even_odd(d, a, M, zp, zpp, z0, order) -> QSeries:
    # d odd, a even, M odd
    dd = d * d
    k1 = (2 * M - a) // 2
    k2 = (M + 1 - a) // 2
    base = 2 * dd * M * M
    m1 = computed_to(
        lambda o: appell_m(Monomial.q(dd * M * (a - M)), base, zp, o)
        .shift(Monomial.zeta(a // 2, 2, -dd * k1 * k1)).scale(2), order)
    m2 = computed_to(
        lambda o: appell_m(Monomial.q(dd * M * (a - 1)), base, zpp, o)
        .shift(Monomial.zeta(k2, 2, -dd * k2 * k2)).scale(2), order)
    p1 = psi(k1, M, Monomial.q(dd), Monomial.minus_one(), zp, 2 * dd, order).scale(2)
    p2 = psi(k2, M, Monomial.q(dd), Monomial.minus_one(), zpp, 2 * dd, order).scale(2)
    return m1 + m2 - p1 + p2 + _lambda_sum(d, a, M, z0, order)


def _pair_odd_odd(d, a, M, zp, zpp, z0, order) -> QSeries:
    # d odd, a odd, M odd
    dd = d * d
    k1 = (M - a) // 2
    k2 = (2 * M + 1 - a) // 2
    base = 2 * dd * M * M
    m1 = computed_to(
        lambda o: appell_m(Monomial.q(dd * M * a), base, zp, o)
        .shift(Monomial.zeta(k1 + 1, 2, -dd * k1 * k1)).scale(2), order)
    m2 = computed_to(
        lambda o: appell_m(Monomial.q(dd * M * (a - M - 1)), base, zpp, o)
        .shift(Monomial.zeta((a + 1) // 2, 2, -dd * k2 * k2)).scale(2), order)
    p1 = psi(k1, M, Monomial.q(dd), Monomial.minus_one(), zp, 2 * dd, order).scale(2)
    p2 = psi(k2, M, Monomial.q(dd), Monomial.minus_one(), zpp, 2 * dd, order).scale(2)
    return _chi(a == M) + m1 + m2 - p1 + p2 + _lambda_sum(d, a, M, z0, order)


def _pair_even_d(d, a, M, zp, zpp, z0, order) -> QSeries:
    # d even, 1 <= a <= M-1
    dd = d * d
    h = d // 2
    base = F(dd * M * M, 2)
    x_inner = Monomial.zeta(1 + (d * M) // 2, 2)
    x_psi = Monomial.zeta(h + 1, 2, F(dd, 4))
    m1 = computed_to(
        lambda o: appell_m(x_inner * Monomial.q(F(dd, 4) * (M * M - 2 * M * a)),
                           base, zp, o)
        .shift(Monomial.zeta((d * a) // 2, 2, -F(dd * a * a, 4))).scale(2), order)
    m2 = computed_to(
        lambda o: appell_m(x_inner * Monomial.q(F(dd, 4) * (M * M - 2 * M * (a - 1))),
                           base, zpp, o)
        .shift(Monomial.zeta(h * (a - 1) + 1, 2, -F(dd, 4) * (a - 1) ** 2)).scale(2),
        order)
    p1 = psi(a, M, x_psi, Monomial.minus_one(), zp, F(dd, 2), order).scale(2)
    p2 = psi(a - 1, M, x_psi, Monomial.minus_one(), zpp, F(dd, 2), order).scale(2)
    tail = QSeries.zero(order)
    for j in range(1, M):
        weight = root_of_unity(j - a * j, M) * (1 - root_of_unity(j, M))
        term = computed_to(
            lambda o, j=j: psi(0, h, Monomial.zeta(2 * j, M * d) * Monomial.q(1 - d),
                               Monomial.q(1), Monomial.minus_one(), 2, o)
            .shift(Monomial.zeta(h, 2, -F(dd, 4))), order)
        tail = tail + term.scale(weight)
    tail = tail.scale(F(2, M))
    return _chi(a == 1) + m1 + m2 + p1 - p2 + tail


def deviation_pair_by_formula(d: int, a: int, M: int, order,
                              zp: Monomial | None = None,
                              zpp: Monomial | None = None,
                              z0: Monomial | None = None) -> QSeries:
    """D_d(a, M) + D_d(a-1, M) assembled from the Appell-Lerch formulas.

    Residues outside each formula's stated range are reached through the
    reflection D_d(a, M) = D_d(M - a, M), which sends the pair at a to the
    pair at M - a + 1.
    """
    order = F(order)
    if M < 2 or d < 1:
        raise UnsupportedCase("need M >= 2 and d >= 1")
    if zp is None or zpp is None or z0 is None:
        g1, g2, g3 = default_generics(M, d)
        zp = zp or g1
        zpp = zpp or g2
        z0 = z0 or g3
    a %= M
    if a == 0:
        a = M
    if d % 2:
        if a == 1 or (a % 2 == 1 and M % 2 == 0):
            a = M - a + 1
        if not 2 <= a <= M:
            raise UnsupportedCase("no reachable case for (d,a,M)=(%d,%d,%d)" % (d, a, M))
        if a % 2 == 0 and M % 2 == 0:
            out = _pair_even_even(d, a, M, zp, zpp, z0, order)
        elif a % 2 == 0:
            out = _pair_even_odd(d, a, M, zp, zpp, z0, order)
        elif M % 2 == 1:
            out = _pair_odd_odd(d, a, M, zp, zpp, z0, order)
        else:
            raise UnsupportedCase("unreachable parity combination")
    else:
        if a == M:
            a = 1
        out = _pair_even_d(d, a, M, zp, zpp, z0, order)
    out = out.truncate(order).normalize_denominator()
    if out.den != 1:
        raise ArithmeticError("deviation pair has fractional exponents")
    return out


# ---------------------------------------------------------------------------
# single deviations
# ---------------------------------------------------------------------------


def _s_bar_bracket(d: int, z: Monomial, z0: Monomial, zp: Monomial, order) -> QSeries:
    """S_d(z;q) / (1-z): the Appell-Lerch bracket of the folded rank series."""
    if d % 2:
        m_term = appell_m(z ** (-2) * Monomial.q(d * d), 2 * d * d, zp, order)
        return 1 - m_term.scale(2) + lam(d, z, z0, zp, order).scale(2)
    h = d // 2
    x_m = Monomial.zeta(h + 1, 2) * z * Monomial.q(F(d * d, 4))
    m_term = appell_m(x_m, F(d * d, 2), zp, order)
    psi_term = computed_to(
        lambda o: psi(0, h, z.pow_frac(2, d) * Monomial.q(1 - d), Monomial.q(1),
                      zp, 2, o).shift(Monomial.zeta(h, 2, -F(d * d, 4)) * z), order)
    return -1 + m_term.scale(2) + psi_term.scale(2)


def single_deviation(d: int, a: int, M: int, order,
                     zp: Monomial | None = None,
                     z0: Monomial | None = None) -> QSeries:
    """One deviation D_d(a, M) from the formula route.

    Odd M: telescoping combination of deviation pairs.  Even M: the explicit
    root-of-unity average with O_d(-1;q) supplied by the symmetric
    double-divisor expansion (the single-sum form has a (1+z) pole there).
    """
    order = F(order)
    if zp is None or z0 is None:
        g1, _, g3 = default_generics(M, d)
        zp = zp or g1
        z0 = z0 or g3
    a %= M
    if M % 2 == 1:
        target = a if a >= (M + 1) // 2 else M - a
        if target == 0:
            target = M
        n = target - (M + 1) // 2
        total = QSeries.zero(order)
        lead = (M + 1) // 2 - n
        for i in range(n + 1):
            total = total + deviation_pair_by_formula(d, lead + 2 * i, M, order)
        for i in range(n):
            total = total - deviation_pair_by_formula(d, lead + 2 * i + 1, M, order)
        return total.scale(F(1, 2))
    total = o_d_at_minus_one(d, order).scale(F(1 if a % 2 == 0 else -1, M))
    for k in range(1, M // 2):
        zk = root_of_unity(k, M)
        weight = (1 - zk) / (1 + zk) * (root_of_unity(-k * a, M) + root_of_unity(k * a, M))
        bracket = _s_bar_bracket(d, Monomial.zeta(k, M), z0, zp, order)
        total = total + bracket.scale(weight).scale(F(1, M))
    return total.truncate(order)
