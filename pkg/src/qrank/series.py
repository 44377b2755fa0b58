"""Truncated Laurent/Puiseux series in q over cyclotomic coefficients.

A ``QSeries`` stores exponents as integers over a fixed positive denominator
``den`` (the Puiseux denominator), a scaled valuation ``val``, a dense
coefficient vector starting at ``val``, and a scaled truncation bound
``prec``: coefficients of q^e are known exactly for all e*den < prec.  A
``prec`` of ``None`` marks an exact (polynomial) value.  Truncation is
explicit data and propagates through arithmetic via the usual min rule, so an
identity check can never claim agreement beyond what was actually computed.

A ``Monomial`` is a symbolic value zeta_N^k * q^e with rational e.  It is the
only admissible shape for the z/x/z' parameters of the theta and Appell-Lerch
constructors, and it supports exact fractional powers through the canonical
root branch (zeta_N^k)^(1/d) = zeta_{N d}^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic, CyclotomicField, Raw, get_field
from .errors import FractionalExponents, NonGenericParameter


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """zeta_den^num * q^exp with the root of unity stored in lowest terms."""

    zeta_num: int
    zeta_den: int
    q_exp: Fraction

    def __post_init__(self):
        num, den = self.zeta_num, self.zeta_den
        if den < 1:
            raise ValueError("root order must be positive")
        num %= den
        g = math.gcd(num, den)
        if num == 0:
            num, den = 0, 1
        elif g > 1:
            num, den = num // g, den // g
        object.__setattr__(self, "zeta_num", num)
        object.__setattr__(self, "zeta_den", den)
        object.__setattr__(self, "q_exp", Fraction(self.q_exp))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one() -> "Monomial":
        return Monomial(0, 1, Fraction(0))

    @staticmethod
    def q(exp=1) -> "Monomial":
        return Monomial(0, 1, Fraction(exp))

    @staticmethod
    def zeta(num: int, den: int, exp=0) -> "Monomial":
        return Monomial(num, den, Fraction(exp))

    @staticmethod
    def minus_one() -> "Monomial":
        return Monomial(1, 2, Fraction(0))

    # -- algebra -------------------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        den = _lcm(self.zeta_den, other.zeta_den)
        num = self.zeta_num * (den // self.zeta_den) + other.zeta_num * (den // other.zeta_den)
        return Monomial(num, den, self.q_exp + other.q_exp)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def inverse(self) -> "Monomial":
        return Monomial(-self.zeta_num, self.zeta_den, -self.q_exp)

    def __neg__(self) -> "Monomial":
        return self * Monomial.minus_one()

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.zeta_num * n, self.zeta_den, self.q_exp * n)

    def pow_frac(self, p: int, r: int) -> "Monomial":
        """Canonical branch of self^(p/r)."""
        if r < 1:
            raise ValueError("root index must be positive")
        return Monomial(self.zeta_num * p, self.zeta_den * r, self.q_exp * Fraction(p, r))

    def root(self, r: int) -> "Monomial":
        return self.pow_frac(1, r)

    # -- queries ----------------------------------------------------------

    @property
    def coeff_is_one(self) -> bool:
        return self.zeta_num == 0

    def is_one(self) -> bool:
        return self.coeff_is_one and self.q_exp == 0

    def coeff(self) -> Cyclotomic:
        from .cyclotomic import root_of_unity

        return root_of_unity(self.zeta_num, self.zeta_den)

    def coeff_raw(self, field: CyclotomicField) -> Raw:
        if field.L % self.zeta_den != 0:
            raise ValueError("field does not contain this root of unity")
        return field.zeta_pow(self.zeta_num * (field.L // self.zeta_den))

    def __str__(self):
        parts = []
        if self.zeta_num:
            if (self.zeta_num, self.zeta_den) == (1, 2):
                parts.append("-1")
            else:
                parts.append("zeta%d^%d" % (self.zeta_den, self.zeta_num))
        if self.q_exp:
            parts.append("q^%s" % self.q_exp)
        return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


class QSeries:
    """Dense truncated series; immutable once constructed."""

    __slots__ = ("field", "den", "val", "coeffs", "prec")

    def __init__(self, field: CyclotomicField, den: int, val: int,
                 coeffs: tuple[Raw, ...], prec: int | None, _normalized=False):
        if not _normalized:
            coeffs = tuple(coeffs)
            lo = 0
            hi = len(coeffs)
            while lo < hi and field.is_zero(coeffs[lo]):
                lo += 1
            while hi > lo and field.is_zero(coeffs[hi - 1]):
                hi -= 1
            if lo == hi:
                val, coeffs = 0, ()
            else:
                val += lo
                coeffs = coeffs[lo:hi]
            if prec is not None and coeffs and val + len(coeffs) > prec:
                raise ValueError("stored coefficients extend beyond the truncation bound")
        self.field = field
        self.den = den
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(order: Fraction | int | None = None, den: int = 1,
             L: int = 1) -> "QSeries":
        prec = None if order is None else _scale_exp(Fraction(order), den)
        return QSeries(get_field(L), den, 0, (), prec, _normalized=True)

    @staticmethod
    def scalar(value, order: Fraction | int | None = None) -> "QSeries":
        if isinstance(value, Cyclotomic):
            field, raw = value.field, value.raw
        else:
            field = get_field(1)
            raw = field.from_fraction(Fraction(value))
        prec = None if order is None else _scale_exp(Fraction(order), 1)
        if field.is_zero(raw):
            return QSeries(field, 1, 0, (), prec, _normalized=True)
        return QSeries(field, 1, 0, (raw,), prec, _normalized=True)

    @staticmethod
    def one(order: Fraction | int | None = None) -> "QSeries":
        return QSeries.scalar(1, order)

    @staticmethod
    def from_monomial(m: Monomial, order: Fraction | int | None = None) -> "QSeries":
        field = get_field(m.zeta_den)
        den = m.q_exp.denominator
        val = int(m.q_exp * den)
        prec = None if order is None else _scale_exp(Fraction(order), den)
        return QSeries(field, den, val, (m.coeff_raw(field),), prec)

    @staticmethod
    def from_terms(terms: dict[Fraction, Raw], field: CyclotomicField,
                   order: Fraction | int) -> "QSeries":
        """Build from an exponent -> raw coefficient map, truncating at order."""
        order = Fraction(order)
        den = order.denominator
        for e in terms:
            den = _lcm(den, Fraction(e).denominator)
        prec = _scale_exp(order, den)
        live = {e: c for e, c in terms.items() if Fraction(e) < order}
        if not live:
            return QSeries(field, den, 0, (), prec, _normalized=True)
        scaled = sorted((int(Fraction(e) * den), c) for e, c in live.items())
        val = scaled[0][0]
        vec: list[Raw] = [field.zero] * (scaled[-1][0] - val + 1)
        for k, c in scaled:
            vec[k - val] = c
        return QSeries(field, den, val, tuple(vec), prec)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> Fraction | None:
        """Truncation order as a rational exponent (None when exact)."""
        return None if self.prec is None else Fraction(self.prec, self.den)

    @property
    def valuation(self) -> Fraction | None:
        return Fraction(self.val, self.den) if self.coeffs else None

    def coeff(self, e) -> Cyclotomic:
        e = Fraction(e)
        if self.prec is not None and e * self.den >= self.prec:
            raise ValueError("coefficient of q^%s is beyond the truncation order" % e)
        k = e * self.den
        if k.denominator != 1:
            return Cyclotomic(self.field, self.field.zero)
        i = int(k) - self.val
        if 0 <= i < len(self.coeffs):
            return Cyclotomic(self.field, self.coeffs[i])
        return Cyclotomic(self.field, self.field.zero)

    def terms(self):
        """Yield (exponent, Cyclotomic) for stored nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                yield Fraction(self.val + i, self.den), Cyclotomic(self.field, c)

    # -- alignment helpers ---------------------------------------------------

    def _with(self, field: CyclotomicField, den: int) -> "QSeries":
        if field is self.field and den == self.den:
            return self
        coeffs = self.coeffs
        if field is not self.field:
            src = self.field
            coeffs = tuple(field.embed_from(src, c) for c in coeffs)
        if den != self.den:
            if den % self.den != 0:
                raise ValueError("denominator rescale must be integral")
            f = den // self.den
            if f != 1:
                spread: list[Raw] = [field.zero] * ((len(coeffs) - 1) * f + 1 if coeffs else 0)
                for i, c in enumerate(coeffs):
                    spread[i * f] = c
                coeffs = tuple(spread)
            val = self.val * f
            prec = None if self.prec is None else self.prec * f
        else:
            val = self.val
            prec = self.prec
        return QSeries(field, den, val, coeffs, prec, _normalized=True)

    def _common(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        L = _lcm(self.field.L, other.field.L)
        den = _lcm(self.den, other.den)
        field = get_field(L)
        return self._with(field, den), other._with(field, den)

    @staticmethod
    def _min_prec(p1: int | None, p2: int | None) -> int | None:
        if p1 is None:
            return p2
        if p2 is None:
            return p1
        return min(p1, p2)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        prec = QSeries._min_prec(a.prec, b.prec)
        if not a.coeffs:
            return b.truncate_scaled(prec)
        if not b.coeffs:
            return a.truncate_scaled(prec)
        val = min(a.val, b.val)
        hi = max(a.val + len(a.coeffs), b.val + len(b.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        field = a.field
        vec: list[Raw] = [field.zero] * max(hi - val, 0)
        for i, c in enumerate(a.coeffs):
            k = a.val + i - val
            if 0 <= k < len(vec):
                vec[k] = c
        for i, c in enumerate(b.coeffs):
            k = b.val + i - val
            if 0 <= k < len(vec):
                vec[k] = field.add(vec[k], c)
        return QSeries(field, a.den, val, tuple(vec), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        f = self.field
        return QSeries(f, self.den, self.val, tuple(f.neg(c) for c in self.coeffs),
                       self.prec, _normalized=True)

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return self.shift(other)
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        field = a.field
        # unknown terms of a factor enter the product shifted by the other
        # factor's lowest exponent (its prec when it is zero-to-order)
        va = a.val if a.coeffs else a.prec
        vb = b.val if b.coeffs else b.prec
        pa = None if a.prec is None else a.prec + (vb if vb is not None else 0)
        pb = None if b.prec is None else b.prec + (va if va is not None else 0)
        prec = QSeries._min_prec(pa if a.prec is not None else None,
                                 pb if b.prec is not None else None)
        if not a.coeffs or not b.coeffs:
            return QSeries(field, a.den, 0, (), prec, _normalized=True)
        base = a.val + b.val
        out_len = len(a.coeffs) + len(b.coeffs) - 1
        if prec is not None:
            out_len = min(out_len, prec - base)
        if out_len <= 0:
            return QSeries(field, a.den, 0, (), prec, _normalized=True)
        vec: list[Raw] = [field.zero] * out_len
        fmul = field.mul
        fadd = field.add
        fzero = field.is_zero
        for i, ca in enumerate(a.coeffs):
            if fzero(ca):
                continue
            jmax = min(len(b.coeffs), out_len - i)
            for j in range(jmax):
                cb = b.coeffs[j]
                if not fzero(cb):
                    k = i + j
                    vec[k] = fadd(vec[k], fmul(ca, cb))
        return QSeries(field, a.den, base, tuple(vec), prec)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        if isinstance(c, (int, Fraction)):
            fr = Fraction(c)
            if fr == 0:
                return QSeries(self.field, self.den, 0, (), self.prec, _normalized=True)
            f = self.field
            return QSeries(f, self.den, self.val,
                           tuple(f.scale(x, fr) for x in self.coeffs),
                           self.prec, _normalized=True)
        if isinstance(c, Cyclotomic):
            L = _lcm(self.field.L, c.field.L)
            field = get_field(L)
            s = self._with(field, self.den)
            raw = field.embed_from(c.field, c.raw)
            if field.is_zero(raw):
                return QSeries(field, s.den, 0, (), s.prec, _normalized=True)
            return QSeries(field, s.den, s.val,
                           tuple(field.mul(x, raw) for x in s.coeffs), s.prec)
        raise TypeError("cannot scale by %r" % (c,))

    def shift(self, m: Monomial) -> "QSeries":
        """Multiply by a monomial: scale coefficients, shift all exponents."""
        den = _lcm(self.den, m.q_exp.denominator)
        L = _lcm(self.field.L, m.zeta_den)
        s = self._with(get_field(L), den)
        delta = int(m.q_exp * den)
        out = QSeries(s.field, den, s.val + delta, s.coeffs,
                      None if s.prec is None else s.prec + delta, _normalized=True)
        if m.zeta_num:
            out = out.scale(m.coeff())
        return out

    def truncate(self, order: Fraction | int) -> "QSeries":
        return self.truncate_scaled(_scale_exp(Fraction(order), self.den))

    def truncate_scaled(self, prec: int | None) -> "QSeries":
        prec = QSeries._min_prec(self.prec, prec)
        if prec == self.prec:
            return self
        coeffs = self.coeffs
        if coeffs and prec is not None and self.val + len(coeffs) > prec:
            coeffs = coeffs[:max(prec - self.val, 0)]
        return QSeries(self.field, self.den, self.val, coeffs, prec)

    def invert(self, order: Fraction | int | None = None) -> "QSeries":
        """Multiplicative inverse up to the available truncation order.

        Raises NonGenericParameter when the series is zero to its truncation
        order: the leading coefficient of a vanishing divisor signals a
        non-generic parameter choice upstream.
        """
        if not self.coeffs:
            raise NonGenericParameter("inverting a series that vanishes to its order")
        if self.prec is None and order is None:
            raise ValueError("inverting an exact series requires a target order")
        target = None if order is None else _scale_exp(Fraction(order), self.den)
        # self = q^val * u with u a unit; 1/self known to prec - 2*val
        out_prec = self.prec - 2 * self.val if self.prec is not None else None
        out_prec = QSeries._min_prec(out_prec, target)
        out_val = -self.val
        rel_len = out_prec - out_val
        if rel_len <= 0:
            return QSeries(self.field, self.den, 0, (), out_prec, _normalized=True)
        field = self.field
        u = self.coeffs
        c0i = field.inv(u[0])
        inv: list[Raw] = [c0i]
        neg_c0i = field.neg(c0i)
        for k in range(1, rel_len):
            acc = field.zero
            for i in range(1, min(k, len(u) - 1) + 1):
                ui = u[i]
                if not field.is_zero(ui):
                    acc = field.add(acc, field.mul(ui, inv[k - i]))
            inv.append(field.mul(neg_c0i, acc) if not field.is_zero(acc) else field.zero)
        return QSeries(field, self.den, out_val, tuple(inv), out_prec)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        out = QSeries.one()
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / Fraction(other))
        if isinstance(other, Cyclotomic):
            return self.scale(other.inv())
        if isinstance(other, Monomial):
            return self.shift(other.inverse())
        return NotImplemented

    # -- structural operations ------------------------------------------------

    def substitute_q_power(self, r: Fraction | int) -> "QSeries":
        """Replace q by q^r (r a positive rational): exponents scale by r."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("substitution power must be positive")
        den = self.den * r.denominator
        num = r.numerator
        coeffs = self.coeffs
        if coeffs and num != 1:
            spread: list[Raw] = [self.field.zero] * ((len(coeffs) - 1) * num + 1)
            for i, c in enumerate(coeffs):
                spread[i * num] = c
            coeffs = tuple(spread)
        out = QSeries(self.field, den, self.val * num, coeffs,
                      None if self.prec is None else self.prec * num,
                      _normalized=True)
        return out.normalize_denominator()

    def normalize_denominator(self) -> "QSeries":
        """Reduce the Puiseux denominator to the smallest consistent value."""
        if self.den == 1:
            return self
        g = self.den
        g = math.gcd(g, self.val if self.coeffs else 0)
        if self.prec is not None:
            g = math.gcd(g, self.prec)
        if self.coeffs:
            for i, c in enumerate(self.coeffs):
                if not self.field.is_zero(c):
                    g = math.gcd(g, self.val + i)
                if g == 1:
                    break
        if g == 1:
            return self
        coeffs = tuple(self.coeffs[i] for i in range(0, len(self.coeffs), g))
        return QSeries(self.field, self.den // g, self.val // g, coeffs,
                       None if self.prec is None else self.prec // g,
                       _normalized=True)

    def dissect(self, parts: int) -> list["QSeries"]:
        """Split into residue classes: self = sum_k q^k F_k(q^parts)."""
        s = self.normalize_denominator()
        if s.den != 1:
            raise FractionalExponents("dissection requires integral exponents")
        out = []
        for k in range(parts):
            terms: list[tuple[int, Raw]] = []
            for i, c in enumerate(s.coeffs):
                e = s.val + i
                if e % parts == k % parts and not s.field.is_zero(c):
                    terms.append(((e - k) // parts, c))
            if s.prec is None:
                prec = None
            else:
                prec = -((k - s.prec) // parts)  # ceil((prec - k) / parts)
            if terms:
                val = terms[0][0]
                vec: list[Raw] = [s.field.zero] * (terms[-1][0] - val + 1)
                for t, c in terms:
                    vec[t - val] = c
                out.append(QSeries(s.field, 1, val, tuple(vec), prec))
            else:
                out.append(QSeries(s.field, 1, 0, (), prec, _normalized=True))
        return out

    # -- comparison -------------------------------------------------------

    def first_difference(self, other: "QSeries", order: Fraction | int):
        """First exponent below `order` where the two series differ, with both
        coefficients, or None if they agree on every exponent below `order`."""
        order = Fraction(order)
        a, b = self._common(other)
        bound = _scale_exp(order, a.den)
        for p in (a.prec, b.prec):
            if p is not None and p < bound:
                raise ValueError(
                    "series only known to order %s, cannot compare to order %s"
                    % (Fraction(p, a.den), order))
        lo = min(a.val if a.coeffs else bound, b.val if b.coeffs else bound)
        field = a.field
        for k in range(lo, bound):
            ca = a.coeffs[k - a.val] if a.coeffs and 0 <= k - a.val < len(a.coeffs) else field.zero
            cb = b.coeffs[k - b.val] if b.coeffs and 0 <= k - b.val < len(b.coeffs) else field.zero
            if ca != cb:
                return (Fraction(k, a.den), Cyclotomic(field, ca), Cyclotomic(field, cb))
        return None

    def agrees_with(self, other: "QSeries", order: Fraction | int) -> bool:
        return self.first_difference(other, order) is None

    def is_zero_to(self, order: Fraction | int) -> bool:
        return self.agrees_with(QSeries.zero(), order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        return (a.val == b.val and a.coeffs == b.coeffs and a.prec == b.prec)

    def __hash__(self):
        return hash((self.field.L, self.den, self.val, self.coeffs, self.prec))

    # -- presentation --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "L": self.field.L,
            "D": self.den,
            "order": None if self.prec is None else str(Fraction(self.prec, self.den)),
            "terms": [
                [self.val + i, [str(Fraction(c, d)) for c in vec]]
                for i, (d, vec) in enumerate(self.coeffs)
                if not self.field.is_zero(self.coeffs[i])
            ],
        }

    def __str__(self):
        terms = []
        for e, c in self.terms():
            cs = str(c)
            q = "1" if e == 0 else ("q" if e == 1 else "q^%s" % e)
            if e == 0:
                terms.append(cs)
            elif cs == "1":
                terms.append(q)
            elif cs == "-1":
                terms.append("-%s" % q)
            elif c.is_rational():
                terms.append("%s*%s" % (cs, q))
            else:
                terms.append("(%s)*%s" % (cs, q))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        tail = "" if self.prec is None else " + O(q^%s)" % Fraction(self.prec, self.den)
        return body + tail

    def __repr__(self):
        return "QSeries(%s)" % str(self)


def computed_to(builder, order, tries: int = 8) -> QSeries:
    """Run a series builder until its result is valid below `order`.

    Builders take a target order and propagate truncation honestly, but
    negative-exponent prefactors inside a formula can leave the final result
    known to less than was asked.  Recomputing with the shortfall added
    converges because every constructor's precision loss is a fixed shift.
    """
    target = Fraction(order)
    arg = target
    for _ in range(tries):
        s = builder(arg)
        if s.prec is None or s.order >= target:
            return s.truncate(target)
        arg = arg + (target - s.order)
    raise RuntimeError("could not reach order %s after %d attempts" % (order, tries))


def _scale_exp(e: Fraction, den: int) -> int:
    scaled = e * den
    if scaled.denominator != 1:
        raise FractionalExponents(
            "exponent %s is not representable over denominator %d" % (e, den))
    return int(scaled)


def _coerce_series(x):
    if isinstance(x, QSeries):
        return x
    if isinstance(x, (int, Fraction, Cyclotomic)):
        return QSeries.scalar(x)
    if isinstance(x, Monomial):
        return QSeries.from_monomial(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# eta products
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def eta_J(m, order) -> QSeries:
    """J_m = (q^m; q^m)_infinity, the eta building block, truncated at order.

    Computed by direct product accumulation; only the factors with m*k below
    the order contribute.
    """
    m = Fraction(m)
    order = Fraction(order)
    if m <= 0:
        raise ValueError("eta step must be positive")
    den = _lcm(m.denominator, order.denominator)
    prec = int(order * den)
    step0 = int(m * den)
    field = get_field(1)
    coeffs = [1] + [0] * max(prec - 1, 0)
    k = 1
    while k * step0 < prec:
        step = k * step0
        for i in range(len(coeffs) - 1, step - 1, -1):
            if coeffs[i - step]:
                coeffs[i] -= coeffs[i - step]
        k += 1
    vec = tuple((1, (c,)) for c in coeffs)
    return QSeries(field, den, 0, vec, prec)


def eta_quotient(spec: dict[int, int], order) -> QSeries:
    """Product of J_m^e over the (m, e) pairs of `spec`.

    Every J_m has valuation 0 and leading coefficient 1, so all factors can be
    expanded at the target order directly.
    """
    out = QSeries.one(Fraction(order))
    for m, e in sorted(spec.items()):
        J = eta_J(Fraction(m), Fraction(order))
        factor = J if e > 0 else J.invert()
        for _ in range(abs(e)):
            out = out * factor
    return out
