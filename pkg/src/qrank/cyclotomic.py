"""Exact arithmetic in cyclotomic fields Q(zeta_L).

An element is a polynomial in zeta_L reduced modulo the L-th cyclotomic
polynomial Phi_L.  Internally it is a pair ``(den, vec)`` where ``vec`` is an
integer tuple of length phi(L) and ``den`` is a positive integer with
``gcd(den, *vec) == 1`` whenever ``den > 1``.  Reduction mod Phi_L is a normal
form, so two elements are equal iff their pairs are equal.  Keeping a single
denominator per element (instead of one Fraction per coordinate) keeps the
series convolution loops on plain machine/big integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import InverseOfZero

Raw = tuple[int, tuple[int, ...]]  # (denominator, numerator vector)


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient defined for n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod_exact(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials, b monic up to +-1 leading coeff
    a = list(a)
    lead = b[-1]
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1]
        if c % lead != 0:
            raise ArithmeticError("division not exact")
        q = c // lead
        out[k] = q
        if q:
            for i, bi in enumerate(b):
                a[k + i] -= q * bi
    if any(a):
        raise ArithmeticError("division not exact")
    return out


@lru_cache(maxsize=None)
def cyclo_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients of Phi_L (constant term first), by exact division of
    x^L - 1 by the product of Phi_d over proper divisors d of L."""
    if L < 1:
        raise ValueError("L must be positive")
    if L == 1:
        return (-1, 1)
    num = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    den = [1]
    for d in range(1, L):
        if L % d == 0:
            den = _poly_mul(den, list(cyclo_polynomial(d)))
    return tuple(_poly_divmod_exact(num, den))


# ---------------------------------------------------------------------------
# integer vector convolution, with a Kronecker-substitution fast path
# ---------------------------------------------------------------------------

_KRONECKER_CUTOFF = 1600  # nnz(a) * nnz(b) above which packing wins


def _windowed_sums(v: list[int], other_len: int) -> list[int]:
    # w[k] = sum of v[j] over the j that pair with some index of the other
    # factor in a convolution, i.e. max(0, k-other_len+1) <= j <= min(k, len(v)-1)
    n = len(v)
    prefix = [0] * (n + 1)
    for i, x in enumerate(v):
        prefix[i + 1] = prefix[i] + x
    out = []
    for k in range(n + other_len - 1):
        lo = max(0, k - other_len + 1)
        hi = min(k, n - 1)
        out.append(prefix[hi + 1] - prefix[lo])
    return out


def _kronecker_nonneg(a: list[int], b: list[int], bound: int) -> list[int]:
    # pack nonnegative vectors into big integers; one big multiply does the
    # whole convolution as long as every output coefficient stays < 2**bits
    bits = max(bound.bit_length() + 1, 8)
    width = (bits + 7) // 8
    xa = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in a), "little")
    xb = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in b), "little")
    prod = xa * xb
    out_len = len(a) + len(b) - 1
    raw = prod.to_bytes(out_len * width + width, "little")
    return [
        int.from_bytes(raw[k * width:(k + 1) * width], "little")
        for k in range(out_len)
    ]


def _kronecker_convolve(a: list[int], b: list[int]) -> list[int]:
    min_a, min_b = min(a), min(b)
    a0 = [x - min_a for x in a]
    b0 = [x - min_b for x in b]
    max_a0 = max(a0)
    max_b0 = max(b0)
    n = min(len(a), len(b))
    out_len = len(a) + len(b) - 1
    if max_a0 and max_b0:
        bound = max_a0 * max_b0 * n
        conv0 = _kronecker_nonneg(a0, b0, bound)
    else:
        conv0 = [0] * out_len
    wa = _windowed_sums(a0, len(b))
    wb = _windowed_sums(b0, len(a))
    counts = [min(k, len(a) - 1, len(b) - 1, out_len - 1 - k) + 1 for k in range(out_len)]
    return [
        conv0[k] + min_a * wb[k] + min_b * wa[k] + min_a * min_b * counts[k]
        for k in range(out_len)
    ]


def convolve_int(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...]) -> list[int]:
    """Full convolution of integer vectors (schoolbook or Kronecker)."""
    na = [i for i, c in enumerate(a) if c]
    nb = [i for i, c in enumerate(b) if c]
    if not na or not nb:
        return []
    if len(na) > len(nb):
        a, b, na, nb = b, a, nb, na
    lo = na[0] + nb[0]
    if len(na) * len(nb) >= _KRONECKER_CUTOFF:
        wa = list(a[na[0]:na[-1] + 1])
        wb = list(b[nb[0]:nb[-1] + 1])
        conv = _kronecker_convolve(wa, wb)
        return [0] * lo + conv
    out = [0] * (na[-1] + nb[-1] + 1)
    for i in na:
        ai = a[i]
        for j in nb:
            out[i + j] += ai * b[j]
    return out


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class CyclotomicField:
    """Q(zeta_L) with dense power-basis representation mod Phi_L."""

    __slots__ = ("L", "phi", "modulus", "_red", "zero", "one")

    def __init__(self, L: int):
        self.L = L
        self.phi = totient(L)
        self.modulus = cyclo_polynomial(L)
        # _red[k - phi] = x^k mod Phi_L as a sparse row [(index, coeff), ...]
        self._red: list[list[tuple[int, int]]] = []
        self.zero: Raw = (1, (0,) * self.phi)
        one = [0] * self.phi
        one[0] = 1
        self.one: Raw = (1, tuple(one))

    # -- reduction rows ------------------------------------------------

    def _ensure_red(self, k: int) -> None:
        phi = self.phi
        while len(self._red) <= k - phi:
            if not self._red:
                row = [-c for c in self.modulus[:phi]]
            else:
                prev = [0] * phi
                for i, c in self._red[-1]:
                    prev[i] = c
                row = [0] + prev[:phi - 1]
                top = prev[phi - 1]
                if top:
                    for i, c in enumerate(self.modulus[:phi]):
                        row[i] -= top * c
            self._red.append([(i, c) for i, c in enumerate(row) if c])

    def reduce_vec(self, vec: list[int]) -> list[int]:
        """Reduce a coefficient list of any length mod Phi_L, in place."""
        phi = self.phi
        if len(vec) > phi:
            self._ensure_red(len(vec) - 1)
            for k in range(len(vec) - 1, phi - 1, -1):
                c = vec[k]
                if c:
                    for i, rc in self._red[k - phi]:
                        vec[i] += c * rc
            del vec[phi:]
        elif len(vec) < phi:
            vec.extend([0] * (phi - len(vec)))
        return vec

    # -- raw element helpers --------------------------------------------

    def normalize(self, den: int, vec: list[int]) -> Raw:
        if den == 1:
            return (1, tuple(vec))
        if den < 0:
            den = -den
            vec = [-v for v in vec]
        g = den
        for v in vec:
            if v:
                g = math.gcd(g, v)
                if g == 1:
                    return (den, tuple(vec))
        if g == den and all(v == 0 for v in vec):
            return self.zero
        return (den // g, tuple(v // g for v in vec))

    def from_fraction(self, fr: Fraction | int) -> Raw:
        fr = Fraction(fr)
        vec = [0] * self.phi
        vec[0] = fr.numerator
        return (fr.denominator, tuple(vec))

    def zeta_pow(self, k: int) -> Raw:
        k %= self.L
        if k < self.phi:
            vec = [0] * self.phi
            vec[k] = 1
            return (1, tuple(vec))
        self._ensure_red(k)
        vec = [0] * self.phi
        for i, c in self._red[k - self.phi]:
            vec[i] = c
        return (1, tuple(vec))

    def is_zero(self, a: Raw) -> bool:
        return not any(a[1])

    def is_rational(self, a: Raw) -> bool:
        return not any(a[1][1:])

    def as_fraction(self, a: Raw) -> Fraction:
        if not self.is_rational(a):
            raise ValueError("element is not rational")
        return Fraction(a[1][0], a[0])

    def add(self, a: Raw, b: Raw) -> Raw:
        da, va = a
        db, vb = b
        if da == db:
            if da == 1:
                return (1, tuple(x + y for x, y in zip(va, vb)))
            return self.normalize(da, [x + y for x, y in zip(va, vb)])
        l = da * db // math.gcd(da, db)
        fa = l // da
        fb = l // db
        return self.normalize(l, [x * fa + y * fb for x, y in zip(va, vb)])

    def neg(self, a: Raw) -> Raw:
        return (a[0], tuple(-v for v in a[1]))

    def sub(self, a: Raw, b: Raw) -> Raw:
        return self.add(a, self.neg(b))

    def mul(self, a: Raw, b: Raw) -> Raw:
        da, va = a
        db, vb = b
        conv = convolve_int(va, vb)
        if not conv:
            return self.zero
        vec = self.reduce_vec(conv)
        den = da * db
        if den == 1:
            return (1, tuple(vec))
        return self.normalize(den, vec)

    def scale(self, a: Raw, fr: Fraction | int) -> Raw:
        fr = Fraction(fr)
        if fr == 1:
            return a
        den, vec = a
        return self.normalize(den * fr.denominator, [v * fr.numerator for v in vec])

    def inv(self, a: Raw) -> Raw:
        """Inverse via the extended Euclidean algorithm in Q[x] mod Phi_L."""
        if self.is_zero(a):
            raise InverseOfZero("cannot invert zero")
        den, vec = a
        r0 = [Fraction(c) for c in self.modulus]
        r1 = [Fraction(v, 1) for v in vec]
        while r1 and r1[-1] == 0:
            r1.pop()
        s0 = [Fraction(0)]
        s1 = [Fraction(1)]
        while True:
            deg1 = len(r1) - 1
            if deg1 == 0:
                break
            # r0 = q r1 + r, then rotate
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for k in range(len(q) - 1, -1, -1):
                c = r[k + deg1] / r1[-1]
                q[k] = c
                if c:
                    for i, bc in enumerate(r1):
                        r[k + i] -= c * bc
            while len(r) > 1 and r[-1] == 0:
                r.pop()
            # s_new = s0 - q s1
            qs = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        qs[i + j] += qi * sj
            s_new = [Fraction(0)] * max(len(s0), len(qs))
            for i, c in enumerate(s0):
                s_new[i] += c
            for i, c in enumerate(qs):
                s_new[i] -= c
            r0, r1 = r1, r
            s0, s1 = s1, s_new
        c = r1[0]
        inv_coeffs = [s / c for s in s1]
        # clear fractions, fold in the element's denominator
        common = 1
        for fr in inv_coeffs:
            common = common * fr.denominator // math.gcd(common, fr.denominator)
        vec_out = [0] * self.phi
        for i, fr in enumerate(inv_coeffs):
            vec_out[i] = int(fr * common) * den
        return self.normalize(common, self.reduce_vec(vec_out))

    def embed_from(self, src: "CyclotomicField", a: Raw) -> Raw:
        """Image of an element of Q(zeta_src) under zeta_src -> zeta_L^(L/src)."""
        if src.L == self.L:
            return a
        if self.L % src.L != 0:
            raise ValueError("no embedding: %d does not divide %d" % (src.L, self.L))
        factor = self.L // src.L
        den, vec = a
        if src.L == 1 or not any(vec[1:]):
            out = [0] * self.phi
            out[0] = vec[0]
            return (den, tuple(out))
        acc = [0] * self.phi
        for i, c in enumerate(vec):
            if c:
                _, zvec = self.zeta_pow(i * factor)
                for k, zc in enumerate(zvec):
                    if zc:
                        acc[k] += c * zc
        return self.normalize(den, acc) if den != 1 else (1, tuple(acc))


@lru_cache(maxsize=None)
def get_field(L: int) -> CyclotomicField:
    return CyclotomicField(L)


# ---------------------------------------------------------------------------
# public wrapper
# ---------------------------------------------------------------------------


class Cyclotomic:
    """An element of Q(zeta_L); immutable, canonical, hashable."""

    __slots__ = ("field", "raw")

    def __init__(self, field: CyclotomicField, raw: Raw):
        self.field = field
        self.raw = raw

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_fraction(value: Fraction | int, L: int = 1) -> "Cyclotomic":
        f = get_field(L)
        return Cyclotomic(f, f.from_fraction(value))

    # -- coercion ----------------------------------------------------------

    def _pair(self, other) -> tuple["CyclotomicField", Raw, Raw]:
        if isinstance(other, (int, Fraction)):
            return self.field, self.raw, self.field.from_fraction(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented  # type: ignore[return-value]
        fa, fb = self.field, other.field
        if fa.L == fb.L:
            return fa, self.raw, other.raw
        L = fa.L * fb.L // math.gcd(fa.L, fb.L)
        f = get_field(L)
        return f, f.embed_from(fa, self.raw), f.embed_from(fb, other.raw)

    def embed(self, L: int) -> "Cyclotomic":
        f = get_field(L)
        return Cyclotomic(f, f.embed_from(self.field, self.raw))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        return Cyclotomic(f, f.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        return Cyclotomic(f, f.sub(a, b))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Cyclotomic(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        return Cyclotomic(f, f.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        return Cyclotomic(f, f.mul(a, f.inv(b)))

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        return Cyclotomic(f, f.mul(b, f.inv(a)))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = Cyclotomic(self.field, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def inv(self) -> "Cyclotomic":
        return Cyclotomic(self.field, self.field.inv(self.raw))

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def is_rational(self) -> bool:
        return self.field.is_rational(self.raw)

    def as_fraction(self) -> Fraction:
        return self.field.as_fraction(self.raw)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        _, a, b = self._pair(other)
        return a == b

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash((self.field.L, self.raw))

    def __repr__(self):
        return "Cyclotomic(%s)" % str(self)

    def __str__(self):
        if self.is_rational():
            fr = self.as_fraction()
            return str(fr.numerator) if fr.denominator == 1 else "%d/%d" % (
                fr.numerator, fr.denominator)
        den, vec = self.raw
        coords = ",".join(
            str(c) if den == 1 else str(Fraction(c, den)) for c in vec)
        return "[%s]@zeta%d" % (coords, self.field.L)


def root_of_unity(num: int, den: int) -> Cyclotomic:
    """zeta_den^num as an element of Q(zeta_den).

    This is the canonical branch for fractional powers of roots of unity:
    (zeta_M^j)^(1/d) is root_of_unity(j, M*d).
    """
    if den < 1:
        raise ValueError("den must be positive")
    f = get_field(den)
    return Cyclotomic(f, f.zeta_pow(num))
