"""Exception types shared across the package."""


class QRankError(Exception):
    """Base class for all package-specific errors."""


class InverseOfZero(QRankError):
    """Inversion of the zero element of a cyclotomic field."""


class NonGenericParameter(QRankError):
    """A parameter choice hits a pole: a vanishing theta divisor or an
    Appell-Lerch denominator that is identically zero."""


class FractionalExponents(QRankError):
    """The operation requires integral q-exponents but the series has a
    genuine fractional part."""


class UnsupportedCase(QRankError):
    """No deviation-pair formula covers the requested (d, a, M)."""


class UnknownName(QRankError):
    """Requested named series does not exist."""
