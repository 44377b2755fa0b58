"""Report records produced by identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

PASS = "pass"
FAIL = "fail"
NON_GENERIC = "non-generic"


@dataclass
class IdentityReport:
    """Outcome of one coefficient-exact comparison.

    A `pass` verdict means both sides agree on every exponent below `order`.
    Entries that assert exact vanishing carry a truncation-limited note, since
    expansion can only establish vanishing up to the computed order.
    """

    entry_id: str
    instantiation: dict = field(default_factory=dict)
    order: str = ""
    verdict: str = PASS
    first_mismatch: Optional[dict] = None
    note: Optional[str] = None
    wall_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "entry": self.entry_id,
            "instantiation": dict(self.instantiation),
            "order": self.order,
            "verdict": self.verdict,
            "first_mismatch": self.first_mismatch,
            "note": self.note,
            "wall_ms": round(self.wall_ms, 3),
        }

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


def compare_series(entry_id: str, lhs, rhs, order, instantiation=None,
                   note=None) -> IdentityReport:
    """Coefficient-exact comparison of two series below `order`."""
    order = Fraction(order)
    diff = lhs.first_difference(rhs, order)
    report = IdentityReport(
        entry_id=entry_id,
        instantiation={k: str(v) for k, v in (instantiation or {}).items()},
        order=str(order),
        note=note,
    )
    if diff is not None:
        e, ca, cb = diff
        report.verdict = FAIL
        report.first_mismatch = {"exponent": str(e), "lhs": str(ca), "rhs": str(cb)}
    return report
