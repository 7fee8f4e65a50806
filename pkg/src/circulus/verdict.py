"""Three-valued verdicts for inequality checks between enclosures.

A strict inequality only passes when the enclosures are separated by at
least one grid ulp at the working precision; overlap is reported as
indeterminate, never as a pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import Enclosure, Q, ulp


class Outcome(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, slots=True)
class Verdict:
    name: str
    outcome: Outcome
    margin: Fraction | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    def __str__(self) -> str:
        word = self.outcome.value.upper()
        extra = f" margin={float(self.margin):.3e}" if self.margin is not None else ""
        tail = f" ({self.detail})" if self.detail else ""
        return f"{word:13s} {self.name}{extra}{tail}"


def _min_bits(a: Enclosure, b: Enclosure) -> int:
    return min(a.precision.bits, b.precision.bits)


def strict_less(name: str, a: Enclosure, b: Enclosure, detail: str = "") -> Verdict:
    """Verdict on a < b, demanding a one-ulp gap between the enclosures."""
    gap = b.lo - a.hi
    grid = ulp(max(abs(a.hi), abs(b.lo), Q(1)), _min_bits(a, b))
    if gap >= grid:
        return Verdict(name, Outcome.PASS, gap, detail)
    if a.lo >= b.hi:
        return Verdict(name, Outcome.FAIL, a.lo - b.hi, detail)
    return Verdict(name, Outcome.INDETERMINATE, None, detail)


def strict_between(
    name: str, low: Enclosure, mid: Enclosure, high: Enclosure, detail: str = ""
) -> Verdict:
    """Verdict on low < mid < high as a single named check."""
    left = strict_less(name, low, mid)
    right = strict_less(name, mid, high)
    if left.passed and right.passed:
        margin = min(left.margin, right.margin)
        return Verdict(name, Outcome.PASS, margin, detail)
    for part in (left, right):
        if part.outcome is Outcome.FAIL:
            return Verdict(name, Outcome.FAIL, part.margin, detail)
    return Verdict(name, Outcome.INDETERMINATE, None, detail)


def contains_value(name: str, enc: Enclosure, value, detail: str = "") -> Verdict:
    """Verdict on `value in enc`; margin is the distance to the endpoints."""
    if enc.contains(value):
        return Verdict(name, Outcome.PASS, min(value - enc.lo, enc.hi - value), detail)
    miss = enc.lo - value if value < enc.lo else value - enc.hi
    return Verdict(name, Outcome.FAIL, miss, detail)


def overlap(name: str, a: Enclosure, b: Enclosure, detail: str = "") -> Verdict:
    """Verdict on the two enclosures sharing at least one value."""
    if a.overlaps(b):
        return Verdict(name, Outcome.PASS, a.width + b.width, detail)
    miss = b.lo - a.hi if a.hi < b.lo else a.lo - b.hi
    return Verdict(name, Outcome.FAIL, miss, detail)
