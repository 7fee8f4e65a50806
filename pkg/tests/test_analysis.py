"""Tests for convergence-order fitting and coefficient measurement."""

from __future__ import annotations

import pytest

from circulus.analysis import (
    arc_expansion_check,
    coefficient_table,
    error_sample,
    estimate_order,
)
from circulus.bounds import Method, cusa_lower_arc, snell_upper_arc
from circulus.errors import DomainError, IndeterminateError, InsufficientSamples
from circulus.exact import Precision, Q, pi_reference
from circulus.polygon import ladder
from circulus.verdict import Outcome

P256 = Precision(256)

EXPECTED_SLOPES = {
    Method.ARCHIMEDES: -2,
    Method.HUYGENS_VII: -4,
    Method.CUSA: -4,
    Method.SNELL_IX: -4,
    Method.HUYGENS_XVI_UPPER: -6,
    Method.HUYGENS_FINAL_LOWER: -6,
    Method.SCHUH27_LOWER: -6,
    Method.COMBINED: -6,
}


def _band(enc, digits_str: str) -> bool:
    lit = Q(digits_str)
    u = Q(1, 10 ** len(digits_str.split(".")[1]))
    return lit - u <= enc.lo and enc.hi <= lit + 2 * u


@pytest.mark.parametrize("method,target", sorted(EXPECTED_SLOPES.items(), key=lambda kv: kv[0].value))
def test_fitted_slopes(method, target) -> None:
    est = estimate_order(method, 6, range(4, 11), P256)
    assert abs(est.slope - target) < 0.05


def test_estimate_fields_and_decreasing_errors() -> None:
    est = estimate_order(Method.HUYGENS_VII, 6, range(4, 11), P256)
    assert est.method is Method.HUYGENS_VII
    assert [n for n, _ in est.samples] == [48, 96, 192, 384, 768, 1536, 3072]
    for (_, left), (_, right) in zip(est.samples, est.samples[1:]):
        assert left.lo > right.hi
    assert est.coefficient.lo > Q("0.637") and est.coefficient.hi < Q("0.638")


def test_sixth_order_coefficient() -> None:
    est = estimate_order(Method.HUYGENS_XVI_UPPER, 6, range(4, 11), P256)
    assert round(est.slope) == -6
    assert est.coefficient.lo > Q("0.1348") and est.coefficient.hi < Q("0.1349")


def test_insufficient_samples() -> None:
    with pytest.raises(InsufficientSamples):
        estimate_order(Method.CUSA, 6, [1, 2, 3], P256)
    with pytest.raises(InsufficientSamples):
        estimate_order(Method.CUSA, 6, [2, 3, 4, 5], P256)


def test_indeterminate_when_precision_starves_the_fit() -> None:
    with pytest.raises(IndeterminateError):
        estimate_order(Method.HUYGENS_VII, 6, range(4, 13), Precision(48))


def test_order_dominance_from_n_12() -> None:
    lad = ladder(6, 6, Precision(192))
    ref = pi_reference(Precision(320)).mid
    fourth = (Method.HUYGENS_VII, Method.CUSA, Method.SNELL_IX)
    sixth = (Method.HUYGENS_XVI_UPPER, Method.HUYGENS_FINAL_LOWER, Method.SCHUH27_LOWER)
    for k in range(2, 6):
        worst_sixth = max(abs(error_sample(lad, k, m, ref)).hi for m in sixth)
        best_fourth = min(abs(error_sample(lad, k, m, ref)).lo for m in fourth)
        assert worst_sixth < best_fourth


def test_coefficient_table_values() -> None:
    rows = {row.method: row for row in coefficient_table(P256)}
    assert len(rows) == 6
    assert _band(rows[Method.HUYGENS_VII].measured, "0.6375409306")
    assert _band(rows[Method.CUSA].measured, "0.1062568482")
    assert _band(rows[Method.SNELL_IX].measured, "15.3010070994")
    assert _band(rows[Method.HUYGENS_XVI_UPPER].measured, "0.1348345301")
    assert _band(rows[Method.HUYGENS_FINAL_LOWER].measured, "0.1448223185")
    assert _band(rows[Method.SCHUH27_LOWER].measured, "0.8090073339")
    assert _band(rows[Method.HUYGENS_VII].expected, "0.6375410100")
    assert _band(rows[Method.CUSA].expected, "0.1062568350")
    assert _band(rows[Method.SNELL_IX].expected, "15.3009842393")
    assert _band(rows[Method.HUYGENS_XVI_UPPER].expected, "0.1348345191")


def test_coefficient_table_verdicts_and_tags() -> None:
    for row in coefficient_table(P256):
        if row.expected is None:
            assert row.within is None
            assert row.method in (Method.HUYGENS_FINAL_LOWER, Method.SCHUH27_LOWER)
            assert "measured-only" in row.unit_convention
        else:
            assert row.within.outcome is Outcome.PASS
            assert row.within.margin > 0
            ratio = row.measured / row.expected
            assert ratio.lo > Q(97, 100) and ratio.hi < Q(103, 100)
    orders = [row.order for row in coefficient_table(P256)]
    assert orders == [4, 4, 4, 6, 6, 6]


def test_coefficient_sequence_converges() -> None:
    lad = ladder(6, 8, P256)
    ref = pi_reference(Precision(384)).mid
    target = Q("0.10625683499488939")
    prev_gap = None
    for k in range(4, 9):
        err = abs(error_sample(lad, k, Method.CUSA, ref))
        coeff = (err * (6 * 2 ** (k - 1)) ** 4).mid
        gap = abs(coeff - target)
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap


def test_arc_expansion_verdicts() -> None:
    grid = [Q(1, 4), Q(1, 8), Q(1, 10), Q(1, 16), Q(1, 100)]
    for method in (Method.CUSA, Method.SNELL):
        verdict = arc_expansion_check(method, grid)
        assert verdict.outcome is Outcome.PASS
        assert verdict.margin > 0
        assert verdict.name == f"arc-expansion-{method.value}"


def test_arc_expansion_leading_term_dominance() -> None:
    x = Q(1, 10)
    deficiency = x - cusa_lower_arc(x, Precision(96))
    unit = x**5 / 180
    assert deficiency.lo > unit / 2 and deficiency.hi < unit * Q(3, 2)
    excess = snell_upper_arc(x, Precision(96)) - x
    unit = x**5 / 20
    assert excess.lo > unit and excess.hi < unit * Q(11, 10)


def test_arc_expansion_domain_errors() -> None:
    with pytest.raises(DomainError):
        arc_expansion_check(Method.CUSA, [Q(1, 2)])
    with pytest.raises(DomainError):
        arc_expansion_check(Method.CUSA, [0])
    with pytest.raises(DomainError):
        arc_expansion_check(Method.CUSA, [])
    with pytest.raises(DomainError):
        arc_expansion_check(Method.ARCHIMEDES, [Q(1, 10)])
