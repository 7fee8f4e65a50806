"""Tests for the parabola/circle comparison figure and its sign lemma."""

from __future__ import annotations

import random

import pytest

from circulus.errors import DomainError
from circulus.exact import Enclosure, Precision, Q, enc_cos, enc_sqrt, pi_reference
from circulus.parasect import (
    area_difference_report,
    circular_segment_area,
    configure,
    derivative_identity_residual,
    f_of_x,
    parabolic_segment_area,
)
from circulus.barycenter import segment

P64 = Precision(64)
P128 = Precision(128)


def _band(enc, digits_str: str) -> bool:
    lit = Q(digits_str)
    u = Q(1, 10 ** len(digits_str.split(".")[1].lstrip("-")))
    return lit - u <= enc.lo and enc.hi <= lit + 2 * u


def test_semicircle_config() -> None:
    cfg = configure(1, 1, P128)
    assert cfg.a_half.contains(1) and cfg.a_half.width < Q(1, 10**30)
    assert _band(cfg.p, "0.9165151389911680")
    assert _band(cfg.c, "1.1832159566199232")


def test_half_height_config_ordering() -> None:
    cfg = configure(1, Q(1, 2), P128)
    assert _band(cfg.a_half, "0.8660254037844386")
    assert _band(cfg.p, "0.7141428428542850")
    assert _band(cfg.c, "0.9219544457292887")
    assert cfg.p.hi < cfg.a_half.lo < cfg.a_half.hi < cfg.c.lo


def test_pythagorean_invariant() -> None:
    for r, b in ((1, Q(1, 2)), (3, 2), (2, Q(7, 4))):
        cfg = configure(r, b, P128)
        lhs = cfg.a_half.square() + (cfg.r - cfg.b).square()
        assert lhs.overlaps(cfg.r.square())


def test_thin_segment_ratio_limit() -> None:
    cfg = configure(1, Q(1, 10**6), P128)
    ratio = cfg.p / cfg.a_half
    target = enc_sqrt(Enclosure.point(Q(3, 5), P128))
    assert abs(ratio - target).mag_ub() < Q(1, 10**5)


def test_configure_domain_errors() -> None:
    for r, b in ((1, 0), (1, 2), (0, 1), (1, -1), (-2, 1)):
        with pytest.raises(DomainError):
            configure(r, b, P64)


def test_parabolic_area_semicircle() -> None:
    cfg = configure(1, 1, P128)
    area = parabolic_segment_area(cfg)
    assert _band(area, "1.5776212754932309")
    assert area.overlaps(cfg.b * cfg.c * Q(4, 3))


def test_parabolic_area_quadratic_scaling() -> None:
    # area homogeneity: (r, b) -> (2r, 2b) multiplies b*c by 4
    small = parabolic_segment_area(configure(1, Q(3, 4), P128))
    large = parabolic_segment_area(configure(2, Q(3, 2), P128))
    assert large.lo == 4 * small.lo and large.hi == 4 * small.hi


def test_circular_area_values() -> None:
    semi = circular_segment_area(configure(1, 1, P128))
    assert semi.overlaps(pi_reference(P128) / 2)
    half = circular_segment_area(configure(1, Q(1, 2), P128))
    assert _band(half, "0.6141848493043784")


def test_circular_area_matches_segment_module() -> None:
    for theta in (pi_reference(Precision(160)) / 2, Enclosure.point(Q(2), Precision(160))):
        height = 1 - enc_cos(theta / 2, Precision(144))
        cfg = configure(1, height, P128)
        assert circular_segment_area(cfg).overlaps(segment(1, theta, P128).Sigma)


def test_f_at_one() -> None:
    val = f_of_x(1, P128)
    exact = pi_reference(P128) / 4 - enc_sqrt(Enclosure.point(Q(35), P128)) * 2 / 15
    assert val.overlaps(exact)
    assert _band(val, "-0.0034124743491672")
    assert val.lo > Q("-0.003414") and val.hi < Q("-0.003412")


def test_f_spot_values() -> None:
    assert _band(f_of_x(Q(1, 2), P128), "-0.0002257239242404")
    assert _band(f_of_x(Q(3, 10), P128), "-0.0000342055222173")
    assert f_of_x(Q(1, 1000), P128).mag_ub() < Q(1, 10**13)


def test_f_domain_errors() -> None:
    for x in (0, 2, Q(3, 2), -1):
        with pytest.raises(DomainError):
            f_of_x(x, P64)


def test_double_f_equals_area_gap() -> None:
    for r, b in ((1, Q(1, 2)), (3, 2), (2, Q(3, 2)), (1, 1)):
        cfg = configure(r, b, P128)
        gap = circular_segment_area(cfg) - parabolic_segment_area(cfg)
        doubled = f_of_x(Q(b) / Q(r), P128) * Q(r) ** 2 * 2
        assert gap.overlaps(doubled)


def test_area_difference_report() -> None:
    rep = area_difference_report(configure(1, 1, P128))
    assert _band(rep.sliver_minus_wedge, "-0.0034124743491672")
    assert rep.bound_check.passed
    assert rep.bound_check.name == "area-gap-bound"

    scaled = area_difference_report(configure(2, 2, P128))
    assert scaled.sliver_minus_wedge.overlaps(rep.sliver_minus_wedge * 4)
    assert scaled.bound_check.passed

    small = area_difference_report(configure(1, Q(3, 10), P128))
    assert small.sliver_minus_wedge.hi < 0
    assert small.sliver_minus_wedge.mag_ub() < Q(1, 10**4)


def test_sign_grid_and_monotone_decrease() -> None:
    lo, hi = Q(1, 1000), Q(1)
    xs = [lo + (hi - lo) * Q(i, 199) for i in range(200)]
    vals = [f_of_x(x, P64) for x in xs]
    assert all(v.hi < 0 for v in vals)
    for left, right in zip(vals, vals[1:]):
        assert left.lo > right.hi


def test_derivative_identity_exact() -> None:
    rng = random.Random(20260815)
    assert derivative_identity_residual(0) == 0
    assert derivative_identity_residual(1) == 0
    for _ in range(50):
        x = Q(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**6))
        assert derivative_identity_residual(x) == 0
