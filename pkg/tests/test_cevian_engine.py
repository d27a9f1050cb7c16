import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append(str(Path(__file__).resolve().parent.parent))

from cevians.core.cevian import cevian_to_foot, internal_bisector_cevian
from cevians.core.errors import DegenerateRatio, DegenerateT, DomainError, ParallelTrisa
from cevians.core.frames import TriangleAngles, make_frame
from cevians.engine.circle import circle_cevian_lengths_oracle, circle_cevian_lengths_sq
from cevians.engine.gaps import (
    bisector_gap,
    gap_profile,
    has_sign_change,
    interior_samples,
    median_gap,
    median_gap_at_infinity,
    median_identity_residual,
    median_identity_sides,
    median_param_from_barycentric,
    ratio_cevian_gap,
)
from cevians.engine.trisas import (
    TrisaParams,
    find_equal_trisa_witness,
    parallel_trisa_k,
    trisa_cevian_length,
    trisa_fg,
    trisa_oracle_length,
)

SCALENE = [(40, 75), (20, 40), (30, 110), (65, 50)]


@pytest.mark.parametrize("alpha_deg,beta_deg", SCALENE)
@pytest.mark.parametrize("locus", ["bisector", "median"])
def test_scalene_gap_keeps_its_sign(alpha_deg, beta_deg, locus):
    angles = TriangleAngles.from_degrees(alpha_deg, beta_deg)
    gaps, ok = gap_profile(angles, locus, interior_samples(500))

    assert ok.all()
    assert np.all(gaps != 0.0)
    assert not has_sign_change(gaps, ok)


def test_isosceles_gap_vanishes():
    angles = TriangleAngles.from_degrees(55, 55)
    for locus in ("bisector", "median"):
        gaps, ok = gap_profile(angles, locus, interior_samples(50))
        assert ok.all()
        assert np.max(np.abs(gaps)) < 1e-10

    print("✓ Isosceles triangle: cevians through the axis are equal")


def test_gap_profile_matches_pointwise_gap():
    angles = TriangleAngles.from_degrees(40, 75)
    s_values = np.array([0.1, 0.4, 0.9])
    gaps, _ = gap_profile(angles, "median", s_values)

    for s, gap in zip(s_values, gaps):
        assert median_gap(angles, float(s)).gap == pytest.approx(gap, abs=1e-12)


def test_gap_at_locus_ends():
    angles = TriangleAngles.from_degrees(40, 75)

    on_side = bisector_gap(angles, 1.0)
    assert not on_side.both_exist
    assert math.isfinite(on_side.gap)

    at_infinity = median_gap(angles, math.inf)
    assert not at_infinity.both_exist
    assert math.isnan(at_infinity.gap)

    for s in (0.0, -0.5):
        with pytest.raises(DomainError):
            bisector_gap(angles, s)


def test_median_param_from_barycentric():
    assert median_param_from_barycentric(0) == 1.0
    assert median_param_from_barycentric(1) == pytest.approx(2 / 3)
    assert median_param_from_barycentric(-2) == math.inf


@pytest.mark.parametrize("x", [0.5, 3.0, -0.5, -3.0])
def test_median_identity_holds(x):
    angles = TriangleAngles.from_degrees(40, 75)
    lhs, rhs = median_identity_sides(angles, x)

    assert median_identity_residual(angles, x) < 1e-12 * max(1.0, abs(lhs), abs(rhs))


@pytest.mark.parametrize("x", [-1.0, 0.0])
def test_median_identity_excluded_weights(x):
    with pytest.raises(DomainError):
        median_identity_sides(TriangleAngles.from_degrees(40, 75), x)


def test_median_gap_at_infinity_vanishes():
    # Cevians parallel to CM reach 2C - B and 2C - A, both at distance 2|CM|.
    for alpha_deg, beta_deg in SCALENE + [(50, 50)]:
        assert abs(median_gap_at_infinity(TriangleAngles.from_degrees(alpha_deg, beta_deg))) < 1e-10


def test_ratio_cevian_gap_identity():
    angles = TriangleAngles.from_degrees(40, 75)
    frame = make_frame(angles)
    a, b, _ = frame.side_lengths()
    p, q = 2.0, 3.0
    lam = p / (p + q)

    gap = ratio_cevian_gap(angles, p, q)
    aa1 = cevian_to_foot(frame, "A", lam).length
    bb1 = cevian_to_foot(frame, "B", lam).length

    assert gap > 0
    assert gap == pytest.approx(aa1 - bb1)
    assert aa1 ** 2 - bb1 ** 2 == pytest.approx((b * b - a * a) * lam * (2 - lam), rel=1e-10)

    print("✓ Equal-ratio cevians differ for a scalene triangle")


@pytest.mark.parametrize("p,q", [(2.0, -1.0), (1.0, -1.0)])
def test_degenerate_ratio(p, q):
    with pytest.raises(DegenerateRatio):
        ratio_cevian_gap(TriangleAngles.from_degrees(40, 75), p, q)


@pytest.mark.parametrize("t", [0.3, 1.0, 2.0, 4.0, 5.5])
def test_circle_closed_form_matches_intersection(t):
    angles = TriangleAngles.from_degrees(40, 75)
    closed = circle_cevian_lengths_sq(angles, t)
    oracle = circle_cevian_lengths_oracle(angles, t)

    assert closed[0] == pytest.approx(oracle[0], rel=1e-9)
    assert closed[1] == pytest.approx(oracle[1], rel=1e-9)
    assert closed[0] != pytest.approx(closed[1], rel=1e-6)


def test_circle_degenerate_parameter():
    angles = TriangleAngles.from_degrees(40, 75)

    with pytest.raises(DegenerateT):
        circle_cevian_lengths_sq(angles, math.pi - (angles.alpha - angles.beta))
    with pytest.raises(DomainError):
        circle_cevian_lengths_sq(angles, 7.0)


def test_trisa_rejects_zero_ratio():
    with pytest.raises(ValueError):
        trisa_cevian_length(TriangleAngles.from_degrees(40, 75), 0.0, "A")


def test_half_trisa_is_internal_bisector():
    angles = TriangleAngles.from_degrees(40, 75)
    frame = make_frame(angles)

    for vertex in "AB":
        expected = internal_bisector_cevian(frame, vertex).length
        assert trisa_cevian_length(angles, 0.5, vertex) == pytest.approx(expected, rel=1e-12)

    print("✓ The 1/2-trisa is the angle bisector")


def test_unit_trisa_is_side():
    angles = TriangleAngles.from_degrees(40, 75)
    _, ca, _ = make_frame(angles).side_lengths()

    assert trisa_cevian_length(angles, 1.0, "A") == pytest.approx(ca, rel=1e-12)


@pytest.mark.parametrize("k", [0.3, 1.5, 2.0, 3.0])
def test_trisa_matches_intersection(k):
    angles = TriangleAngles.from_degrees(40, 75)
    for vertex in "AB":
        try:
            length = trisa_cevian_length(angles, k, vertex)
        except ParallelTrisa:
            continue
        assert length == pytest.approx(trisa_oracle_length(angles, k, vertex), rel=1e-9)


@pytest.mark.parametrize("alpha_deg", [10, 30, 44])
def test_right_angle_at_c_gives_equal_double_trisas(alpha_deg):
    angles = TriangleAngles.from_degrees(alpha_deg, 90 - alpha_deg)

    assert trisa_cevian_length(angles, 2.0, "A") == pytest.approx(1.0, rel=1e-12)
    assert trisa_cevian_length(angles, 2.0, "B") == pytest.approx(1.0, rel=1e-12)


def test_parallel_trisa():
    angles = TriangleAngles.from_degrees(40, 75)
    k = parallel_trisa_k(angles, "A")

    with pytest.raises(ParallelTrisa):
        trisa_cevian_length(angles, k, "A")


def test_trisa_fg_domain():
    f, g = trisa_fg(4.0, 0.5, 0.2)
    assert f == pytest.approx(math.sin(2.5) / math.sin(0.5))
    assert g == pytest.approx(-math.sin(0.6) / math.sin(0.2))

    with pytest.raises(DomainError):
        trisa_fg(1.5, 0.5, 0.2)
    with pytest.raises(DomainError):
        trisa_fg(4.0, 0.2, 0.5)
    with pytest.raises(DomainError):
        trisa_fg(4.0, 1.0, 0.2)
    with pytest.raises(DomainError):
        trisa_fg(4.0, math.pi / 4, 0.2)


def test_trisa_params_gamma():
    assert TrisaParams(k=0.5).gamma_param == 4.0
    assert TrisaParams(k=2.0).gamma_param == 1.0
    with pytest.raises(ValueError):
        TrisaParams(k=0.0)


def test_equal_trisa_witness_is_scalene():
    angles, length = find_equal_trisa_witness(2.0)

    assert abs(angles.alpha - angles.beta) > 1e-3
    assert trisa_cevian_length(angles, 2.0, "A") == pytest.approx(length, rel=1e-8)
    assert trisa_cevian_length(angles, 2.0, "B") == pytest.approx(length, rel=1e-8)

    print(f"✓ Equal 2-trisas in a scalene triangle: {tuple(round(a, 4) for a in angles.degrees())}")


@pytest.mark.parametrize("alphas", [None, [math.radians(25.0)], [math.radians(61.0)]])
def test_double_trisa_witness_is_right_angled(alphas):
    # Equal 2-trisas force cos(3 alpha + beta) = cos(3 beta + alpha), so alpha + beta = 90 deg.
    angles, _ = find_equal_trisa_witness(2.0, alphas=alphas)

    assert angles.gamma == pytest.approx(math.pi / 2, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=0.2, max_value=1.4),
    st.floats(min_value=0.2, max_value=1.4),
    st.floats(min_value=0.05, max_value=0.95),
)
def test_ratio_gap_sign_follows_sides(alpha, beta, lam):
    angles = TriangleAngles(alpha=alpha, beta=beta)
    gap = ratio_cevian_gap(angles, lam, 1 - lam)
    a, b, _ = make_frame(angles).side_lengths()

    if abs(b - a) > 1e-6:
        assert np.sign(gap) == np.sign(b - a)


if __name__ == "__main__":
    print("Running cevian engine tests...\n")

    test_isosceles_gap_vanishes()
    test_ratio_cevian_gap_identity()
    test_half_trisa_is_internal_bisector()
    test_equal_trisa_witness_is_scalene()

    print("\n" + "=" * 50)
    print("All cevian engine tests passed! ✓")
    print("=" * 50)
