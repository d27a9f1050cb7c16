import json
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append(str(Path(__file__).resolve().parent.parent))

from cevians.core.cevian import (
    cevian_through,
    cevian_to_foot,
    collinearity_residual,
    external_angle_residual,
    external_bisector_cevian,
    internal_bisector_cevian,
)
from cevians.core.errors import DomainError, ParallelCevian
from cevians.core.frames import FrameKind, Point2, TriangleAngles, make_frame

CASES = json.loads((Path(__file__).parent / "test_cases.json").read_text(encoding="utf-8"))

angle_pairs = st.tuples(
    st.floats(min_value=0.1, max_value=2.8),
    st.floats(min_value=0.1, max_value=2.8),
).filter(lambda ab: ab[0] + ab[1] < math.pi - 0.1)


def test_median_centered_layout():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))

    assert frame.A == Point2(x=-0.5, y=0.0)
    assert frame.B == Point2(x=0.5, y=0.0)
    assert frame.midpoint_ab() == Point2(x=0.0, y=0.0)
    assert frame.C.y > 0
    assert frame.side_lengths()[2] == pytest.approx(1.0)

    print("✓ MedianCentered frame places M at the origin with AB = 1")


def test_frames_are_similar():
    angles = TriangleAngles.from_degrees(35, 80)
    ratios = []
    for kind in FrameKind:
        a, b, c = make_frame(angles, kind).side_lengths()
        ratios.append((a / c, b / c))

    for ratio in ratios:
        assert ratio[0] == pytest.approx(math.sin(angles.alpha) / math.sin(angles.gamma), rel=1e-12)
        assert ratio[1] == pytest.approx(math.sin(angles.beta) / math.sin(angles.gamma), rel=1e-12)

    print("✓ All three normalizations describe the same triangle")


def test_circum_unit_radius():
    angles = TriangleAngles.from_degrees(40, 65)
    frame = make_frame(angles, FrameKind.CIRCUM_UNIT)
    center = Point2(x=(frame.A.x + frame.B.x) / 2, y=math.cos(angles.gamma))

    for vertex in "ABC":
        assert frame.vertex(vertex).distance_to(center) == pytest.approx(1.0, abs=1e-12)

    print("✓ CircumUnit frame has circumradius 1")


def test_altitude_unit_frame():
    frame = make_frame(TriangleAngles.from_degrees(70, 45), FrameKind.ALTITUDE_UNIT)

    assert frame.C == Point2(x=0.0, y=1.0)
    assert frame.altitude_foot("C").x == pytest.approx(0.0, abs=1e-12)

    print("✓ AltitudeUnit frame puts the foot of CH at the origin")


@pytest.mark.parametrize("alpha_deg,beta_deg", [(100, 90), (0, 60), (-10, 50), (90, 90)])
def test_invalid_angles_rejected(alpha_deg, beta_deg):
    with pytest.raises(ValueError):
        TriangleAngles.from_degrees(alpha_deg, beta_deg)


def test_cevian_through_centroid_is_median():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))
    a, b, c = frame.as_arrays()
    centroid = Point2.of((a + b + c) / 3)

    for vertex in "ABC":
        cevian = cevian_through(frame, vertex, centroid)
        assert cevian.foot_param == pytest.approx(0.5, abs=1e-12)
        assert collinearity_residual(frame, cevian) < 1e-12

    print("✓ Cevians through the centroid are the medians")


def test_parallel_cevian_raises():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))
    a, b, c = frame.as_arrays()

    with pytest.raises(ParallelCevian):
        cevian_through(frame, "A", Point2.of(a + (c - b)))


def test_point_on_vertex_raises():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))

    with pytest.raises(DomainError):
        cevian_through(frame, "A", frame.A)


def test_vertex_foot_is_reported():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))
    cevian = cevian_through(frame, "A", frame.C)

    assert cevian.foot_param == pytest.approx(1.0)
    assert cevian.on_vertex
    assert cevian.length == pytest.approx(frame.A.distance_to(frame.C))

    print("✓ Cevian along a side is flagged, not rejected")


def test_cevian_to_foot_midpoint():
    frame = make_frame(TriangleAngles.from_degrees(50, 70))
    cevian = cevian_to_foot(frame, "C", 0.5)

    assert cevian.foot == frame.midpoint_ab()
    assert not cevian.on_vertex


def test_bottema_external_bisectors():
    case = next(c for c in CASES["triangles"] if c["category"] == "bottema")
    frame = make_frame(TriangleAngles.from_degrees(case["alpha_deg"], case["beta_deg"]))

    for vertex in "AB":
        cevian = external_bisector_cevian(frame, vertex)
        assert abs(cevian.length - 1.0) < 1e-9
        assert external_angle_residual(frame, cevian) < 1e-9

    print("✓ Bottema triangle: both external bisectors equal AB")


def test_external_bisector_parallel_for_isosceles_apex():
    frame = make_frame(TriangleAngles.from_degrees(55, 55))

    with pytest.raises(ParallelCevian):
        external_bisector_cevian(frame, "C")


@settings(max_examples=100, deadline=None)
@given(angle_pairs)
def test_internal_bisector_divides_side_in_ratio(ab):
    frame = make_frame(TriangleAngles(alpha=ab[0], beta=ab[1]))
    cevian = internal_bisector_cevian(frame, "C")
    _, ca, _ = frame.side_lengths()
    cb = frame.side_lengths()[0]
    t = cevian.foot_param

    assert t / (1 - t) == pytest.approx(ca / cb, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(angle_pairs)
def test_swapping_angles_mirrors_frame(ab):
    angles = TriangleAngles(alpha=ab[0], beta=ab[1])
    frame = make_frame(angles)
    mirrored = make_frame(angles.swapped())

    assert mirrored.C.x == pytest.approx(-frame.C.x, abs=1e-12)
    assert mirrored.C.y == pytest.approx(frame.C.y, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(angle_pairs)
def test_external_bisector_angles_match(ab):
    angles = TriangleAngles(alpha=ab[0], beta=ab[1])
    frame = make_frame(angles)
    for vertex in "AB":
        try:
            cevian = external_bisector_cevian(frame, vertex)
        except ParallelCevian:
            continue
        assert external_angle_residual(frame, cevian) < 1e-7
        assert np.isfinite(cevian.length)


if __name__ == "__main__":
    print("Running geometry core tests...\n")

    test_median_centered_layout()
    test_frames_are_similar()
    test_circum_unit_radius()
    test_altitude_unit_frame()
    test_cevian_through_centroid_is_median()
    test_vertex_foot_is_reported()
    test_bottema_external_bisectors()

    print("\n" + "=" * 50)
    print("All geometry core tests passed! ✓")
    print("=" * 50)
