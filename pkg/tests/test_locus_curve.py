import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

sys.path.append(str(Path(__file__).resolve().parent.parent))

from cevians.core.errors import DomainError, IsoscelesDegenerate, NoIntersection
from cevians.core.frames import TriangleAngles, make_frame
from cevians.engine.circle import reflected_circumcenter
from cevians.locus.curve import (
    NEWTON_GROUP_LABEL,
    altitude_bounds,
    asymptote,
    asymptote_closed_form,
    asymptote_offset,
    equal_cevian_quartic,
    implicit_coeffs,
    isosceles_locus,
    l_grid,
    locus_branches,
    newton_group_label,
    parametric_closed_form,
    parametric_points,
    special_points,
)
from cevians.locus.emitter import emit_curve
from cevians.verify.suite import normalized_residual

SCALENE = TriangleAngles.from_degrees(20, 40)
OBTUSE = TriangleAngles.from_degrees(40, 120)


@pytest.mark.parametrize("angles", [SCALENE, OBTUSE])
def test_named_points_lie_on_cubic(angles):
    cubic = implicit_coeffs(angles)
    frame = make_frame(angles)
    named = {"A": frame.A, "B": frame.B, **special_points(angles)}

    for name, p in named.items():
        assert normalized_residual(cubic, p.x, p.y) < 1e-10, name

    print(f"✓ {angles.degrees()[:2]}: A, B, E, N and D lie on the cubic")


def test_axis_intersections():
    cubic = implicit_coeffs(SCALENE)
    x_e = special_points(SCALENE)["E"].x

    on_ab = np.sort(np.roots(cubic.on_x_axis()).real)
    assert on_ab == pytest.approx(sorted([-0.5, 0.5, x_e]), abs=1e-10)

    on_axis = np.roots(cubic.on_y_axis())
    real = on_axis[np.abs(on_axis.imag) < 1e-9].real
    assert real.size == 1
    assert real[0] == pytest.approx(special_points(SCALENE)["N"].y, abs=1e-10)


def test_cubic_is_quartic_without_base_line():
    rng = np.random.default_rng(7)
    cubic = implicit_coeffs(SCALENE)
    ratios = []
    for x, y in rng.uniform(-2, 2, size=(20, 2)):
        if abs(y) < 1e-2 or abs(cubic(x, y)) < 1e-3:
            continue
        ratios.append(equal_cevian_quartic(SCALENE, x, y) / (y * cubic(x, y)))

    assert len(ratios) > 5
    assert np.allclose(ratios, ratios[0], rtol=1e-9)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=0.1, max_value=1.5),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-3, max_value=3),
)
def test_isosceles_cubic_factors_into_axis_and_circle(alpha, x, y):
    cubic = implicit_coeffs(TriangleAngles(alpha=alpha, beta=alpha))
    s2, c2 = math.sin(2 * alpha), math.cos(2 * alpha)
    factored = -x * math.sin(alpha) ** 2 * (2 * (x * x + y * y) * s2 - 2 * y * c2 - 0.5 * s2)

    assert cubic(x, y) == pytest.approx(factored, abs=1e-12 * max(1.0, abs(x) + abs(y)) ** 3)


def test_asymptote_is_parallel_to_median():
    line = asymptote(SCALENE)
    c = make_frame(SCALENE).C

    assert line.k == pytest.approx(2 * math.sin(math.radians(40)), rel=1e-12)
    assert line.k == pytest.approx(c.y / c.x, rel=1e-12)

    print(f"✓ Asymptote y = {line.k:.6f} x + {line.b:.6f} is parallel to CM")


@pytest.mark.parametrize("angles", [SCALENE, OBTUSE, TriangleAngles.from_degrees(70, 35)])
def test_asymptote_intercept_closed_form(angles):
    computed, closed = asymptote(angles), asymptote_closed_form(angles)

    assert computed.k == pytest.approx(closed.k, rel=1e-12)
    assert computed.b == pytest.approx(closed.b, rel=1e-9, abs=1e-14)


def test_isosceles_has_no_asymptote():
    with pytest.raises(IsoscelesDegenerate):
        asymptote(TriangleAngles.from_degrees(50, 50))


@pytest.mark.parametrize("angles", [SCALENE, OBTUSE])
def test_curve_approaches_asymptote(angles):
    offsets = [abs(asymptote_offset(angles, x)) for x in (1e2, 1e3, 1e4)]

    assert offsets[2] < offsets[1] < offsets[0]


def test_parametric_samples_lie_on_cubic():
    cubic = implicit_coeffs(SCALENE)
    samples = parametric_points(SCALENE, 1.2)

    assert {s.branch for s in samples} == {(1, 1), (1, 2), (2, 1), (2, 2)}
    for s in samples:
        assert normalized_residual(cubic, s.point.x, s.point.y) < 1e-8
        closed = parametric_closed_form(SCALENE, 1.2, s.branch)
        assert closed.distance_to(s.point) < 1e-9 * max(1.0, math.hypot(s.point.x, s.point.y))

    print(f"✓ {len(samples)} branch points at l = 1.2 lie on the cubic")


def test_equilateral_at_altitude_gives_centroid():
    angles = TriangleAngles.from_degrees(60, 60)
    samples = parametric_points(angles, altitude_bounds(angles)[0])
    c = make_frame(angles).C

    assert len(samples) == 1
    assert samples[0].branch == (1, 1)
    assert samples[0].point.x == pytest.approx(0.0, abs=1e-12)
    assert samples[0].point.y == pytest.approx(c.y / 3, rel=1e-12)


def test_length_below_altitudes():
    h_a, h_b = altitude_bounds(SCALENE)
    assert h_b < 0.5 < h_a

    with pytest.raises(DomainError):
        parametric_points(SCALENE, 0.3)
    with pytest.raises(DomainError):
        parametric_points(SCALENE, 0.5)
    assert parametric_points(SCALENE, h_a)


def test_long_cevians_approach_node():
    node = special_points(OBTUSE)["D"]
    samples = parametric_points(OBTUSE, 1e6)

    assert samples
    assert max(s.point.distance_to(node) for s in samples) < 1e-4


def test_closed_form_parallel_branch():
    # Equilateral branch (2, 2) at l = 1: both cevians run along the base AB.
    angles = TriangleAngles.from_degrees(60, 60)
    with pytest.raises(NoIntersection):
        parametric_closed_form(angles, 1.0, (2, 2))


def test_isosceles_locus_circle():
    alpha = math.radians(50)
    locus = isosceles_locus(alpha)
    gamma = math.pi - 2 * alpha
    circumcenter_y = math.cos(gamma) / (2 * math.sin(gamma))

    assert locus.radius == pytest.approx(1 / (2 * math.sin(gamma)))
    assert locus.center.y == pytest.approx(-circumcenter_y)
    assert locus.axis_x == 0.0

    # Same circle as the reflected circumcircle, up to the frame's scale 2 sin(gamma).
    reflected = reflected_circumcenter(TriangleAngles(alpha=alpha, beta=alpha))
    assert reflected.y / (2 * math.sin(gamma)) == pytest.approx(locus.center.y)


@pytest.mark.parametrize("alpha", [0.0, math.pi / 2, 2.0])
def test_isosceles_locus_domain(alpha):
    with pytest.raises(DomainError):
        isosceles_locus(alpha)


def test_l_grid():
    grid = l_grid(SCALENE, 50, l_max=10.0)
    lower = max(altitude_bounds(SCALENE))

    assert grid[0] >= lower
    assert grid[-1] == pytest.approx(10.0)
    assert np.all(np.diff(grid) > 0)
    assert len(grid) >= 50

    with pytest.raises(DomainError):
        l_grid(SCALENE, 50, l_max=0.5)


def test_locus_branches_groups_samples():
    branches = locus_branches(SCALENE, [1.2, 1.5, 2.0])

    assert set(branches) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    for samples in branches.values():
        assert [s.l for s in samples] == [1.2, 1.5, 2.0]


def test_group_label():
    assert newton_group_label(SCALENE) == NEWTON_GROUP_LABEL
    assert "circle" in newton_group_label(TriangleAngles.from_degrees(50, 50))


def test_emit_csv_is_deterministic():
    first = emit_curve(SCALENE, (0.7, 5.0), 20, "csv")
    second = emit_curve(SCALENE, (0.7, 5.0), 20, "csv")
    rows = list(csv.reader(io.StringIO(first)))

    assert first == second
    assert rows[0] == ["l", "branch_i", "branch_j", "x", "y"]
    assert len(rows) > 20


def test_emit_json():
    document = json.loads(emit_curve(SCALENE, (0.7, 5.0), 10, "json"))

    assert document["alpha_deg"] == pytest.approx(20.0)
    assert document["label"] == NEWTON_GROUP_LABEL
    assert set(document["special_points"]) == {"E", "N", "D"}
    assert document["asymptote"]["k"] == pytest.approx(asymptote(SCALENE).k, rel=1e-10)
    assert document["samples"]

    isosceles = json.loads(emit_curve(TriangleAngles.from_degrees(50, 50), (0.8, 5.0), 10, "json"))
    assert "asymptote" not in isosceles


def test_emit_svg_to_file(tmp_path):
    out = tmp_path / "locus.svg"
    document = emit_curve(SCALENE, (0.7, 5.0), 20, "svg", out)

    assert out.read_text(encoding="utf-8") == document
    assert "<svg" in document
    assert emit_curve(SCALENE, (0.7, 5.0), 20, "svg") == document

    print(f"✓ SVG locus written to {out}")


def test_emit_isosceles_svg():
    assert "<svg" in emit_curve(TriangleAngles.from_degrees(50, 50), (0.8, 5.0), 20, "svg")


def test_emit_rejects_bad_requests():
    with pytest.raises(DomainError):
        emit_curve(SCALENE, (0.3, 5.0), 20, "csv")
    with pytest.raises(DomainError):
        emit_curve(SCALENE, (0.7, 5.0), 20, "png")
    with pytest.raises(DomainError):
        emit_curve(SCALENE, (0.7, 5.0), 1, "csv")


@settings(max_examples=50, deadline=None)
@given(
    st.floats(min_value=0.15, max_value=1.4),
    st.floats(min_value=0.15, max_value=1.4),
    st.floats(min_value=1.01, max_value=20.0),
)
def test_branch_points_satisfy_cubic(alpha, beta, factor):
    assume(abs(alpha - beta) > 1e-3)
    angles = TriangleAngles(alpha=alpha, beta=beta)
    cubic = implicit_coeffs(angles)

    for s in parametric_points(angles, factor * max(altitude_bounds(angles))):
        assert normalized_residual(cubic, s.point.x, s.point.y) < 1e-8


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=0.1, max_value=2.5),
    st.floats(min_value=0.1, max_value=2.5),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-3, max_value=3),
)
def test_swapping_base_angles_mirrors_the_cubic(alpha, beta, x, y):
    assume(alpha + beta < math.pi - 0.1)
    angles = TriangleAngles(alpha=alpha, beta=beta)
    cubic, mirrored = implicit_coeffs(angles), implicit_coeffs(angles.swapped())
    size = cubic.scale() * max(1.0, math.hypot(x, y)) ** 3

    assert abs(mirrored(x, y) + cubic(-x, y)) <= 1e-11 * size


@pytest.mark.parametrize("angles", [SCALENE, OBTUSE])
def test_swapped_triangle_branches_are_mirror_images(angles):
    cubic = implicit_coeffs(angles)
    samples = parametric_points(angles.swapped(), 1.5 * max(altitude_bounds(angles)))

    assert samples
    for s in samples:
        assert normalized_residual(cubic, -s.point.x, s.point.y) < 1e-8


if __name__ == "__main__":
    print("Running locus curve tests...\n")

    test_named_points_lie_on_cubic(SCALENE)
    test_asymptote_is_parallel_to_median()
    test_parametric_samples_lie_on_cubic()

    print("\n" + "=" * 50)
    print("All locus curve tests passed! ✓")
    print("=" * 50)
