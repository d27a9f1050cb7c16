import itertools
import logging
import math
import time
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.altitude.cubic import (
    AltitudeCubic,
    RootKind,
    acute_existence,
    build_cubic,
    classify,
    criterion_one_real,
    discriminant,
    equal_cevian_heights,
    root_check,
    sign_scan_root_count,
    verify_root_geometric,
)
from cevians.config import DEFAULT_TOL, GAP_SAMPLES, RANDOM_SEED, TETRA_STARTS
from cevians.conic.carnot import carnot_product, fit_conic, power_products, six_feet, subset_spread
from cevians.core.cevian import cevian_to_foot, external_bisector_cevian, internal_bisector_cevian
from cevians.core.errors import DegenerateConfiguration, DegenerateT, GeometryError, ParallelCevian, VertexFoot
from cevians.core.frames import FrameKind, TriangleAngles, make_frame
from cevians.engine.circle import circle_cevian_lengths_oracle, circle_cevian_lengths_sq
from cevians.engine.gaps import (
    gap_profile,
    has_sign_change,
    interior_samples,
    median_gap_at_infinity,
    median_identity_residual,
    ratio_cevian_gap,
)
from cevians.engine.trisas import (
    TrisaParams,
    find_equal_trisa_witness,
    trisa_cevian_length,
    trisa_f,
    trisa_g,
    trisa_oracle_length,
)
from cevians.locus.curve import (
    asymptote,
    asymptote_offset,
    altitude_bounds,
    equal_cevian_quartic,
    implicit_coeffs,
    isosceles_locus,
    l_grid,
    locus_branches,
    parametric_points,
    special_points,
)
from cevians.tetra.edges import (
    VERTICES,
    TetraEdgeSet,
    bisector_squares,
    equifacial_from_triangle,
    oracle_bisector_squares,
)
from cevians.tetra.solver import solve_equal_bisectors

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0


def _limit(tol: Optional[float], default: float) -> float:
    # --tol replaces every numeric threshold of every check.
    return default if tol is None else tol


def random_angles(rng: np.random.Generator, min_angle: float = 0.1) -> TriangleAngles:
    while True:
        alpha = rng.uniform(min_angle, math.pi - 2 * min_angle)
        beta = rng.uniform(min_angle, math.pi - alpha - min_angle)
        if math.pi - alpha - beta >= min_angle:
            return TriangleAngles(alpha=alpha, beta=beta)


def random_scalene(rng: np.random.Generator, separation: float = 0.01) -> TriangleAngles:
    while True:
        angles = random_angles(rng)
        if abs(angles.alpha - angles.beta) > separation:
            return angles


def random_tetrahedron(rng: np.random.Generator) -> TetraEdgeSet:
    while True:
        points = rng.normal(size=(4, 3))
        d = lambda i, j: float(np.linalg.norm(points[i] - points[j]))  # noqa: E731
        edges = TetraEdgeSet(ab=d(0, 1), ac=d(0, 2), bc=d(1, 2), x=d(0, 3), y=d(1, 3), z=d(2, 3))
        if edges.volume() >= 1e-2 * max(edges.model_dump().values()) ** 3:
            return edges


def normalized_residual(cubic, x: float, y: float) -> float:
    return abs(float(cubic(x, y))) / (cubic.scale() * max(1.0, math.hypot(x, y)) ** 3)


def _area(sides) -> float:
    a, b, c = sides
    s = (a + b + c) / 2
    return math.sqrt(max(0.0, s * (s - a) * (s - b) * (s - c)))


def check_frames(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-12)
    worst_sines, worst_similar, worst_mirror = 0.0, 0.0, 0.0
    for _ in range(500):
        angles = random_angles(rng)
        sines = np.sin([angles.alpha, angles.beta, angles.gamma])
        reference = None
        for kind in FrameKind:
            frame = make_frame(angles, kind)
            sides = np.array(frame.side_lengths())
            ratios = sides / sines
            worst_sines = max(worst_sines, float(np.ptp(ratios) / np.max(ratios)))

            shape = sides / sides[2]
            reference = shape if reference is None else reference
            worst_similar = max(worst_similar, float(np.max(np.abs(shape - reference))))

            # Swapping alpha and beta reflects the frame across the perpendicular bisector of AB.
            mirror = make_frame(angles.swapped(), kind)
            pairs = ((mirror.A, frame.B), (mirror.B, frame.A), (mirror.C, frame.C))
            offset = max(math.hypot(p.x + q.x, p.y - q.y) for p, q in pairs)
            worst_mirror = max(worst_mirror, offset / float(np.max(sides)))

    return CheckResult(
        name="frames",
        passed=max(worst_sines, worst_similar, worst_mirror) < limit,
        detail=(
            f"law of sines {worst_sines:.2e}, similarity across frames {worst_similar:.2e}, "
            f"alpha/beta mirror {worst_mirror:.2e}"
        ),
    )


def check_closed_forms(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-9)
    worst = {"bisector": 0.0, "trisa": 0.0, "sine rule": 0.0}
    cases = 0
    while cases < 1000:
        angles = random_angles(rng)
        k = float(rng.uniform(0.2, 3.0))
        vertex = "A" if rng.random() < 0.5 else "B"
        own, other = (angles.alpha, angles.beta) if vertex == "A" else (angles.beta, angles.alpha)
        y = float(rng.uniform(0.05, 3.0)) * (1.0 if rng.random() < 0.5 else -1.0)
        if abs(math.sin(k * own + other)) < 1e-2:
            continue
        try:
            check = root_check(angles, y)
        except ParallelCevian:
            continue
        if max(check.aa1, check.bb1) > 1e3:
            continue

        frame = make_frame(angles)
        a, b, _ = frame.side_lengths()
        bisector = 2 * a * b * math.cos(angles.gamma / 2) / (a + b)
        worst["bisector"] = max(
            worst["bisector"], abs(internal_bisector_cevian(frame, "C").length - bisector) / bisector
        )
        trisa = trisa_cevian_length(angles, k, vertex)
        worst["trisa"] = max(worst["trisa"], abs(trisa - trisa_oracle_length(angles, k, vertex)) / trisa)
        worst["sine rule"] = max(worst["sine rule"], check.path_disagreement)
        cases += 1

    return CheckResult(
        name="closed forms vs intersection",
        passed=max(worst.values()) < limit,
        detail=", ".join(f"{name} {value:.2e}" for name, value in worst.items()) + f" over {cases} inputs",
    )


def check_bottema(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    frame = make_frame(TriangleAngles.from_degrees(12, 132), FrameKind.MEDIAN_CENTERED)
    ab = frame.side_lengths()[2]
    gaps = [abs(external_bisector_cevian(frame, v).length - ab) for v in ("A", "B")]
    return CheckResult(
        name="bottema external bisectors",
        passed=max(gaps) < _limit(tol, DEFAULT_TOL),
        detail=f"|AA1 - AB|={gaps[0]:.2e}, |BB1 - AB|={gaps[1]:.2e}",
    )


def check_gaps(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-10)
    s = interior_samples(GAP_SAMPLES)
    sign_changes, at_infinity = 0, 0.0
    for _ in range(200):
        angles = random_scalene(rng)
        at_infinity = max(at_infinity, abs(median_gap_at_infinity(angles)))
        for locus in ("bisector", "median"):
            gaps, ok = gap_profile(angles, locus, s)
            sign_changes += has_sign_change(gaps, ok)

    worst = 0.0
    for _ in range(50):
        alpha = rng.uniform(0.1, math.pi / 2 - 0.05)
        angles = TriangleAngles(alpha=alpha, beta=alpha)
        for locus in ("bisector", "median"):
            gaps, ok = gap_profile(angles, locus, s)
            worst = max(worst, float(np.max(np.abs(gaps[ok]))))

    return CheckResult(
        name="bisector and median gaps",
        passed=sign_changes == 0 and worst < limit and at_infinity < limit,
        detail=(
            f"scalene sign changes={sign_changes}, isosceles max |gap|={worst:.2e}, "
            f"parallel-to-median max |gap|={at_infinity:.2e}"
        ),
    )


def check_median_identity(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-10)
    worst_identity, worst_ratio, wrong_sign, cases = 0.0, 0.0, 0, 0
    while cases < 500:
        angles = random_scalene(rng)
        x = float(rng.uniform(-5.0, 5.0))
        if min(abs(x), abs(x + 1)) < 1e-3:
            continue
        frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
        a, b, _ = frame.side_lengths()
        size = (abs(x) + 2) * max(1.0, a, b) ** 2
        worst_identity = max(worst_identity, median_identity_residual(angles, x) / size)

        # AA1^2 - BB1^2 = (b^2 - a^2) lam (2 - lam) for feet at the same ratio lam.
        p, q = (float(v) for v in rng.uniform(0.1, 3.0, 2))
        lam = p / (p + q)
        aa1 = cevian_to_foot(frame, "A", lam).length
        bb1 = cevian_to_foot(frame, "B", lam).length
        expected = (b * b - a * a) * lam * (2 - lam)
        worst_ratio = max(worst_ratio, abs(aa1 ** 2 - bb1 ** 2 - expected) / max(1.0, aa1 ** 2, bb1 ** 2))
        wrong_sign += np.sign(ratio_cevian_gap(angles, p, q)) != np.sign(b - a)
        cases += 1

    return CheckResult(
        name="median identity and ratio cevians",
        passed=max(worst_identity, worst_ratio) < limit and wrong_sign == 0,
        detail=(
            f"identity residual {worst_identity:.2e}, ratio identity {worst_ratio:.2e}, "
            f"wrong gap signs {wrong_sign}/{cases}"
        ),
    )


def check_circle(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    worst, cases, unequal = 0.0, 0, 0
    while cases < 200:
        angles = random_scalene(rng, separation=1e-3)
        t = rng.uniform(0.0, 2 * math.pi)
        if abs(math.cos((t + angles.alpha - angles.beta) / 2)) < 1e-3:
            continue
        try:
            closed = circle_cevian_lengths_sq(angles, t)
            oracle = circle_cevian_lengths_oracle(angles, t)
        except (DegenerateT, GeometryError):
            continue
        cases += 1
        worst = max(worst, max(abs(c - o) / max(1.0, o) for c, o in zip(closed, oracle)))
        unequal += abs(closed[0] - closed[1]) > 1e-12 * max(closed)

    return CheckResult(
        name="S_ABC circle cevians",
        passed=worst < _limit(tol, DEFAULT_TOL) and unequal == cases,
        detail=f"max relative deviation={worst:.2e}, unequal pairs={unequal}/{cases}",
    )


def check_trisas(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-10)
    failures = []
    for params in (TrisaParams(k=k) for k in (1.0, 2.0 / 3.0, 0.5, 0.2)):
        gamma_param = params.gamma_param
        upper = math.pi / gamma_param
        t = rng.uniform(0.0, upper, 10_000)
        tau = rng.uniform(0.0, 1.0, 10_000) * t
        keep = (tau > 0) & (t > tau)
        f, g = trisa_f(gamma_param, t[keep]), trisa_g(gamma_param, tau[keep])
        # k = 1 makes g identically -1.
        g_ok = np.max(g) <= -1 + 1e-12 if params.k == 1.0 else np.max(g) < -1
        if not (np.min(f) > -1 and g_ok):
            failures.append(f"gamma={gamma_param:g}: min f={np.min(f):.6f}, max g={np.max(g):.6f}")
        edges = (float(trisa_f(gamma_param, upper)), float(trisa_g(gamma_param, upper)))
        if max(abs(v + 1) for v in edges) > limit:
            failures.append(f"gamma={gamma_param:g}: boundary values {edges}")

    for alpha_deg in (20.0, 35.0, 50.0, 70.0):
        angles = TriangleAngles.from_degrees(alpha_deg, 90.0 - alpha_deg)
        lengths = [trisa_cevian_length(angles, 2.0, v) for v in ("A", "B")]
        if max(abs(length - 1.0) for length in lengths) > limit:
            failures.append(f"right triangle {alpha_deg}: 2-trisas {lengths}")

    for k in (1.5, 2.0, 3.0):
        try:
            angles, _ = find_equal_trisa_witness(k)
        except GeometryError as e:
            failures.append(str(e))
            continue
        if k == 2.0 and abs(angles.gamma - math.pi / 2) > limit:
            failures.append(f"2-trisa witness is not right-angled: gamma={math.degrees(angles.gamma)}")

    return CheckResult(
        name="k-trisas",
        passed=not failures,
        detail="; ".join(failures) or "f > -1 > g, right-triangle 2-trisas, witnesses for k=1.5, 2, 3",
    )


def check_altitude(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    roots = equal_cevian_heights(build_cubic(TriangleAngles.from_degrees(90, 60)))
    expected = math.sqrt(2.0 / 3.0)
    root_limit = _limit(tol, 1e-12)
    analytic_ok = len(roots) == 2 and abs(roots[0] + expected) < root_limit and abs(roots[1] - expected) < root_limit

    inside = [y for y in acute_existence(TriangleAngles.from_degrees(85, 60)) if 0 < y < 1]
    figure_ok = len(inside) >= 2 and all(
        verify_root_geometric(TriangleAngles.from_degrees(85, 60), y) < _limit(tol, 1e-8) for y in inside
    )

    mismatches = 0
    grid = np.radians(np.linspace(5.0, 120.0, 50))
    for alpha in grid:
        for beta in grid:
            if alpha + beta > math.radians(170) or abs(alpha - beta) < 1e-9:
                continue
            cubic = build_cubic(TriangleAngles(alpha=float(alpha), beta=float(beta)))
            result = classify(cubic)
            if abs(result.discriminant) < 1e-3:
                continue
            expected_count = 3 if result.kind is RootKind.THREE_DISTINCT else 1
            mismatches += sign_scan_root_count(cubic) != expected_count

    return CheckResult(
        name="altitude cubic",
        passed=analytic_ok and figure_ok and mismatches == 0,
        detail=f"90/60 roots={roots}, 85/60 roots in (0,1)={len(inside)}, grid mismatches={mismatches}",
    )


def check_altitude_roots(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    residual_limit, gap_limit = _limit(tol, 1e-10), _limit(tol, 1e-8)
    worst = {"|p(y)|": 0.0, "vieta": 0.0, "swap": 0.0, "gap": 0.0}
    above_one, cases = 0, 0
    while cases < 500:
        angles = random_scalene(rng, separation=1e-3)
        cubic = build_cubic(angles)
        result = classify(cubic)
        if result.kind is RootKind.TRIPLE_WITH_DOUBLE:
            continue
        ys = result.roots
        size = max(1.0, max(abs(y) for y in ys))
        worst["|p(y)|"] = max(worst["|p(y)|"], max(abs(cubic(y)) for y in ys))

        # Sum of roots 0 and product -2u; one real root r pairs with |z|^2 = p + r^2.
        if result.kind is RootKind.THREE_DISTINCT:
            vieta = max(abs(sum(ys)) / size, abs(ys[0] * ys[1] * ys[2] + cubic.q) / size ** 3)
        else:
            r = ys[0]
            vieta = abs(r * (cubic.p + r * r) + cubic.q) / size ** 3
        worst["vieta"] = max(worst["vieta"], vieta)

        swapped = build_cubic(angles.swapped())
        other = classify(swapped)
        worst["swap"] = max(
            worst["swap"],
            abs(swapped.u - cubic.u),
            abs(swapped.v - cubic.v),
            abs(other.discriminant - result.discriminant) / max(1.0, abs(result.discriminant)),
            max(abs(u - v) for u, v in zip(other.roots, ys)) if len(other.roots) == len(ys) else math.inf,
        )

        if angles.alpha < math.pi / 2 and angles.beta < math.pi / 2:
            above_one += any(y >= 1.0 for y in ys)
            for y in equal_cevian_heights(cubic, result):
                try:
                    check = root_check(angles, y)
                except ParallelCevian:
                    continue
                worst["gap"] = max(worst["gap"], check.gap / max(1.0, check.aa1, check.bb1))
        cases += 1

    criterion_mismatches = 0
    for u in np.linspace(0.0, 3.0, 40):
        for v in np.linspace(0.0, 5.0, 40):
            grid_cubic = AltitudeCubic(u=float(u), v=float(v))
            d = discriminant(grid_cubic)
            if abs(d) < 1e-9:
                continue
            criterion_mismatches += criterion_one_real(grid_cubic) != (d < 0)

    passed = (
        worst["|p(y)|"] < residual_limit
        and worst["vieta"] < residual_limit
        and worst["swap"] < residual_limit
        and worst["gap"] < gap_limit
        and above_one == 0
        and criterion_mismatches == 0
    )
    return CheckResult(
        name="altitude roots",
        passed=passed,
        detail=(
            ", ".join(f"{name} {value:.2e}" for name, value in worst.items())
            + f", acute roots >= 1: {above_one}, criterion mismatches: {criterion_mismatches}"
        ),
    )


def check_conic(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    worst_carnot, worst_residual, cases = 0.0, 0.0, 0
    while cases < 200:
        angles = random_angles(rng, min_angle=0.2)
        frame = make_frame(angles)
        sides = frame.side_lengths()
        heights = [2 * _area(sides) / side for side in sides]
        l = rng.uniform(1.05 * max(heights), 2.5 * max(sides))
        if min(abs(l - side) for side in sides) < 1e-2 * max(sides):
            continue
        try:
            feet = six_feet(angles, l)
            product = carnot_product(feet)
            _, residual = fit_conic(feet)
        except (VertexFoot, DegenerateConfiguration):
            continue
        cases += 1
        worst_carnot = max(worst_carnot, abs(product - 1.0))
        worst_residual = max(worst_residual, residual)

    return CheckResult(
        name="carnot conic",
        passed=worst_carnot < _limit(tol, 1e-10) and worst_residual < _limit(tol, 1e-8),
        detail=f"max |product - 1|={worst_carnot:.2e}, max sixth-point residual={worst_residual:.2e}",
    )


def check_conic_subsets(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    worst_spread, worst_power, cases = 0.0, 0.0, 0
    while cases < 50:
        angles = random_angles(rng, min_angle=0.3)
        frame = make_frame(angles)
        sides = frame.side_lengths()
        heights = [2 * _area(sides) / side for side in sides]
        l = rng.uniform(1.1 * max(heights), 2.0 * max(sides))
        if min(abs(l - side) for side in sides) < 5e-2 * max(sides):
            continue
        try:
            feet = six_feet(angles, l)
        except (VertexFoot, DegenerateConfiguration):
            continue
        points = feet.points()
        closest = min(float(np.linalg.norm(p - q)) for p, q in itertools.combinations(points, 2))
        if closest < 5e-2 * max(sides):
            continue

        worst_spread = max(worst_spread, subset_spread(feet))
        for directed, power in power_products(feet).values():
            worst_power = max(worst_power, abs(directed - power) / max(1.0, abs(power)))
        cases += 1

    return CheckResult(
        name="conic subsets and powers",
        passed=worst_spread < _limit(tol, 1e-6) and worst_power < _limit(tol, 1e-9),
        detail=f"five-of-six angle spread {worst_spread:.2e}, power products {worst_power:.2e}",
    )


def check_locus(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    sample_limit, point_limit = _limit(tol, 1e-8), _limit(tol, 1e-10)
    failures = []
    for alpha_deg, beta_deg in ((20.0, 40.0), (40.0, 120.0)):
        angles = TriangleAngles.from_degrees(alpha_deg, beta_deg)
        cubic = implicit_coeffs(angles)
        branches = locus_branches(angles, l_grid(angles, 200))
        worst = max(
            normalized_residual(cubic, s.point.x, s.point.y) for samples in branches.values() for s in samples
        )
        if worst >= sample_limit:
            failures.append(f"{alpha_deg}/{beta_deg}: sample residual {worst:.2e}")

        frame = make_frame(angles)
        named = {"A": frame.A, "B": frame.B, **special_points(angles)}
        for name in ("A", "B", "E", "N"):
            p = named[name]
            if normalized_residual(cubic, p.x, p.y) >= point_limit:
                failures.append(f"{alpha_deg}/{beta_deg}: {name} off the cubic")

        if abs(asymptote(angles).k - frame.C.y / frame.C.x) >= point_limit * max(1.0, abs(asymptote(angles).k)):
            failures.append(f"{alpha_deg}/{beta_deg}: asymptote not parallel to CM")

        node = named["D"]
        far = max(s.point.distance_to(node) for s in parametric_points(angles, 1e6))
        if far >= 1e-4:
            failures.append(f"{alpha_deg}/{beta_deg}: l=1e6 samples {far:.2e} from D")

        offsets = [abs(asymptote_offset(angles, x)) for x in (1e2, 1e3, 1e4)]
        if not offsets[2] < offsets[1] < offsets[0]:
            failures.append(f"{alpha_deg}/{beta_deg}: no approach to the asymptote {offsets}")

    for _ in range(20):
        alpha = rng.uniform(0.15, 1.45)
        angles = TriangleAngles(alpha=alpha, beta=alpha)
        cubic = implicit_coeffs(angles)
        circle = isosceles_locus(alpha)
        theta = np.linspace(0.0, 2 * math.pi, 64, endpoint=False)
        xs = circle.center.x + circle.radius * np.cos(theta)
        ys = circle.center.y + circle.radius * np.sin(theta)
        worst = max(normalized_residual(cubic, x, y) for x, y in zip(xs, ys))
        radius_ok = abs(circle.radius - 1 / (2 * math.sin(angles.gamma))) < 1e-12 * circle.radius
        if worst >= point_limit or not radius_ok:
            failures.append(f"isosceles {math.degrees(alpha):.3f}: circle residual {worst:.2e}")

    return CheckResult(
        name="equal-cevian locus",
        passed=not failures,
        detail="; ".join(failures) or "samples, special points, asymptote, node and circle all consistent",
    )


def check_locus_restrictions(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit, sample_limit = _limit(tol, 1e-10), _limit(tol, 1e-8)
    worst = {"y=0": 0.0, "x=0": 0.0, "mirror": 0.0, "quartic": 0.0}
    worst_samples, worst_ratio = 0.0, 0.0
    for _ in range(200):
        angles = random_scalene(rng)
        cubic = implicit_coeffs(angles)
        scale = cubic.scale()
        points = special_points(angles)

        # On AB the cubic vanishes at A, B and E.
        on_ab = cubic.x3 * np.poly([-0.5, 0.5, points["E"].x])
        worst["y=0"] = max(worst["y=0"], float(np.max(np.abs(np.array(cubic.on_x_axis()) - on_ab))) / scale)

        # On the perpendicular bisector: (y^2 + 1/4)(y - y_N), no other real root.
        on_axis = cubic.y3 * np.polymul([1.0, 0.0, 0.25], [1.0, -points["N"].y])
        worst["x=0"] = max(worst["x=0"], float(np.max(np.abs(np.array(cubic.on_y_axis()) - on_axis))) / scale)

        mirrored = implicit_coeffs(angles.swapped())
        ratios = []
        for x, y in rng.uniform(-3.0, 3.0, size=(10, 2)):
            size = scale * max(1.0, math.hypot(x, y)) ** 3
            worst["mirror"] = max(worst["mirror"], abs(mirrored(x, y) + cubic(-x, y)) / size)
            worst["quartic"] = max(
                worst["quartic"], abs(equal_cevian_quartic(angles, x, 0.0)) / max(1.0, abs(x)) ** 4
            )
            if abs(y) > 0.5 and abs(cubic(x, y)) > 0.05 * size:
                ratios.append(equal_cevian_quartic(angles, x, y) / (y * cubic(x, y)))
        if len(ratios) > 1:
            worst_ratio = max(worst_ratio, float(np.ptp(ratios) / np.max(np.abs(ratios))))

        l = 1.5 * max(altitude_bounds(angles))
        for sample in parametric_points(angles.swapped(), l):
            worst_samples = max(worst_samples, normalized_residual(cubic, -sample.point.x, sample.point.y))

    return CheckResult(
        name="locus restrictions and mirror",
        passed=max(worst.values()) < limit and max(worst_samples, worst_ratio) < sample_limit,
        detail=(
            ", ".join(f"{name} {value:.2e}" for name, value in worst.items())
            + f", mirrored samples {worst_samples:.2e}, quartic / yF spread {worst_ratio:.2e}"
        ),
    )


def check_tetra(rng: np.random.Generator, tol: Optional[float], starts: int = TETRA_STARTS) -> CheckResult:
    match_limit, formula_limit = _limit(tol, 1e-6), _limit(tol, 1e-8)
    failures = []
    base = tuple(math.radians(a) for a in (45.0, 60.0, 75.0))
    report = solve_equal_bisectors(base, 1.0, starts=starts, seed=int(rng.integers(0, 2 ** 31)))
    first = report.solutions[0].edges
    oracle = equifacial_from_triangle(first.bc, first.ac, first.ab)
    matches = [
        s for s in report.solutions
        if s.equifacial.equal_areas
        and s.areas.spread() <= match_limit
        and max(abs(u - v) for u, v in zip(s.edges.as_tuple(), oracle.as_tuple())) <= match_limit
    ]
    if not matches:
        failures.append(f"no equifacial solution among {len(report.solutions)}")

    worst = 0.0
    for _ in range(100):
        edges = random_tetrahedron(rng)
        formula, geometric = bisector_squares(edges).values(), oracle_bisector_squares(edges).values()
        worst = max(worst, max(abs(f - g) / g for f, g in zip(formula, geometric)))
    if worst >= formula_limit:
        failures.append(f"bisector formula deviates from the geometric construction by {worst:.2e}")

    return CheckResult(
        name="tetrahedron bisectors",
        passed=not failures,
        detail="; ".join(failures) or f"{len(matches)} equifacial solution(s); formula vs geometry {worst:.2e}",
    )


def check_tetra_symmetry(rng: np.random.Generator, tol: Optional[float]) -> CheckResult:
    limit = _limit(tol, 1e-9)
    orders = ["".join(p) for p in itertools.permutations(VERTICES)]
    worst_relabel = 0.0
    for _ in range(20):
        edges = random_tetrahedron(rng)
        base = bisector_squares(edges).values()
        for order in orders:
            relabeled = bisector_squares(edges.relabel(order)).values()
            expected = [base[VERTICES.index(v)] for v in order]
            worst_relabel = max(worst_relabel, max(abs(u - v) / v for u, v in zip(relabeled, expected)))

    worst_equifacial, built = 0.0, 0
    while built < 50:
        alpha, beta = rng.uniform(0.2, math.pi / 2 - 0.05, 2)
        gamma = math.pi - alpha - beta
        if not 0.2 <= gamma <= math.pi / 2 - 0.05:
            continue
        a, b, c = (math.sin(angle) for angle in (alpha, beta, gamma))
        worst_equifacial = max(worst_equifacial, bisector_squares(equifacial_from_triangle(a, b, c)).spread())
        built += 1

    return CheckResult(
        name="tetrahedron symmetry",
        passed=max(worst_relabel, worst_equifacial) < limit,
        detail=(
            f"24 relabelings {worst_relabel:.2e}, "
            f"equifacial bisector spread {worst_equifacial:.2e} over {built} acute triangles"
        ),
    )


SUITES: Dict[str, Callable[..., CheckResult]] = {
    "bottema": check_bottema,
    "gaps": check_gaps,
    "circle": check_circle,
    "altitude": check_altitude,
    "trisa": check_trisas,
    "conic": check_conic,
    "locus": check_locus,
    "tetra": check_tetra,
    "frames": check_frames,
    "closed_forms": check_closed_forms,
    "median_identity": check_median_identity,
    "altitude_roots": check_altitude_roots,
    "conic_subsets": check_conic_subsets,
    "locus_restrictions": check_locus_restrictions,
    "tetra_symmetry": check_tetra_symmetry,
}


def run_suite(suite: str = "all", seed: int = RANDOM_SEED, tol: Optional[float] = None) -> List[CheckResult]:
    names = list(SUITES) if suite == "all" else [suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {['all', *SUITES]}")

    results = []
    for name in names:
        rng = np.random.default_rng([seed, list(SUITES).index(name)])
        start = time.time()
        try:
            result = SUITES[name](rng, tol)
        except Exception as e:
            logger.error(f"Check {name} raised: {str(e)}", exc_info=True)
            result = CheckResult(name=name, passed=False, detail=f"raised {type(e).__name__}: {e}")
        results.append(result.model_copy(update={"elapsed": time.time() - start}))
        logger.info(f"{name}: {'PASS' if result.passed else 'FAIL'} ({result.detail})")
    return results


def format_table(results: List[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check'.ljust(width)}  status  time(s)  detail", "-" * (width + 40)]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name.ljust(width)}  {status:<6}  {r.elapsed:7.2f}  {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
