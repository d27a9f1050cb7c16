import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.config import LOCUS_L_MAX
from cevians.core.errors import DomainError, IsoscelesDegenerate, NoIntersection
from cevians.core.frames import FrameKind, Point2, TriangleAngles, make_frame

logger = logging.getLogger(__name__)

NEWTON_GROUP_LABEL = "second group: one asymptote, one rectilinear hyperbolic branch"


class ImplicitCubic(BaseModel):
    """Bivariate cubic sum c_ij x^i y^j of the equal-cevian locus (AB = 1, M at origin)."""

    model_config = ConfigDict(frozen=True)

    x3: float
    x2y: float
    xy2: float
    y3: float
    x2: float
    xy: float
    y2: float
    x: float
    y: float
    const: float

    def __call__(self, x, y):
        return (
            self.x3 * x ** 3 + self.x2y * x ** 2 * y + self.xy2 * x * y ** 2 + self.y3 * y ** 3
            + self.x2 * x ** 2 + self.xy * x * y + self.y2 * y ** 2
            + self.x * x + self.y * y + self.const
        )

    def scale(self) -> float:
        return max(abs(c) for c in self.model_dump().values())

    def on_x_axis(self) -> List[float]:
        """Cubic in x obtained by setting y = 0, highest power first."""
        return [self.x3, self.x2, self.x, self.const]

    def on_y_axis(self) -> List[float]:
        return [self.y3, self.y2, self.y, self.const]

    def at_abscissa(self, x: float) -> List[float]:
        """Cubic in y for a fixed x, highest power first."""
        return [
            self.y3,
            self.xy2 * x + self.y2,
            self.x2y * x ** 2 + self.xy * x + self.y,
            self.x3 * x ** 3 + self.x2 * x ** 2 + self.x * x + self.const,
        ]


class Asymptote(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float
    b: float

    def __call__(self, x):
        return self.k * x + self.b


class CurveSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    l: float
    branch: Tuple[int, int]
    point: Point2


class IsoscelesLocus(BaseModel):
    model_config = ConfigDict(frozen=True)

    center: Point2
    radius: float
    axis_x: float = 0.0


def implicit_coeffs(angles: TriangleAngles) -> ImplicitCubic:
    sa, sb = math.sin(angles.alpha), math.sin(angles.beta)
    ca, cb = math.cos(angles.alpha), math.cos(angles.beta)
    s_plus = math.sin(angles.alpha + angles.beta)
    s_minus = math.sin(angles.beta - angles.alpha)
    q = sa * sb

    # (x^2 + y^2) s+ (y s- - 2 x q) + (y^2 - x^2) q s- + x y m + x q s+/2 + y s- s+/4 + q s-/4
    return ImplicitCubic(
        x3=-2 * q * s_plus,
        x2y=s_plus * s_minus,
        xy2=-2 * q * s_plus,
        y3=s_plus * s_minus,
        x2=-q * s_minus,
        xy=sa ** 2 * cb ** 2 + sb ** 2 * ca ** 2 - 2 * q ** 2,
        y2=q * s_minus,
        x=0.5 * q * s_plus,
        y=0.25 * s_minus * s_plus,
        const=0.25 * q * s_minus,
    )


def equal_cevian_quartic(angles: TriangleAngles, x, y):
    """Cross-multiplied |AA1| = |BB1| condition before the factor y is removed."""
    sa, sb = math.sin(angles.alpha), math.sin(angles.beta)
    ca, cb = math.cos(angles.alpha), math.cos(angles.beta)
    p, q = x + 0.5, x - 0.5
    return (
        sb ** 2 * (p ** 2 + y ** 2) * (y * ca - q * sa) ** 2
        - sa ** 2 * (q ** 2 + y ** 2) * (y * cb + p * sb) ** 2
    )


def asymptote(angles: TriangleAngles) -> Asymptote:
    s_minus = math.sin(angles.beta - angles.alpha)
    if abs(angles.alpha - angles.beta) <= 1e-9:
        raise IsoscelesDegenerate("the locus of an isosceles triangle has no slanted asymptote")

    cubic = implicit_coeffs(angles)
    k = 2 * math.sin(angles.alpha) * math.sin(angles.beta) / s_minus
    # Intercept from b * d(phi3)/dy(1, k) + phi2(1, k) = 0, phi_n the degree-n parts.
    d_phi3 = cubic.x2y + 2 * cubic.xy2 * k + 3 * cubic.y3 * k ** 2
    phi2 = cubic.x2 + cubic.xy * k + cubic.y2 * k ** 2
    return Asymptote(k=k, b=-phi2 / d_phi3)


def asymptote_closed_form(angles: TriangleAngles) -> Asymptote:
    sa, sb = math.sin(angles.alpha), math.sin(angles.beta)
    s_minus = math.sin(angles.beta - angles.alpha)
    s_plus = math.sin(angles.alpha + angles.beta)
    k = 2 * sa * sb / s_minus
    b = -sa * sb * s_plus / (s_minus ** 2 + 4 * sa ** 2 * sb ** 2)
    return Asymptote(k=k, b=b)


def asymptote_offset(angles: TriangleAngles, x: float) -> float:
    """Vertical distance from the asymptote to the nearest real point of the cubic at x."""
    line = asymptote(angles)
    roots = np.roots(implicit_coeffs(angles).at_abscissa(x))
    real = roots[np.abs(roots.imag) <= 1e-9 * max(1.0, abs(x))].real
    if real.size == 0:
        raise NoIntersection(f"no real point of the cubic at x={x}")
    target = line(x)
    return float(real[np.argmin(np.abs(real - target))] - target)


def special_points(angles: TriangleAngles) -> Dict[str, Point2]:
    """E on AB, N on the perpendicular bisector of AB, and the node D."""
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    x_e = -math.sin(angles.beta - angles.alpha) / (2 * math.sin(angles.alpha + angles.beta))
    return {
        "E": Point2(x=x_e, y=0.0),
        "N": Point2(x=0.0, y=-frame.C.y),
        "D": Point2(x=-frame.C.x, y=-frame.C.y),
    }


def altitude_bounds(angles: TriangleAngles) -> Tuple[float, float]:
    """(h_a, h_b) for AB = 1."""
    return math.sin(angles.beta), math.sin(angles.alpha)


def _foot_offsets(radicand: float) -> List[Tuple[int, float]]:
    root = math.sqrt(radicand)
    if root == 0.0:
        return [(1, 0.0)]
    return [(1, root), (2, -root)]


def _intersect(p0: np.ndarray, d0: np.ndarray, p1: np.ndarray, d1: np.ndarray) -> Optional[np.ndarray]:
    denom = d0[0] * d1[1] - d0[1] * d1[0]
    if abs(denom) <= 1e-14 * np.linalg.norm(d0) * np.linalg.norm(d1):
        return None
    w = p1 - p0
    t = (w[0] * d1[1] - w[1] * d1[0]) / denom
    return p0 + t * d0


def parametric_points(angles: TriangleAngles, l: float) -> List[CurveSample]:
    h_a, h_b = altitude_bounds(angles)
    if l < max(h_a, h_b) * (1 - 1e-12):
        raise DomainError(f"cevian length {l} below the altitude bound max({h_a}, {h_b})")

    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    a, b, c = frame.as_arrays()
    u_ac = (c - a) / np.linalg.norm(c - a)
    u_bc = (c - b) / np.linalg.norm(c - b)
    ca, cb = math.cos(angles.alpha), math.cos(angles.beta)

    # B_i on (AC) at signed distance AB_i from A; A_j on (BC) at signed distance BA_j from B.
    # l within rounding of an altitude gives a double foot.
    feet_b = [(i, ca + off) for i, off in _foot_offsets(max(0.0, l * l - h_b * h_b))]
    feet_a = [(j, cb + off) for j, off in _foot_offsets(max(0.0, l * l - h_a * h_a))]

    samples = []
    for i, ab_i in feet_b:
        for j, ba_j in feet_a:
            if ab_i == 0.0 or ba_j == 0.0:
                continue
            foot_b = a + ab_i * u_ac
            foot_a = b + ba_j * u_bc
            point = _intersect(a, foot_a - a, b, foot_b - b)
            if point is None:
                logger.debug(f"branch ({i}, {j}) at l={l}: cevians are parallel")
                continue
            samples.append(CurveSample(l=l, branch=(i, j), point=Point2.of(point)))
    return samples


def parametric_closed_form(angles: TriangleAngles, l: float, branch: Tuple[int, int]) -> Point2:
    sa, sb = math.sin(angles.alpha), math.sin(angles.beta)
    ca, cb = math.cos(angles.alpha), math.cos(angles.beta)
    sign = {1: 1.0, 2: -1.0}
    ab_i = ca + sign[branch[0]] * math.sqrt(max(0.0, l * l - sa * sa))
    ba_j = cb + sign[branch[1]] * math.sqrt(max(0.0, l * l - sb * sb))

    denom = ab_i * ba_j * math.sin(angles.alpha + angles.beta) - ba_j * sb - ab_i * sa
    if abs(denom) <= 1e-14:
        raise NoIntersection(f"branch {branch} at l={l}: cevians are parallel")
    x = (-ba_j * ab_i * sb * ca + ba_j * sb) / denom + 0.5
    y = -ba_j * ab_i * sa * sb / denom
    return Point2(x=x, y=y)


def l_grid(angles: TriangleAngles, n: int, l_max: float = LOCUS_L_MAX, l_min: Optional[float] = None) -> np.ndarray:
    lower = max(altitude_bounds(angles)) * (1 + 1e-6)
    l_min = lower if l_min is None else max(l_min, lower)
    if l_max <= l_min:
        raise DomainError(f"empty cevian-length range [{l_min}, {l_max}]")
    base = np.geomspace(l_min, l_max, n)
    refine = l_min * (1 + np.logspace(-5, -2, 8))
    refine = refine[refine < l_max]
    return np.unique(np.concatenate([base, refine]))


def locus_branches(angles: TriangleAngles, l_values: Sequence[float]) -> Dict[Tuple[int, int], List[CurveSample]]:
    branches: Dict[Tuple[int, int], List[CurveSample]] = {}
    for l in l_values:
        for sample in parametric_points(angles, float(l)):
            branches.setdefault(sample.branch, []).append(sample)
    logger.info(f"Sampled {sum(len(v) for v in branches.values())} locus points on {len(branches)} branches")
    return branches


def isosceles_locus(alpha: float) -> IsoscelesLocus:
    if not 0 < alpha < math.pi / 2:
        raise DomainError(f"isosceles base angle must lie in (0, pi/2), got {alpha}")
    gamma = math.pi - 2 * alpha
    return IsoscelesLocus(
        center=Point2(x=0.0, y=-math.cos(gamma) / (2 * math.sin(gamma))),
        radius=1 / (2 * math.sin(gamma)),
    )


def newton_group_label(angles: TriangleAngles) -> str:
    if abs(angles.alpha - angles.beta) <= 1e-9:
        return "degenerate: axis of symmetry and a circle"
    return NEWTON_GROUP_LABEL


if __name__ == "__main__":
    angles = TriangleAngles.from_degrees(20, 40)
    cubic = implicit_coeffs(angles)
    for sample in parametric_points(angles, 1.2):
        print(f"branch {sample.branch}: ({sample.point.x:.6f}, {sample.point.y:.6f}) F={cubic(sample.point.x, sample.point.y):.2e}")
    print(f"Asymptote: {asymptote(angles)}")
