import itertools
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from cevians.core.errors import DegenerateConfiguration, DomainError, VertexFoot, ZeroDenominator
from cevians.core.frames import OPPOSITE_SIDE, FrameKind, Point2, TriangleAngles, TriangleFrame, make_frame
from cevians.locus.emitter import clipped_viewport, new_figure, render_svg

logger = logging.getLogger(__name__)

FOOT_LABELS = ("A1", "A2", "B1", "B2", "C1", "C2")
DOUBLE_CONTACT_EPS = 1e-8
VERTEX_FOOT_EPS = 1e-12
RANK_TOL = 1e-10
ROUNDING_FLOOR = 1e-14


class SixFeet(BaseModel):
    """Feet of six cevians of common length l, two from each vertex.

    A1, A2 lie on line BC, B1, B2 on CA and C1, C2 on AB; each pair is symmetric
    about the foot of the altitude from its vertex.
    """

    model_config = ConfigDict(frozen=True)

    l: float
    frame: TriangleFrame
    feet: Dict[str, Point2]
    double_contact: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def _all_labels(self) -> "SixFeet":
        missing = set(FOOT_LABELS) - set(self.feet)
        if missing:
            raise DomainError(f"missing feet {sorted(missing)}")
        return self

    def points(self) -> np.ndarray:
        return np.array([self.feet[name].as_array() for name in FOOT_LABELS])

    def pair(self, vertex: str) -> Tuple[Point2, Point2]:
        return self.feet[f"{vertex}1"], self.feet[f"{vertex}2"]


class Conic(BaseModel):
    """a x^2 + b xy + c y^2 + d x + e y + f = 0, scaled to unit max-magnitude coefficient."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    @model_validator(mode="after")
    def _not_zero(self) -> "Conic":
        if not np.any(self.as_array()):
            raise DomainError("all conic coefficients are zero")
        return self

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "Conic":
        v = np.asarray(v, dtype=float)
        pivot = int(np.argmax(np.abs(v)))
        v = v / v[pivot]
        return cls(**dict(zip("abcdef", (float(x) for x in v))))

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.e, self.f])

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4 * self.a * self.c

    def center(self) -> Optional[Point2]:
        m = np.array([[2 * self.a, self.b], [self.b, 2 * self.c]])
        if abs(np.linalg.det(m)) <= 1e-14:
            return None
        return Point2.of(np.linalg.solve(m, [-self.d, -self.e]))

    def is_circle(self, tol: float = 1e-9) -> bool:
        return abs(self.b) <= tol and abs(self.a - self.c) <= tol and abs(self.a) > tol

    def angle_to(self, other: "Conic") -> float:
        u = self.as_array() / np.linalg.norm(self.as_array())
        v = other.as_array() / np.linalg.norm(other.as_array())
        if u @ v < 0:
            v = -v
        return 2.0 * math.asin(min(1.0, float(np.linalg.norm(u - v)) / 2.0))


def _altitudes(frame: TriangleFrame) -> Dict[str, float]:
    return {v: frame.vertex(v).distance_to(frame.altitude_foot(v)) for v in OPPOSITE_SIDE}


def six_feet(angles: TriangleAngles, l: float) -> SixFeet:
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    heights = _altitudes(frame)
    bound = max(heights.values())
    if l < bound * (1 - 1e-12):
        raise DomainError(f"cevian length {l} below the largest altitude {bound}")

    feet: Dict[str, Point2] = {}
    double_contact = []
    for vertex, h in heights.items():
        p, q = (pt.as_array() for pt in frame.opposite_side(vertex))
        e = (q - p) / np.linalg.norm(q - p)
        foot = frame.altitude_foot(vertex).as_array()
        radicand = l * l - h * h
        # Differences at the rounding floor of l^2 count as tangency.
        offset = math.sqrt(radicand) if radicand > ROUNDING_FLOOR * l * l else 0.0
        if offset < DOUBLE_CONTACT_EPS:
            double_contact.append(vertex)

        for index, sign in ((1, 1.0), (2, -1.0)):
            point = foot + sign * offset * e
            for end_label, end in zip(OPPOSITE_SIDE[vertex], (p, q)):
                if np.linalg.norm(point - end) <= VERTEX_FOOT_EPS * max(1.0, l):
                    raise VertexFoot(f"foot {vertex}{index} coincides with vertex {end_label} at l={l}")
            feet[f"{vertex}{index}"] = Point2.of(point)

    if double_contact:
        logger.debug(f"Double contact on the sides opposite {double_contact} at l={l}")
    return SixFeet(l=l, frame=frame, feet=feet, double_contact=tuple(double_contact))


def _directed_product(point: Point2, first: Point2, second: Point2) -> float:
    """Signed product P F1 . P F2 for three collinear points."""
    return float((first.as_array() - point.as_array()) @ (second.as_array() - point.as_array()))


def power_products(feet: SixFeet) -> Dict[str, Tuple[float, float]]:
    """Each endpoint's power with respect to the circle of radius l about the opposite
    vertex, as (product of directed foot distances, squared distance minus l^2)."""
    frame = feet.frame
    report = {}
    for vertex in OPPOSITE_SIDE:
        center = frame.vertex(vertex)
        f1, f2 = feet.pair(vertex)
        for end_label in OPPOSITE_SIDE[vertex]:
            end = frame.vertex(end_label)
            lhs = _directed_product(end, f1, f2)
            rhs = end.distance_to(center) ** 2 - feet.l ** 2
            report[f"{end_label}{vertex}1*{end_label}{vertex}2"] = (lhs, rhs)
    return report


def carnot_product(feet: SixFeet) -> float:
    """(BA1/CA1 BA2/CA2)(CB1/AB1 CB2/AB2)(AC1/BC1 AC2/BC2) with directed segments."""
    frame = feet.frame
    product = 1.0
    for vertex, (num_end, den_end) in (("A", ("B", "C")), ("B", ("C", "A")), ("C", ("A", "B"))):
        f1, f2 = feet.pair(vertex)
        numerator = _directed_product(frame.vertex(num_end), f1, f2)
        denominator = _directed_product(frame.vertex(den_end), f1, f2)
        if abs(denominator) <= VERTEX_FOOT_EPS:
            raise ZeroDenominator(f"a foot of {vertex} coincides with vertex {den_end}")
        product *= numerator / denominator
    return product


def _design_matrix(points: np.ndarray) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    return np.column_stack((x ** 2, x * y, y ** 2, x, y, np.ones(len(x))))


def conic_through(points: np.ndarray) -> Conic:
    """The conic through five points, from the smallest right-singular vector."""
    design = _design_matrix(np.asarray(points, dtype=float))
    _, singular, vt = np.linalg.svd(design)
    if singular[-1] <= RANK_TOL * singular[0]:
        raise DegenerateConfiguration(
            f"five points do not fix a unique conic (singular values {singular})"
        )
    return Conic.from_vector(vt[-1])


def point_residual(conic: Conic, point: Point2) -> float:
    scale = float(np.linalg.norm(conic.as_array())) * max(1.0, math.hypot(point.x, point.y)) ** 2
    return abs(float(conic(point.x, point.y))) / scale


def _distinct(points: np.ndarray, tol: float = DOUBLE_CONTACT_EPS) -> np.ndarray:
    kept: List[np.ndarray] = []
    for p in points:
        if all(np.linalg.norm(p - k) > tol for k in kept):
            kept.append(p)
    return np.array(kept)


def _is_equilateral(angles: TriangleAngles) -> bool:
    return abs(angles.alpha - math.pi / 3) <= 1e-9 and abs(angles.beta - math.pi / 3) <= 1e-9


def _midpoint_circle(feet: SixFeet) -> Conic:
    a, b, c = feet.frame.as_arrays()
    g = (a + b + c) / 3
    r2 = float(np.sum(((a + b) / 2 - g) ** 2))
    return Conic.from_vector([1.0, 0.0, 1.0, -2 * g[0], -2 * g[1], g @ g - r2])


def fit_conic(feet: SixFeet) -> Tuple[Conic, float]:
    points = feet.points()
    distinct = _distinct(points)

    if len(distinct) >= 6:
        conic = conic_through(points[:5])
        residual = point_residual(conic, Point2.of(points[5]))
    elif len(distinct) == 5:
        conic = conic_through(distinct)
        residual = 0.0
        logger.debug("Five distinct feet; the conic interpolates all of them")
    elif _is_equilateral(feet.frame.angles) and len(feet.double_contact) == 3:
        conic = _midpoint_circle(feet)
        residual = max(point_residual(conic, Point2.of(p)) for p in distinct)
        logger.debug("Equilateral double contact; using the circle through the midpoints")
    else:
        raise DegenerateConfiguration(f"only {len(distinct)} distinct feet at l={feet.l}")

    logger.debug(f"Fitted conic {conic.as_array()} with residual {residual:.3e}")
    return conic, residual


def subset_spread(feet: SixFeet) -> float:
    points = feet.points()
    conics = [conic_through(points[list(subset)]) for subset in itertools.combinations(range(6), 5)]
    return max(u.angle_to(v) for u, v in itertools.combinations(conics, 2))


def conic_kind(conic: Conic, tol: float = 1e-12) -> str:
    disc = conic.discriminant
    if disc < -tol:
        return "ellipse"
    if disc > tol:
        return "hyperbola"
    return "parabola"


def conic_svg(feet: SixFeet, conic: Conic) -> str:
    a, b, c = feet.frame.as_arrays()
    triangle = np.array([a, b, c, a])
    points = feet.points()

    fig, ax = new_figure()
    ax.plot(triangle[:, 0], triangle[:, 1], color="black", linewidth=1.2)
    ax.plot(points[:, 0], points[:, 1], "o", color="tab:red", markersize=4)
    for name in FOOT_LABELS:
        p = feet.feet[name]
        ax.annotate(name, (p.x, p.y), textcoords="offset points", xytext=(4, 4))

    x_lo, x_hi, y_lo, y_hi = clipped_viewport(np.vstack([triangle, points]), pad=0.3)
    xs, ys = np.meshgrid(np.linspace(x_lo, x_hi, 400), np.linspace(y_lo, y_hi, 400))
    ax.contour(xs, ys, conic(xs, ys), levels=[0.0], colors="tab:blue", linewidths=1.0)

    ax.set_xlim(x_lo, x_hi)
    ax.set_ylim(y_lo, y_hi)
    ax.set_title(f"l={feet.l:.6g}, {conic_kind(conic)}")
    return render_svg(fig)


if __name__ == "__main__":
    feet = six_feet(TriangleAngles.from_degrees(45, 60), 1.1)
    conic, residual = fit_conic(feet)
    print(f"Carnot product: {carnot_product(feet):.15f}")
    print(f"Conic {conic.as_array()} ({conic_kind(conic)}), residual {residual:.3e}")
