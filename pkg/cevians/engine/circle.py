import logging
import math
from typing import Tuple

from cevians.core.cevian import cevian_through
from cevians.core.errors import DegenerateT, DomainError
from cevians.core.frames import FrameKind, Point2, TriangleAngles, make_frame

logger = logging.getLogger(__name__)

EXCLUSION_TOL = 1e-9


def reflected_circumcenter(angles: TriangleAngles) -> Point2:
    """Centre of the circumcircle mirrored across AB, in the unit-circumradius frame."""
    frame = make_frame(angles, FrameKind.CIRCUM_UNIT)
    return Point2(x=(frame.A.x + frame.B.x) / 2, y=-math.cos(angles.gamma))


def circle_S_point(angles: TriangleAngles, t: float) -> Point2:
    if not 0.0 <= t < 2 * math.pi:
        raise DomainError(f"circle parameter t={t} outside [0, 2pi)")
    center = reflected_circumcenter(angles)
    return Point2(x=math.sin(t) + center.x, y=math.cos(t) - math.cos(angles.gamma))


def _check_excluded(angles: TriangleAngles, t: float, point: Point2) -> None:
    frame = make_frame(angles, FrameKind.CIRCUM_UNIT)
    node = Point2(x=frame.A.x + frame.B.x - frame.C.x, y=frame.A.y + frame.B.y - frame.C.y)
    for name, excluded in (("A", frame.A), ("B", frame.B), ("reflection of C through M", node)):
        if point.distance_to(excluded) <= EXCLUSION_TOL:
            raise DegenerateT(f"T coincides with {name} at t={t}")

    half = math.cos((t + angles.alpha - angles.beta) / 2)
    if abs(half) <= 1e-12:
        raise DegenerateT(f"vanishing denominator cos((t + alpha - beta)/2) at t={t}")


def circle_cevian_lengths_sq(angles: TriangleAngles, t: float) -> Tuple[float, float]:
    """Closed-form (AA1^2, BB1^2) for the cevians through T = circle_S_point(t)."""
    point = circle_S_point(angles, t)
    _check_excluded(angles, t, point)

    sg = math.sin(angles.gamma)
    denom = math.cos((t + angles.alpha - angles.beta) / 2) ** 2
    aa1_sq = 4 * math.sin(angles.beta) ** 2 * sg ** 2 / denom
    bb1_sq = 4 * math.sin(angles.alpha) ** 2 * sg ** 2 / denom
    return aa1_sq, bb1_sq


def circle_cevian_lengths_oracle(angles: TriangleAngles, t: float) -> Tuple[float, float]:
    point = circle_S_point(angles, t)
    _check_excluded(angles, t, point)
    frame = make_frame(angles, FrameKind.CIRCUM_UNIT)
    aa1 = cevian_through(frame, "A", point)
    bb1 = cevian_through(frame, "B", point)
    return aa1.length ** 2, bb1.length ** 2
