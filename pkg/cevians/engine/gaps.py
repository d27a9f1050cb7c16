import logging
import math
from typing import Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.config import LOCUS_ENDPOINT_MARGIN
from cevians.core.cevian import (
    cevian_lengths_through,
    cevian_to_foot,
    cevian_through,
    intersect_with_side,
    internal_bisector_cevian,
)
from cevians.core.errors import DegenerateRatio, DomainError, ParallelCevian
from cevians.core.frames import FrameKind, Point2, TriangleAngles, TriangleFrame, make_frame

logger = logging.getLogger(__name__)

LocusKind = Literal["bisector", "median"]


class GapSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    locus_param: float
    gap: float
    both_exist: bool


def _locus_end(frame: TriangleFrame, locus: str) -> np.ndarray:
    if locus == "bisector":
        return internal_bisector_cevian(frame, "C").foot.as_array()
    if locus == "median":
        return frame.midpoint_ab().as_array()
    raise DomainError(f"unknown locus {locus!r}")


def locus_point(frame: TriangleFrame, locus: str, s: float) -> Point2:
    """O = C + s (E - C), E the locus end on AB; s = 0 at C, s = 1 on AB."""
    c = frame.C.as_array()
    return Point2.of(c + s * (_locus_end(frame, locus) - c))


def _gap_at(angles: TriangleAngles, locus: str, s: float) -> GapSample:
    if not s > 0:
        raise DomainError(f"locus parameter must be positive (O != C), got {s}")

    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    if math.isinf(s):
        return GapSample(locus_param=s, gap=math.nan, both_exist=False)

    if abs(s - 1.0) <= 1e-12:
        # O sits on AB: the cevians collapse onto AB and meet it at the locus end.
        end = Point2.of(_locus_end(frame, locus))
        gap = frame.A.distance_to(end) - frame.B.distance_to(end)
        return GapSample(locus_param=s, gap=gap, both_exist=False)

    o = locus_point(frame, locus, s)
    try:
        aa1 = cevian_through(frame, "A", o)
        bb1 = cevian_through(frame, "B", o)
    except ParallelCevian:
        logger.debug(f"{locus} locus at s={s}: a cevian through O is parallel to its side")
        return GapSample(locus_param=s, gap=math.nan, both_exist=False)
    return GapSample(locus_param=s, gap=aa1.length - bb1.length, both_exist=True)


def bisector_gap(angles: TriangleAngles, s: float) -> GapSample:
    return _gap_at(angles, "bisector", s)


def median_gap(angles: TriangleAngles, s: float) -> GapSample:
    return _gap_at(angles, "median", s)


def median_param_from_barycentric(x: float) -> float:
    """Locus parameter of O = (1 : 1 : x) on the median CM; infinite for x = -2."""
    if x == -2:
        return math.inf
    return 2.0 / (x + 2.0)


def gap_profile(
    angles: TriangleAngles, locus: LocusKind, s_values: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    s = np.asarray(s_values, dtype=float)
    c = frame.C.as_array()
    points = c + s[:, None] * (_locus_end(frame, locus) - c)

    la = cevian_lengths_through(frame, "A", points)
    lb = cevian_lengths_through(frame, "B", points)
    gaps = la - lb
    return gaps, np.isfinite(gaps)


def interior_samples(n: int, margin: float = LOCUS_ENDPOINT_MARGIN) -> np.ndarray:
    return np.linspace(margin, 1.0 - margin, n)


def has_sign_change(gaps: np.ndarray, both_exist: np.ndarray) -> bool:
    valid = gaps[both_exist]
    valid = valid[valid != 0.0]
    if valid.size == 0:
        return False
    return bool(np.any(np.sign(valid) != np.sign(valid[0])))


def median_gap_at_infinity(angles: TriangleAngles) -> float:
    """Gap of the cevians from A and B parallel to the median CM (O at infinity).

    The feet are 2C - B and 2C - A, so the gap is zero up to rounding for any triangle.
    """
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    direction = frame.midpoint_ab().as_array() - frame.C.as_array()
    lengths = []
    for vertex in ("A", "B"):
        t, foot = intersect_with_side(frame, vertex, direction)
        if math.isnan(float(t)):
            raise ParallelCevian(f"cevian from {vertex} parallel to CM never meets its side")
        lengths.append(float(np.linalg.norm(foot - frame.vertex(vertex).as_array())))
    return lengths[0] - lengths[1]


def median_identity_sides(angles: TriangleAngles, x: float) -> Tuple[float, float]:
    """Both sides of x(AC^2 - BC^2) + 2(AC.AB + BC.AB) = 2 MC.AB (x + 2)."""
    if x in (-1.0, 0.0):
        raise DomainError(f"barycentric weight x={x} is excluded (parallelogram or O = M)")
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    a, b, c = frame.as_arrays()
    m = frame.midpoint_ab().as_array()
    ac, bc, ab, mc = c - a, c - b, b - a, c - m

    lhs = x * (ac @ ac - bc @ bc) + 2 * (ac @ ab + bc @ ab)
    rhs = 2 * (mc @ ab) * (x + 2)
    return float(lhs), float(rhs)


def median_identity_residual(angles: TriangleAngles, x: float) -> float:
    lhs, rhs = median_identity_sides(angles, x)
    return abs(lhs - rhs)


def ratio_cevian_gap(angles: TriangleAngles, p: float, q: float) -> float:
    """Gap |AA1| - |BB1| for BA1:A1C = AB1:B1C = p:q."""
    if 2 * q + p == 0:
        raise DegenerateRatio(f"2q + p must be nonzero (p={p}, q={q})")
    if p + q == 0:
        raise DegenerateRatio(f"p + q must be nonzero (p={p}, q={q})")

    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    ratio = p / (p + q)
    aa1 = cevian_to_foot(frame, "A", ratio)
    bb1 = cevian_to_foot(frame, "B", ratio)
    if aa1.on_vertex:
        logger.debug(f"ratio {p}:{q} puts the feet on vertices; the cevians are sides")
    return aa1.length - bb1.length


if __name__ == "__main__":
    angles = TriangleAngles.from_degrees(50, 70)
    gaps, ok = gap_profile(angles, "bisector", interior_samples(20))
    print(f"Bisector gaps for 50/70: {np.round(gaps, 6)}")
    print(f"Sign change: {has_sign_change(gaps, ok)}")
