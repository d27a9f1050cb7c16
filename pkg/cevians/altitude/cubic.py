import logging
import math
from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.config import ISOSCELES_TOL
from cevians.core.cevian import cevian_through
from cevians.core.errors import DomainError, GeometryError, IsoscelesDegenerate
from cevians.core.frames import FrameKind, Point2, TriangleAngles, make_frame

logger = logging.getLogger(__name__)

ROOT_RESIDUAL_TOL = 1e-10
GAP_TOL = 1e-8
PATH_AGREEMENT_TOL = 1e-10


class AltitudeCubic(BaseModel):
    """y^3 + (v - 1) y + 2u with u = ctg(a) ctg(b), v = ctg^2(a) + ctg^2(b).

    y is the signed height of O on the altitude line, measured from the foot H
    towards C, in the frame where CH = 1.
    """

    model_config = ConfigDict(frozen=True)

    u: float
    v: float

    @property
    def p(self) -> float:
        return self.v - 1.0

    @property
    def q(self) -> float:
        return 2.0 * self.u

    @property
    def coefficients(self) -> List[float]:
        return [1.0, 0.0, self.p, self.q]

    def __call__(self, y):
        return y ** 3 + self.p * y + self.q

    def derivative(self, y):
        return 3 * y ** 2 + self.p


class RootKind(str, Enum):
    ONE_REAL = "OneReal"
    TRIPLE_WITH_DOUBLE = "TripleWithDouble"
    THREE_DISTINCT = "ThreeDistinct"


class RootClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    discriminant: float
    kind: RootKind
    roots: List[float]


class RootCheck(BaseModel):
    """Cevian lengths through O = (0, y) by the sine rule and by line intersection."""

    model_config = ConfigDict(frozen=True)

    y: float
    point: Point2
    aa1: float
    bb1: float
    aa1_oracle: float
    bb1_oracle: float

    @property
    def gap(self) -> float:
        return abs(self.aa1 - self.bb1)

    @property
    def path_disagreement(self) -> float:
        scale = max(1.0, self.aa1, self.bb1)
        return max(abs(self.aa1 - self.aa1_oracle), abs(self.bb1 - self.bb1_oracle)) / scale


def _cot(angle: float) -> float:
    return math.cos(angle) / math.sin(angle)


def build_cubic(angles: TriangleAngles) -> AltitudeCubic:
    if abs(angles.alpha - angles.beta) <= ISOSCELES_TOL:
        raise IsoscelesDegenerate("the altitude cubic is undefined for alpha = beta")
    ca, cb = _cot(angles.alpha), _cot(angles.beta)
    return AltitudeCubic(u=ca * cb, v=ca * ca + cb * cb)


def discriminant(cubic: AltitudeCubic) -> float:
    return -4.0 * (27.0 * cubic.u ** 2 + cubic.p ** 3)


def _discriminant_band(cubic: AltitudeCubic) -> float:
    return 1e-12 * max(1.0, abs(cubic.p) ** 3, cubic.u ** 2)


def _polish(cubic: AltitudeCubic, y: float) -> float:
    slope = cubic.derivative(y)
    if abs(slope) <= 1e-14:
        return y
    return y - cubic(y) / slope


def classify(cubic: AltitudeCubic) -> RootClassification:
    d = discriminant(cubic)
    p, q = cubic.p, cubic.q

    if abs(d) <= _discriminant_band(cubic):
        kind = RootKind.TRIPLE_WITH_DOUBLE
        if abs(p) <= 1e-15:
            roots = [0.0]
        else:
            roots = [3.0 * q / p, -1.5 * q / p]
    elif d > 0:
        kind = RootKind.THREE_DISTINCT
        radius = 2.0 * math.sqrt(-p / 3.0)
        arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
        phi = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [radius * math.cos(phi - 2.0 * math.pi * j / 3.0) for j in range(3)]
    else:
        kind = RootKind.ONE_REAL
        inner = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
        big = -math.copysign(1.0, q) * float(np.cbrt(abs(q) / 2.0 + inner))
        roots = [big - p / (3.0 * big)] if big != 0.0 else [0.0]

    roots = sorted(_polish(cubic, y) for y in roots)
    return RootClassification(discriminant=d, kind=kind, roots=roots)


def criterion_one_real(cubic: AltitudeCubic) -> bool:
    """The acute-case shorthand v > 1 - 3 u^(2/3); meaningful for u >= 0."""
    return cubic.v > 1.0 - 3.0 * abs(cubic.u) ** (2.0 / 3.0)


def sign_scan_root_count(cubic: AltitudeCubic, samples: int = 20001) -> int:
    bound = 1.0 + max(abs(cubic.p), abs(cubic.q))
    ys = np.linspace(-bound, bound, samples)
    signs = np.sign(cubic(ys))
    nonzero = signs[signs != 0]
    return int(np.count_nonzero(nonzero[1:] != nonzero[:-1]))


def _sine_rule_length(ab: float, opposite: float, own: float, y: float) -> float:
    # Angle at the base vertex between AB and the line to O is atan2(y sin(own), cos(own)).
    return ab * math.sin(opposite) / abs(math.sin(opposite + math.atan2(y * math.sin(own), math.cos(own))))


def root_check(angles: TriangleAngles, y: float) -> RootCheck:
    if y == 0:
        raise DomainError("y = 0 puts O at the foot H; cevians through H are excluded")
    frame = make_frame(angles, FrameKind.ALTITUDE_UNIT)
    o = Point2(x=0.0, y=y)
    ab = frame.A.distance_to(frame.B)

    aa1 = _sine_rule_length(ab, angles.beta, angles.alpha, y)
    bb1 = _sine_rule_length(ab, angles.alpha, angles.beta, y)
    aa1_oracle = cevian_through(frame, "A", o).length
    bb1_oracle = cevian_through(frame, "B", o).length
    return RootCheck(y=y, point=o, aa1=aa1, bb1=bb1, aa1_oracle=aa1_oracle, bb1_oracle=bb1_oracle)


def verify_root_geometric(angles: TriangleAngles, y: float) -> float:
    check = root_check(angles, y)
    if check.path_disagreement > PATH_AGREEMENT_TOL:
        logger.warning(
            f"Sine-rule and intersection lengths disagree by {check.path_disagreement:.3e} at y={y}"
        )
    return check.gap


def equal_cevian_heights(cubic: AltitudeCubic, classification: RootClassification = None) -> List[float]:
    """Roots of the cubic with y = 0 removed (O != H)."""
    classification = classification or classify(cubic)
    return [y for y in classification.roots if abs(y) > 1e-12]


def acute_existence(angles: TriangleAngles) -> List[float]:
    if not (angles.alpha < math.pi / 2 and angles.beta < math.pi / 2):
        raise DomainError("both base angles must be acute")
    heights = equal_cevian_heights(build_cubic(angles))
    for y in heights:
        gap = verify_root_geometric(angles, y)
        if gap > GAP_TOL:
            raise GeometryError(f"root y={y} fails the geometric gap check ({gap:.3e})")
    return heights


def obtuse_existence(angles: TriangleAngles) -> float:
    obtuse = [angle > math.pi / 2 for angle in (angles.alpha, angles.beta)]
    if sum(obtuse) != 1:
        raise DomainError("exactly one of the base angles must be obtuse")

    cubic = build_cubic(angles)
    positive = [y for y in classify(cubic).roots if y > 1e-12]
    if len(positive) != 1:
        raise GeometryError(f"expected one positive root, found {positive}")

    y = positive[0]
    gap = verify_root_geometric(angles, y)
    if gap > GAP_TOL:
        raise GeometryError(f"positive root y={y} fails the geometric gap check ({gap:.3e})")
    logger.info(f"Obtuse triangle {angles.degrees()}: equal cevians through O at y={y:.12f}")
    return y


if __name__ == "__main__":
    for alpha_deg, beta_deg in ((90, 60), (85, 60), (30, 60), (120, 30)):
        angles = TriangleAngles.from_degrees(alpha_deg, beta_deg)
        result = classify(build_cubic(angles))
        print(f"{alpha_deg}/{beta_deg}: D={result.discriminant:.6f} {result.kind.value} roots={result.roots}")
