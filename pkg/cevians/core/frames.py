import logging
import math
from enum import Enum
from typing import Dict, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from cevians.config import MIN_ANGLE
from cevians.core.errors import DomainError

logger = logging.getLogger(__name__)

VertexLabel = Literal["A", "B", "C"]


class TriangleAngles(BaseModel):
    """Base angles at A and B in radians; the angle at C is derived."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float

    @model_validator(mode="after")
    def _check_triangle(self) -> "TriangleAngles":
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError("angles must be finite")
        if min(self.alpha, self.beta, self.gamma) < MIN_ANGLE:
            raise DomainError(
                f"degenerate triangle: alpha={self.alpha}, beta={self.beta}, gamma={self.gamma}"
            )
        return self

    @property
    def gamma(self) -> float:
        return math.pi - self.alpha - self.beta

    @classmethod
    def from_degrees(cls, alpha_deg: float, beta_deg: float) -> "TriangleAngles":
        return cls(alpha=math.radians(alpha_deg), beta=math.radians(beta_deg))

    def degrees(self) -> Tuple[float, float, float]:
        return math.degrees(self.alpha), math.degrees(self.beta), math.degrees(self.gamma)

    def swapped(self) -> "TriangleAngles":
        return TriangleAngles(alpha=self.beta, beta=self.alpha)

    def is_isosceles(self, tol: float = 1e-9) -> bool:
        return abs(self.alpha - self.beta) <= tol


class Point2(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float

    @field_validator("x", "y")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise DomainError(f"non-finite coordinate {value}")
        return value

    @classmethod
    def of(cls, xy) -> "Point2":
        return cls(x=float(xy[0]), y=float(xy[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class FrameKind(str, Enum):
    MEDIAN_CENTERED = "MedianCentered"
    CIRCUM_UNIT = "CircumUnit"
    ALTITUDE_UNIT = "AltitudeUnit"


# Side opposite each vertex, ordered so that foot_param = 0 at the first endpoint.
OPPOSITE_SIDE: Dict[str, Tuple[str, str]] = {"A": ("B", "C"), "B": ("A", "C"), "C": ("A", "B")}


class TriangleFrame(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: FrameKind
    angles: TriangleAngles
    A: Point2
    B: Point2
    C: Point2

    def vertex(self, label: str) -> Point2:
        if label not in OPPOSITE_SIDE:
            raise DomainError(f"unknown vertex label {label!r}")
        return getattr(self, label)

    def opposite_side(self, label: str) -> Tuple[Point2, Point2]:
        first, second = OPPOSITE_SIDE[label]
        return self.vertex(first), self.vertex(second)

    def side_lengths(self) -> Tuple[float, float, float]:
        """Lengths (|BC|, |CA|, |AB|)."""
        return (
            self.B.distance_to(self.C),
            self.C.distance_to(self.A),
            self.A.distance_to(self.B),
        )

    def midpoint_ab(self) -> Point2:
        return Point2(x=(self.A.x + self.B.x) / 2, y=(self.A.y + self.B.y) / 2)

    def altitude_foot(self, label: str) -> Point2:
        """Orthogonal projection of a vertex on the line of its opposite side."""
        v = self.vertex(label).as_array()
        p, q = (pt.as_array() for pt in self.opposite_side(label))
        e = q - p
        t = float(np.dot(v - p, e) / np.dot(e, e))
        return Point2.of(p + t * e)

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.A.as_array(), self.B.as_array(), self.C.as_array()


def make_frame(angles: TriangleAngles, kind: FrameKind = FrameKind.MEDIAN_CENTERED) -> TriangleFrame:
    kind = FrameKind(kind)
    a, b = angles.alpha, angles.beta
    sa, sb, ca, cb = math.sin(a), math.sin(b), math.cos(a), math.cos(b)
    s_sum = math.sin(a + b)

    if kind is FrameKind.MEDIAN_CENTERED:
        A, B = (-0.5, 0.0), (0.5, 0.0)
        C = (math.sin(b - a) / (2 * s_sum), sa * sb / s_sum)
    elif kind is FrameKind.CIRCUM_UNIT:
        A, B = (-2 * sb * ca, 0.0), (2 * sa * cb, 0.0)
        C = (0.0, 2 * sa * sb)
    else:
        A, B = (-ca / sa, 0.0), (cb / sb, 0.0)
        C = (0.0, 1.0)

    return TriangleFrame(kind=kind, angles=angles, A=Point2.of(A), B=Point2.of(B), C=Point2.of(C))
