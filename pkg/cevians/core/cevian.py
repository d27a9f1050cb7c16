import logging
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.core.errors import DomainError, ParallelCevian
from cevians.core.frames import OPPOSITE_SIDE, Point2, TriangleFrame, VertexLabel

logger = logging.getLogger(__name__)

PARALLEL_EPS = 1e-12
VERTEX_FOOT_EPS = 1e-12


class Cevian(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex: VertexLabel
    foot: Point2
    foot_param: float
    length: float

    @property
    def on_vertex(self) -> bool:
        return min(abs(self.foot_param), abs(self.foot_param - 1.0)) <= VERTEX_FOOT_EPS


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def intersect_with_side(
    frame: TriangleFrame, vertex: str, directions: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Intersect lines through `vertex` with the opposite side's line.

    `directions` has shape (..., 2). Returns (foot_params, feet); entries whose line is
    parallel to the side are NaN.
    """
    v = frame.vertex(vertex).as_array()
    p, q = (pt.as_array() for pt in frame.opposite_side(vertex))
    e = q - p
    d = np.asarray(directions, dtype=float)

    denom = _cross(e, d)
    scale = np.linalg.norm(e) * np.linalg.norm(d, axis=-1)
    parallel = np.abs(denom) <= PARALLEL_EPS * np.maximum(scale, 1e-300)

    with np.errstate(divide="ignore", invalid="ignore"):
        t = _cross(v - p, d) / denom
    t = np.where(parallel, np.nan, t)
    feet = p + t[..., None] * e
    return t, feet


def cevian_lengths_through(frame: TriangleFrame, vertex: str, points: np.ndarray) -> np.ndarray:
    v = frame.vertex(vertex).as_array()
    directions = np.asarray(points, dtype=float) - v
    _, feet = intersect_with_side(frame, vertex, directions)
    return np.linalg.norm(feet - v, axis=-1)


def cevian_through(frame: TriangleFrame, vertex: str, p: Point2) -> Cevian:
    if vertex not in OPPOSITE_SIDE:
        raise DomainError(f"unknown vertex label {vertex!r}")
    v = frame.vertex(vertex)
    direction = p.as_array() - v.as_array()
    if np.linalg.norm(direction) <= PARALLEL_EPS:
        raise DomainError(f"point coincides with vertex {vertex}")

    t, foot = intersect_with_side(frame, vertex, direction)
    t = float(t)
    if math.isnan(t):
        raise ParallelCevian(f"line from {vertex} through ({p.x}, {p.y}) is parallel to the opposite side")

    foot_pt = Point2.of(foot)
    return Cevian(vertex=vertex, foot=foot_pt, foot_param=t, length=v.distance_to(foot_pt))


def cevian_to_foot(frame: TriangleFrame, vertex: str, foot_param: float) -> Cevian:
    p, q = (pt.as_array() for pt in frame.opposite_side(vertex))
    foot = Point2.of(p + foot_param * (q - p))
    return Cevian(
        vertex=vertex,
        foot=foot,
        foot_param=foot_param,
        length=frame.vertex(vertex).distance_to(foot),
    )


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _side_units(frame: TriangleFrame, vertex: str) -> Tuple[np.ndarray, np.ndarray]:
    v = frame.vertex(vertex).as_array()
    p, q = (pt.as_array() for pt in frame.opposite_side(vertex))
    return _unit(p - v), _unit(q - v)


def internal_bisector_cevian(frame: TriangleFrame, vertex: str) -> Cevian:
    u, w = _side_units(frame, vertex)
    target = Point2.of(frame.vertex(vertex).as_array() + u + w)
    return cevian_through(frame, vertex, target)


def external_bisector_cevian(frame: TriangleFrame, vertex: str) -> Cevian:
    u, w = _side_units(frame, vertex)
    direction = u - w
    target = Point2.of(frame.vertex(vertex).as_array() + direction)
    try:
        return cevian_through(frame, vertex, target)
    except ParallelCevian:
        logger.debug(f"External bisector at {vertex} is parallel to the opposite side (isosceles at {vertex})")
        raise


def external_angle_residual(frame: TriangleFrame, cevian: Cevian) -> float:
    """|angle(ray, side 1) - angle(ray, extension of side 2)| for an external bisector."""
    u, w = _side_units(frame, cevian.vertex)
    ray = _unit(cevian.foot.as_array() - frame.vertex(cevian.vertex).as_array())
    if np.dot(ray, u - w) < 0:
        ray = -ray
    first = math.acos(float(np.clip(np.dot(ray, u), -1.0, 1.0)))
    second = math.acos(float(np.clip(np.dot(ray, -w), -1.0, 1.0)))
    return abs(first - second)


def collinearity_residual(frame: TriangleFrame, cevian: Cevian) -> float:
    p, q = (pt.as_array() for pt in frame.opposite_side(cevian.vertex))
    e = q - p
    return abs(float(_cross(e, cevian.foot.as_array() - p))) / float(np.linalg.norm(e))
