import logging
import math
from typing import Iterable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import bisect

from cevians.core.cevian import cevian_through
from cevians.core.errors import DomainError, NoConvergence, ParallelTrisa
from cevians.core.frames import FrameKind, Point2, TriangleAngles, make_frame

logger = logging.getLogger(__name__)

ROOT_XTOL = 1e-12


class TrisaParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float

    @model_validator(mode="after")
    def _nonzero(self) -> "TrisaParams":
        if self.k == 0:
            raise DomainError("trisa ratio k must be nonzero")
        return self

    @property
    def gamma_param(self) -> float:
        return 2.0 / self.k


def _angles_at(angles: TriangleAngles, vertex: str) -> Tuple[float, float]:
    if vertex == "A":
        return angles.alpha, angles.beta
    if vertex == "B":
        return angles.beta, angles.alpha
    raise DomainError(f"trisas are defined for vertices A and B, got {vertex!r}")


def signed_trisa_length(angles: TriangleAngles, k: float, vertex: str) -> float:
    own, other = _angles_at(angles, vertex)
    denom = math.sin(k * own + other)
    if abs(denom) <= 1e-12:
        raise ParallelTrisa(f"{k}-trisa from {vertex} is parallel to the opposite side")
    return math.sin(other) / denom


def trisa_cevian_length(angles: TriangleAngles, k: float, vertex: str) -> float:
    """Length of the k-trisa from A or B to the opposite side's line, with AB = 1."""
    TrisaParams(k=k)
    return abs(signed_trisa_length(angles, k, vertex))


def trisa_oracle_length(angles: TriangleAngles, k: float, vertex: str) -> float:
    own, _ = _angles_at(angles, vertex)
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    origin = frame.vertex(vertex)
    sign = 1.0 if vertex == "A" else -1.0
    target = Point2(x=origin.x + sign * math.cos(k * own), y=origin.y + math.sin(k * own))
    return cevian_through(frame, vertex, target).length


def parallel_trisa_k(angles: TriangleAngles, vertex: str) -> float:
    own, other = _angles_at(angles, vertex)
    return (math.pi - other) / own


def trisa_fg(gamma_param: float, t: float, tau: float) -> Tuple[float, float]:
    if not gamma_param >= 2:
        raise DomainError(f"gamma_param must be >= 2, got {gamma_param}")
    upper = math.pi / gamma_param
    if not 0 < tau < t < upper:
        raise DomainError(f"need 0 < tau < t < pi/gamma_param, got tau={tau}, t={t}")

    f = math.sin((gamma_param + 1) * t) / math.sin(t)
    g = -math.sin((gamma_param - 1) * tau) / math.sin(tau)
    return f, g


def trisa_f(gamma_param: float, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.sin((gamma_param + 1) * t) / np.sin(t)


def trisa_g(gamma_param: float, tau: np.ndarray) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    return -np.sin((gamma_param - 1) * tau) / np.sin(tau)


def _equal_length_residual(alpha: float, beta: float, k: float) -> float:
    # Cross-multiplied sine-rule condition; free of the poles of the lengths themselves.
    return math.sin(alpha) * math.sin(k * alpha + beta) - math.sin(beta) * math.sin(k * beta + alpha)


def find_equal_trisa_witness(
    k: float,
    alphas: Optional[Iterable[float]] = None,
    grid: int = 2000,
    min_separation: float = 1e-3,
) -> Tuple[TriangleAngles, float]:
    """Search a scalene triangle whose k-trisas from A and B are equal.

    For each alpha the residual is scanned in beta; every sign change away from
    beta = alpha is refined by bisection. Returns the angles and the length.
    """
    if alphas is None:
        alphas = np.radians(np.arange(2.0, 89.0, 2.0))

    for alpha in alphas:
        betas = np.linspace(1e-4, math.pi - alpha - 1e-4, grid)
        betas = betas[np.abs(betas - alpha) > min_separation]
        values = np.array([_equal_length_residual(alpha, b, k) for b in betas])

        for lo, hi, f_lo, f_hi in zip(betas[:-1], betas[1:], values[:-1], values[1:]):
            if f_lo == 0 or np.sign(f_lo) == np.sign(f_hi) or hi - lo > 2 * (betas[1] - betas[0]):
                continue
            beta = bisect(lambda b: _equal_length_residual(alpha, b, k), lo, hi, xtol=ROOT_XTOL)
            if abs(beta - alpha) <= min_separation:
                continue
            try:
                angles = TriangleAngles(alpha=float(alpha), beta=float(beta))
                la = trisa_cevian_length(angles, k, "A")
                lb = trisa_cevian_length(angles, k, "B")
            except (ValueError, ParallelTrisa):
                continue
            if abs(la - lb) <= 1e-9 * max(1.0, la):
                logger.info(
                    f"Equal {k}-trisas at alpha={math.degrees(alpha):.6f} deg, beta={math.degrees(beta):.6f} deg"
                )
                return angles, la

    raise NoConvergence(f"no scalene triangle with equal {k}-trisas found")


if __name__ == "__main__":
    for k in (1.5, 2.0, 3.0):
        witness, length = find_equal_trisa_witness(k)
        print(f"k={k}: angles={tuple(round(a, 4) for a in witness.degrees())}, length={length:.9f}")
