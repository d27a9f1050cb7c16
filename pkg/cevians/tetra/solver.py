import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from cevians.config import PUBLISHED_TETRA_FACE_AREA, PUBLISHED_TETRA_SOLUTION, RANDOM_SEED, TETRA_MAX_ITER, TETRA_STARTS
from cevians.core.errors import DomainError, GeometryError, NoConvergence
from cevians.tetra.edges import (
    BisectorSquares,
    EquifacialVerdict,
    FaceAreas,
    TetraEdgeSet,
    bisector_squares,
    equifacial_check,
    equifacial_from_triangle,
    face_areas,
    oracle_bisector_squares,
)

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-11
ORACLE_TOL = 1e-8
MIN_DAMPING = 1.0 / 2 ** 30


class NewtonResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: Tuple[float, float, float]
    success: bool
    residual_norm: float
    iterations: int


class TetraSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    edges: TetraEdgeSet
    residuals: List[float]
    areas: FaceAreas
    bisectors: BisectorSquares
    oracle_spread: float
    equifacial: EquifacialVerdict
    start: int
    iterations: int


class TetraReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    base_angles_deg: Tuple[float, float, float]
    diameter: float
    starts: int
    feasible_starts: int
    converged: int
    solutions: List[TetraSolution]
    annotations: Dict[str, object]


def finite_difference_jacobian(fun: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
    columns = []
    for i in range(len(x)):
        h = 1e-6 * max(1.0, abs(x[i]))
        e = np.zeros_like(x)
        e[i] = h
        columns.append((fun(x + e) - fun(x - e)) / (2 * h))
    return np.column_stack(columns)


def damped_newton(
    fun: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    feasible: Callable[[np.ndarray], bool],
    tol: float,
    max_iter: int = TETRA_MAX_ITER,
) -> NewtonResult:
    """Newton iteration whose steps are halved until they stay feasible and reduce |F|."""
    x = np.array(x0, dtype=float)
    fx = fun(x)
    norm = float(np.linalg.norm(fx))

    for iteration in range(max_iter):
        if norm <= tol:
            return NewtonResult(x=tuple(x), success=True, residual_norm=norm, iterations=iteration)

        jx = finite_difference_jacobian(fun, x)
        if not np.all(np.isfinite(jx)):
            logger.debug(f"Jacobian stencil left the feasible set at {x}")
            return NewtonResult(x=tuple(x), success=False, residual_norm=norm, iterations=iteration)
        step = np.linalg.lstsq(jx, -fx, rcond=None)[0]

        damping = 1.0
        while damping >= MIN_DAMPING:
            trial = x + damping * step
            if feasible(trial):
                f_trial = fun(trial)
                trial_norm = float(np.linalg.norm(f_trial))
                if trial_norm < norm:
                    break
            damping /= 2
        else:
            return NewtonResult(x=tuple(x), success=False, residual_norm=norm, iterations=iteration)

        x, fx, norm = trial, f_trial, trial_norm

    return NewtonResult(x=tuple(x), success=norm <= tol, residual_norm=norm, iterations=max_iter)


class EqualBisectorSystem:
    """AL1^2 = BL2^2 = CL3^2 = DL4^2 in the unknown edges (AD, BD, CD) over a fixed base."""

    def __init__(self, base_angles: Tuple[float, float, float], d: float):
        if d <= 0:
            raise DomainError(f"circumdiameter must be positive, got {d}")
        if min(base_angles) <= 0 or abs(sum(base_angles) - math.pi) > 1e-9:
            raise DomainError(f"base angles {base_angles} must be positive and sum to pi")

        self.base_angles = tuple(base_angles)
        self.d = d
        self.base = TetraEdgeSet.from_base_angles(self.base_angles, d, 1.0, 1.0, 1.0)
        self.scale = max(self.base.ab, self.base.ac, self.base.bc)
        logger.info(f"Equal-bisector system over base {self.base.face('ABC')} (d={d})")

    def edges(self, xyz: np.ndarray) -> TetraEdgeSet:
        return self.base.model_copy(update={"x": float(xyz[0]), "y": float(xyz[1]), "z": float(xyz[2])})

    def feasible(self, xyz: np.ndarray) -> bool:
        if np.any(np.asarray(xyz) <= 0):
            return False
        return self.edges(xyz).is_valid()

    def __call__(self, xyz: np.ndarray) -> np.ndarray:
        try:
            squares = bisector_squares(self.edges(xyz)).values()
        except (GeometryError, ValueError):
            return np.full(3, np.inf)
        return np.array([squares[0] - squares[1], squares[0] - squares[2], squares[0] - squares[3]])

    def equifacial_seed(self) -> Optional[np.ndarray]:
        try:
            oracle = equifacial_from_triangle(self.base.bc, self.base.ac, self.base.ab)
        except DomainError:
            return None
        return np.array(oracle.as_tuple())

    def starts(self, count: int, rng: np.random.Generator) -> List[np.ndarray]:
        starts = []
        seed = self.equifacial_seed()
        if seed is not None:
            starts.append(seed)
        attempts = 0
        while len(starts) < count and attempts < 100 * count:
            attempts += 1
            candidate = rng.uniform(0.2 * self.scale, 3.0 * self.scale, size=3)
            if self.feasible(candidate):
                starts.append(candidate)
        return starts


def _verify(system: EqualBisectorSystem, result: NewtonResult, start: int) -> Optional[TetraSolution]:
    edges = system.edges(np.array(result.x))
    oracle = oracle_bisector_squares(edges)
    if oracle.spread() > ORACLE_TOL:
        logger.warning(f"Start {start}: solution {result.x} fails the geometric bisector check")
        return None
    return TetraSolution(
        edges=edges,
        residuals=[float(r) for r in system(np.array(result.x))],
        areas=face_areas(edges),
        bisectors=bisector_squares(edges),
        oracle_spread=oracle.spread(),
        equifacial=equifacial_check(edges),
        start=start,
        iterations=result.iterations,
    )


def _is_duplicate(solution: TetraSolution, known: List[TetraSolution], scale: float) -> bool:
    xyz = np.array(solution.edges.as_tuple())
    return any(np.max(np.abs(xyz - np.array(k.edges.as_tuple()))) <= 1e-6 * scale for k in known)


def solve_equal_bisectors(
    base_angles: Tuple[float, float, float],
    d: float,
    starts: int = TETRA_STARTS,
    seed: int = RANDOM_SEED,
) -> TetraReport:
    """Multistart damped Newton for the equal-bisector tetrahedra over a fixed base.

    `base_angles` are the radian angles of face ABC at A, B and C. Raises
    NoConvergence when no start reaches a verified solution.
    """
    system = EqualBisectorSystem(base_angles, d)
    rng = np.random.default_rng(seed)
    initial = system.starts(starts, rng)
    tol = RESIDUAL_TOL * system.scale ** 2

    solutions: List[TetraSolution] = []
    converged = 0
    for index, x0 in enumerate(initial):
        result = damped_newton(system, x0, system.feasible, tol)
        if not result.success:
            logger.debug(f"Start {index} stopped at |F|={result.residual_norm:.3e}")
            continue
        converged += 1
        solution = _verify(system, result, index)
        if solution is not None and not _is_duplicate(solution, solutions, system.scale):
            solutions.append(solution)

    if not solutions:
        raise NoConvergence(f"none of {len(initial)} starts converged to an equal-bisector tetrahedron")

    logger.info(f"{len(solutions)} distinct solutions from {converged}/{len(initial)} converged starts")
    return TetraReport(
        base_angles_deg=tuple(math.degrees(a) for a in base_angles),
        diameter=d,
        starts=starts,
        feasible_starts=len(initial),
        converged=converged,
        solutions=solutions,
        annotations=published_annotations(d),
    )


def published_annotations(d: float) -> Dict[str, object]:
    factor = d / 10.0
    return {
        "published_solution_xyz": [v * factor for v in PUBLISHED_TETRA_SOLUTION],
        "published_face_area": PUBLISHED_TETRA_FACE_AREA,
        "note": "published values are not mutually scale-consistent; reported, not asserted",
    }


if __name__ == "__main__":
    report = solve_equal_bisectors(tuple(math.radians(a) for a in (45, 60, 75)), 1.0, starts=20)
    for solution in report.solutions:
        print(f"xyz={solution.edges.as_tuple()} areas={solution.areas.values()} equifacial={solution.equifacial}")
