from cevians.tetra.edges import (
    BisectorSquares,
    FaceAreas,
    TetraEdgeSet,
    bisector_squares,
    equifacial_check,
    face_areas,
)
from cevians.tetra.solver import TetraReport, solve_equal_bisectors

__all__ = [
    "BisectorSquares",
    "FaceAreas",
    "TetraEdgeSet",
    "TetraReport",
    "bisector_squares",
    "equifacial_check",
    "face_areas",
    "solve_equal_bisectors",
]
