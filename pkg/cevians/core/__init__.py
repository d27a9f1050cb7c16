from cevians.core.errors import (
    DegenerateConfiguration,
    DegenerateFace,
    DegenerateRatio,
    DegenerateT,
    DomainError,
    GeometryError,
    IsoscelesDegenerate,
    NoConvergence,
    NoIntersection,
    ParallelCevian,
    ParallelTrisa,
    VertexFoot,
    ZeroDenominator,
)
from cevians.core.frames import FrameKind, Point2, TriangleAngles, TriangleFrame, make_frame
from cevians.core.cevian import Cevian, cevian_through, external_bisector_cevian

__all__ = [
    "Cevian",
    "DegenerateConfiguration",
    "DegenerateFace",
    "DegenerateRatio",
    "DegenerateT",
    "DomainError",
    "FrameKind",
    "GeometryError",
    "IsoscelesDegenerate",
    "NoConvergence",
    "NoIntersection",
    "ParallelCevian",
    "ParallelTrisa",
    "Point2",
    "TriangleAngles",
    "TriangleFrame",
    "VertexFoot",
    "ZeroDenominator",
    "cevian_through",
    "external_bisector_cevian",
    "make_frame",
]
