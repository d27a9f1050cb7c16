from cevians.engine.circle import circle_cevian_lengths_sq, circle_S_point
from cevians.engine.gaps import (
    GapSample,
    bisector_gap,
    median_gap,
    median_identity_residual,
    ratio_cevian_gap,
)
from cevians.engine.trisas import TrisaParams, trisa_cevian_length, trisa_fg

__all__ = [
    "GapSample",
    "TrisaParams",
    "bisector_gap",
    "circle_S_point",
    "circle_cevian_lengths_sq",
    "median_gap",
    "median_identity_residual",
    "ratio_cevian_gap",
    "trisa_cevian_length",
    "trisa_fg",
]
