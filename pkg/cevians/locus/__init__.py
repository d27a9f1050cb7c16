from cevians.locus.curve import (
    Asymptote,
    CurveSample,
    ImplicitCubic,
    asymptote,
    implicit_coeffs,
    isosceles_locus,
    parametric_points,
    special_points,
)

__all__ = [
    "Asymptote",
    "CurveSample",
    "ImplicitCubic",
    "asymptote",
    "implicit_coeffs",
    "isosceles_locus",
    "parametric_points",
    "special_points",
]
