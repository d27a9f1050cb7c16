from cevians.altitude.cubic import AltitudeCubic, RootKind, build_cubic, classify

__all__ = ["AltitudeCubic", "RootKind", "build_cubic", "classify"]
