class GeometryError(Exception):
    """Base class for every geometric failure raised by the package."""


class DomainError(GeometryError, ValueError):
    pass


class ParallelCevian(GeometryError):
    pass


class ParallelTrisa(GeometryError):
    pass


class DegenerateRatio(GeometryError):
    pass


class DegenerateT(GeometryError):
    pass


class IsoscelesDegenerate(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class VertexFoot(GeometryError):
    pass


class ZeroDenominator(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class DegenerateFace(GeometryError):
    pass


class NoConvergence(GeometryError):
    pass
