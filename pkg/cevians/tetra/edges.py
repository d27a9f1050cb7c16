import itertools
import logging
import math
from typing import Dict, Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from cevians.core.errors import DegenerateConfiguration, DegenerateFace, DomainError

logger = logging.getLogger(__name__)

VERTICES = ("A", "B", "C", "D")
FACE_OPPOSITE = {"A": "BCD", "B": "ACD", "C": "ABD", "D": "ABC"}


class TetraEdgeSet(BaseModel):
    """Edges of ABCD: ab, ac, bc span the base face, x = AD, y = BD, z = CD."""

    model_config = ConfigDict(frozen=True)

    ab: float
    ac: float
    bc: float
    x: float
    y: float
    z: float

    @model_validator(mode="after")
    def _positive(self) -> "TetraEdgeSet":
        for name, value in self.model_dump().items():
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"edge {name} must be positive and finite, got {value}")
        return self

    @classmethod
    def from_base_angles(cls, base_angles: Tuple[float, float, float], d: float, x: float, y: float, z: float) -> "TetraEdgeSet":
        """Base face ABC inscribed in a circle of diameter d, angles in radians at A, B, C."""
        at_a, at_b, at_c = base_angles
        return cls(ab=d * math.sin(at_c), ac=d * math.sin(at_b), bc=d * math.sin(at_a), x=x, y=y, z=z)

    @classmethod
    def regular(cls, edge: float = 1.0) -> "TetraEdgeSet":
        return cls(ab=edge, ac=edge, bc=edge, x=edge, y=edge, z=edge)

    def _table(self) -> Dict[frozenset, float]:
        return {
            frozenset("AB"): self.ab,
            frozenset("AC"): self.ac,
            frozenset("AD"): self.x,
            frozenset("BC"): self.bc,
            frozenset("BD"): self.y,
            frozenset("CD"): self.z,
        }

    def edge(self, u: str, v: str) -> float:
        try:
            return self._table()[frozenset((u, v))]
        except KeyError:
            raise DomainError(f"no edge {u}{v}") from None

    def face(self, label: str) -> Tuple[float, float, float]:
        p, q, r = label
        return self.edge(p, q), self.edge(q, r), self.edge(p, r)

    def relabel(self, order: str) -> "TetraEdgeSet":
        """Tetrahedron whose vertex A is this one's order[0], B is order[1], and so on."""
        if sorted(order) != list(VERTICES):
            raise DomainError(f"{order!r} is not a permutation of ABCD")
        old = dict(zip(VERTICES, order))
        e = lambda u, v: self.edge(old[u], old[v])  # noqa: E731
        return TetraEdgeSet(ab=e("A", "B"), ac=e("A", "C"), bc=e("B", "C"), x=e("A", "D"), y=e("B", "D"), z=e("C", "D"))

    def constraint_margins(self) -> Dict[str, float]:
        margins = {}
        for label in ("ABD", "ACD", "BCD"):
            sides = self.face(label)
            for i in range(3):
                margins[f"{label}[{i}]"] = sides[(i + 1) % 3] + sides[(i + 2) % 3] - sides[i]
        return margins

    def cayley_menger(self) -> float:
        """The 5x5 Cayley-Menger determinant, equal to 288 V^2."""
        m = np.ones((5, 5))
        m[0, 0] = 0.0
        for i, u in enumerate(VERTICES):
            for j, v in enumerate(VERTICES):
                m[i + 1, j + 1] = 0.0 if u == v else self.edge(u, v) ** 2
        return float(np.linalg.det(m))

    def volume(self) -> float:
        return math.sqrt(max(0.0, self.cayley_menger()) / 288.0)

    def is_valid(self) -> bool:
        base_ok = min(self.face("ABC")) > 0 and _heron_factors_positive(self.face("ABC"))
        return base_ok and min(self.constraint_margins().values()) > 0 and self.cayley_menger() > 0

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.x, self.y, self.z


class FaceAreas(BaseModel):
    model_config = ConfigDict(frozen=True)

    s_abc: float
    s_abd: float
    s_acd: float
    s_bcd: float

    def opposite(self, vertex: str) -> float:
        return getattr(self, f"s_{FACE_OPPOSITE[vertex].lower()}")

    def values(self) -> List[float]:
        return [self.s_abc, self.s_abd, self.s_acd, self.s_bcd]

    def spread(self) -> float:
        values = self.values()
        return (max(values) - min(values)) / max(values)


class BisectorSquares(BaseModel):
    model_config = ConfigDict(frozen=True)

    al1_sq: float
    bl2_sq: float
    cl3_sq: float
    dl4_sq: float

    def values(self) -> List[float]:
        return [self.al1_sq, self.bl2_sq, self.cl3_sq, self.dl4_sq]

    def spread(self) -> float:
        values = self.values()
        return (max(values) - min(values)) / max(values)


class EquifacialVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    equal_areas: bool
    opposite_edges_equal: bool
    area_spread: float


def _heron_factors_positive(sides: Iterable[float]) -> bool:
    a, b, c = sorted(sides, reverse=True)
    return c - (a - b) > 0


def heron_area(sides: Iterable[float]) -> float:
    """Heron's formula in the cancellation-free ordering a >= b >= c."""
    a, b, c = sorted(sides, reverse=True)
    if c - (a - b) <= 0:
        raise DegenerateFace(f"sides {a}, {b}, {c} violate the triangle inequality")
    return 0.25 * math.sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)))


def face_areas(edges: TetraEdgeSet) -> FaceAreas:
    return FaceAreas(
        s_abc=heron_area(edges.face("ABC")),
        s_abd=heron_area(edges.face("ABD")),
        s_acd=heron_area(edges.face("ACD")),
        s_bcd=heron_area(edges.face("BCD")),
    )


def _bisector_square(edges: TetraEdgeSet, areas: FaceAreas, vertex: str) -> float:
    # The bisector meets the opposite face at the point weighted by the areas of the
    # faces opposite each of its vertices.
    others = [v for v in VERTICES if v != vertex]
    weights = {p: areas.opposite(p) for p in others}
    total = sum(weights.values())
    spoke = sum(weights[p] * edges.edge(vertex, p) ** 2 for p in others) / total
    rim = sum(weights[p] * weights[q] * edges.edge(p, q) ** 2 for p, q in itertools.combinations(others, 2))
    return spoke - rim / total ** 2


def bisector_squares(edges: TetraEdgeSet) -> BisectorSquares:
    areas = face_areas(edges)
    al1, bl2, cl3, dl4 = (_bisector_square(edges, areas, v) for v in VERTICES)
    return BisectorSquares(al1_sq=al1, bl2_sq=bl2, cl3_sq=cl3, dl4_sq=dl4)


def embed(edges: TetraEdgeSet) -> Dict[str, np.ndarray]:
    ab, ac, bc, x, y, z = edges.ab, edges.ac, edges.bc, edges.x, edges.y, edges.z
    cx = (ab ** 2 + ac ** 2 - bc ** 2) / (2 * ab)
    cy2 = ac ** 2 - cx ** 2
    if cy2 <= 0:
        raise DegenerateFace("base face ABC is flat")
    cy = math.sqrt(cy2)

    dx = (ab ** 2 + x ** 2 - y ** 2) / (2 * ab)
    dy = (x ** 2 + ac ** 2 - z ** 2 - 2 * dx * cx) / (2 * cy)
    dz2 = x ** 2 - dx ** 2 - dy ** 2
    if dz2 <= 0:
        raise DegenerateConfiguration(f"edges {edges.model_dump()} do not span a tetrahedron")

    return {
        "A": np.zeros(3),
        "B": np.array([ab, 0.0, 0.0]),
        "C": np.array([cx, cy, 0.0]),
        "D": np.array([dx, dy, math.sqrt(dz2)]),
    }


def _inward_normal(points: Dict[str, np.ndarray], face: str, apex: str) -> np.ndarray:
    p, q, r = (points[v] for v in face)
    n = np.cross(q - p, r - p)
    n /= np.linalg.norm(n)
    return n if n @ (points[apex] - p) > 0 else -n


def oracle_bisector_squares(edges: TetraEdgeSet) -> BisectorSquares:
    """Squared bisector lengths from coordinates: the ray from each vertex equidistant
    from its three faces, cut by the opposite face."""
    points = embed(edges)
    values = []
    for vertex in VERTICES:
        faces_at = [f for v, f in FACE_OPPOSITE.items() if v != vertex]
        apexes = [v for v in VERTICES if v != vertex]
        normals = np.array([_inward_normal(points, f, apex) for f, apex in zip(faces_at, apexes)])
        direction = np.linalg.solve(normals, np.ones(3))

        opposite = FACE_OPPOSITE[vertex]
        plane_normal = _inward_normal(points, opposite, vertex)
        origin = points[vertex]
        t = float(plane_normal @ (points[opposite[0]] - origin)) / float(plane_normal @ direction)
        foot = origin + t * direction
        values.append(float(np.sum((foot - origin) ** 2)))
    return BisectorSquares(al1_sq=values[0], bl2_sq=values[1], cl3_sq=values[2], dl4_sq=values[3])


def equifacial_check(edges: TetraEdgeSet, tol: float = 1e-6) -> EquifacialVerdict:
    areas = face_areas(edges)
    pairs = ((edges.ab, edges.z), (edges.ac, edges.y), (edges.x, edges.bc))
    opposite_equal = all(abs(u - v) <= tol * max(u, v) for u, v in pairs)
    return EquifacialVerdict(
        equal_areas=areas.spread() <= tol,
        opposite_edges_equal=opposite_equal,
        area_spread=areas.spread(),
    )


def equifacial_from_triangle(a: float, b: float, c: float) -> TetraEdgeSet:
    """Tetrahedron with opposite edges (a, a), (b, b), (c, c) over the base BC = a, AC = b, AB = c."""
    sq = sorted((a * a, b * b, c * c))
    if sq[0] + sq[1] <= sq[2]:
        raise DomainError(f"triangle ({a}, {b}, {c}) is not acute; no equifacial tetrahedron")
    return TetraEdgeSet(ab=c, ac=b, bc=a, x=a, y=b, z=c)


def altitudes(edges: TetraEdgeSet) -> Dict[str, float]:
    volume = edges.volume()
    areas = face_areas(edges)
    return {v: 3 * volume / areas.opposite(v) for v in VERTICES}


def equal_altitudes_check(edges: TetraEdgeSet, tol: float = 1e-9) -> Tuple[bool, bool]:
    heights = list(altitudes(edges).values())
    heights_equal = (max(heights) - min(heights)) <= tol * max(heights)
    return heights_equal, face_areas(edges).spread() <= tol
