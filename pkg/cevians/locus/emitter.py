import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from cevians.config import (  # noqa: E402
    CSV_SIGNIFICANT_DIGITS,
    JSON_SIGNIFICANT_DIGITS,
    SVG_CLIP,
    SVG_PIXELS,
)
from cevians.core.errors import DomainError  # noqa: E402
from cevians.core.frames import FrameKind, TriangleAngles, make_frame  # noqa: E402
from cevians.locus.curve import (  # noqa: E402
    CurveSample,
    altitude_bounds,
    asymptote,
    isosceles_locus,
    l_grid,
    locus_branches,
    newton_group_label,
    special_points,
)

logger = logging.getLogger(__name__)

FORMATS = ("svg", "csv", "json")
BRANCH_COLORS = {(1, 1): "tab:blue", (1, 2): "tab:orange", (2, 1): "tab:green", (2, 2): "tab:red"}

plt.rcParams["svg.hashsalt"] = "cevians"


def significant(value: float, digits: int = JSON_SIGNIFICANT_DIGITS) -> float:
    if not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def render_svg(fig) -> str:
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


def new_figure():
    dpi = 100
    fig, ax = plt.subplots(figsize=(SVG_PIXELS / dpi, SVG_PIXELS / dpi), dpi=dpi)
    ax.set_aspect("equal")
    return fig, ax


def clipped_viewport(points: np.ndarray, clip: float = SVG_CLIP, pad: float = 0.05) -> Tuple[float, float, float, float]:
    finite = points[np.all(np.isfinite(points), axis=1)]
    lo = np.clip(finite.min(axis=0) - pad, -clip, clip)
    hi = np.clip(finite.max(axis=0) + pad, -clip, clip)
    return float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1])


def _collect(angles: TriangleAngles, l_range: Tuple[float, float], n: int) -> Dict[Tuple[int, int], List[CurveSample]]:
    l_min, l_max = l_range
    bound = max(altitude_bounds(angles))
    if l_min < bound * (1 - 1e-12):
        raise DomainError(f"l_min={l_min} below the altitude bound {bound}")
    if n < 2:
        raise DomainError(f"need at least two samples, got {n}")
    return locus_branches(angles, l_grid(angles, n, l_max=l_max, l_min=l_min))


def _rows(branches: Dict[Tuple[int, int], List[CurveSample]]) -> List[CurveSample]:
    return sorted(
        (s for samples in branches.values() for s in samples),
        key=lambda s: (s.branch, s.l),
    )


def curve_csv(branches: Dict[Tuple[int, int], List[CurveSample]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["l", "branch_i", "branch_j", "x", "y"])
    fmt = f"{{:.{CSV_SIGNIFICANT_DIGITS}g}}"
    for s in _rows(branches):
        writer.writerow([fmt.format(s.l), s.branch[0], s.branch[1], fmt.format(s.point.x), fmt.format(s.point.y)])
    return buffer.getvalue()


def curve_json(angles: TriangleAngles, branches: Dict[Tuple[int, int], List[CurveSample]]) -> str:
    document = {
        "alpha_deg": significant(angles.degrees()[0]),
        "beta_deg": significant(angles.degrees()[1]),
        "label": newton_group_label(angles),
        "special_points": {
            name: [significant(p.x), significant(p.y)] for name, p in special_points(angles).items()
        },
        "samples": [
            {"l": significant(s.l), "branch_i": s.branch[0], "branch_j": s.branch[1],
             "x": significant(s.point.x), "y": significant(s.point.y)}
            for s in _rows(branches)
        ],
    }
    if not angles.is_isosceles():
        line = asymptote(angles)
        document["asymptote"] = {"k": significant(line.k), "b": significant(line.b)}
    return json.dumps(document, indent=2) + "\n"


def curve_svg(angles: TriangleAngles, branches: Dict[Tuple[int, int], List[CurveSample]]) -> str:
    frame = make_frame(angles, FrameKind.MEDIAN_CENTERED)
    a, b, c = frame.as_arrays()
    points = special_points(angles)

    fig, ax = new_figure()
    triangle = np.array([a, b, c, a])
    ax.plot(triangle[:, 0], triangle[:, 1], color="black", linewidth=1.2)

    cloud = [triangle]
    for branch, samples in sorted(branches.items()):
        xy = np.array([[s.point.x, s.point.y] for s in samples])
        cloud.append(xy)
        ax.plot(xy[:, 0], xy[:, 1], ".", markersize=2, color=BRANCH_COLORS[branch], label=f"branch {branch}")

    x_lo, x_hi, y_lo, y_hi = clipped_viewport(np.vstack(cloud))
    xs = np.linspace(x_lo, x_hi, 200)

    if angles.is_isosceles():
        locus = isosceles_locus(angles.alpha)
        ax.add_patch(plt.Circle((locus.center.x, locus.center.y), locus.radius, fill=False, color="tab:purple"))
        ax.axvline(locus.axis_x, color="tab:purple", linewidth=0.8)
    else:
        line = asymptote(angles)
        ax.plot(xs, line(xs), "--", color="gray", linewidth=0.8, label="asymptote")

    for name, p in points.items():
        ax.plot(p.x, p.y, "o", color="black", markersize=4)
        ax.annotate(name, (p.x, p.y), textcoords="offset points", xytext=(4, 4))
    for name, p in (("A", frame.A), ("B", frame.B), ("C", frame.C)):
        ax.annotate(name, (p.x, p.y), textcoords="offset points", xytext=(-10, 4))

    ax.set_xlim(x_lo, x_hi)
    ax.set_ylim(y_lo, y_hi)
    ax.set_title(f"alpha={angles.degrees()[0]:.4g} deg, beta={angles.degrees()[1]:.4g} deg")
    ax.legend(loc="lower right", fontsize="small")
    return render_svg(fig)


def emit_curve(
    angles: TriangleAngles,
    l_range: Tuple[float, float],
    n: int,
    fmt: str = "svg",
    out: Optional[Path] = None,
) -> str:
    """Sample the equal-cevian locus and render it as svg, csv or json.

    The document is returned; when `out` is given it is also written there and
    I/O errors propagate to the caller.
    """
    if fmt not in FORMATS:
        raise DomainError(f"unknown curve format {fmt!r}; expected one of {FORMATS}")

    branches = _collect(angles, l_range, n)
    if fmt == "csv":
        document = curve_csv(branches)
    elif fmt == "json":
        document = curve_json(angles, branches)
    else:
        document = curve_svg(angles, branches)

    if out is not None:
        Path(out).write_text(document, encoding="utf-8")
        logger.info(f"Wrote {fmt} curve to {out}")
    return document
