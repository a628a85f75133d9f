"""Reading and writing curves, iteration traces and SVG figures."""

from __future__ import annotations

import json
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .curve import CLOSED_ATOL, PolygonalCurve
from .errors import ParseError, RowWidthMismatch, TooFewVertices, UnsupportedDimension
from .iteration import IterationTrace

TRACE_HEADER = "n,sigma,sigma_ratio,max,min,length,displacement"

_SPLIT = re.compile(r"[,\s]+")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def read_csv(text: str | bytes) -> PolygonalCurve:
    """Parse a curve from CSV text.

    Rows hold ``dim`` reals separated by commas and/or whitespace. Blank lines
    and lines starting with ``#`` are skipped. The curve is marked closed when
    its first and last rows coincide.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        try:
            values = [float(f) for f in fields]
        except ValueError:
            raise ParseError(f"cannot parse {line!r} as numbers", lineno) from None
        if not all(math.isfinite(x) for x in values):
            raise ParseError("coordinates must be finite", lineno)
        if dim is None:
            dim = len(values)
        elif len(values) != dim:
            raise RowWidthMismatch(f"expected {dim} values, got {len(values)}", lineno)
        rows.append(values)
    if len(rows) < 2:
        raise TooFewVertices(f"a curve needs at least 2 vertices, file has {len(rows)}")
    v = np.array(rows, dtype=float)
    closed = bool(np.all(np.abs(v[0] - v[-1]) <= CLOSED_ATOL))
    return PolygonalCurve(v, closed=closed)


def write_csv(C: PolygonalCurve) -> str:
    return "".join(",".join(fmt(x) for x in p) + "\n" for p in C.vertices)


def write_trace_csv(trace: IterationTrace, rows: Iterable[int] | None = None) -> str:
    """Trace table with header ``TRACE_HEADER``.

    ``sigma_ratio`` is always relative to the previous iterate, even when
    ``rows`` selects a subset of iterations; it is blank where undefined
    (n = 0 or a zero previous sigma). ``displacement`` is blank for n = 0.
    """
    if not trace.records:
        raise ValueError("empty trace")
    ratios = trace.sigma_ratios()
    wanted = None if rows is None else set(rows)
    lines = [TRACE_HEADER]
    for rec, ratio in zip(trace.records, ratios):
        if wanted is not None and rec.n not in wanted:
            continue
        lines.append(
            ",".join(
                [
                    str(rec.n),
                    fmt(rec.stats.sigma),
                    "" if ratio is None else fmt(ratio),
                    fmt(rec.stats.max),
                    fmt(rec.stats.min),
                    fmt(rec.length),
                    "" if rec.displacement is None else fmt(rec.displacement),
                ]
            )
        )
    return "\n".join(lines) + "\n"


@dataclass
class CurveDocument:
    curve: PolygonalCurve
    name: str = ""
    metadata: dict[str, str] = field(default_factory=dict)


def dumps_document(doc: CurveDocument) -> str:
    """Serialize to JSON; coordinates are written with 17 significant digits."""
    head = json.dumps({"name": doc.name, "metadata": dict(doc.metadata), "closed": doc.curve.closed})
    rows = ",\n    ".join("[" + ", ".join(fmt(x) for x in p) + "]" for p in doc.curve.vertices)
    return head[:-1] + ',\n  "vertices": [\n    ' + rows + "\n  ]\n}\n"


def loads_document(text: str | bytes) -> CurveDocument:
    try:
        data = json.loads(text)
        vertices = data["vertices"]
        meta = {str(k): str(v) for k, v in data.get("metadata", {}).items()}
        name = str(data.get("name", ""))
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"bad curve document: {exc}") from None
    try:
        curve = PolygonalCurve(vertices)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return CurveDocument(curve, name, meta)


@dataclass(frozen=True)
class SvgStyle:
    stroke: str = "#000000"
    stroke_width: float = 1.5
    vertex_fill: str | None = None
    dash: str | None = None
    opacity: float = 1.0


PALETTE = ("#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50")


def default_style(i: int) -> SvgStyle:
    return SvgStyle(stroke=PALETTE[i % len(PALETTE)])


@dataclass(frozen=True)
class RenderOptions:
    width: float = 600.0
    margin: float = 0.05
    vertex_radius: float = 3.0
    project: tuple[int, int] | None = None
    # "overlay" draws all curves in one frame, "row" places them side by side
    layout: str = "overlay"
    background: str | None = "#ffffff"


def _project(C: PolygonalCurve, project) -> np.ndarray:
    if project is None:
        if C.dim != 2:
            raise UnsupportedDimension(f"cannot render a dim-{C.dim} curve without a projection")
        return C.vertices
    i, j = project
    if not (0 <= i < C.dim and 0 <= j < C.dim) or i == j:
        raise UnsupportedDimension(f"projection axes {project} invalid for dim {C.dim}")
    return C.vertices[:, [i, j]]


def render_svg(
    curves: Sequence[tuple[PolygonalCurve, SvgStyle | None]] | Sequence[PolygonalCurve],
    options: RenderOptions = RenderOptions(),
) -> str:
    """Standalone SVG with one polyline per curve and a dot at each vertex.

    The view box is fitted to the data with a ``margin`` fraction on each side
    and the y axis is flipped so that +y points up.
    """
    items = []
    for i, entry in enumerate(curves):
        curve, style = entry if isinstance(entry, tuple) else (entry, None)
        items.append((_project(curve, options.project), style or default_style(i)))
    if not items:
        raise ValueError("nothing to render")

    if options.layout == "row":
        shifted = []
        offset = 0.0
        for pts, style in items:
            lo, hi = pts.min(axis=0), pts.max(axis=0)
            gap = 0.1 * max(hi[0] - lo[0], hi[1] - lo[1], 1e-12)
            shifted.append((pts + np.array([offset - lo[0], 0.0]), style))
            offset += hi[0] - lo[0] + gap
        items = shifted
    elif options.layout != "overlay":
        raise ValueError(f"unknown layout {options.layout!r}")

    allpts = np.vstack([p for p, _ in items])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = hi - lo
    extent = float(span.max()) or 1.0
    center = (lo + hi) / 2.0
    # a flat direction is widened to the other one so points stay visible
    half = np.where(span > 0, span, extent) / 2.0 + options.margin * extent
    lo, hi = center - half, center + half
    data_w, data_h = hi - lo
    scale = options.width / data_w
    width = options.width
    height = data_h * scale

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": f"{width:.2f}",
            "height": f"{height:.2f}",
            "viewBox": f"0 0 {width:.2f} {height:.2f}",
        },
    )
    if options.background:
        ET.SubElement(svg, "rect", {"width": "100%", "height": "100%", "fill": options.background})
    for pts, style in items:
        px = (pts[:, 0] - lo[0]) * scale
        py = (hi[1] - pts[:, 1]) * scale
        g = ET.SubElement(svg, "g", {"opacity": f"{style.opacity:g}"})
        attrs = {
            "points": " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(px, py)),
            "fill": "none",
            "stroke": style.stroke,
            "stroke-width": f"{style.stroke_width:g}",
            "stroke-linejoin": "round",
        }
        if style.dash:
            attrs["stroke-dasharray"] = style.dash
        ET.SubElement(g, "polyline", attrs)
        if options.vertex_radius > 0:
            fill = style.vertex_fill or style.stroke
            for x, y in zip(px, py):
                ET.SubElement(g, "circle", {"cx": f"{x:.3f}", "cy": f"{y:.3f}", "r": f"{options.vertex_radius:g}", "fill": fill})
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
