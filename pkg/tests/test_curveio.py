import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from polyrespace.curve import PolygonalCurve
from polyrespace.curveio import (
    TRACE_HEADER,
    CurveDocument,
    RenderOptions,
    SvgStyle,
    dumps_document,
    loads_document,
    read_csv,
    render_svg,
    write_csv,
    write_trace_csv,
)
from polyrespace.errors import DimensionMismatch, ParseError, TooFewVertices, UnsupportedDimension
from polyrespace.iteration import IterationConfig, iterate, respace_sequence
from polyrespace.oracle import random_curve

SVG = "{http://www.w3.org/2000/svg}"


# --- curve CSV -------------------------------------------------------------------


def test_read_csv_examples():
    C = read_csv("0,0\n0,2\n4,2")
    assert C.dim == 2 and len(C) == 3 and not C.closed
    assert read_csv("0,0\n1,0\n0,0").closed
    with pytest.raises(ParseError) as err:
        read_csv("0,0\n1")
    assert err.value.line == 2


def test_read_csv_comments_whitespace_crlf():
    C = read_csv(b"# header\r\n\r\n0 0\r\n1.5,\t2\r\n  # note\r\n3 ,4\r\n")
    assert C.vertices.tolist() == [[0, 0], [1.5, 2], [3, 4]]


@pytest.mark.parametrize(
    "text, exc",
    [
        ("0,0\n", TooFewVertices),
        ("", TooFewVertices),
        ("0,0\nx,1\n", ParseError),
        ("0,0\n1,nan\n", ParseError),
        ("0,0\n1,0,0\n", DimensionMismatch),
        (b"\xff\xfe", ParseError),
    ],
)
def test_read_csv_errors(text, exc):
    with pytest.raises(exc):
        read_csv(text)


def test_write_csv_examples():
    assert write_csv(PolygonalCurve([(0, 0), (1, 0)])) == "0,0\n1,0\n"
    out = write_csv(PolygonalCurve([(0, 0, 1), (1, 0, 2)]))
    assert all(len(line.split(",")) == 3 for line in out.splitlines())


def test_csv_roundtrip_random(rng):
    for _ in range(20):
        C = random_curve(rng, 49, int(rng.integers(1, 5)))
        D = read_csv(write_csv(C))
        assert np.array_equal(C.vertices, D.vertices)


@settings(max_examples=200)
@given(
    arrays(
        np.float64,
        st.tuples(st.integers(2, 20), st.integers(1, 4)),
        elements=st.floats(allow_nan=False, allow_infinity=False),
    )
)
def test_csv_roundtrip_bit_exact(v):
    C = PolygonalCurve(v)
    D = read_csv(write_csv(C))
    assert C.vertices.tobytes() == D.vertices.tobytes()


# --- trace CSV ---------------------------------------------------------------------


def test_trace_csv_single_record():
    C = PolygonalCurve([(0, 0), (1, 0), (2, 0)])
    _, trace = iterate(C)
    lines = write_trace_csv(trace).splitlines()
    assert lines == [TRACE_HEADER, "0,0,,1,1,2,"]


def test_trace_csv_columns(rng):
    C = random_curve(rng, 20)
    _, trace = iterate(C, IterationConfig(max_iters=30))
    text = write_trace_csv(trace)
    rows = [line.split(",") for line in text.splitlines()]
    assert len(rows) == len(trace) + 1
    assert rows[1][2] == "" and rows[1][6] == ""
    lengths = [float(r[5]) for r in rows[1:]]
    assert all(b <= a for a, b in zip(lengths, lengths[1:]))
    assert float(rows[2][2]) == pytest.approx(float(rows[2][1]) / float(rows[1][1]))


def test_trace_csv_equilateral_sigma_zero():
    trace = respace_sequence(PolygonalCurve([(0, 0), (0, 1), (1, 1), (1, 2)]), 3)
    rows = [line.split(",") for line in write_trace_csv(trace).splitlines()[1:]]
    assert all(float(r[1]) == 0.0 for r in rows)


def test_trace_csv_row_selection(rng):
    trace = respace_sequence(random_curve(rng, 10), 6)
    rows = write_trace_csv(trace, rows=[0, 5]).splitlines()
    assert [r.split(",")[0] for r in rows[1:]] == ["0", "5"]
    # ratio still relative to iteration 4
    assert float(rows[2].split(",")[2]) == pytest.approx(trace[5].stats.sigma / trace[4].stats.sigma)


# --- structured document --------------------------------------------------------------


def test_document_roundtrip(rng):
    C = random_curve(rng, 30, 3)
    doc = CurveDocument(C, "walk", {"source": "test", "seed": "7"})
    back = loads_document(dumps_document(doc))
    assert back.name == "walk" and back.metadata == doc.metadata
    assert back.curve.vertices.tobytes() == C.vertices.tobytes()


def test_document_errors():
    with pytest.raises(ParseError):
        loads_document("{not json")
    with pytest.raises(ParseError):
        loads_document('{"vertices": [[0, 0]]}')


# --- SVG -------------------------------------------------------------------------------


def test_svg_single_segment():
    root = ET.fromstring(render_svg([PolygonalCurve([(0, 0), (1, 0)])]))
    polys = root.findall(f".//{SVG}polyline")
    assert len(polys) == 1
    assert len(polys[0].get("points").split()) == 2
    assert len(root.findall(f".//{SVG}circle")) == 2


def test_svg_overlay_distinct_styles(ell):
    from polyrespace.curve import respace

    svg = render_svg([(ell, SvgStyle(stroke="#000")), (respace(ell), SvgStyle(stroke="#f00", dash="4 2"))])
    polys = ET.fromstring(svg).findall(f".//{SVG}polyline")
    assert [p.get("stroke") for p in polys] == ["#000", "#f00"]


def test_svg_y_axis_flipped_and_margin():
    root = ET.fromstring(render_svg([PolygonalCurve([(0, 0), (0, 1)])], RenderOptions(width=100)))
    pts = [tuple(map(float, p.split(","))) for p in root.find(f".//{SVG}polyline").get("points").split()]
    (x0, y0), (x1, y1) = pts
    assert y1 < y0  # +y drawn upward
    # 5% of the data extent is padded on each side: 100 px spans 1.1 units
    assert y1 == pytest.approx(0.05 * 100 / 1.1, abs=1e-3)
    assert y0 == pytest.approx(1.05 * 100 / 1.1, abs=1e-3)


def test_svg_dimension_handling():
    C3 = PolygonalCurve([(0, 0, 0), (1, 2, 3)])
    with pytest.raises(UnsupportedDimension):
        render_svg([C3])
    with pytest.raises(UnsupportedDimension):
        render_svg([C3], RenderOptions(project=(0, 5)))
    ET.fromstring(render_svg([C3], RenderOptions(project=(0, 2))))


def test_svg_row_layout(rng):
    curves = [random_curve(rng, 5) for _ in range(3)]
    root = ET.fromstring(render_svg(curves, RenderOptions(layout="row")))
    assert len(root.findall(f".//{SVG}polyline")) == 3


def test_svg_deterministic(rng):
    C = random_curve(rng, 10)
    assert render_svg([C]) == render_svg([C])
