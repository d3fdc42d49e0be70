"""Unit tests for reports, figures and CSV tables."""

import json
from pathlib import Path

from mpmath import mpf

from papertorus.adapters.tables import (
    TRACE_FIELDS,
    read_rows,
    write_newton_csv,
    write_slice_csv,
    write_trace_csv,
)
from papertorus.core.models import NewtonTrace, Plane, SliceResult, TraceRow
from papertorus.geometry.development import develop
from papertorus.geometry.hull import convex_hull
from papertorus.geometry.puptent import published_pup_tent
from papertorus.render.figures import render_development_svg, render_projection_svg, render_slice_svg
from papertorus.render.reports import render_text_report, write_sidecar

SQUARE = ((mpf(0), mpf(0)), (mpf(1), mpf(0)), (mpf(1), mpf(1)), (mpf(0), mpf(1)))


def _slice() -> SliceResult:
    plane = Plane(point=(mpf(0), mpf(0), mpf(0)), normal=(mpf(0), mpf(1), mpf(0)))
    return SliceResult(plane=plane, loops=(SQUARE, tuple((x + 3, y) for x, y in SQUARE)))


def test_text_report_layout():
    text = render_text_report(
        "Flatness",
        [("max_deviation", "1e-40"), ("surface_area", 2)],
        [{"heading": "Notes", "lines": ["first", "second"]}],
    )
    lines = text.splitlines()
    assert lines[0] == "Flatness"
    assert lines[1] == "=" * len("Flatness")
    assert lines[2] == "max_deviation".ljust(32) + " 1e-40"
    assert "Notes" in lines
    assert lines[-2:] == ["first", "second"]


def test_sidecar_is_sorted_and_stable(tmp_path: Path):
    path = tmp_path / "nested" / "out.json"
    write_sidecar(path, {"b": 1, "a": {"d": 2, "c": mpf("0.5")}})
    first = path.read_text(encoding="utf-8")
    write_sidecar(path, {"a": {"c": mpf("0.5"), "d": 2}, "b": 1})
    assert path.read_text(encoding="utf-8") == first
    assert list(json.loads(first)) == ["a", "b"]
    assert json.loads(first)["a"]["c"] == "0.5"


def test_slice_svg_has_one_polygon_per_loop():
    svg = render_slice_svg(_slice(), title="xz <slice>")
    assert svg.startswith("<svg")
    assert svg.count("<polygon") == 2
    assert "xz &lt;slice&gt;" in svg


def test_pup_tent_figures():
    c = published_pup_tent(64)
    projection = render_projection_svg(c, convex_hull(c), title="top view")
    assert projection.count("<polygon") == len(c.triangulation.faces)
    assert "#4a78c2" in projection
    development = render_development_svg(develop(c), title="development")
    assert "<svg" in development
    assert "<title>development</title>" in development


def test_slice_csv(tmp_path: Path):
    path = tmp_path / "slice.csv"
    write_slice_csv(path, _slice())
    rows = read_rows(path)
    assert len(rows) == 8
    assert {row["loop_id"] for row in rows} == {"0", "1"}
    assert float(rows[4]["x"]) == 3.0


def test_trace_and_newton_csv(tmp_path: Path):
    trace = [
        TraceRow(iteration=0, max_deviation=0.3, face_number=6, min_dihedral=0.1),
        TraceRow(iteration=7, max_deviation=0.02, face_number=6, min_dihedral=0.09),
    ]
    write_trace_csv(tmp_path / "trace.csv", trace)
    rows = read_rows(tmp_path / "trace.csv")
    assert list(rows[0]) == TRACE_FIELDS
    assert [row["iteration"] for row in rows] == ["0", "7"]

    newton = NewtonTrace(deviations=[mpf("1e-8"), mpf("1e-17"), mpf("1e-35")])
    write_newton_csv(tmp_path / "newton.csv", newton)
    rows = read_rows(tmp_path / "newton.csv")
    assert [row["iteration"] for row in rows] == ["0", "1", "2"]
    assert newton.iterations == 2
