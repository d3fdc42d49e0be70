"""flatness, hull, develop and slice commands."""

from pathlib import Path
from typing import List, Optional

import mpmath
import typer

from papertorus.adapters.tables import write_lifts_csv, write_slice_csv
from papertorus.cli.common import EXIT_FAILURE, EXIT_USAGE, Run, console, fail, guarded, load_torus, run_context
from papertorus.core.models.geometry import fmt
from papertorus.geometry.angles import cone_angles, surface_area
from papertorus.geometry.development import (
    alignment_residual,
    covolume,
    develop,
    edge_length_mismatch,
    reduced_gram,
)
from papertorus.geometry.hull import convex_hull
from papertorus.geometry.intersection import is_embedded_float
from papertorus.geometry.puptent import PUBLISHED_DEVELOPMENT
from papertorus.geometry.slicing import loops_are_simple_and_disjoint, make_plane, slice_plane
from papertorus.render.figures import render_development_svg, render_projection_svg, render_slice_svg
from papertorus.render.reports import render_text_report, write_sidecar, write_text
from papertorus.settings import get_settings


def _precision(ctx: typer.Context, precision: Optional[int]) -> int:
    rc = run_context(ctx)
    if precision is not None:
        rc.precision = precision
    return rc.precision


def flatness_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Torus file (papertorus v1)"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working digits (default: global --precision)"),
    require: Optional[str] = typer.Option(None, "--require", help="Exit 1 unless max deviation <= this"),
) -> None:
    """Cone angles at every vertex and the max deviation from 2*pi."""
    digits = _precision(ctx, precision)
    if require is not None:
        try:
            mpmath.mpf(require)
        except ValueError:
            fail(f"--require needs a number, got {require!r}", EXIT_USAGE)
    c = load_torus(torus, digits)
    run = Run("flatness", run_context(ctx), inputs=[torus], config={"require": require})
    with guarded(run):
        with mpmath.workdps(digits):
            report = cone_angles(c)
            area = surface_area(c)
    payload = report.to_dict(digits=min(digits, 40))
    payload["surface_area"] = fmt(area, 20)
    payload["precision"] = digits
    write_sidecar(run.path("flatness.json"), payload)
    rows = [(f"theta_{v}", value) for v, value in enumerate(payload["cone_angles"])]
    rows += [("max_deviation", payload["max_deviation"]), ("surface_area", payload["surface_area"])]
    write_text(run.path("flatness.txt"), render_text_report(f"Flatness of {torus.name}", rows))
    console.print(f"max_deviation = {payload['max_deviation']}")

    if require is not None:
        with mpmath.workdps(digits):
            ok = report.max_deviation <= mpmath.mpf(require)
        if not ok:
            console.print(f"[red]max deviation exceeds {require}[/red]")
            run.finish(EXIT_FAILURE)
    run.finish(0)


def hull_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Torus file (papertorus v1)"),
    scale_exponent: Optional[int] = typer.Option(None, "--scale-exponent", help="Exact predicates on coordinates * 10**k"),
) -> None:
    """Exact convex hull: facets, vertices on the hull and face number."""
    rc = run_context(ctx)
    exponent = scale_exponent if scale_exponent is not None else get_settings().scale_exponent
    c = load_torus(torus, max(rc.precision, exponent))
    run = Run("hull", rc, inputs=[torus], config={"scale_exponent": exponent})
    with guarded(run):
        report = convex_hull(c, exponent)
        embedded = is_embedded_float(c)
    payload = report.model_dump(mode="json")
    payload["embedded_float"] = embedded
    write_sidecar(run.path("hull.json"), payload)
    write_text(run.path("hull.svg"), render_projection_svg(c, report, title=f"{torus.name} top view"))
    rows = [
        ("hull facets", len(report.facet_list)),
        ("vertices on hull", f"{sum(report.on_hull)}/{len(report.on_hull)}"),
        ("face number", report.face_number),
        ("hull edges", report.edge_count),
        ("embedded (float test)", "yes" if embedded else "no"),
    ]
    facets = [" ".join(str(v) for v in f) for f in report.torus_facets]
    write_text(
        run.path("hull.txt"),
        render_text_report(f"Convex hull of {torus.name}", rows, [{"heading": "Torus faces on the hull", "lines": facets}]),
    )
    console.print(
        f"{len(report.facet_list)} hull facets, {sum(report.on_hull)} vertices on hull, "
        f"face number {report.face_number}"
    )
    run.finish(0)


def develop_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Torus file (papertorus v1)"),
    base: int = typer.Option(0, "--base", help="Face placed first"),
    traversal: str = typer.Option("bfs", "--traversal", help="Dual spanning tree order: bfs or dfs"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working digits"),
    compare_published: bool = typer.Option(
        True, "--compare-published/--no-compare-published", help="Compare the lattice with the shipped pup tent development"
    ),
) -> None:
    """Unfold the torus into the plane: vertex lifts, lattice and holonomy."""
    if traversal not in ("bfs", "dfs"):
        fail(f"Unknown traversal: {traversal}", EXIT_USAGE)
    digits = _precision(ctx, precision)
    c = load_torus(torus, digits)
    if not 0 <= base < len(c.triangulation.faces):
        fail(f"Base face {base} out of range", EXIT_USAGE)
    run = Run("develop", run_context(ctx), inputs=[torus], config={"base": base, "traversal": traversal})
    with guarded(run):
        dev = develop(c, base=base, traversal=traversal)  # type: ignore[arg-type]
        with mpmath.workdps(digits):
            gram = reduced_gram(*dev.lattice)
            mismatch = edge_length_mismatch(c, dev)
            area = surface_area(c)
            cov = covolume(dev.lattice)
            residual = None
            if compare_published:
                published = tuple(tuple(mpmath.mpf(x) for x in row) for row in PUBLISHED_DEVELOPMENT["lattice"])
                residual = alignment_residual(dev, published)  # type: ignore[arg-type]

    payload = dev.to_dict()
    payload["reduced_gram"] = [[fmt(x, 20) for x in row] for row in gram]
    payload["edge_length_mismatch"] = fmt(mismatch, 5)
    payload["surface_area"] = fmt(area, 20)
    payload["covolume"] = fmt(cov, 20)
    payload["published_gram_residual"] = fmt(residual, 5) if residual is not None else None
    write_sidecar(run.path("develop.json"), payload)
    write_lifts_csv(run.path("develop.lifts.csv"), dev)
    write_text(run.path("develop.svg"), render_development_svg(dev, title=f"{torus.name} development"))
    rows: List = [
        ("lattice generator 1", " ".join(payload["lattice"][0])),
        ("lattice generator 2", " ".join(payload["lattice"][1])),
        ("rotational holonomy", " ".join(payload["rotational_holonomy"])),
        ("edge length mismatch", payload["edge_length_mismatch"]),
        ("surface area", payload["surface_area"]),
        ("lattice covolume", payload["covolume"]),
    ]
    if residual is not None:
        rows.append(("published Gram residual", payload["published_gram_residual"]))
    write_text(run.path("develop.txt"), render_text_report(f"Development of {torus.name}", rows))
    console.print(f"holonomy {payload['rotational_holonomy']}, covolume {fmt(cov, 12)}")
    run.finish(0)


def _triple(text: str, what: str) -> List[str]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        fail(f"{what} needs three numbers, got {text!r}", EXIT_USAGE)
    return parts


def slice_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Torus file (papertorus v1)"),
    point: str = typer.Option("0,0,0", "--point", help="A point on the plane, 'x,y,z'"),
    normal: str = typer.Option("0,1,0", "--normal", help="Plane normal, 'x,y,z' (default: the XZ plane)"),
    plane: Optional[str] = typer.Option(None, "--plane", help="Shorthand 'px,py,pz:nx,ny,nz'"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working digits"),
) -> None:
    """Intersect the torus with a plane and chain the pieces into loops."""
    if plane is not None:
        if ":" not in plane:
            fail("--plane expects 'px,py,pz:nx,ny,nz'", EXIT_USAGE)
        point, normal = plane.split(":", 1)
    digits = _precision(ctx, precision)
    p = _triple(point, "--point")
    n = _triple(normal, "--normal")
    c = load_torus(torus, digits)
    run = Run("slice", run_context(ctx), inputs=[torus], config={"point": point, "normal": normal})
    with guarded(run):
        try:
            plane_obj = make_plane(p, n, digits)
        except (ValueError, ZeroDivisionError):
            fail(f"Invalid plane {point}:{normal}", EXIT_USAGE)
        result = slice_plane(c, plane_obj)
        simple = loops_are_simple_and_disjoint(result)

    write_slice_csv(run.path("slice.csv"), result)
    write_text(run.path("slice.svg"), render_slice_svg(result, title=f"{torus.name} slice"))
    payload = {
        "plane": {
            "point": [fmt(x, 20) for x in result.plane.point],
            "normal": [fmt(x, 20) for x in result.plane.normal],
        },
        "loops": len(result.loops),
        "loop_sizes": [len(loop) for loop in result.loops],
        "open_chains": len(result.open_chains),
        "simple_and_disjoint": simple,
    }
    write_sidecar(run.path("slice.json"), payload)
    rows = [
        ("loops", payload["loops"]),
        ("loop sizes", " ".join(str(k) for k in payload["loop_sizes"])),
        ("open chains", payload["open_chains"]),
        ("simple and disjoint", "yes" if simple else "no"),
    ]
    write_text(run.path("slice.txt"), render_text_report(f"Slice of {torus.name}", rows))
    console.print(f"{len(result.loops)} loops")
    run.finish(0)
