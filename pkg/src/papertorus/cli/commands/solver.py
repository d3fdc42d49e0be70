"""jacobian, newton and search commands."""

from pathlib import Path
from typing import Optional

import mpmath
import typer
from rich.progress import Progress, SpinnerColumn, TextColumn

from papertorus.adapters.search_spec import load_search_spec
from papertorus.adapters.tables import write_newton_csv, write_trace_csv
from papertorus.adapters.torus_file import bundled_pup_tent, write_torus
from papertorus.cli.common import EXIT_FAILURE, EXIT_USAGE, Run, console, fail, guarded, load_torus, run_context
from papertorus.core.models import NewtonTrace, PupTentParams
from papertorus.core.models.geometry import fmt
from papertorus.geometry.puptent import PUBLISHED_Z, build_pup_tent, params_from_configuration
from papertorus.logging import should_show_progress
from papertorus.render.reports import render_text_report, write_sidecar, write_text
from papertorus.solver.angle_map import angle_map, jacobian
from papertorus.solver.newton import newton_refine, truncate_digits
from papertorus.solver.search import run_chains


def jacobian_command(
    ctx: typer.Context,
    torus: Optional[Path] = typer.Option(None, "--torus", help="Pup tent torus file (default: shipped fixture)"),
    mode: str = typer.Option("analytic", "--mode", help="analytic or central differences"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working digits"),
) -> None:
    """dF of the pup tent angle map and its inverse."""
    if mode not in ("analytic", "central"):
        fail(f"Unknown mode: {mode}", EXIT_USAGE)
    rc = run_context(ctx)
    if precision is not None:
        rc.precision = precision
    c = load_torus(torus, rc.precision) if torus else bundled_pup_tent(rc.precision)
    run = Run("jacobian", rc, inputs=[torus] if torus else [], config={"mode": mode})
    with guarded(run):
        report = jacobian(params_from_configuration(c), rc.precision, mode=mode)  # type: ignore[arg-type]

    payload = report.to_dict()
    write_sidecar(run.path("jacobian.json"), payload)
    sections = [
        {"heading": "dF", "lines": ["  ".join(f"{float(x):+.6f}" for x in row) for row in report.matrix]},
        {"heading": "dF^-1", "lines": ["  ".join(f"{float(x):+.6f}" for x in row) for row in report.inverse or ()]},
    ]
    rows = [
        ("mode", mode),
        ("determinant", payload["determinant"]),
        ("inf norm of inverse", payload["inf_norm_of_inverse"]),
        ("asymmetry", payload["asymmetry_inf"]),
    ]
    write_text(run.path("jacobian.txt"), render_text_report("Jacobian of the angle map", rows, sections))
    for line in sections[0]["lines"]:
        console.print(line)
    run.finish(0)


def newton_command(
    ctx: typer.Context,
    target: str = typer.Option("1e-60", "--target", help="Stop once max |theta - 2pi| <= target"),
    start_digits: int = typer.Option(8, "--start-digits", help="Truncate the published heights to this many digits to start"),
    start: Optional[Path] = typer.Option(None, "--start", help="Start from the heights of this pup tent file instead"),
    max_iterations: int = typer.Option(20, "--max-iterations", help="Iteration cap"),
    precision: Optional[int] = typer.Option(128, "--precision", "-p", help="Working digits"),
) -> None:
    """Refine the pup tent heights by Newton's method at high precision."""
    rc = run_context(ctx)
    if precision is not None:
        rc.precision = precision
    try:
        mpmath.mpf(target)
    except ValueError:
        fail(f"--target needs a number, got {target!r}", EXIT_USAGE)
    if start is not None:
        p0 = params_from_configuration(load_torus(start, rc.precision))
    else:
        with mpmath.workdps(rc.precision):
            p0 = PupTentParams.from_values(
                *(truncate_digits(mpmath.mpf(z), start_digits) for z in PUBLISHED_Z), precision=rc.precision
            )
    run = Run(
        "newton",
        rc,
        inputs=[start] if start else [],
        config={"target": target, "start_digits": start_digits, "max_iterations": max_iterations},
    )
    trace = NewtonTrace()
    with guarded(run):
        p = newton_refine(p0, mpmath.mpf(target), rc.precision, max_iterations, trace)
        write_newton_csv(run.path("newton.csv"), trace)
        with mpmath.workdps(rc.precision):
            deviation = angle_map(p, rc.precision).deviation()
            digits32 = [truncate_digits(z, 32) for z in p.as_tuple()]

    write_torus(build_pup_tent(p, rc.precision), run.path("newton.pt"))
    payload = {
        "start": p0.to_dict(),
        "heights": p.to_dict(digits=min(rc.precision, 60)),
        "deviation": fmt(deviation, 5),
        "iterations": trace.iterations,
        "deviations": [fmt(d, 5) for d in trace.deviations],
        "first_32_digits": digits32,
        "matches_published": digits32 == list(PUBLISHED_Z),
    }
    write_sidecar(run.path("newton.json"), payload)
    rows = [(f"z{i}", z) for i, z in enumerate(digits32)]
    rows += [
        ("iterations", trace.iterations),
        ("deviation", payload["deviation"]),
        ("matches published heights", "yes" if payload["matches_published"] else "no"),
    ]
    write_text(run.path("newton.txt"), render_text_report("Newton refinement", rows))
    console.print(f"converged in {trace.iterations} iterations, deviation {payload['deviation']}")
    for i, z in enumerate(digits32):
        console.print(f"z{i} = {z}")
    run.finish(0)


def search_command(
    ctx: typer.Context,
    spec_path: Path = typer.Argument(..., help="Search spec (key=value file)"),
    chains: int = typer.Option(8, "--chains", help="Independent seeded chains"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of the first chain (default: spec, then global --seed)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Digits of the written configuration"),
    require: Optional[float] = typer.Option(None, "--require", help="Exit 1 unless the best chain gets below this"),
) -> None:
    """Constrained hill climbing towards a flat embedded torus."""
    rc = run_context(ctx)
    if threads is not None:
        rc.threads = threads
    if precision is not None:
        rc.precision = precision
    if chains < 1:
        fail("--chains must be at least 1", EXIT_USAGE)
    run = Run("search", rc, inputs=[spec_path], config={"chains": chains, "require": require})
    with guarded(run):
        spec = load_search_spec(spec_path)
        if seed is not None:
            spec = spec.model_copy(update={"seed": seed})
        rc.seed = spec.seed
        if should_show_progress():
            with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"), transient=True) as progress:
                progress.add_task(f"Hill climbing {chains} chains", total=None)
                best, results = run_chains(spec, chains=chains, threads=rc.threads, precision=rc.precision)
        else:
            best, results = run_chains(spec, chains=chains, threads=rc.threads, precision=rc.precision)

    write_torus(best.configuration, run.path("search.pt"))
    for result in results:
        write_trace_csv(run.path(f"search.trace.seed{result.seed}.csv"), result.trace)
    payload = {
        "spec": spec.model_dump(mode="json"),
        "best_seed": best.seed,
        "chains": [
            {
                "seed": r.seed,
                "max_deviation": r.max_deviation,
                "face_number": r.face_number,
                "accepted": len(r.trace) - 1,
                "iterations": r.iterations,
            }
            for r in results
        ],
    }
    write_sidecar(run.path("search.json"), payload)
    rows = [(f"seed {r.seed}", f"{r.max_deviation:.3e}  K={r.face_number}") for r in results]
    rows.append(("best", f"seed {best.seed}: {best.max_deviation:.3e}"))
    write_text(run.path("search.txt"), render_text_report("Hill-climbing search", rows))
    console.print(f"best chain seed {best.seed}: max deviation {best.max_deviation:.3e}, face number {best.face_number}")
    if require is not None and best.max_deviation >= require:
        console.print(f"[red]no chain reached {require:g}[/red]")
        run.finish(EXIT_FAILURE)
    run.finish(0)
