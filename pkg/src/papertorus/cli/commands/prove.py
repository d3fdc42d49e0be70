"""prove7 command."""

from typing import List, Optional

import typer

from papertorus.adapters.proof_log import write_proof_log
from papertorus.cli.common import EXIT_FAILURE, Run, console, guarded, run_context
from papertorus.combinatorics.hull_lemma import prove_hull_lemma
from papertorus.core.errors import InternalInconsistency
from papertorus.core.models import PatternOutcome
from papertorus.render.reports import render_text_report, write_sidecar, write_text


def prove7_command(
    ctx: typer.Context,
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default: global --threads)"),
) -> None:
    """Replay the 7-vertex Hull Lemma enumeration and write the proof log."""
    rc = run_context(ctx)
    if threads is not None:
        rc.threads = threads
    run = Run("prove7", rc, config={"threads": rc.threads})

    outcomes: List[PatternOutcome] = []
    with guarded(run):
        try:
            report = prove_hull_lemma(threads=rc.threads, outcomes=outcomes)
        except InternalInconsistency as exc:
            console.print(f"[red]Hull Lemma proof failed: {exc}[/red]")
            run.finish(EXIT_FAILURE)
            return

    write_proof_log(outcomes, report, run.path("prove7.log"))
    write_sidecar(run.path("prove7.json"), report.model_dump(mode="json"))
    rows = [
        ("patterns", report.total_patterns),
        ("after degree filter", report.after_degree_filter),
        ("survivors", len(report.survivors)),
        ("automorphism group order", report.automorphism_group_order),
        ("survivors form one orbit", "yes" if report.single_orbit else "no"),
    ]
    survivors = [
        f"#{pid}  {p.label()}  witness vertex {w}"
        for pid, p, w in zip(report.survivor_ids, report.survivors, report.survivor_witness)
    ]
    write_text(
        run.path("prove7.txt"),
        render_text_report("Hull Lemma (7 vertices)", rows, [{"heading": "Survivors", "lines": survivors}]),
    )
    console.print(
        f"[green]Hull Lemma:[/green] {report.total_patterns} patterns, "
        f"{report.after_degree_filter} after degree filter, {len(report.survivors)} survivors, "
        f"all with a witness vertex"
    )
    run.finish(0)
