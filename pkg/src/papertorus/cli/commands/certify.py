"""certify-embedding, certify-ift and verify commands."""

from pathlib import Path
from typing import List, Optional

import typer
from rich.progress import Progress, SpinnerColumn, TextColumn

from papertorus.adapters.bundle import CertificateBundle, read_bundle, scale_exponent, write_bundle
from papertorus.certifier.bounds import crude_bound_certificate
from papertorus.certifier.ift import chain_table, ift_certificate
from papertorus.certifier.separation import (
    certify_robust_embedding,
    default_margin,
    relevant_pairs,
    replay_certificate,
    robustness_radius,
)
from papertorus.cli.common import EXIT_FAILURE, EXIT_USAGE, Run, console, fail, guarded, load_torus, run_context
from papertorus.core.errors import ParseError
from papertorus.geometry.exact import scale_to_integers
from papertorus.logging import get_logger, should_show_progress
from papertorus.render.reports import render_text_report, write_sidecar, write_text
from papertorus.settings import get_settings

logger = get_logger(__name__)


def certify_embedding_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Torus file (papertorus v1)"),
    grid: Optional[int] = typer.Option(None, "--grid", help="Directions L with max |L_i| = grid (default: 300)"),
    scale_exponent_opt: Optional[int] = typer.Option(None, "--scale-exponent", help="Coordinates scaled by 10**k (default: 32)"),
    margin: Optional[int] = typer.Option(None, "--margin", help="Required integer margin (default: 6% of the scale)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads"),
    bundle: Optional[Path] = typer.Option(None, "--bundle", help="Bundle path (default: <out>/certificates.txt)"),
) -> None:
    """Exact separation certificates for every disjoint and one-shared face pair."""
    rc = run_context(ctx)
    settings = get_settings()
    if threads is not None:
        rc.threads = threads
    grid = grid or settings.grid
    exponent = scale_exponent_opt or settings.scale_exponent
    c = load_torus(torus, max(rc.precision, exponent))
    run = Run("certify-embedding", rc, inputs=[torus], config={"grid": grid, "scale_exponent": exponent, "margin": margin})
    with guarded(run):
        sc = scale_to_integers(c, exponent)
        required = default_margin(sc.scale) if margin is None else margin
        if should_show_progress():
            with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"), transient=True) as progress:
                progress.add_task(f"Certifying {len(relevant_pairs(sc))} face pairs", total=None)
                certificates = certify_robust_embedding(sc, grid, required, rc.threads)
        else:
            certificates = certify_robust_embedding(sc, grid, required, rc.threads)

    bundle_path = bundle if bundle is not None else run.path("certificates.txt")
    if bundle is not None:
        run.outputs.append(bundle)
    write_bundle(CertificateBundle(sc.scale, grid, required, certificates), bundle_path)
    radius = min(robustness_radius(cert, sc.scale, grid) for cert in certificates)
    disjoint = sum(1 for cert in certificates if cert.kind == "disjoint")
    payload = {
        "certificates": len(certificates),
        "disjoint": disjoint,
        "shared_vertex": len(certificates) - disjoint,
        "min_margin": str(min(cert.margin for cert in certificates)),
        "required_margin": str(required),
        "robustness_radius": float(radius),
        "bundle": str(bundle_path),
    }
    write_sidecar(run.path("certify-embedding.json"), payload)
    rows = [(k.replace("_", " "), v) for k, v in payload.items()]
    write_text(run.path("certify-embedding.txt"), render_text_report(f"Robust embedding of {torus.name}", rows))
    console.print(
        f"[green]{len(certificates)} certificates[/green] ({disjoint} disjoint, "
        f"{len(certificates) - disjoint} shared-vertex), robust to {float(radius):.1e}"
    )
    run.finish(0)


def _replay_bundle(bundle: CertificateBundle, torus_path: Path, precision: int) -> List[str]:
    """Problems found replaying ``bundle`` against the torus (empty when it checks out)."""
    exponent = scale_exponent(bundle.scale)
    if exponent is None:
        return [f"scale {bundle.scale} is not a power of ten"]
    c = load_torus(torus_path, max(precision, exponent))
    sc = scale_to_integers(c, exponent)
    problems = []
    if bundle.min_margin < default_margin(sc.scale):
        problems.append(f"declared margin {bundle.min_margin} below {default_margin(sc.scale)}")
    expected = relevant_pairs(sc)
    stated = [cert.pair for cert in bundle.certificates]
    if stated != expected:
        problems.append("certified pairs differ from the relevant pairs of the torus")
    for cert in bundle.certificates:
        if not replay_certificate(sc, cert, bundle.grid, bundle.min_margin):
            problems.append(f"certificate for pair {cert.pair} does not replay")
    return problems


def certify_ift_command(
    ctx: typer.Context,
    torus: Path = typer.Argument(..., help="Pup tent torus file (papertorus v1)"),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working digits (re-checked at twice this)"),
    bundle: Optional[Path] = typer.Option(
        None, "--bundle", help="Existing certificate bundle: replayed as the embedding step, footer updated"
    ),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads for the embedding step"),
) -> None:
    """Crude bound plus the inverse-function-theorem chain: a flat torus exists within 1e-13."""
    rc = run_context(ctx)
    if precision is not None:
        rc.precision = precision
    if threads is not None:
        rc.threads = threads
    settings = get_settings()
    c = load_torus(torus, rc.precision)
    run = Run("certify-ift", rc, inputs=[torus] + ([bundle] if bundle else []))

    parsed: Optional[CertificateBundle] = None
    with guarded(run):
        if bundle is not None:
            if not bundle.exists():
                fail(f"Bundle not found: {bundle}", EXIT_USAGE)
            parsed = read_bundle(bundle)
            problems = _replay_bundle(parsed, torus, rc.precision)
            if problems:
                for problem in problems:
                    console.print(f"[red]{problem}[/red]")
                run.finish(EXIT_FAILURE)
        else:
            sc = scale_to_integers(c.with_precision(max(rc.precision, settings.scale_exponent)), settings.scale_exponent)
            certify_robust_embedding(sc, settings.grid, threads=rc.threads)
        crude = crude_bound_certificate(c)
        cert = ift_certificate(c, rc.precision, crude)

    if parsed is not None and bundle is not None:
        parsed.footer = chain_table(cert)
        write_bundle(parsed, bundle)
        run.outputs.append(bundle)
    payload = {"crude_bound": crude.model_dump(mode="json", exclude={"vector_bounds"}), "existence": cert.model_dump(mode="json")}
    payload["existence"]["valid"] = cert.valid
    write_sidecar(run.path("certify-ift.json"), payload)
    sections = [{"heading": "Chain", "lines": [f"[{'ok' if ok else 'FAIL'}] {name}" for name, ok in cert.links]}]
    rows = list(chain_table(cert).items()) + [
        ("g11_max", f"{crude.g11_max:.4g}"),
        ("g12_max", f"{crude.g12_max:.4g}"),
        ("cross norm range", f"[{crude.min_cross_norm:.4f}, {crude.max_cross_norm:.4f}]"),
        ("vector norm range", f"[{crude.min_vector_norm:.4f}, {crude.max_vector_norm:.4f}]"),
    ]
    write_text(run.path("certify-ift.txt"), render_text_report(f"Existence certificate for {torus.name}", rows, sections))
    console.print(f"[green]Flat torus exists within {cert.conclusion_radius}[/green] of the given heights")
    run.finish(0)


def verify_command(
    ctx: typer.Context,
    bundle: Path = typer.Argument(..., help="Certificate bundle"),
    torus: Path = typer.Argument(..., help="Torus file the bundle certifies"),
) -> None:
    """Replay a certificate bundle; exit 1 on any mismatch."""
    rc = run_context(ctx)
    if not bundle.exists():
        fail(f"Bundle not found: {bundle}", EXIT_USAGE)
    run = Run("verify", rc, inputs=[bundle, torus])
    with guarded(run):
        try:
            parsed = read_bundle(bundle)
        except ParseError as exc:
            # a bundle that does not parse does not verify
            console.print(f"[red]{bundle}: {exc}[/red]")
            run.finish(EXIT_FAILURE)
            return
        problems = _replay_bundle(parsed, torus, rc.precision)
        if parsed.footer and not problems:
            c = load_torus(torus, rc.precision)
            recomputed = chain_table(ift_certificate(c, rc.precision, crude_bound_certificate(c)))
            for key, value in parsed.footer.items():
                if recomputed.get(key) != value:
                    problems.append(f"footer {key} = {value}, recomputed {recomputed.get(key)}")

    write_sidecar(
        run.path("verify.json"),
        {"certificates": len(parsed.certificates), "footer": bool(parsed.footer), "problems": problems},
    )
    if problems:
        for problem in problems:
            console.print(f"[red]{problem}[/red]")
        logger.warning("Bundle rejected", extra={"event": "verify.failed", "problems": len(problems)})
        run.finish(EXIT_FAILURE)
    console.print(f"[green]{len(parsed.certificates)} certificates replayed[/green]")
    run.finish(0)
