"""Main Typer application."""

import os
from pathlib import Path
from typing import Optional

import typer

from papertorus.cli.commands import (
    certify_embedding_command,
    certify_ift_command,
    develop_command,
    flatness_command,
    hull_command,
    jacobian_command,
    newton_command,
    prove7_command,
    search_command,
    show_config_command,
    slice_command,
    verify_command,
)
from papertorus.cli.common import RunContext
from papertorus.logging import configure_logging
from papertorus.settings import get_settings

app = typer.Typer(help="Paper tori: Hull Lemma prover and pup tent certification", no_args_is_help=True)


@app.callback()
def main(
    ctx: typer.Context,
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed (default: PTX_SEED or 0)"),
    precision: Optional[int] = typer.Option(None, "--precision", help="Working decimal digits (default: PTX_PRECISION or 64)"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads (default: PTX_THREADS or 1)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory (default: PTX_OUTPUT_DIR or ./output)"),
    log_mode: str = typer.Option(
        os.getenv("PTX_LOG_MODE", "auto"),
        "--log-mode",
        help="Logging mode: human (Rich console), hybrid (Rich console + JSON file), machine (JSON only), or auto",
    ),
    log_format: str = typer.Option(
        os.getenv("PTX_LOG_FORMAT", "json"),
        "--log-format",
        help="Log format: json, rich, or plain (used when mode does not decide it)",
    ),
    log_level: str = typer.Option(
        os.getenv("PTX_LOG_LEVEL", "INFO"),
        "--log-level",
        help="Log level: DEBUG, INFO, WARNING, ERROR",
    ),
    log_file: Optional[Path] = typer.Option(
        os.getenv("PTX_LOG_FILE") if os.getenv("PTX_LOG_FILE") else None,
        "--log-file",
        help="Optional file path to write logs to (JSON format)",
    ),
    third_party_log_level: str = typer.Option(
        os.getenv("PTX_THIRD_PARTY_LOG_LEVEL", "WARNING"),
        "--third-party-log-level",
        help="Log level for third-party libraries: WARNING, ERROR, INFO",
    ),
) -> None:
    """Configure logging and resolve the global flags before command execution."""
    configure_logging(
        level=log_level,
        format=log_format,
        log_file=log_file,
        third_party_level=third_party_log_level,
        mode=log_mode,  # type: ignore
    )
    settings = get_settings()
    ctx.obj = RunContext(
        seed=settings.seed if seed is None else seed,
        precision=settings.precision if precision is None else precision,
        threads=settings.threads if threads is None else threads,
        out_dir=settings.output_dir if out is None else out,
    )


# Register commands with explicit names
app.command(name="prove7")(prove7_command)
app.command(name="flatness")(flatness_command)
app.command(name="jacobian")(jacobian_command)
app.command(name="newton")(newton_command)
app.command(name="search")(search_command)
app.command(name="hull")(hull_command)
app.command(name="certify-embedding")(certify_embedding_command)
app.command(name="certify-ift")(certify_ift_command)
app.command(name="develop")(develop_command)
app.command(name="slice")(slice_command)
app.command(name="verify")(verify_command)
app.command(name="show-config")(show_config_command)
