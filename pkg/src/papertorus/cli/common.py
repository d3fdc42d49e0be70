"""Shared plumbing for CLI commands: run context, input loading, exit codes."""

from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from rich.console import Console

from papertorus.adapters.torus_file import read_torus
from papertorus.core.errors import CertificationFailure, PaperTorusError, ParseError
from papertorus.core.models import Configuration, RunManifest
from papertorus.logging import get_logger
from papertorus.settings import get_settings

console = Console()
err_console = Console(stderr=True)
logger = get_logger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class RunContext:
    """Global flags resolved once in the app callback."""

    seed: int
    precision: int
    threads: int
    out_dir: Path


def run_context(ctx: typer.Context) -> RunContext:
    if isinstance(ctx.obj, RunContext):
        return ctx.obj
    s = get_settings()
    return RunContext(seed=s.seed, precision=s.precision, threads=s.threads, out_dir=s.output_dir)


def fail(message: str, code: int = EXIT_FAILURE) -> None:
    err_console.print(f"[red]{message}[/red]")
    raise typer.Exit(code)


def load_torus(path: Path, precision: Optional[int] = None) -> Configuration:
    """Read a torus file or exit with the usage code."""
    if not path.exists():
        fail(f"Torus file not found: {path}", EXIT_USAGE)
    try:
        return read_torus(path, precision)
    except ParseError as exc:
        fail(f"{path}: {exc}", EXIT_USAGE)
    raise AssertionError("unreachable")


@dataclass
class Run:
    """Collects outputs of one subcommand and writes its manifest."""

    subcommand: str
    context: RunContext
    inputs: List[Path] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    outputs: List[Path] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.context.out_dir.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        """Output path inside the run directory; recorded in the manifest."""
        p = self.context.out_dir / name
        self.outputs.append(p)
        return p

    def manifest(self, exit_code: int) -> RunManifest:
        return RunManifest(
            subcommand=self.subcommand,
            input_paths=[str(p) for p in self.inputs],
            seed=self.context.seed,
            precision=self.context.precision,
            threads=self.context.threads,
            output_dir=str(self.context.out_dir),
            config={k: v if isinstance(v, (int, float, bool, type(None))) else str(v) for k, v in self.config.items()},
            outputs=[p.name for p in self.outputs],
            exit_code=exit_code,
        )

    def finish(self, exit_code: int = 0) -> None:
        self.manifest(exit_code).write(self.context.out_dir)
        if exit_code:
            raise typer.Exit(exit_code)


@contextmanager
def guarded(run: Run) -> Iterator[None]:
    """
    Map domain failures to exit codes, always leaving a manifest behind.

    Certification and proof failures (and other computational failures)
    exit 1; malformed inputs exit 2.
    """
    try:
        yield
    except ParseError as exc:
        err_console.print(f"[red]{exc}[/red]")
        run.finish(EXIT_USAGE)
    except CertificationFailure as exc:
        logger.error(str(exc), extra={"event": f"{run.subcommand}.failed", "error": type(exc).__name__})
        err_console.print(f"[red]{type(exc).__name__}: {exc}[/red]")
        run.finish(EXIT_FAILURE)
    except PaperTorusError as exc:
        err_console.print(f"[red]{type(exc).__name__}: {exc}[/red]")
        run.finish(EXIT_FAILURE)
