"""show-config command."""

import typer
from rich.table import Table

from papertorus import __version__
from papertorus.cli.common import console, run_context
from papertorus.settings import get_settings


def show_config_command(ctx: typer.Context) -> None:
    """Print the effective settings (PTX_* environment plus global flags)."""
    rc = run_context(ctx)
    settings = get_settings().model_copy(
        update={"seed": rc.seed, "precision": rc.precision, "threads": rc.threads, "output_dir": rc.out_dir}
    )
    table = Table(title=f"papertorus {__version__}")
    table.add_column("setting")
    table.add_column("value")
    for key, value in settings.model_dump().items():
        table.add_row(key, str(value))
    table.add_row("scale", str(settings.scale))
    console.print(table)
