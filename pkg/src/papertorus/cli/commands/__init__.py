"""CLI command modules."""

from papertorus.cli.commands.certify import certify_embedding_command, certify_ift_command, verify_command
from papertorus.cli.commands.config import show_config_command
from papertorus.cli.commands.geometry import develop_command, flatness_command, hull_command, slice_command
from papertorus.cli.commands.prove import prove7_command
from papertorus.cli.commands.solver import jacobian_command, newton_command, search_command

__all__ = [
    "certify_embedding_command",
    "certify_ift_command",
    "develop_command",
    "flatness_command",
    "hull_command",
    "jacobian_command",
    "newton_command",
    "prove7_command",
    "search_command",
    "show_config_command",
    "slice_command",
    "verify_command",
]
