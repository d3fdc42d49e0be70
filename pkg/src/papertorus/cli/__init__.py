"""CLI package for papertorus."""

from papertorus.cli.app import app

__all__ = ["app"]
