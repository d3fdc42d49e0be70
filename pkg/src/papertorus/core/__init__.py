"""Core domain models and errors."""

from papertorus.core import errors, models

__all__ = ["errors", "models"]
