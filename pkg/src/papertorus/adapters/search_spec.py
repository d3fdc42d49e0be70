"""Flat ``key=value`` search spec files.

Keys are the SearchSpec fields; step schedule fields may be given either
with a ``step_`` prefix (``step_cooling=0.9``) or by their own name.
"""

from pathlib import Path
from typing import Any, Dict

from dotenv import dotenv_values
from pydantic import ValidationError

from papertorus.core.errors import ParseError
from papertorus.core.models import SearchSpec, StepSchedule

_SCHEDULE_FIELDS = set(StepSchedule.model_fields)
_SPEC_FIELDS = set(SearchSpec.model_fields) - {"step_schedule"}


def spec_from_mapping(values: Dict[str, Any]) -> SearchSpec:
    """
    Validate a flat mapping into a SearchSpec.

    Raises:
        ParseError: unknown keys or values pydantic rejects
    """
    spec: Dict[str, Any] = {}
    schedule: Dict[str, Any] = {}
    for raw_key, value in values.items():
        key = raw_key.strip().lower()
        if key in _SPEC_FIELDS:
            spec[key] = value
        elif key.startswith("step_") and key[5:] in _SCHEDULE_FIELDS:
            schedule[key[5:]] = value
        elif key in _SCHEDULE_FIELDS:
            schedule[key] = value
        else:
            raise ParseError(f"unknown search spec key {raw_key!r}")
    try:
        return SearchSpec(**spec, step_schedule=StepSchedule(**schedule))
    except ValidationError as exc:
        raise ParseError(f"invalid search spec: {exc.errors()[0]['msg']}") from exc


def load_search_spec(path: Path) -> SearchSpec:
    if not path.exists():
        raise ParseError(f"search spec not found: {path}")
    return spec_from_mapping({k: v for k, v in dotenv_values(path).items() if v is not None})
