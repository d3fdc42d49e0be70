"""Human-readable text reports and JSON sidecars."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from papertorus.render.figures import template_env


def render_text_report(
    title: str,
    rows: Sequence[Tuple[str, Any]],
    sections: Optional[List[Dict[str, Any]]] = None,
) -> str:
    """
    Render a key/value report.

    Args:
        title: Report heading
        rows: (key, value) pairs, one per line
        sections: Optional ``{"heading": str, "lines": [str, ...]}`` blocks
    """
    return template_env().get_template("report.txt.j2").render(
        title=title, rows=list(rows), sections=sections or []
    )


def write_sidecar(path: Path, payload: Dict[str, Any]) -> None:
    """Pretty JSON with sorted keys so reruns are byte-identical."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
