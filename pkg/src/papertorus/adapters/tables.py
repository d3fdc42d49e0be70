"""CSV dumps: hill-climb traces, slice loops, development lifts, Newton traces."""

import csv
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from papertorus.core.models import Development, NewtonTrace, SliceResult, TraceRow
from papertorus.core.models.geometry import fmt

TRACE_FIELDS = ["iteration", "max_deviation", "face_number", "min_dihedral"]
SLICE_FIELDS = ["loop_id", "x", "y"]
LIFT_FIELDS = ["vertex", "x", "y"]
NEWTON_FIELDS = ["iteration", "deviation"]


def write_rows(path: Path, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def write_trace_csv(path: Path, trace: List[TraceRow]) -> None:
    write_rows(path, TRACE_FIELDS, (row.model_dump() for row in trace))


def write_slice_csv(path: Path, result: SliceResult) -> None:
    write_rows(
        path,
        SLICE_FIELDS,
        ({"loop_id": i, "x": repr(x), "y": repr(y)} for i, x, y in result.rows()),
    )


def write_lifts_csv(path: Path, dev: Development, digits: int = 20) -> None:
    write_rows(
        path,
        LIFT_FIELDS,
        (
            {"vertex": v, "x": fmt(x, digits), "y": fmt(y, digits)}
            for v, (x, y) in enumerate(dev.vertex_lifts)
        ),
    )


def write_newton_csv(path: Path, trace: NewtonTrace) -> None:
    write_rows(
        path,
        NEWTON_FIELDS,
        ({"iteration": i, "deviation": fmt(d, 5)} for i, d in enumerate(trace.deviations)),
    )


def read_rows(path: Path) -> List[Dict[str, str]]:
    with path.open("r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
