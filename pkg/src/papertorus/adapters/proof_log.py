"""Line-oriented Hull Lemma proof log."""

from pathlib import Path
from typing import List, Sequence

from papertorus.core.models import HullLemmaReport, PatternOutcome


def format_outcome(outcome: PatternOutcome) -> str:
    """``<pattern-id> <6 edges> <stage> [witness]``."""
    parts = [str(outcome.pattern_id), outcome.pattern.label(), outcome.stage]
    if outcome.stage == "cycle" and outcome.failed_vertex is not None:
        parts.append(f"vertex={outcome.failed_vertex}")
    if outcome.witness is not None:
        parts.append(f"witness={outcome.witness}")
    return " ".join(parts)


def summary_block(report: HullLemmaReport) -> List[str]:
    lines = [
        "# summary",
        f"patterns {report.total_patterns}",
        f"after_degree_filter {report.after_degree_filter}",
        f"survivors {len(report.survivors)}",
    ]
    for pid, pattern, witness in zip(report.survivor_ids, report.survivors, report.survivor_witness):
        lines.append(f"survivor {pid} {pattern.label()} witness={witness}")
    lines.append(f"automorphism_group_order {report.automorphism_group_order}")
    lines.append(f"single_orbit {'yes' if report.single_orbit else 'no'}")
    return lines


def write_proof_log(outcomes: Sequence[PatternOutcome], report: HullLemmaReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [format_outcome(o) for o in outcomes] + summary_block(report)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
