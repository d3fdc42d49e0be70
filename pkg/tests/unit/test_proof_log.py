"""Unit tests for the Hull Lemma proof log."""

from pathlib import Path

from papertorus.adapters.proof_log import format_outcome, summary_block, write_proof_log
from papertorus.core.models import EdgePattern, HullLemmaReport, PatternOutcome

PATTERN = EdgePattern(internal_edges=((0, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6)))


def test_format_outcome_variants():
    degree = PatternOutcome(pattern_id=3, pattern=PATTERN, stage="degree")
    cycle = PatternOutcome(pattern_id=4, pattern=PATTERN, stage="cycle", failed_vertex=2)
    survivor = PatternOutcome(pattern_id=5, pattern=PATTERN, stage="survivor", witness=6)
    assert format_outcome(degree) == "3 0-1 0-2 2-3 3-4 4-5 5-6 degree"
    assert format_outcome(cycle) == "4 0-1 0-2 2-3 3-4 4-5 5-6 cycle vertex=2"
    assert format_outcome(survivor) == "5 0-1 0-2 2-3 3-4 4-5 5-6 survivor witness=6"


def test_write_proof_log(tmp_path: Path):
    outcome = PatternOutcome(pattern_id=0, pattern=PATTERN, stage="survivor", witness=6)
    report = HullLemmaReport(
        total_patterns=1,
        after_degree_filter=1,
        survivors=[PATTERN],
        survivor_witness=[6],
        survivor_ids=[0],
        single_orbit=True,
        automorphism_group_order=42,
    )
    path = tmp_path / "prove7.log"
    write_proof_log([outcome], report, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == format_outcome(outcome)
    assert lines[1:] == summary_block(report)
    assert "single_orbit yes" in lines
    assert "survivor 0 0-1 0-2 2-3 3-4 4-5 5-6 witness=6" in lines
