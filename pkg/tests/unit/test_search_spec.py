"""Unit tests for search spec files."""

from pathlib import Path

import pytest

from papertorus.adapters.search_spec import load_search_spec, spec_from_mapping
from papertorus.core.errors import ParseError


def test_load_search_spec(tmp_path: Path):
    path = tmp_path / "search.env"
    path.write_text(
        "# pup tent search\n"
        "triangulation=best8\n"
        "symmetry=4 3 6 1 0 7 2 5\n"
        "face_number_target=6\n"
        "max_iterations=500\n"
        "step_cooling=0.9\n"
        "rejection_streak=20\n",
        encoding="utf-8",
    )
    spec = load_search_spec(path)
    assert spec.symmetry == (4, 3, 6, 1, 0, 7, 2, 5)
    assert spec.max_iterations == 500
    assert spec.step_schedule.cooling == pytest.approx(0.9)
    assert spec.step_schedule.rejection_streak == 20


def test_symmetry_none():
    assert spec_from_mapping({"symmetry": "none"}).symmetry is None


def test_unknown_key():
    with pytest.raises(ParseError, match="unknown search spec key"):
        spec_from_mapping({"temperature": "3"})


def test_invalid_value():
    with pytest.raises(ParseError, match="invalid search spec"):
        spec_from_mapping({"face_number_target": "13"})


def test_missing_file(tmp_path: Path):
    with pytest.raises(ParseError, match="not found"):
        load_search_spec(tmp_path / "absent.env")


def test_symmetry_length_must_match_the_vertex_count():
    with pytest.raises(ParseError, match="7 entries"):
        spec_from_mapping({"symmetry": "4 3 6 1 0 2 5"})
    with pytest.raises(ParseError, match="8 entries"):
        spec_from_mapping({"triangulation": "moebius"})
    assert spec_from_mapping({"triangulation": "moebius", "symmetry": "none"}).symmetry is None


def test_symmetry_must_be_a_permutation():
    with pytest.raises(ParseError, match="not a permutation"):
        spec_from_mapping({"symmetry": "4 3 6 1 0 7 2 2"})


def test_unknown_triangulation():
    with pytest.raises(ParseError, match="Unknown triangulation"):
        spec_from_mapping({"triangulation": "klein"})
