"""Unit tests for the torus file reader and writer."""

from pathlib import Path

import pytest
from mpmath import mpf

from papertorus.adapters.torus_file import (
    BUNDLED_PUPTENT,
    bundled_pup_tent,
    format_decimal,
    format_torus,
    parse_torus,
    read_torus,
    write_torus,
)
from papertorus.combinatorics.triangulations import best8_triangulation
from papertorus.core.errors import ParseError
from papertorus.geometry.puptent import published_pup_tent

TETRA_LIKE = """papertorus v1
precision 32
vertices 7
0 0 0 0
1 1 0 0
2 0 1 0
3 0 0 1
4 1 1 0
5 1 0 1
6 0 1 1
faces {count}
"""


def test_bundled_fixture_is_the_published_pup_tent():
    c = bundled_pup_tent()
    assert c.precision == 64
    assert c.triangulation.faces == best8_triangulation().faces
    published = published_pup_tent(64)
    for got, want in zip(c.coordinates, published.coordinates):
        assert max(abs(a - b) for a, b in zip(got, want)) < mpf("1e-60")


def test_fixture_round_trips_byte_identically(tmp_path: Path):
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8")
    c = read_torus(BUNDLED_PUPTENT)
    assert format_torus(c) == text
    out = tmp_path / "copy.pt"
    write_torus(c, out)
    assert out.read_text(encoding="utf-8") == text
    assert not out.with_suffix(".pt.tmp").exists()


def test_name_comes_from_the_file_stem(tmp_path: Path):
    path = tmp_path / "tent.pt"
    path.write_text(BUNDLED_PUPTENT.read_text(encoding="utf-8"), encoding="utf-8")
    assert read_torus(path).triangulation.name == "tent"


def test_precision_override():
    c = parse_torus(BUNDLED_PUPTENT.read_text(encoding="utf-8"), precision=128)
    assert c.precision == 128


def test_comments_and_blank_lines_are_ignored():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("faces 16", "# faces follow\n\nfaces 16")
    assert parse_torus(text).triangulation.faces == best8_triangulation().faces


def test_euler_violation_is_reported():
    with pytest.raises(ParseError, match="Euler violation") as excinfo:
        parse_torus(TETRA_LIKE.format(count=12))
    assert excinfo.value.line == 11


def test_bad_header():
    with pytest.raises(ParseError) as excinfo:
        parse_torus("papertorus v2\n")
    assert excinfo.value.line == 1


def test_non_decimal_coordinate():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("0 0.755 0.65", "0 0.755 abc")
    with pytest.raises(ParseError, match="not a decimal") as excinfo:
        parse_torus(text)
    assert excinfo.value.line == 4


def test_face_index_out_of_range():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("\n2 6 7\n", "\n2 6 8\n")
    with pytest.raises(ParseError, match="three vertex indices"):
        parse_torus(text)


def test_trailing_content_is_rejected():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8") + "extra line\n"
    with pytest.raises(ParseError, match="trailing"):
        parse_torus(text)


def test_non_torus_face_list_is_rejected():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("\n2 6 7\n", "\n2 7 6\n")
    with pytest.raises(ParseError, match="do not form a torus"):
        parse_torus(text)


def test_written_coordinates_keep_their_digits(tmp_path: Path):
    c = published_pup_tent(64)
    out = tmp_path / "p.pt"
    write_torus(c, out)
    again = read_torus(out)
    assert format_torus(again) == format_torus(c)
    assert again.point(5)[2] == 0


def test_input_decimals_are_written_back_verbatim():
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("0 0.755 0.65", "0 0.7550 +0.650")
    assert "0 0.7550 +0.650" in text
    assert format_torus(parse_torus(text)) == text


def test_format_decimal_drops_a_stale_source():
    assert format_decimal(mpf("0.5"), 32, "0.50") == "0.50"
    assert format_decimal(mpf("0.25"), 32, "0.50") == "0.25"
    assert format_decimal(mpf(2), 32) == "2"
