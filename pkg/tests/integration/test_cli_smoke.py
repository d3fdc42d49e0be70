"""CLI smoke tests against the shipped pup tent fixture."""

import json
from pathlib import Path
from typing import List

import pytest
from typer.testing import CliRunner

from papertorus.adapters.torus_file import BUNDLED_PUPTENT
from papertorus.cli import app
from papertorus.geometry.puptent import PUBLISHED_Z

runner = CliRunner()


def invoke(out: Path, *args: str):
    return runner.invoke(app, ["--out", str(out), *args])


def load(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture
def pup_tent() -> str:
    return str(BUNDLED_PUPTENT)


def test_flatness_command(pup_tent: str, tmp_path: Path):
    result = invoke(tmp_path, "flatness", pup_tent, "--require", "1e-32")
    assert result.exit_code == 0, result.output
    payload = load(tmp_path / "flatness.json")
    assert len(payload["cone_angles"]) == 8
    assert float(payload["max_deviation"]) < 1e-32
    manifest = load(tmp_path / "flatness.manifest.json")
    assert manifest["subcommand"] == "flatness"
    assert manifest["exit_code"] == 0
    assert "flatness.json" in manifest["outputs"]
    assert (tmp_path / "flatness.txt").read_text(encoding="utf-8").startswith("Flatness of puptent.pt")


def test_flatness_require_fails(pup_tent: str, tmp_path: Path):
    result = invoke(tmp_path, "flatness", pup_tent, "--require", "1e-70")
    assert result.exit_code == 1
    assert load(tmp_path / "flatness.manifest.json")["exit_code"] == 1


def test_hull_command(pup_tent: str, tmp_path: Path):
    result = invoke(tmp_path, "hull", pup_tent)
    assert result.exit_code == 0, result.output
    payload = load(tmp_path / "hull.json")
    assert payload["face_number"] == 6
    assert all(payload["on_hull"])
    assert payload["embedded_float"] is True
    assert (tmp_path / "hull.svg").exists()


def test_jacobian_command(tmp_path: Path):
    result = invoke(tmp_path, "jacobian")
    assert result.exit_code == 0, result.output
    matrix = load(tmp_path / "jacobian.json")["matrix"]
    assert float(matrix[0][0]) == pytest.approx(-0.91, abs=0.01)
    assert float(matrix[1][1]) == pytest.approx(-1.92, abs=0.01)


def test_jacobian_rejects_unknown_mode(tmp_path: Path):
    assert invoke(tmp_path, "jacobian", "--mode", "forward").exit_code == 2


def test_newton_command(tmp_path: Path):
    result = invoke(tmp_path, "newton", "--target", "1e-60")
    assert result.exit_code == 0, result.output
    payload = load(tmp_path / "newton.json")
    assert payload["first_32_digits"] == list(PUBLISHED_Z)
    assert payload["matches_published"] is True
    assert payload["iterations"] <= 20
    assert (tmp_path / "newton.pt").exists()
    assert (tmp_path / "newton.csv").exists()


def test_develop_command(pup_tent: str, tmp_path: Path):
    result = invoke(tmp_path, "develop", pup_tent)
    assert result.exit_code == 0, result.output
    payload = load(tmp_path / "develop.json")
    assert len(payload["vertex_lifts"]) == 8
    assert float(payload["published_gram_residual"]) < 1e-8
    assert all(abs(float(a)) < 1e-20 for a in payload["rotational_holonomy"])
    assert (tmp_path / "develop.lifts.csv").exists()


def test_develop_rejects_bad_traversal(pup_tent: str, tmp_path: Path):
    assert invoke(tmp_path, "develop", pup_tent, "--traversal", "random").exit_code == 2


def test_slice_command(pup_tent: str, tmp_path: Path):
    result = invoke(tmp_path, "slice", pup_tent, "--plane", "0,0,0:0,1,0")
    assert result.exit_code == 0, result.output
    payload = load(tmp_path / "slice.json")
    assert payload["loops"] == 2
    assert payload["simple_and_disjoint"] is True
    assert (tmp_path / "slice.csv").exists()


def test_slice_rejects_malformed_plane(pup_tent: str, tmp_path: Path):
    assert invoke(tmp_path, "slice", pup_tent, "--normal", "0,1").exit_code == 2


def test_show_config(tmp_path: Path):
    result = invoke(tmp_path, "--precision", "80", "show-config")
    assert result.exit_code == 0, result.output
    assert "80" in result.output


def test_prove7_command(tmp_path: Path):
    result = invoke(tmp_path, "--threads", "2", "prove7")
    assert result.exit_code == 0, result.output
    report = load(tmp_path / "prove7.json")
    assert report["total_patterns"] == 15504
    assert len(report["survivors"]) == 6
    assert report["single_orbit"] is True
    log_lines: List[str] = (tmp_path / "prove7.log").read_text(encoding="utf-8").splitlines()
    assert sum(1 for line in log_lines if line[:1].isdigit()) == 15504
    assert "single_orbit yes" in log_lines


def test_prove7_exits_1_when_conclusion_breaks(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr("papertorus.combinatorics.hull_lemma.vertex_cycle_rule", lambda t, p, q: False)
    result = invoke(tmp_path, "prove7")
    assert result.exit_code == 1
    assert load(tmp_path / "prove7.manifest.json")["exit_code"] == 1


def test_missing_torus_file(tmp_path: Path):
    result = invoke(tmp_path, "flatness", str(tmp_path / "absent.pt"))
    assert result.exit_code == 2


def test_malformed_torus_file(tmp_path: Path):
    path = tmp_path / "broken.pt"
    path.write_text("papertorus v1\nprecision 32\nvertices 7\n", encoding="utf-8")
    assert invoke(tmp_path, "hull", str(path)).exit_code == 2


def test_euler_violation_exits_2(tmp_path: Path):
    text = BUNDLED_PUPTENT.read_text(encoding="utf-8").replace("faces 16", "faces 15")
    path = tmp_path / "euler.pt"
    path.write_text(text, encoding="utf-8")
    assert invoke(tmp_path, "flatness", str(path)).exit_code == 2


def test_verify_rejects_garbage_bundle(pup_tent: str, tmp_path: Path):
    bundle = tmp_path / "garbage.txt"
    bundle.write_text("not a bundle\n", encoding="utf-8")
    result = invoke(tmp_path, "verify", str(bundle), pup_tent)
    assert result.exit_code == 1


def test_search_rejects_unknown_key(tmp_path: Path):
    spec = tmp_path / "search.env"
    spec.write_text("temperature=3\n", encoding="utf-8")
    assert invoke(tmp_path, "search", str(spec)).exit_code == 2


@pytest.mark.slow
def test_certify_then_verify(pup_tent: str, tmp_path: Path):
    out = tmp_path / "run"
    result = invoke(out, "--threads", "4", "certify-embedding", pup_tent)
    assert result.exit_code == 0, result.output
    summary = load(out / "certify-embedding.json")
    assert summary["certificates"] == 96
    assert summary["disjoint"] == 24
    assert int(summary["min_margin"]) >= 6 * 10**30

    bundle = out / "certificates.txt"
    assert invoke(out, "verify", str(bundle), pup_tent).exit_code == 0

    lines = bundle.read_text(encoding="utf-8").splitlines()
    head, margin = lines[5].rsplit(" ", 1)
    lines[5] = f"{head} {int(margin) + 10**32}"
    tampered = tmp_path / "tampered.txt"
    tampered.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert invoke(out, "verify", str(tampered), pup_tent).exit_code == 1
