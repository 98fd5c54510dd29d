"""Tests for the command line interface."""

import pytest
from typer.testing import CliRunner

from mqvkit.cli import app
from mqvkit.graph import parse_spec

from .conftest import IRREGULAR_SPEC, STAR_SPEC, TRIANGLE_SPEC

CLASSES_SPEC = """# triangle-classes

## Colours
0: 1 | 2 | 3

## Classes
1: 2:(1)
2: 3:(1)
3: 1/6:(1)
"""


@pytest.fixture
def runner() -> CliRunner:
    """Typer test runner."""
    return CliRunner()


class TestGraphCommands:
    def test_info(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["graph", "info", str(path)])
        assert result.exit_code == 0
        assert "GRAPH triangle nodes=3 edges=3 colours=1" in result.stdout

    def test_build_is_parseable(self, runner, spec_file):
        path = spec_file(STAR_SPEC)
        result = runner.invoke(app, ["graph", "build", str(path)])
        assert result.exit_code == 0
        assert parse_spec(result.stdout).quiver.nodes == ("0", "0.2")

    def test_fission(self, runner, spec_file):
        path = spec_file(IRREGULAR_SPEC)
        result = runner.invoke(app, ["graph", "fission", str(path)])
        assert result.exit_code == 0
        assert "edges=2" in result.stdout

    def test_fission_needs_irregular_type(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["graph", "fission", str(path)])
        assert result.exit_code == 2

    def test_malformed_document(self, runner, spec_file):
        path = spec_file("# bad\n\n## Colours\n0: 1 | 2\n\n## Dimensions\n1: one\n")
        result = runner.invoke(app, ["graph", "info", str(path)])
        assert result.exit_code == 2


class TestRootsCommands:
    def test_dim(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["roots", "dim", str(path)])
        assert result.exit_code == 0
        assert "expected=2" in result.stdout

    def test_classify(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["roots", "classify", str(path), "-b", "1"])
        assert result.exit_code == 0
        assert "ROOTS bound=1 real=6 imaginary=1" in result.stdout

    def test_generic(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        args = ["--mode", "rational", "roots", "generic", str(path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0
        assert "GENERIC generic witness=-" in result.stdout

    def test_reflect(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        args = ["--mode", "rational", "roots", "reflect", str(path), "1"]
        result = runner.invoke(app, args)
        assert result.exit_code == 0
        assert result.stdout.startswith("REFLECT 1 q=(1/2, 6, 1/3)")

    def test_reflect_unknown_node(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["roots", "reflect", str(path), "9"])
        assert result.exit_code == 2


class TestVerifyAndReadings:
    def test_verify_suite(self, runner):
        result = runner.invoke(app, ["--seed", "3", "verify", "legs", "-n", "5"])
        assert result.exit_code == 0
        assert "CHECK legs" in result.stdout

    def test_unknown_suite(self, runner):
        result = runner.invoke(app, ["verify", "nothing"])
        assert result.exit_code == 2

    def test_bad_mode(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["--mode", "decimal", "roots", "dim", str(path)])
        assert result.exit_code == 2

    def test_readings(self, runner, spec_file):
        path = spec_file(TRIANGLE_SPEC)
        result = runner.invoke(app, ["--mode", "rational", "readings", str(path)])
        assert result.exit_code == 0
        lines = [ln for ln in result.stdout.splitlines() if ln.startswith("READING")]
        assert len(lines) == 4
        assert lines[0] == "READING generic rank=3 m=0 empty=False"

    def test_output_file(self, runner, spec_file, tmp_path):
        path = spec_file(TRIANGLE_SPEC)
        out = tmp_path / "lines.txt"
        result = runner.invoke(app, ["-o", str(out), "roots", "dim", str(path)])
        assert result.exit_code == 0
        assert out.read_text().startswith("DIM ")


class TestDSCommands:
    def test_criterion(self, runner, spec_file):
        path = spec_file(CLASSES_SPEC, name="tri.md")
        args = ["--mode", "rational", "ds", "criterion", str(path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0
        line = next(ln for ln in result.stdout.splitlines() if ln.startswith("DS "))
        assert line.startswith("DS tri verdict=predicted-solvable search=not-run ")
        assert line.endswith(" seed=0")

    def test_search_writes_witness(self, runner, spec_file, tmp_path):
        path = spec_file(CLASSES_SPEC, name="tri.md")
        witness = tmp_path / "witness.md"
        args = ["--mode", "rational", "ds", "search", str(path), "-r", "4"]
        result = runner.invoke(app, [*args, "--witness", str(witness)])
        assert result.exit_code == 0
        assert "DS tri verdict=predicted-solvable search=witness " in result.stdout
        assert parse_spec(witness.read_text()).name == "tri"

    def test_crossval_family(self, runner):
        args = ["ds", "crossval", "-f", "interval", "--max-total", "1", "-r", "2"]
        result = runner.invoke(app, args)
        assert result.exit_code == 0
        lines = [ln for ln in result.stdout.splitlines() if ln.startswith("DS ")]
        assert len(lines) == 4

    def test_crossval_needs_input(self, runner):
        result = runner.invoke(app, ["ds", "crossval"])
        assert result.exit_code == 2
