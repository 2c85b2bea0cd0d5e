"""Tests for floerkit.cli."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

from click.testing import CliRunner

from floerkit import catalog
from floerkit.cli import cli

if TYPE_CHECKING:
    from pathlib import Path

    from floerkit.models import PlumbingGraph


class TestVersionCommand:
    def test_version(self) -> None:
        """Test version command."""
        from floerkit import __version__

        result = CliRunner().invoke(cli, ["version"])
        assert result.exit_code == 0
        assert f"floerkit {__version__}" in result.output


class TestCatalogCommands:
    def test_list(self) -> None:
        result = CliRunner().invoke(cli, ["catalog", "list"])
        assert result.exit_code == 0
        for name in catalog.names():
            assert name in result.output

    def test_list_json(self) -> None:
        result = CliRunner().invoke(cli, ["catalog", "list", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert [item["name"] for item in data] == catalog.names()

    def test_export(self, tmp_path: Path) -> None:
        result = CliRunner().invoke(cli, ["catalog", "export", str(tmp_path / "fx")])
        assert result.exit_code == 0
        assert (tmp_path / "fx" / "t23.json").is_file()


class TestValidateCommand:
    def test_fixture(self) -> None:
        result = CliRunner().invoke(cli, ["validate", "t23"])
        assert result.exit_code == 0
        assert "OK: t23" in result.output

    def test_broken_file(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text(
            '{"genus": 0, "generators": ['
            '{"name": "a", "alexander": 0, "maslov": 2},'
            '{"name": "b", "alexander": 0, "maslov": 1},'
            '{"name": "c", "alexander": 0, "maslov": 0}],'
            '"differential": [{"from": "a", "to": "b"}, {"from": "b", "to": "c"}]}',
            encoding="utf-8",
        )
        result = CliRunner().invoke(cli, ["validate", str(path), "-f", "json"])
        assert result.exit_code == 1
        assert json.loads(result.stdout)["ok"] is False

    def test_unknown_source(self) -> None:
        result = CliRunner().invoke(cli, ["validate", "no-such-knot"])
        assert result.exit_code == 2
        assert "Cannot load complex" in result.output


class TestInvariantsCommand:
    def test_table(self) -> None:
        result = CliRunner().invoke(cli, ["invariants", "t23", "--upsilon-denominator", "2"])
        assert result.exit_code == 0
        assert "tau" in result.output
        assert "epsilon" in result.output
        assert "Upsilon" in result.output

    def test_json(self) -> None:
        result = CliRunner().invoke(
            cli, ["invariants", "t-23", "--upsilon-denominator", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert (data["tau"], data["epsilon"]) == (-1, -1)
        assert data["d"] == "0"
        assert data["upsilon"][2] == {"t": "1", "value": "1"}

    def test_help(self) -> None:
        result = CliRunner().invoke(cli, ["invariants", "--help"])
        assert result.exit_code == 0
        assert "--upsilon-denominator" in result.output
        assert "--format" in result.output


class TestComplexCommands:
    def test_mirror(self) -> None:
        result = CliRunner().invoke(cli, ["mirror", "t23"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert [g["alexander"] for g in data["generators"]] == [-1, 0, 1]

    def test_sum_to_file(self, tmp_path: Path) -> None:
        out = tmp_path / "sum.json"
        result = CliRunner().invoke(cli, ["sum", "t23", "unknot", "-o", str(out)])
        assert result.exit_code == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert len(data["generators"]) == 3


class TestSurgeryCommands:
    def test_d(self) -> None:
        result = CliRunner().invoke(cli, ["surgery", "d", "t23", "--n", "2"])
        assert result.exit_code == 0
        assert "d(1/2 surgery on t23) = -2" in result.output

    def test_d_json(self) -> None:
        result = CliRunner().invoke(cli, ["surgery", "d", "t23", "--n", "3", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout) == {"source": "t23", "n": 3, "d": "-2"}

    def test_core(self) -> None:
        result = CliRunner().invoke(cli, ["surgery", "core", "unknot"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["generators"][0]["name"] == "A1_x"

    def test_bad_flip_file(self, tmp_path: Path) -> None:
        path = tmp_path / "flip.json"
        path.write_text('{"entries": [{"from": "a", "to": "a"}]}', encoding="utf-8")
        result = CliRunner().invoke(cli, ["surgery", "d", "t23", "--flip", str(path)])
        assert result.exit_code == 2
        assert "flip map fails" in result.output

    def test_theta(self) -> None:
        result = CliRunner().invoke(cli, ["theta", "t23", "--max-n", "3"])
        assert result.exit_code == 0
        assert "theta = 0 (stabilized)" in result.output

    def test_theta_needs_three(self) -> None:
        result = CliRunner().invoke(cli, ["theta", "t23", "--max-n", "2"])
        assert result.exit_code != 0


class TestPlumbingCommand:
    def test_e8(self, tmp_path: Path, e8_negative: PlumbingGraph) -> None:
        path = tmp_path / "e8.json"
        path.write_text(e8_negative.model_dump_json(), encoding="utf-8")
        result = CliRunner().invoke(cli, ["plumbing", "d", str(path)])
        assert result.exit_code == 0
        assert "d = 2" in result.output
        reversed_ = CliRunner().invoke(cli, ["plumbing", "d", str(path), "--reverse"])
        assert "d = -2" in reversed_.output

    def test_all_classes(self, tmp_path: Path, single_vertex: PlumbingGraph) -> None:
        path = tmp_path / "l21.json"
        path.write_text(single_vertex.model_dump_json(), encoding="utf-8")
        result = CliRunner().invoke(cli, ["plumbing", "d", str(path), "--spinc", "all"])
        assert result.exit_code == 0
        assert "[0] d = 1/4" in result.output
        assert "[1] d = -1/4" in result.output

    def test_json(self, tmp_path: Path, single_vertex: PlumbingGraph) -> None:
        path = tmp_path / "l21.json"
        path.write_text(single_vertex.model_dump_json(), encoding="utf-8")
        single = CliRunner().invoke(cli, ["plumbing", "d", str(path), "-f", "json"])
        assert single.exit_code == 0
        assert json.loads(single.stdout) == {"spinc": "self-conjugate", "d": "1/4"}
        every = CliRunner().invoke(
            cli, ["plumbing", "d", str(path), "--spinc", "all", "--format", "json"]
        )
        assert json.loads(every.stdout) == [
            {"spinc": 0, "d": "1/4"},
            {"spinc": 1, "d": "-1/4"},
        ]

    def test_indefinite(self, tmp_path: Path) -> None:
        path = tmp_path / "zero.json"
        path.write_text('{"vertices": [{"name": "v", "weight": 0}]}', encoding="utf-8")
        result = CliRunner().invoke(cli, ["plumbing", "d", str(path)])
        assert result.exit_code == 2
        assert "Error" in result.output


class TestPaperCommands:
    def test_gamma_j(self) -> None:
        result = CliRunner().invoke(cli, ["paper", "gamma-j", "--max-j", "2"])
        assert result.exit_code == 0
        assert "-3/2" in result.output
        assert result.output.rstrip().endswith("PASS")

    def test_gamma_j_json(self) -> None:
        result = CliRunner().invoke(cli, ["paper", "gamma-j", "--j", "3", "--format", "json"])
        assert result.exit_code == 0
        row = json.loads(result.stdout)[0]
        assert (row["d"], row["v0"], row["theta"]) == ("-5/2", 2, 4)

    def test_cable(self) -> None:
        result = CliRunner().invoke(cli, ["paper", "cable"])
        assert result.exit_code == 0, result.output
        assert "FAIL" not in result.output


class TestServeCommand:
    def test_serve_help(self) -> None:
        result = CliRunner().invoke(cli, ["serve", "--help"])
        assert result.exit_code == 0
        assert "--transport" in result.output


class TestCLI:
    def test_help(self) -> None:
        result = CliRunner().invoke(cli, ["--help"])
        assert result.exit_code == 0
        for command in ("validate", "invariants", "surgery", "plumbing", "paper", "catalog"):
            assert command in result.output
