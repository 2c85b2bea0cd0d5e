"""Tests for floerkit.server."""

from __future__ import annotations

from typing import TYPE_CHECKING

from floerkit import server

if TYPE_CHECKING:
    from floerkit.models import PlumbingGraph


class TestCoerceSpinc:
    def test_digits(self) -> None:
        assert server._coerce_spinc("2") == 2
        assert server._coerce_spinc(" 0 ") == 0

    def test_passthrough(self) -> None:
        assert server._coerce_spinc("self-conjugate") == "self-conjugate"
        assert server._coerce_spinc(1) == 1


class TestTools:
    def test_server_name(self) -> None:
        assert server.mcp.name == "floerkit"

    async def test_list_fixtures(self) -> None:
        fixtures = await server._list_fixtures()
        assert {f["name"] for f in fixtures} >= {"t23", "cable", "table1"}

    async def test_compute_invariants(self) -> None:
        result = await server._compute_invariants("t23", upsilon_denominator=2)
        assert result["source"] == "t23"
        assert (result["tau"], result["nu"], result["nu_prime"]) == (1, 1, 0)
        assert result["d"] == "0"

    async def test_surgery_d(self) -> None:
        result = await server._surgery_d("t23", 1)
        assert result == {"source": "t23", "n": 1, "d": "-2"}

    async def test_plumbing_d(self, single_vertex: PlumbingGraph) -> None:
        result = await server._plumbing_d(single_vertex.model_dump_json(), 1, False)
        assert result["d"] == "-1/4"
        graph_json = single_vertex.model_dump_json()
        reversed_ = await server._plumbing_d(graph_json, "self-conjugate", True)
        assert reversed_["d"] == "-1/4"

    async def test_gamma_j_table(self) -> None:
        rows = await server._gamma_j_table(2)
        assert [row["d"] for row in rows] == ["-3/2", "-1"]
        assert all(row["matches"] for row in rows)
