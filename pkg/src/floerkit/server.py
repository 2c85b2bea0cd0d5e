"""MCP server exposing floerkit computations to LLMs via FastMCP.

Every tool is a thin wrapper over a plain coroutine (``_compute_invariants``
and friends) that runs the exact computation in a worker thread, so the
event loop stays responsive while a cone is being reduced.

Usage with Claude Desktop (add to ``claude_desktop_config.json``)::

    {
      "mcpServers": {
        "floerkit": {
          "command": "uvx",
          "args": ["floerkit", "serve"]
        }
      }
    }
"""

from __future__ import annotations

import asyncio
from contextlib import asynccontextmanager
from typing import TYPE_CHECKING, Annotated, Any, Literal

if TYPE_CHECKING:
    from collections.abc import AsyncIterator

from fastmcp import FastMCP
from loguru import logger
from pydantic import BeforeValidator, Field

from floerkit import catalog
from floerkit.concordance import invariant_report
from floerkit.models import PlumbingGraph
from floerkit.plumbing import d_plumbing, paper_pipeline
from floerkit.surgery import d_of_1_over_n_surgery


def _coerce_spinc(v: Any) -> int | Literal["self-conjugate"]:
    """Accept a class index sent as a string as well as an int."""
    if isinstance(v, str) and v.strip().lstrip("-").isdigit():
        return int(v)
    return v  # type: ignore[no-any-return]


@asynccontextmanager
async def _lifespan(server: FastMCP[dict[str, Any]]) -> AsyncIterator[dict[str, Any]]:
    logger.debug("floerkit MCP server starting")
    yield {}
    logger.debug("floerkit MCP server stopped")


# ---------------------------------------------------------------------------
# Tool bodies
# ---------------------------------------------------------------------------


async def _list_fixtures() -> list[dict[str, Any]]:
    return [info.model_dump() for info in catalog.list_fixtures()]


async def _compute_invariants(source: str, upsilon_denominator: int = 8) -> dict[str, Any]:
    fixture = catalog.resolve(source)
    report = await asyncio.to_thread(
        invariant_report, fixture.complex, None, upsilon_denominator
    )
    return {"source": fixture.name, **report.model_dump(mode="json")}


async def _surgery_d(source: str, n: int) -> dict[str, Any]:
    fixture = catalog.resolve(source)
    d = await asyncio.to_thread(d_of_1_over_n_surgery, fixture.complex, fixture.flip, n)
    return {"source": fixture.name, "n": n, "d": str(d)}


async def _plumbing_d(
    graph_json: str, spinc: int | Literal["self-conjugate"], reverse: bool
) -> dict[str, Any]:
    graph = PlumbingGraph.from_json(graph_json)
    d = await asyncio.to_thread(lambda: d_plumbing(graph, spinc, reverse=reverse))
    return {"spinc": spinc, "reverse": reverse, "d": str(d)}


async def _gamma_j_table(max_j: int) -> list[dict[str, Any]]:
    rows = await asyncio.to_thread(lambda: [paper_pipeline(j) for j in range(1, max_j + 1)])
    return [{**row.model_dump(mode="json"), "matches": row.matches} for row in rows]


# ---------------------------------------------------------------------------
# Server
# ---------------------------------------------------------------------------


mcp = FastMCP(
    name="floerkit",
    lifespan=_lifespan,
    instructions=(
        "floerkit computes knot Floer concordance invariants and d-invariants "
        "of 3-manifolds with exact rational arithmetic.\n\n"
        "Key tools:\n"
        "- list_fixtures: Shipped knot complexes (unknot, t23, t-23, fig8, cable, table1)\n"
        "- compute_invariants: tau, nu, nu', epsilon, V_0, Upsilon, d of a complex\n"
        "- surgery_d: d-invariant of 1/n surgery on a knot\n"
        "- plumbing_d: d-invariant of the boundary of a definite plumbing tree\n"
        "- gamma_j_table: d, V_0 and theta for the Gamma_j plumbing family\n\n"
        "Rational values are returned as strings such as '-3/2'."
    ),
)


@mcp.tool()
async def list_fixtures() -> list[dict[str, Any]]:
    """List the shipped knot complexes with their size, genus and whether a flip map is known."""
    return await _list_fixtures()


@mcp.tool()
async def compute_invariants(
    source: Annotated[
        str,
        Field(description="Fixture name (e.g. 't23', 'cable') or a path to a complex JSON file"),
    ],
    upsilon_denominator: Annotated[
        int,
        Field(description="Sample Upsilon at t = k/N for k = 0..2N (default: 8)", ge=1, le=64),
    ] = 8,
) -> dict[str, Any]:
    """Compute every concordance invariant of a knot complex.

    Returns tau, nu, nu', epsilon, V_0, the Upsilon samples, the d-invariant
    of the ambient manifold, the HF_red torsion orders and N.
    """
    return await _compute_invariants(source, upsilon_denominator)


@mcp.tool()
async def surgery_d(
    source: Annotated[
        str,
        Field(description="Fixture name or path to a complex JSON file"),
    ],
    n: Annotated[
        int,
        Field(description="Surgery coefficient is 1/n (default: 1)", ge=1, le=32),
    ] = 1,
) -> dict[str, Any]:
    """d-invariant of 1/n surgery on the knot, through the mapping cone.

    Uses the fixture's flip map when there is one, otherwise searches for one.
    """
    return await _surgery_d(source, n)


@mcp.tool()
async def plumbing_d(
    graph_json: Annotated[
        str,
        Field(
            description=(
                'Plumbing graph as JSON: {"vertices": [{"name": "v1", "weight": 3}, ...], '
                '"edges": [["v1", "v2"], ...]}'
            )
        ),
    ],
    spinc: Annotated[
        int | Literal["self-conjugate"],
        BeforeValidator(_coerce_spinc),
        Field(description="'self-conjugate' or a Spin^c class index"),
    ] = "self-conjugate",
    reverse: Annotated[
        bool,
        Field(description="Reverse the orientation of the boundary"),
    ] = False,
) -> dict[str, Any]:
    """d-invariant of the boundary of a definite plumbing tree with at most one bad vertex."""
    return await _plumbing_d(graph_json, spinc, reverse)


@mcp.tool()
async def gamma_j_table(
    max_j: Annotated[
        int,
        Field(description="Rows j = 1..max_j (default: 6)", ge=1, le=8),
    ] = 6,
) -> list[dict[str, Any]]:
    """d, V_0 and theta for the Gamma_j plumbings, each checked against its closed form."""
    return await _gamma_j_table(max_j)
