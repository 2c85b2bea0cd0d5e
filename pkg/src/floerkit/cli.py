"""Command-line interface for floerkit.

Commands:
- ``floerkit validate``: Check a complex against the structural axioms
- ``floerkit invariants``: tau, nu, nu', epsilon, Upsilon, V_0, d and HF_red data
- ``floerkit sum`` / ``floerkit mirror``: Connected sum and mirror image
- ``floerkit surgery core|d`` and ``floerkit theta``: Surgery through the mapping cone
- ``floerkit plumbing d``: d-invariants of plumbed manifolds
- ``floerkit paper gamma-j|cable``: Reproduce the Gamma_j table and the cable pipeline
- ``floerkit catalog list|export``: Shipped fixtures
- ``floerkit serve``: Start the MCP server

Wherever a complex is expected, either a JSON file or a fixture name is accepted.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal, NoReturn, cast

import click
from loguru import logger

from floerkit.errors import FloerkitError

if TYPE_CHECKING:
    from floerkit.catalog import Fixture
    from floerkit.models import BifilteredComplex, FlipMap

_INPUT_ERRORS = (FloerkitError, OSError, ValueError)

_FORMAT = click.option(
    "--format",
    "-f",
    "fmt",
    type=click.Choice(["table", "json"]),
    default="table",
    help="Output format.",
)


def _handle_error(e: Exception, prefix: str = "Error", code: int = 2) -> NoReturn:
    """Print an error message to stderr and exit."""
    click.echo(f"{prefix}: {e}", err=True)
    raise SystemExit(code) from None


def _echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, ensure_ascii=False, indent=2))


def _load(source: str) -> Fixture:
    from floerkit.catalog import resolve

    try:
        return resolve(source)
    except _INPUT_ERRORS as e:
        _handle_error(e, prefix="Cannot load complex")


def _flip_for(fixture: Fixture, flip_path: str | None) -> FlipMap | None:
    """An explicit flip file, else the fixture's own flip, else None (search)."""
    from floerkit.models import FlipMap

    if flip_path is not None:
        try:
            return FlipMap.from_file(flip_path)
        except _INPUT_ERRORS as e:
            _handle_error(e, prefix="Cannot load flip map")
    return fixture.flip


def _write_complex(complex_: BifilteredComplex, output: str | None) -> None:
    text = complex_.to_json()
    if output is None:
        click.echo(text)
        return
    Path(output).write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(complex_.generators)} generators to {output}")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging.")
def cli(verbose: bool) -> None:
    """Knot Floer concordance invariants, surgery cones and plumbing d-invariants."""
    level = "DEBUG" if verbose else "INFO"
    logger.remove()
    logger.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level:<7} | {message}")


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------


@cli.command()
@click.argument("source")
@_FORMAT
def validate(source: str, fmt: str) -> None:
    """Check d^2 = 0, filtration, grading, reducedness and genus.

    Exits with status 1 when a violation is found.

    Examples:

        floerkit validate cable

        floerkit validate my_knot.json --format json
    """
    from floerkit.complexes import validate as run_validate

    fixture = _load(source)
    report = run_validate(fixture.complex)
    if fmt == "json":
        _echo_json(report.model_dump(mode="json"))
    elif report.ok:
        click.echo(f"OK: {fixture.name} ({len(fixture.complex.generators)} generators)")
    else:
        click.echo(f"{len(report.violations)} violations in {fixture.name}:")
        for violation in report.violations:
            click.echo(f"  - {violation}")
    if not report.ok:
        raise SystemExit(1)


@cli.command()
@click.argument("source")
@click.option(
    "--upsilon-denominator",
    type=int,
    default=None,
    help="Sample Upsilon at t = k/N (default: FLOERKIT_UPSILON_DENOMINATOR or 8).",
)
@click.option(
    "--window", type=int, default=None, help="Fixed truncation height (skips certification)."
)
@_FORMAT
def invariants(source: str, upsilon_denominator: int | None, window: int | None, fmt: str) -> None:
    """Compute every concordance invariant of a complex.

    Examples:

        floerkit invariants t23

        floerkit invariants table1 --upsilon-denominator 4 --format json
    """
    from floerkit.complexes import require_valid
    from floerkit.concordance import invariant_report

    fixture = _load(source)
    try:
        require_valid(fixture.complex)
        report = invariant_report(fixture.complex, window, upsilon_denominator)
    except _INPUT_ERRORS as e:
        _handle_error(e)

    if fmt == "json":
        _echo_json(report.model_dump(mode="json"))
        return

    click.echo(
        f"Invariants of {fixture.name} "
        f"({report.generators} generators, window {report.window})\n"
    )
    rows: list[tuple[str, object]] = [
        ("tau", report.tau),
        ("nu", report.nu),
        ("nu'", report.nu_prime),
        ("epsilon", report.epsilon),
        ("V_0", report.v0),
        ("d", report.d),
        ("N (HF_red)", report.n_invariant),
        ("torsion", ", ".join(str(k) for k in report.torsion_orders) or "-"),
        ("rank HF^", report.hat_rank),
    ]
    for label, value in rows:
        click.echo(f"  {label:<12} {value}")
    click.echo("\n  Upsilon:")
    for sample in report.upsilon:
        click.echo(f"    t={str(sample.t):<6} {sample.value}")


@cli.command("sum")
@click.argument("first")
@click.argument("second")
@click.option("--output", "-o", default=None, help="Write the complex here instead of stdout.")
@click.option("--reduce/--no-reduce", "reduce_", default=True, help="Cancel the result down.")
def sum_(first: str, second: str, output: str | None, reduce_: bool) -> None:
    """Connected sum: the tensor product of two complexes.

    Examples:

        floerkit sum t23 t23 -o t23_t23.json
    """
    from floerkit.complexes import require_valid, tensor
    from floerkit.reduction import reduce

    left, right = _load(first), _load(second)
    try:
        require_valid(left.complex)
        require_valid(right.complex)
        result = tensor(left.complex, right.complex)
        if reduce_:
            result = reduce(result)
    except _INPUT_ERRORS as e:
        _handle_error(e)
    _write_complex(result, output)


@cli.command()
@click.argument("source")
@click.option("--output", "-o", default=None, help="Write the complex here instead of stdout.")
def mirror(source: str, output: str | None) -> None:
    """Mirror image: the dual complex."""
    from floerkit.complexes import dualize

    _write_complex(dualize(_load(source).complex), output)


# ---------------------------------------------------------------------------
# Surgery
# ---------------------------------------------------------------------------


@cli.group()
def surgery() -> None:
    """Surgery on a knot through the filtered mapping cone."""


_FLIP = click.option(
    "--flip",
    "flip_path",
    default=None,
    help="Flip map JSON. Defaults to the fixture's flip, or a search.",
)


@surgery.command("core")
@click.argument("source")
@_FLIP
@click.option("--output", "-o", default=None, help="Write the complex here instead of stdout.")
def surgery_core(source: str, flip_path: str | None, output: str | None) -> None:
    """Reduced knot complex of the core circle of +1 surgery.

    Examples:

        floerkit surgery core cable -o core.json
    """
    from floerkit.surgery import core_complex

    fixture = _load(source)
    phi = _flip_for(fixture, flip_path)
    try:
        core = core_complex(fixture.complex, phi)
    except _INPUT_ERRORS as e:
        _handle_error(e)
    _write_complex(core, output)


@surgery.command("d")
@click.argument("source")
@click.option("--n", "n", type=click.IntRange(min=1), default=1, help="Surgery coefficient 1/n.")
@_FLIP
@_FORMAT
def surgery_d(source: str, n: int, flip_path: str | None, fmt: str) -> None:
    """d-invariant of 1/n surgery.

    Examples:

        floerkit surgery d t23 --n 3

        floerkit surgery d cable --n 2 --format json
    """
    from floerkit.surgery import d_of_1_over_n_surgery

    fixture = _load(source)
    phi = _flip_for(fixture, flip_path)
    try:
        d = d_of_1_over_n_surgery(fixture.complex, phi, n)
    except _INPUT_ERRORS as e:
        _handle_error(e)
    if fmt == "json":
        _echo_json({"source": fixture.name, "n": n, "d": str(d)})
        return
    click.echo(f"d(1/{n} surgery on {fixture.name}) = {d}")


@cli.command()
@click.argument("source")
@click.option("--max-n", type=click.IntRange(min=3), default=5, help="Largest n probed (>= 3).")
@_FLIP
@_FORMAT
def theta(source: str, max_n: int, flip_path: str | None, fmt: str) -> None:
    """Spread of d over 1/n surgeries, n = 1..max-n.

    Examples:

        floerkit theta t23 --max-n 4
    """
    from floerkit.surgery import theta_probe

    fixture = _load(source)
    phi = _flip_for(fixture, flip_path)
    try:
        report = theta_probe(fixture.complex, phi, max_n)
    except _INPUT_ERRORS as e:
        _handle_error(e)

    if fmt == "json":
        _echo_json(report.model_dump(mode="json"))
        return
    for sample in report.samples:
        click.echo(f"  n={sample.n:<3} d={sample.d}")
    note = "stabilized" if report.stabilized else "not stabilized"
    click.echo(f"theta = {report.theta} ({note})")


# ---------------------------------------------------------------------------
# Plumbing
# ---------------------------------------------------------------------------


@cli.group()
def plumbing() -> None:
    """Definite plumbing trees."""


@plumbing.command("d")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--spinc",
    default="self-conjugate",
    help="'self-conjugate', 'all', or a class index.",
)
@click.option("--reverse", is_flag=True, help="Reverse the orientation of the boundary.")
@click.option("--node-limit", type=int, default=None, help="Enumeration budget.")
@_FORMAT
def plumbing_d(
    graph_file: str, spinc: str, reverse: bool, node_limit: int | None, fmt: str
) -> None:
    """d-invariant of the boundary of a plumbing.

    Examples:

        floerkit plumbing d gamma1.json

        floerkit plumbing d e8.json --reverse --spinc all
    """
    from floerkit.models import PlumbingGraph
    from floerkit.plumbing import d_all_classes, d_plumbing

    try:
        graph = PlumbingGraph.from_file(graph_file)
        if spinc == "all":
            values = d_all_classes(graph, reverse=reverse, node_limit=node_limit)
            if fmt == "json":
                _echo_json(
                    [{"spinc": index, "d": str(value)} for index, value in enumerate(values)]
                )
                return
            for index, value in enumerate(values):
                click.echo(f"  [{index}] d = {value}")
            return
        selector: int | Literal["self-conjugate"]
        selector = "self-conjugate" if spinc == "self-conjugate" else int(spinc)
        d = d_plumbing(graph, selector, reverse=reverse, node_limit=node_limit)
    except _INPUT_ERRORS as e:
        _handle_error(e)
    if fmt == "json":
        _echo_json({"spinc": spinc, "d": str(d)})
        return
    click.echo(f"d = {d}")


# ---------------------------------------------------------------------------
# Reproductions
# ---------------------------------------------------------------------------


@cli.group()
def paper() -> None:
    """Reproduce the Gamma_j table and the cable surgery pipeline."""


@paper.command("gamma-j")
@click.option("--j", "j", type=click.IntRange(min=1), default=None, help="A single j.")
@click.option("--max-j", type=click.IntRange(min=1), default=6, help="Rows j = 1..max-j.")
@_FORMAT
def paper_gamma_j(j: int | None, max_j: int, fmt: str) -> None:
    """d, V_0 and theta for the Gamma_j family against their closed forms.

    Exits with status 1 unless every row matches.
    """
    from floerkit.plumbing import paper_pipeline

    js = [j] if j is not None else list(range(1, max_j + 1))
    try:
        rows = [paper_pipeline(k) for k in js]
    except _INPUT_ERRORS as e:
        _handle_error(e)

    if fmt == "json":
        _echo_json([row.model_dump(mode="json") for row in rows])
    else:
        click.echo(f"{'j':>3} {'d':>8} {'V_0':>5} {'theta':>6}  status")
        click.echo("-" * 40)
        for row in rows:
            status = "PASS" if row.matches else f"FAIL (expected d={row.expected_d})"
            click.echo(f"{row.j:>3} {str(row.d):>8} {row.v0:>5} {row.theta:>6}  {status}")
    if not all(row.matches for row in rows):
        raise SystemExit(1)
    if fmt != "json":
        click.echo("\nPASS")


CABLE_EXPECTED_GRADINGS = sorted(
    [
        (3, 8), (2, 7), (1, 3), (1, 2), (1, 1), (1, 0), (0, 0),
        (-1, 1), (-1, 0), (-1, -1), (-1, -2), (-2, 3), (-3, 2),
    ]
)  # fmt: skip


@paper.command("cable")
def paper_cable() -> None:
    """Cable -> flip -> cone -> reduce -> invariants, compared with the expected values.

    Exits with status 1 unless everything matches.
    """
    from floerkit.catalog import get
    from floerkit.concordance import invariant_report
    from floerkit.surgery import core_complex

    fixture = get("cable")
    try:
        core = core_complex(fixture.complex, fixture.flip)
        report = invariant_report(core, upsilon_denominator=8)
    except _INPUT_ERRORS as e:
        _handle_error(e)

    gradings = sorted((g.alexander, g.maslov) for g in core.generators)
    upsilon_ok = len(report.upsilon) == 17 and all(
        s.value == min(s.t, 2 - s.t) for s in report.upsilon
    )
    checks: list[tuple[str, object, object, bool]] = [
        ("generators", len(core.generators), 13, len(core.generators) == 13),
        ("gradings", "multiset", "as tabulated", gradings == CABLE_EXPECTED_GRADINGS),
        ("tau", report.tau, -1, report.tau == -1),
        ("nu", report.nu, -1, report.nu == -1),
        ("nu'", report.nu_prime, -1, report.nu_prime == -1),
        ("epsilon", report.epsilon, 0, report.epsilon == 0),
        ("d", report.d, Fraction(-2), report.d == -2),
        ("Upsilon", "k/8 grid", "min(t, 2 - t)", upsilon_ok),
    ]
    click.echo(f"{'quantity':<12} {'computed':>12} {'expected':>14}  status")
    click.echo("-" * 50)
    for label, computed, expected, ok in checks:
        status = "PASS" if ok else "FAIL"
        click.echo(f"{label:<12} {computed!s:>12} {expected!s:>14}  {status}")
    if not all(ok for *_, ok in checks):
        raise SystemExit(1)
    click.echo("\nPASS")


# ---------------------------------------------------------------------------
# Catalog and housekeeping
# ---------------------------------------------------------------------------


@cli.group()
def catalog() -> None:
    """Shipped fixtures."""


@catalog.command("list")
@_FORMAT
def catalog_list(fmt: str) -> None:
    """List the shipped fixtures."""
    from floerkit.catalog import list_fixtures

    infos = list_fixtures()
    if fmt == "json":
        _echo_json([info.model_dump() for info in infos])
        return
    click.echo(f"{'name':<8} {'gens':>4} {'genus':>5} {'flip':>4}  description")
    click.echo("-" * 80)
    for info in infos:
        flip = "yes" if info.has_flip else "-"
        summary = info.description if len(info.description) <= 50 else info.description[:48] + ".."
        click.echo(f"{info.name:<8} {info.generators:>4} {info.genus:>5} {flip:>4}  {summary}")


@catalog.command("export")
@click.argument("directory", type=click.Path(file_okay=False))
def catalog_export(directory: str) -> None:
    """Write every fixture (and flip map) as JSON into DIRECTORY."""
    from floerkit.catalog import export

    try:
        written = export(directory)
    except OSError as e:
        _handle_error(e)
    click.echo(f"Wrote {len(written)} files to {directory}")


@cli.command()
def version() -> None:
    """Show version information."""
    from floerkit import __version__

    click.echo(f"floerkit {__version__}")


@cli.command()
@click.option(
    "--transport",
    type=click.Choice(["stdio", "sse"]),
    default="stdio",
    help="MCP transport protocol.",
)
def serve(transport: str) -> None:
    """Start the floerkit MCP server.

    For Claude Desktop, add this to your config:

        {"mcpServers": {"floerkit": {"command": "uvx", "args": ["floerkit", "serve"]}}}
    """
    from floerkit.server import mcp

    logger.info(f"Starting floerkit MCP server ({transport} transport)")
    mcp.run(transport=cast('Literal["stdio", "sse"]', transport))


if __name__ == "__main__":
    cli()
