"""Domain models for knot complexes, surgery data and plumbing graphs.

All public models use Pydantic v2, are frozen, and serialize rationals as
``"p/q"`` strings so that no float ever reaches a report.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator, model_validator

from floerkit.errors import ComplexFormatError, GraphError


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, (bool, float)):
        raise ValueError("rational values must be given exactly, not as floats")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational number: {value!r}") from None
    raise ValueError(f"not a rational number: {value!r}")


Rational = Annotated[Fraction, PlainValidator(_to_fraction), PlainSerializer(str, return_type=str)]
"""An exact rational, accepted as int, Fraction or ``"p/q"`` and dumped as a string."""

_NAME_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"

# ---------------------------------------------------------------------------
# Bifiltered complexes
# ---------------------------------------------------------------------------


class Generator(BaseModel):
    """A generator over F[U, U^-1], pinned at filtration position (0, alexander).

    Attributes:
        name: ASCII identifier, unique within a complex.
        alexander: j-coordinate of the U^0 representative.
        maslov: Homological grading of the U^0 representative.
    """

    name: str = Field(pattern=_NAME_PATTERN)
    alexander: int
    maslov: int

    model_config = {"frozen": True}


class DiffEntry(BaseModel):
    """One term of the differential: ``from`` hits ``U^u_power * to``."""

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    u_power: int = Field(default=0, ge=0)

    model_config = {"frozen": True, "populate_by_name": True}


class BifilteredComplex(BaseModel):
    """A finitely generated bifiltered complex, typically CFK-infinity of a knot.

    The canonical JSON form is::

        {"genus": 1,
         "generators": [{"name": "a", "alexander": 1, "maslov": 0}, ...],
         "differential": [{"from": "b", "to": "a", "u_power": 1}, ...]}
    """

    genus: int = Field(ge=0)
    generators: tuple[Generator, ...]
    differential: tuple[DiffEntry, ...] = ()
    reduced: bool = False

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_references(self) -> BifilteredComplex:
        seen: set[str] = set()
        for g in self.generators:
            if g.name in seen:
                raise ComplexFormatError(f"duplicate generator name {g.name!r}")
            seen.add(g.name)
        arrows: set[tuple[str, str, int]] = set()
        for e in self.differential:
            for end in (e.source, e.target):
                if end not in seen:
                    raise ComplexFormatError(f"arrow {e.source}->{e.target} names unknown {end!r}")
            key = (e.source, e.target, e.u_power)
            if key in arrows:
                raise ComplexFormatError(f"arrow {e.source}->{e.target} listed twice")
            arrows.add(key)
        return self

    @classmethod
    def from_json(cls, text: str) -> BifilteredComplex:
        """Parse the canonical JSON form."""
        return cls.model_validate_json(text)

    @classmethod
    def from_file(cls, path: str | Path) -> BifilteredComplex:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def by_name(self) -> dict[str, Generator]:
        return {g.name: g for g in self.generators}

    def successors(self) -> dict[str, list[tuple[str, int]]]:
        """Map each generator to its ``(target, u_power)`` arrows."""
        succ: dict[str, list[tuple[str, int]]] = {g.name: [] for g in self.generators}
        for e in self.differential:
            succ[e.source].append((e.target, e.u_power))
        return succ

    def maslov_range(self) -> tuple[int, int]:
        if not self.generators:
            return (0, 0)
        values = [g.maslov for g in self.generators]
        return (min(values), max(values))


class ValidationReport(BaseModel):
    """Outcome of :func:`floerkit.complexes.validate`."""

    ok: bool
    violations: tuple[str, ...] = ()

    model_config = {"frozen": True}


# ---------------------------------------------------------------------------
# Flip maps and surgery results
# ---------------------------------------------------------------------------


class FlipEntry(BaseModel):
    """One term ``phi(from) += U^u_power * to``; the power may be negative."""

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    u_power: int = 0

    model_config = {"frozen": True, "populate_by_name": True}


class FlipMap(BaseModel):
    """A flip map, stored as its nonzero terms."""

    entries: tuple[FlipEntry, ...] = ()

    model_config = {"frozen": True}

    @classmethod
    def identity(cls, complex_: BifilteredComplex) -> FlipMap:
        return cls(
            entries=tuple(FlipEntry(source=g.name, target=g.name) for g in complex_.generators)
        )

    @classmethod
    def from_json(cls, text: str) -> FlipMap:
        return cls.model_validate_json(text)

    @classmethod
    def from_file(cls, path: str | Path) -> FlipMap:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def terms(self) -> dict[str, list[tuple[str, int]]]:
        out: dict[str, list[tuple[str, int]]] = {}
        for e in self.entries:
            out.setdefault(e.source, []).append((e.target, e.u_power))
        return out


FlipCondition = Literal["chain_map", "grading", "filtration", "quasi_isomorphism"]


class FlipReport(BaseModel):
    """Outcome of :func:`floerkit.flip.verify_flip`; ``failed`` names the first broken axiom."""

    ok: bool
    failed: FlipCondition | None = None
    detail: str | None = None

    model_config = {"frozen": True}


class HatRank(BaseModel):
    """Rank of knot Floer hat homology in one Alexander grading."""

    alexander: int
    rank: int

    model_config = {"frozen": True}


class SurgerySample(BaseModel):
    """d-invariant of the 1/n surgery for one n."""

    n: int
    d: Rational

    model_config = {"frozen": True}


class ThetaReport(BaseModel):
    """Spread of d-invariants over 1/n surgeries, n = 1..n_max."""

    theta: Rational
    stabilized: bool
    samples: tuple[SurgerySample, ...]

    model_config = {"frozen": True}


# ---------------------------------------------------------------------------
# Tower data and concordance invariants
# ---------------------------------------------------------------------------


class TowerReport(BaseModel):
    """Plus-flavor summary: tower bottom, reduced torsion and the window used.

    Attributes:
        d: Lowest grading of the U-tower.
        torsion_orders: Orders of the cyclic F[U]-summands of HF_red, ascending.
        n_invariant: Smallest n with U^n HF_red = 0.
        window: Truncation height the result was certified at.
    """

    d: Rational
    torsion_orders: tuple[int, ...] = ()
    n_invariant: int = Field(default=0, ge=0)
    window: int

    model_config = {"frozen": True}


class UpsilonSample(BaseModel):
    t: Rational
    value: Rational

    model_config = {"frozen": True}


class InvariantReport(BaseModel):
    """All concordance invariants of one complex, plus the ambient Floer data."""

    tau: int
    nu: int
    nu_prime: int
    epsilon: Literal[-1, 0, 1]
    v0: int = Field(ge=0)
    upsilon: tuple[UpsilonSample, ...] = ()
    d: Rational
    n_invariant: int = Field(ge=0)
    torsion_orders: tuple[int, ...] = ()
    hat_rank: int
    generators: int
    window: int

    model_config = {"frozen": True}

    def upsilon_at(self, t: Fraction | int | str) -> Fraction:
        """Return the sampled value at ``t``; raises KeyError if ``t`` was not sampled."""
        wanted = _to_fraction(t)
        for sample in self.upsilon:
            if sample.t == wanted:
                return sample.value
        raise KeyError(f"Upsilon was not sampled at t={wanted}")

    def upsilon_frame(self) -> Any:
        """Return the Upsilon samples as a Polars DataFrame (string columns ``t``, ``value``).

        Requires polars to be installed (pip install floerkit[polars]).

        Raises:
            ImportError: If polars is not installed.
        """
        try:
            import polars as pl
        except ImportError:
            raise ImportError(
                "polars is required for upsilon_frame(). "
                "Install it with: pip install floerkit[polars]"
            ) from None

        return pl.DataFrame(
            {
                "t": [str(s.t) for s in self.upsilon],
                "value": [str(s.value) for s in self.upsilon],
            }
        )


# ---------------------------------------------------------------------------
# Plumbing
# ---------------------------------------------------------------------------


class PlumbingVertex(BaseModel):
    name: str
    weight: int

    model_config = {"frozen": True}


class PlumbingGraph(BaseModel):
    """A weighted plumbing graph.

    JSON form: ``{"vertices": [{"name": "v1", "weight": 3}, ...], "edges": [["v1", "v2"], ...]}``.
    """

    vertices: tuple[PlumbingVertex, ...]
    edges: tuple[tuple[str, str], ...] = ()

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_vertices(self) -> PlumbingGraph:
        names = [v.name for v in self.vertices]
        if len(set(names)) != len(names):
            raise GraphError("duplicate vertex names")
        known = set(names)
        for a, b in self.edges:
            if a not in known or b not in known:
                raise GraphError(f"edge ({a}, {b}) references an unknown vertex")
            if a == b:
                raise GraphError(f"loop at vertex {a}")
        return self

    @classmethod
    def from_json(cls, text: str) -> PlumbingGraph:
        return cls.model_validate_json(text)

    @classmethod
    def from_file(cls, path: str | Path) -> PlumbingGraph:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def names(self) -> list[str]:
        return [v.name for v in self.vertices]

    def valence(self, name: str) -> int:
        return sum(1 for a, b in self.edges if name in (a, b))


class IntersectionForm(BaseModel):
    """Intersection lattice of a plumbing, with definiteness and bad vertices."""

    names: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    definiteness: Literal["positive", "negative"]
    det: int
    bad_vertices: tuple[str, ...] = ()

    model_config = {"frozen": True}

    @property
    def rank(self) -> int:
        return len(self.names)


class CharCovector(BaseModel):
    """A characteristic covector, given by its values on the vertex basis."""

    alpha: tuple[int, ...]
    class_rep: bool = False

    model_config = {"frozen": True}


class SquareMinimum(BaseModel):
    """Least square in a Spin^c class and one covector attaining it."""

    value: Rational
    minimizer: CharCovector
    nodes: int

    model_config = {"frozen": True}


class GammaRow(BaseModel):
    """Computed and closed-form values for one member of the Gamma_j family."""

    j: int
    d: Rational
    v0: int
    theta: int
    expected_d: Rational
    expected_v0: int
    ni_wu: Rational

    model_config = {"frozen": True}

    @property
    def matches(self) -> bool:
        return (
            self.d == self.expected_d
            and self.v0 == self.expected_v0
            and self.theta == 2 * self.expected_v0
            and self.ni_wu == self.d
        )


class FixtureInfo(BaseModel):
    name: str
    description: str
    generators: int
    genus: int
    has_flip: bool

    model_config = {"frozen": True}
