"""
Wire documents for clusterlab.

Seeds, Cartan data, presentations, membership verdicts and suite reports as
Pydantic v2 models. Seed matrices travel as [p, q] pairs, other rationals as
"p/q" strings, so documents stay exact and byte-stable across runs.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import AliasChoices, BaseModel, Field

SCHEMA_VERSION = "1.0.0"


class OutputFormat(str, Enum):
    JSON = "json"
    DOT = "dot"
    TEXT = "text"


# -----------------------------------------------------------------------------
# Cartan data
# -----------------------------------------------------------------------------


class CartanDocument(BaseModel):
    """Generalized Cartan matrix as read from or written to a file: {"labels": [...], "matrix": [[...]]}."""

    labels: Optional[list[str]] = Field(None, description="Index labels; defaults to 1..r, framed indices end in a prime")
    matrix: list[list[int]] = Field(
        ...,
        validation_alias=AliasChoices("matrix", "entries"),
        description="Integer matrix a_ij (row i, column j); 'entries' is read as well",
    )
    symmetrizers: Optional[list[int]] = Field(None, description="d_i, filled in on output")
    name: Optional[str] = Field(None, description="Type name such as 'A2'")

    model_config = {"extra": "forbid", "populate_by_name": True}


class SpecializationDocument(BaseModel):
    """Nonnegative integer matrix f_ij for the dotted Cartan builder."""

    entries: list[list[int]] = Field(..., description="Rows indexed by I, columns by abelianization coordinates")

    model_config = {"extra": "forbid"}


# -----------------------------------------------------------------------------
# Seeds
# -----------------------------------------------------------------------------


class MinorLabelDocument(BaseModel):
    u_word: list[int] = Field(..., description="Reduced word of u_{<=k}")
    v_word: list[int] = Field(..., description="Reduced word of v_{>k}")
    level: int = Field(..., description="Index i of the fundamental weight ω_i")
    torus_shift: Optional[list[int]] = Field(
        None, description="Torus shift in fundamental-weight coordinates: ω_i on I levels, α_i on I' levels"
    )

    model_config = {"extra": "forbid"}


class VertexDocument(BaseModel):
    id: int = Field(..., description="Signed vertex id in [-r,-1] ∪ [1,l]")
    level: int = Field(..., description="Index |i_k| of the letter or level")
    frozen: bool = Field(..., description="Whether the vertex is frozen")
    label: MinorLabelDocument = Field(..., description="Minor label Δ_{uω_i, vω_i} with torus shift")
    name: str = Field(..., description="Cluster variable name (A<display>)")
    symmetrizer: int = Field(..., description="d_k")

    model_config = {"extra": "forbid"}


class SeedDocument(BaseModel):
    """A seed with its exchange matrix, ready for JSON export."""

    version: str = Field(SCHEMA_VERSION, description="Document schema version")
    cartan: CartanDocument = Field(..., description="Cartan data the seed was built from")
    word: list[int] = Field(..., description="Double reduced word (negative letters spell u)")
    vertices: list[VertexDocument] = Field(..., description="Vertices in signed-id order")
    epsilon: list[list[tuple[int, int]]] = Field(
        ..., description="eps_jk as [p, q] pairs, rows and columns in vertex order"
    )
    sigma: Optional[list[str]] = Field(None, description="Names of the frozen vertices in Σ for framed seeds")

    model_config = {"extra": "forbid"}


class SeedBuildRequest(BaseModel):
    cartan: CartanDocument = Field(..., description="Cartan matrix")
    word: list[int] = Field(..., description="Double reduced word")

    model_config = {"extra": "forbid"}


# -----------------------------------------------------------------------------
# Membership and presentations
# -----------------------------------------------------------------------------


class MembershipRequest(BaseModel):
    cartan_type: str = Field(..., description="Type of the framed seed, e.g. 'A1'")
    expression: str = Field(..., description="Laurent expression in the seed's variable names")
    sigma: Optional[list[str]] = Field(None, description="Names of the frozen variables in Σ; default the framed Σ")
    depth: int = Field(1, ge=0, description="Mutation depth")

    model_config = {"extra": "forbid"}


class WitnessDocument(BaseModel):
    seed_path: list[int] = Field(..., description="Mutation path of the failing seed")
    offending_vertex: Optional[str] = Field(None, description="Name of the frozen variable with negative valuation")
    exponent: Optional[int] = Field(None, description="The negative valuation")


class MembershipReport(BaseModel):
    expression: str = Field(..., description="Parsed expression in canonical text")
    verdict: str = Field(..., description="InUpperBar, InUpperOnly or NotLaurent")
    depth: int = Field(..., description="Mutation depth")
    seeds_checked: int = Field(..., description="Distinct seeds checked")
    sigma: list[str] = Field(..., description="Frozen variables in Σ")
    witnesses: list[WitnessDocument] = Field(default_factory=list)


class PresentationDocument(BaseModel):
    name: str = Field(..., description="Presentation name")
    generators: list[str] = Field(..., description="Generator names")
    frozen: list[str] = Field(default_factory=list, description="Frozen generators")
    relations: list[str] = Field(..., description="Relations in canonical text")
    substitutions: dict[str, str] = Field(default_factory=dict, description="Reference substitution")
    verified: Optional[bool] = Field(None, description="Reference identity holds; None without a reference")
    cartan: Optional[list[list[int]]] = Field(None, description="Cartan matrix of the family when defined")


# -----------------------------------------------------------------------------
# Suites
# -----------------------------------------------------------------------------


class RunConfig(BaseModel):
    """Effective settings of one run, echoed into every report."""

    command: str = Field(..., description="Subcommand or route")
    inputs: list[str] = Field(default_factory=list, description="Input paths or names")
    rng_seed: int = Field(0, description="Seed of every random choice")
    depth: Optional[int] = Field(1, ge=0, description="Mutation depth; None in an all run means each suite's default")
    samples: Optional[int] = Field(0, ge=0, description="Random points per check; None in an all run means each suite's default")
    k: Optional[int] = Field(None, description="Family parameter when relevant")
    output: OutputFormat = Field(OutputFormat.JSON, description="json, dot or text")

    model_config = {"extra": "forbid"}


class CheckDocument(BaseModel):
    check_id: str
    passed: bool
    detail: dict[str, Any] = Field(default_factory=dict)
    error_message: Optional[str] = None


class SuiteReportDocument(BaseModel):
    suite: str = Field(..., description="Suite name")
    config: RunConfig = Field(..., description="Run settings")
    total: int
    passed: int
    failed: int
    results: list[CheckDocument] = Field(default_factory=list)


# -----------------------------------------------------------------------------
# Schema export
# -----------------------------------------------------------------------------


def get_seed_json_schema() -> dict[str, Any]:
    """JSON schema of a seed document (root SeedDocument, nested types under $defs)."""
    schema = SeedDocument.model_json_schema()
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "https://clusterlab.example/schemas/seed.json",
        "title": "clusterlab Seed Schema",
        "description": "Seed of a double reduced word with its exchange matrix",
        "version": SCHEMA_VERSION,
        **{k: v for k, v in schema.items() if k not in ("$schema", "$id", "title", "description")},
    }


def write_seed_schema_to_file(path: Optional[Union[str, Path]] = None) -> Path:
    """Write the seed schema. Default: project root / schemas/seed_schema.json"""
    if path is None:
        path = Path(__file__).resolve().parent.parent.parent / "schemas" / "seed_schema.json"
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(get_seed_json_schema(), indent=2), encoding="utf-8")
    return path
