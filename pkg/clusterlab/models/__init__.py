"""
clusterlab wire documents.

Seeds, Cartan data, presentations and reports as Pydantic v2 models with JSON
schema export.
"""

from clusterlab.models.documents import (
    CartanDocument,
    CheckDocument,
    MembershipReport,
    MembershipRequest,
    MinorLabelDocument,
    OutputFormat,
    PresentationDocument,
    RunConfig,
    SeedBuildRequest,
    SeedDocument,
    SpecializationDocument,
    SuiteReportDocument,
    VertexDocument,
    WitnessDocument,
    get_seed_json_schema,
    write_seed_schema_to_file,
)

__all__ = [
    "CartanDocument",
    "CheckDocument",
    "MembershipReport",
    "MembershipRequest",
    "MinorLabelDocument",
    "OutputFormat",
    "PresentationDocument",
    "RunConfig",
    "SeedBuildRequest",
    "SeedDocument",
    "SpecializationDocument",
    "SuiteReportDocument",
    "VertexDocument",
    "WitnessDocument",
    "get_seed_json_schema",
    "write_seed_schema_to_file",
]
