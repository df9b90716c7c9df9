"""clusterlab services: exact arithmetic, seeds, mutation, monoids and suites."""

from clusterlab.services.errors import ClusterLabError, DefectError, InputError
from clusterlab.services.exact_poly import LaurentPoly, exact_div
from clusterlab.services.cartan import (
    GeneralizedCartanMatrix,
    RootDatum,
    datum_of_type,
    root_datum,
    validate_cartan,
)
from clusterlab.services.dbc_seed import (
    DBCSeed,
    FramedSeed,
    Seed,
    build_seed,
    double_word,
    framed_seed,
    levi_seed,
    validate_seed,
)
from clusterlab.services.cluster_engine import (
    MembershipResult,
    SeedState,
    Verdict,
    enumerate_seeds,
    initial_state,
    membership,
    mutate_state,
)

__all__ = [
    "ClusterLabError",
    "DefectError",
    "InputError",
    "LaurentPoly",
    "exact_div",
    "GeneralizedCartanMatrix",
    "RootDatum",
    "datum_of_type",
    "root_datum",
    "validate_cartan",
    "DBCSeed",
    "FramedSeed",
    "Seed",
    "build_seed",
    "double_word",
    "framed_seed",
    "levi_seed",
    "validate_seed",
    "MembershipResult",
    "SeedState",
    "Verdict",
    "enumerate_seeds",
    "initial_state",
    "membership",
    "mutate_state",
]
