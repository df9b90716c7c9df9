"""
Acceptance suites for clusterlab.

- CheckResult / SuiteReport: one check and an aggregated suite run
- run_suite: run a named suite (sl2, sl3, gl2, valuations, crystal, properties,
  monomial-hom, presentations, all) under a RunConfig

Every random choice derives from RunConfig.rng_seed, and reports carry no
timings, so identical configs give identical reports.
"""

import logging
import random
import time
from fractions import Fraction
from typing import Any, Callable, Optional

from clusterlab.config import DEFAULT_DEPTH
from clusterlab.models.documents import CheckDocument, RunConfig, SuiteReportDocument
from clusterlab.services.cartan import (
    Weight,
    cartan_matrix_of_type,
    datum_of_type,
    frame,
    validate_cartan,
    weyl_element,
)
from clusterlab.services.cluster_engine import (
    SeedState,
    Verdict,
    enumerate_seeds,
    frozen_valuation,
    initial_state,
    mutate_matrix,
    mutate_state,
    seeds_equivalent,
)
from clusterlab.services.crystal_string import (
    bounded_d_vectors,
    leading_injectivity,
    minor_strings,
    string_injective,
    tensor_subadditivity,
)
from clusterlab.services.dbc_seed import (
    DBCSeed,
    FramedSeed,
    build_seed,
    framed_seed,
    levi_seed,
    unshuffled_word,
    validate_seed,
)
from clusterlab.services.errors import ClusterLabError, InputError
from clusterlab.services.exact_poly import LaurentPoly, exact_div, substitute
from clusterlab.services.expression import membership_query
from clusterlab.services.group_eval import (
    GroupPoint,
    initial_values,
    random_point,
    verify_exchange,
    z_twist,
)
from clusterlab.services.monoid_lab import (
    cluster_containment,
    det_y,
    dotted_datum,
    gl2_cartan,
    gl2_family,
    gl2_family_identity,
    gl2_localization,
    is_monomial_monoid_hom,
    random_monomial_map,
    random_two_term_map,
    rho_star_substitution,
    sl2_env_presentation,
    sl2_states,
    sl2_torus_family,
    sl2_valuation_corpus,
    specialize_frozen,
    torus_cone_generators,
    torus_family_quotient,
    valuation_row,
)
from clusterlab.utils.logging import log_check_result, log_suite_result

logger = logging.getLogger(__name__)

CheckFn = Callable[[], tuple[bool, dict[str, Any]]]


class UnknownSuite(InputError):
    """No suite with this name."""


# -----------------------------------------------------------------------------
# Results
# -----------------------------------------------------------------------------


class CheckResult:
    """Result of a single acceptance check."""

    __slots__ = ("check_id", "passed", "detail", "duration_sec", "error_message")

    def __init__(
        self,
        check_id: str,
        passed: bool,
        detail: dict[str, Any],
        duration_sec: float,
        error_message: Optional[str] = None,
    ):
        self.check_id = check_id
        self.passed = passed
        self.detail = detail
        self.duration_sec = duration_sec
        self.error_message = error_message

    def to_dict(self) -> dict[str, Any]:
        # Timings go to the log only
        return {
            "check_id": self.check_id,
            "passed": self.passed,
            "detail": self.detail,
            "error_message": self.error_message,
        }


class SuiteReport:
    """Aggregated results of one suite run."""

    def __init__(self, suite: str, config: RunConfig, results: list[CheckResult]):
        self.suite = suite
        self.config = config
        self.results = results
        self.total = len(results)
        self.passed = sum(1 for r in results if r.passed)
        self.failed = self.total - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_document(self) -> SuiteReportDocument:
        return SuiteReportDocument(
            suite=self.suite,
            config=self.config,
            total=self.total,
            passed=self.passed,
            failed=self.failed,
            results=[CheckDocument(**r.to_dict()) for r in self.results],
        )

    def to_dict(self) -> dict[str, Any]:
        return self.to_document().model_dump(mode="json")


def run_check(suite: str, check_id: str, fn: CheckFn) -> CheckResult:
    """Run one check. Any clusterlab error raised inside fails the check with its type and message."""
    start = time.perf_counter()
    error = None
    try:
        passed, detail = fn()
    except ClusterLabError as exc:
        passed, detail = False, {}
        error = f"{type(exc).__name__}: {exc}"
    duration = time.perf_counter() - start
    log_check_result(logger, suite, check_id, passed, duration, error)
    return CheckResult(check_id, passed, detail, duration, error)


def _rng(config: RunConfig, salt: str) -> random.Random:
    return random.Random(f"{config.rng_seed}:{salt}")


def _points(config: RunConfig, salt: str, n: int, built: DBCSeed, count: int) -> list[GroupPoint]:
    rng = _rng(config, salt)
    return [random_point(rng.randrange(2**31), n, built) for _ in range(count)]


def _frac(x) -> Fraction:
    return Fraction(str(x))


# -----------------------------------------------------------------------------
# SL2
# -----------------------------------------------------------------------------


def _sl2_values_ok(built: DBCSeed, state: SeedState, k: int, points: list[GroupPoint]) -> bool:
    """A1 = g11 t, A2 = -g12 t, A3 = -g21 t, A0 = t^2 and A1' = g22 t."""
    mutated = mutate_state(state, k).vars[k]
    for point in points:
        g, t = point.matrix, point.torus[0]
        values = initial_values(built, point)
        expected = {
            "A1": _frac(g[0, 0]) * t,
            "A2": -_frac(g[0, 1]) * t,
            "A3": -_frac(g[1, 0]) * t,
            "A0": t * t,
        }
        if any(values[name] != value for name, value in expected.items()):
            return False
        if substitute(mutated, values) != _frac(g[1, 1]) * t:
            return False
    return True


def suite_sl2(config: RunConfig) -> list[CheckResult]:
    built = framed_seed(datum_of_type("A1"))
    seed = built.seed
    initial = initial_state(seed)
    names = initial.variables
    k = seed.mutable_vertices[0]
    points = _points(config, "sl2", 2, built, config.samples)

    def shape():
        sigma = sorted(seed.names[v] for v in built.sigma)
        prime = [seed.names[v] for v in built.i_prime]
        detail = {"vertices": len(seed.vertices), "mutable": len(seed.mutable), "sigma": sigma, "i_prime": prime}
        ok = len(seed.vertices) == 4 and len(seed.mutable) == 1 and sigma == ["A2", "A3"] and prime == ["A0"]
        return ok, detail

    def symbolic():
        a = {n: LaurentPoly.var(n, names) for n in names}
        mutated = mutate_state(initial, k).vars[k]
        return mutated == exact_div(a["A2"] * a["A3"] + a["A0"], a["A1"]), {"A1'": mutated.to_text()}

    def pointwise():
        report = verify_exchange(initial, k, points, built)
        return True, report.model_dump()

    def membership_examples():
        cases = [("A1'", None, Verdict.IN_UPPER_BAR), ("1/A1", None, Verdict.NOT_LAURENT), ("A0^-1", ["all"], Verdict.IN_UPPER_ONLY)]
        detail = {}
        ok = True
        for text, sigma, want in cases:
            _, _, result = membership_query(text, built, sigma, max(config.depth, 1))
            detail[text] = result.verdict.value
            ok = ok and result.verdict == want
        return ok, detail

    return [
        run_check("sl2", "framed_seed_shape", shape),
        run_check("sl2", "seed_valid", lambda: (not validate_seed(seed), {})),
        run_check("sl2", "exchange_relation_symbolic", symbolic),
        run_check("sl2", "exchange_relation_pointwise", pointwise),
        run_check("sl2", "minor_values", lambda: (_sl2_values_ok(built, initial, k, points), {"points": len(points)})),
        run_check("sl2", "presentation", lambda: (sl2_env_presentation().verify(), {})),
        run_check("sl2", "membership_examples", membership_examples),
    ]


# -----------------------------------------------------------------------------
# SL3
# -----------------------------------------------------------------------------


def _braid_pair() -> tuple[DBCSeed, DBCSeed]:
    framed = frame(datum_of_type("A2"))
    seeds = []
    for word in ((1, 2, 1), (2, 1, 2)):
        w = weyl_element(framed, word)
        seeds.append(build_seed(unshuffled_word(framed, w, w)))
    return seeds[0], seeds[1]


def suite_sl3(config: RunConfig) -> list[CheckResult]:
    built = framed_seed(datum_of_type("A2"))
    seed = built.seed
    initial = initial_state(seed)
    points = _points(config, "sl3", 3, built, config.samples)

    def shape():
        ok = len(seed.vertices) == 10 and len(seed.mutable) == 4 and not validate_seed(seed)
        return ok, {"vertices": len(seed.vertices), "mutable": len(seed.mutable)}

    def laurent():
        states = enumerate_seeds(initial, config.depth)
        variables = {p.to_text() for s in states for p in s.vars.values()}
        return True, {"depth": config.depth, "seeds": len(states), "cluster_variables": len(variables)}

    def exchange(k: int) -> Callable[[], tuple[bool, dict]]:
        return lambda: (True, verify_exchange(initial, k, points, built).model_dump())

    def braid():
        a, b = _braid_pair()
        path = seeds_equivalent(a, b, max(config.depth, 2))
        return path is not None, {"path": list(path) if path is not None else None}

    results = [
        run_check("sl3", "framed_seed_shape", shape),
        run_check("sl3", "laurent_phenomenon", laurent),
    ]
    for k in seed.mutable_vertices:
        results.append(run_check("sl3", f"exchange_vertex_{k}", exchange(k)))
    results.append(run_check("sl3", "braid_move_equivalence", braid))
    return results


# -----------------------------------------------------------------------------
# GL2 family and presentations
# -----------------------------------------------------------------------------


def _rho_star_matches(k: int) -> bool:
    a1 = validate_cartan(cartan_matrix_of_type("A1"))
    framed = framed_seed(datum_of_type("A1"))
    dotted = levi_seed(dotted_datum(a1, [[1 + 2 * k]]))
    specialized = specialize_frozen(sl2_env_presentation(), rho_star_substitution(framed, dotted))
    return specialized.relations == gl2_family(k).relations


def suite_gl2(config: RunConfig) -> list[CheckResult]:
    ks = [config.k] if config.k is not None else [0, 1, 2, 3]
    a1 = validate_cartan(cartan_matrix_of_type("A1"))
    results = []
    for k in ks:
        if k < 0:
            raise InputError("k must be nonnegative")
        dotted = dotted_datum(a1, [[1 + 2 * k]])
        results += [
            run_check("gl2", f"identity_k{k}", lambda k=k: (gl2_family_identity(k), {})),
            run_check(
                "gl2",
                f"dotted_cartan_k{k}",
                lambda k=k, d=dotted: (
                    [list(r) for r in d.cartan.entries] == gl2_cartan(k),
                    {"entries": [list(r) for r in d.cartan.entries]},
                ),
            ),
            run_check("gl2", f"presentation_k{k}", lambda k=k: (gl2_family(k).verify(), {})),
            run_check("gl2", f"rho_star_k{k}", lambda k=k: (_rho_star_matches(k), {})),
        ]
        if k >= 1:
            results.append(run_check("gl2", f"torus_family_k{k}", lambda k=k: _torus_family(k)))

    def cone():
        found = sorted(p.to_text() for p in torus_cone_generators(1))
        expected = sorted(["1/1*x11^2*x22", "1/1*x11*x22^2", "1/1*x11*x22"])
        return found == expected, {"generators": found}

    results.append(run_check("gl2", "torus_cone_k1", cone))
    return results


def _torus_family(k: int) -> tuple[bool, dict]:
    presentation = sl2_torus_family(k)
    quotient = torus_family_quotient(k)
    z = LaurentPoly.var("z")
    return presentation.verify() and quotient == z ** (2 * k), {"quotient": quotient.to_text()}


def suite_presentations(config: RunConfig) -> list[CheckResult]:
    presentation = sl2_env_presentation()
    det = det_y()

    def fibre(value: int):
        images = specialize_frozen(presentation, {"A0": value}).images()
        return images == [det - value], {"relations": [p.to_text() for p in images]}

    def containment():
        _, states = sl2_states(2)
        return cluster_containment(presentation, states), {"seeds": len(states)}

    return [
        run_check("presentations", "sl2_reference", lambda: (presentation.verify(), presentation.to_dict())),
        run_check("presentations", "fibre_at_zero", lambda: fibre(0)),
        run_check("presentations", "fibre_at_one", lambda: fibre(1)),
        run_check("presentations", "gl2_localization", lambda: (gl2_localization().verify(), {})),
        run_check("presentations", "rho_star_m1", lambda: (_rho_star_matches(1), {})),
        run_check("presentations", "cluster_containment", containment),
    ]


# -----------------------------------------------------------------------------
# Valuations
# -----------------------------------------------------------------------------


def suite_valuations(config: RunConfig) -> list[CheckResult]:
    built, states = sl2_states(config.depth)
    results = []
    for item, f in sl2_valuation_corpus(config.rng_seed):
        def check(item=item, f=f):
            row = valuation_row(item, f, built, states)
            return row.agrees, row.model_dump()

        results.append(run_check("valuations", item, check))
    return results


# -----------------------------------------------------------------------------
# Crystals
# -----------------------------------------------------------------------------


def _a2_dimension(a: int, b: int) -> int:
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def suite_crystal(config: RunConfig) -> list[CheckResult]:
    def a1_strings():
        weights = [a for a in range(100)]
        ok = all(string_injective(Weight([a]), [1]) for a in weights)
        return ok, {"weights": len(weights)}

    def a2_strings(word: tuple[int, ...]):
        def check():
            weights = [(a, b) for a in range(100) for b in range(100) if _a2_dimension(a, b) <= 100]
            ok = all(string_injective(Weight([a, b]), word) for a, b in weights)
            return ok, {"weights": len(weights)}

        return check

    def shapes(cartan_type: str):
        def check():
            reports = minor_strings(framed_seed(datum_of_type(cartan_type)))
            bad = [r.vertex for r in reports if not r.shape_ok]
            return not bad, {"vertices": len(reports), "failing": bad}

        return check

    def leading():
        reports = minor_strings(framed_seed(datum_of_type("A2")))
        vectors = bounded_d_vectors(len(reports), 3)
        return leading_injectivity(reports, vectors), {"d_vectors": len(vectors)}

    def tensors():
        pairs = [((1, 0), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 0)), ((0, 1), (1, 1))]
        violations = 0
        examined = 0
        for mu1, mu2 in pairs:
            for word in ((1, 2, 1), (2, 1, 2)):
                check = tensor_subadditivity(Weight(mu1), Weight(mu2), word)
                violations += len(check.violations)
                examined += check.cartan_pairs
        return violations == 0, {"cartan_pairs": examined, "violations": violations}

    return [
        run_check("crystal", "string_injective_A1", a1_strings),
        run_check("crystal", "string_injective_A2_121", a2_strings((1, 2, 1))),
        run_check("crystal", "string_injective_A2_212", a2_strings((2, 1, 2))),
        run_check("crystal", "minor_string_shapes_A1", shapes("A1")),
        run_check("crystal", "minor_string_shapes_A2", shapes("A2")),
        run_check("crystal", "leading_injectivity_A2", leading),
        run_check("crystal", "tensor_subadditivity_A2", tensors),
    ]


# -----------------------------------------------------------------------------
# Properties
# -----------------------------------------------------------------------------


def suite_properties(config: RunConfig, mutations: int = 500, walk: int = 25) -> list[CheckResult]:
    seeds: dict[str, FramedSeed] = {t: framed_seed(datum_of_type(t)) for t in ("A1", "A2")}

    def involution():
        rng = _rng(config, "involution")
        done = 0
        while done < mutations:
            built = seeds[rng.choice(("A1", "A2"))]
            state = initial_state(built.seed)
            for _ in range(min(walk, mutations - done)):
                k = rng.choice(state.seed.mutable_vertices)
                once = mutate_matrix(state.seed, k)
                if mutate_matrix(once, k) != state.seed or validate_seed(once):
                    return False, {"mutations": done, "vertex": k, "path": list(state.path)}
                child = mutate_state(state, k)
                if mutate_state(child, k).vars != state.vars:
                    return False, {"mutations": done, "vertex": k, "path": list(state.path)}
                state = child
                done += 1
        return True, {"mutations": done}

    def seed_independence(cartan_type: str):
        def check():
            built = seeds[cartan_type]
            states = enumerate_seeds(initial_state(built.seed), config.depth)
            functions = {}
            for s in states:
                for poly in s.vars.values():
                    functions.setdefault(poly.to_text(), poly)
            count = 0
            for text in sorted(functions):
                for j in built.seed.frozen:
                    frozen_valuation(functions[text], j, states)
                    count += 1
            return True, {"seeds": len(states), "valuations": count}

        return check

    def twist():
        built = seeds["A1"]
        initial = initial_state(built.seed)
        k = built.seed.mutable_vertices[0]
        mutated = mutate_state(initial, k).vars[k]
        for point in _points(config, "twist", 2, built, config.samples):
            twisted = z_twist(point)
            before, after = initial_values(built, point), initial_values(built, twisted)
            if before != after or substitute(mutated, before) != substitute(mutated, after):
                return False, {"point": point.to_dict()}
        return True, {"points": config.samples}

    return [
        run_check("properties", "mutation_involution", involution),
        run_check("properties", "valuation_seed_independence_A1", seed_independence("A1")),
        run_check("properties", "valuation_seed_independence_A2", seed_independence("A2")),
        run_check("properties", "z_twist", twist),
    ]


def suite_monomial_hom(config: RunConfig, count: int = 50) -> list[CheckResult]:
    y_vars = ("y1", "y2", "y3")

    def accept():
        rng = _rng(config, "monomial")
        maps = [random_monomial_map(rng, rng.randint(1, 3), y_vars) for _ in range(count)]
        accepted = sum(1 for m in maps if is_monomial_monoid_hom(m))
        return accepted == count, {"accepted": accepted, "maps": count}

    def reject():
        rng = _rng(config, "two-term")
        maps = [random_two_term_map(rng, rng.randint(1, 3), y_vars) for _ in range(count)]
        rejected = sum(1 for m in maps if not is_monomial_monoid_hom(m))
        return rejected == count, {"rejected": rejected, "maps": count}

    def examples():
        y1, y2 = LaurentPoly.var("y1", y_vars), LaurentPoly.var("y2", y_vars)
        verdicts = {
            "y1*y2^3": is_monomial_monoid_hom([y1 * y2**3]),
            "y1 + y2": is_monomial_monoid_hom([y1 + y2]),
            "0": is_monomial_monoid_hom([LaurentPoly.zero(y_vars)]),
        }
        return verdicts == {"y1*y2^3": True, "y1 + y2": False, "0": True}, verdicts

    return [
        run_check("monomial-hom", "monomial_maps_accepted", accept),
        run_check("monomial-hom", "two_term_maps_rejected", reject),
        run_check("monomial-hom", "examples", examples),
    ]


# -----------------------------------------------------------------------------
# Registry
# -----------------------------------------------------------------------------

SUITES: dict[str, Callable[[RunConfig], list[CheckResult]]] = {
    "sl2": suite_sl2,
    "sl3": suite_sl3,
    "gl2": suite_gl2,
    "valuations": suite_valuations,
    "crystal": suite_crystal,
    "properties": suite_properties,
    "monomial-hom": suite_monomial_hom,
    "presentations": suite_presentations,
}

DEFAULT_SAMPLES = {"sl2": 100, "sl3": 50, "properties": 100}
DEFAULT_DEPTHS = {"sl3": 3, "presentations": 2}
DEFAULT_SEEDS = {"valuations": 7}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def default_config(
    suite: str,
    rng_seed: Optional[int] = None,
    depth: Optional[int] = None,
    samples: Optional[int] = None,
    k: Optional[int] = None,
    command: str = "verify",
) -> RunConfig:
    """
    RunConfig for a suite, with per-suite defaults for unset values. An all run
    keeps unset depth and samples as None so each suite falls back to its own.
    """
    if suite not in suite_names():
        raise UnknownSuite(f"Unknown suite {suite!r}; choose from {suite_names()}")
    if suite == "all":
        return RunConfig(
            command=f"{command} {suite}",
            rng_seed=rng_seed if rng_seed is not None else 42,
            depth=depth,
            samples=samples,
            k=k,
        )
    return RunConfig(
        command=f"{command} {suite}",
        rng_seed=rng_seed if rng_seed is not None else DEFAULT_SEEDS.get(suite, 42),
        depth=depth if depth is not None else DEFAULT_DEPTHS.get(suite, DEFAULT_DEPTH),
        samples=samples if samples is not None else DEFAULT_SAMPLES.get(suite, 0),
        k=k,
    )


def run_suite(suite: str, config: Optional[RunConfig] = None) -> SuiteReport:
    config = config or default_config(suite)
    start = time.perf_counter()
    if suite == "all":
        results = []
        for name, fn in SUITES.items():
            sub = default_config(name, config.rng_seed, config.depth, config.samples, config.k, config.command)
            for r in fn(sub):
                r.check_id = f"{name}/{r.check_id}"
                results.append(r)
    elif suite in SUITES:
        results = SUITES[suite](config)
    else:
        raise UnknownSuite(f"Unknown suite {suite!r}; choose from {suite_names()}")
    report = SuiteReport(suite, config, results)
    log_suite_result(logger, suite, report.total, report.failed, time.perf_counter() - start)
    return report
