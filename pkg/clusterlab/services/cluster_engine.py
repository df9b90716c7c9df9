"""
Mutation of seeds and cluster variables, frozen valuations, seed enumeration
and upper-cluster-algebra membership.

Cluster variables of every state are Laurent polynomials in the initial
cluster. To read a function in a later cluster, each state keeps a lazily
built inverse map sending the initial variables to Laurent polynomials in its
own cluster; slots of a cluster are named by the vertex names of the seed.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, Field

from clusterlab.config import MAX_SEEDS
from clusterlab.services.dbc_seed import DBCSeed, Seed
from clusterlab.services.errors import ClusterLabError, DefectError, InputError
from clusterlab.services.exact_poly import (
    LaurentPoly,
    NotDivisible,
    min_exponent,
    product,
    rewrite,
)
from clusterlab.utils.logging import log_enumeration, log_mutation_step

logger = logging.getLogger(__name__)


class FrozenVertex(InputError):
    """Mutation requested at a frozen vertex."""


class LaurentViolation(DefectError):
    """A mutated cluster variable is not Laurent in the initial cluster."""


class CapExceeded(ClusterLabError):
    """Enumeration exceeded CLUSTER_MAX_SEEDS."""


class SeedDisagreement(DefectError):
    """Frozen valuations differ between seeds."""


class NotLaurentInSeed(ClusterLabError):
    """A function is not Laurent in the cluster of some seed."""

    def __init__(self, message: str, path: tuple[int, ...]):
        super().__init__(message)
        self.path = path


# -----------------------------------------------------------------------------
# Matrix mutation
# -----------------------------------------------------------------------------


def _pos(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


def mutate_matrix(seed: Seed, k: int) -> Seed:
    """μ_k on the exchange matrix; J, J_uf and d are unchanged."""
    if k not in seed.mutable:
        raise FrozenVertex(f"Vertex {k} is frozen")
    p = seed._pos[k]
    old = seed.epsilon
    n = len(old)
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == p or j == p:
                row.append(-old[i][j])
            else:
                row.append(old[i][j] + _pos(old[i][p]) * old[p][j] + old[i][p] * _pos(-old[p][j]))
        new.append(tuple(row))
    return seed.with_epsilon(new)


def exchange_exponents(seed: Seed, k: int) -> tuple[dict[int, int], dict[int, int]]:
    """Exponents of the two monomials ∏A_i^[eps_ki]+ and ∏A_i^[-eps_ki]+."""
    plus: dict[int, int] = {}
    minus: dict[int, int] = {}
    for i in seed.vertices:
        e = seed.eps(k, i)
        if e.denominator != 1:
            raise DefectError(f"eps[{k},{i}] = {e} is not integral")
        if e > 0:
            plus[i] = int(e)
        elif e < 0:
            minus[i] = int(-e)
    return plus, minus


# -----------------------------------------------------------------------------
# Seed states
# -----------------------------------------------------------------------------


class SeedState:
    """Snapshot of a seed with its cluster variables expressed in the initial cluster."""

    __slots__ = ("seed", "vars", "path", "parent", "_inverse", "_key")

    def __init__(
        self,
        seed: Seed,
        vars: dict[int, LaurentPoly],
        path: tuple[int, ...] = (),
        parent: Optional["SeedState"] = None,
    ):
        self.seed = seed
        self.vars = vars
        self.path = path
        self.parent = parent
        self._inverse: Optional[dict[str, LaurentPoly]] = None
        self._key: Optional[tuple] = None

    @property
    def variables(self) -> tuple[str, ...]:
        """Names of the initial cluster variables."""
        return tuple(self.seed.names[v] for v in self.seed.vertices)

    def key(self) -> tuple:
        """Dedup key: exchange matrix plus the sorted multiset of variable texts."""
        if self._key is None:
            self._key = (self.seed.epsilon, tuple(sorted(p.to_text() for p in self.vars.values())))
        return self._key

    def inverse_map(self) -> dict[str, LaurentPoly]:
        """Initial variable name -> Laurent polynomial in this state's cluster slots."""
        if self._inverse is not None:
            return self._inverse
        names = self.variables
        if self.parent is None:
            self._inverse = {n: LaurentPoly.var(n, names) for n in names}
            return self._inverse
        k = self.path[-1]
        parent = self.parent
        plus, minus = exchange_exponents(parent.seed, k)
        slots = {v: LaurentPoly.var(parent.seed.names[v], names) for v in parent.seed.vertices}
        binomial = product((slots[i] ** e for i, e in plus.items()), names) + product(
            (slots[i] ** e for i, e in minus.items()), names
        )
        name_k = parent.seed.names[k]
        image = binomial * slots[k].inverse()
        step = {name_k: image}
        out: dict[str, LaurentPoly] = {}
        for n, poly in parent.inverse_map().items():
            try:
                out[n] = rewrite(poly, step)
            except NotDivisible:
                raise LaurentViolation(f"Initial variable {n} is not Laurent along path {self.path}")
        self._inverse = out
        return out

    def express(self, f: LaurentPoly) -> LaurentPoly:
        """Rewrite f (in the initial cluster) in this state's cluster."""
        if self.parent is None:
            return f
        try:
            return rewrite(f, self.inverse_map())
        except NotDivisible:
            raise NotLaurentInSeed(f"{f.to_text()} is not Laurent in the seed at path {self.path}", self.path)

    def __repr__(self) -> str:
        return f"SeedState(path={self.path})"


def initial_state(seed: Seed) -> SeedState:
    names = tuple(seed.names[v] for v in seed.vertices)
    return SeedState(seed, {v: LaurentPoly.var(seed.names[v], names) for v in seed.vertices})


def exchange_binomial(state: SeedState, k: int) -> LaurentPoly:
    plus, minus = exchange_exponents(state.seed, k)
    names = state.variables
    return product((state.vars[i] ** e for i, e in plus.items()), names) + product(
        (state.vars[i] ** e for i, e in minus.items()), names
    )


def mutate_state(state: SeedState, k: int) -> SeedState:
    """Replace vars[k] by (exchange binomial) / vars[k]; the quotient must be Laurent."""
    if k not in state.seed.mutable:
        raise FrozenVertex(f"Vertex {k} is frozen")
    start = time.perf_counter()
    binomial = exchange_binomial(state, k)
    path = state.path + (k,)
    try:
        new_var = binomial / state.vars[k]
    except NotDivisible as exc:
        log_mutation_step(logger, k, path, 0, time.perf_counter() - start, success=False, error=str(exc))
        raise LaurentViolation(f"Mutation at {k} along {state.path} is not Laurent") from exc
    vars = dict(state.vars)
    vars[k] = new_var
    log_mutation_step(logger, k, path, new_var.num_terms(), time.perf_counter() - start)
    # Mutating back returns to the parent snapshot
    if state.path and state.path[-1] == k and state.parent is not None:
        parent = state.parent
        if parent.vars == vars:
            return parent
    return SeedState(mutate_matrix(state.seed, k), vars, path, state)


def mutate_along(state: SeedState, path: Iterable[int]) -> SeedState:
    for k in path:
        state = mutate_state(state, k)
    return state


def enumerate_seeds(initial: SeedState, depth: int, cap: Optional[int] = None) -> list[SeedState]:
    """Ordered BFS over mutation sequences of length ≤ depth, deduplicated by state key."""
    if depth < 0:
        raise InputError("depth must be nonnegative")
    cap = MAX_SEEDS if cap is None else cap
    start = time.perf_counter()
    seen = {initial.key()}
    states = [initial]
    frontier = deque([(initial, 0)])
    while frontier:
        state, level = frontier.popleft()
        if level == depth:
            continue
        for k in state.seed.mutable_vertices:
            if state.path and state.path[-1] == k:
                continue
            child = mutate_state(state, k)
            key = child.key()
            if key in seen:
                continue
            seen.add(key)
            states.append(child)
            if len(states) > cap:
                raise CapExceeded(f"More than {cap} seeds within depth {depth}")
            frontier.append((child, level + 1))
    log_enumeration(logger, depth, len(states), time.perf_counter() - start)
    return states


# -----------------------------------------------------------------------------
# Valuations and membership
# -----------------------------------------------------------------------------


def frozen_valuation(f: LaurentPoly, j: int, states: Sequence[SeedState]) -> int:
    """Vanishing order of the frozen variable at j, required to agree across states."""
    if not states:
        raise InputError("frozen_valuation needs at least one state")
    seed = states[0].seed
    if j in seed.mutable:
        raise InputError(f"Vertex {j} is mutable")
    name = seed.names[j]
    values: dict[tuple[int, ...], int] = {}
    for state in states:
        values[state.path] = min_exponent(state.express(f), name)
    distinct = set(values.values())
    if len(distinct) > 1:
        raise SeedDisagreement(f"Valuation at {name} of {f.to_text()} differs across seeds: {values}")
    return distinct.pop()


class Verdict(str, Enum):
    """Membership verdict at a finite mutation depth."""

    IN_UPPER_BAR = "InUpperBar"
    IN_UPPER_ONLY = "InUpperOnly"
    NOT_LAURENT = "NotLaurent"


class Witness(BaseModel):
    seed_path: list[int] = Field(..., description="Mutation path of the seed that fails")
    offending_vertex: Optional[int] = Field(None, description="Frozen vertex with negative valuation")
    exponent: Optional[int] = Field(None, description="The negative valuation")


class MembershipResult(BaseModel):
    verdict: Verdict = Field(..., description="InUpperBar, InUpperOnly or NotLaurent")
    depth: int = Field(..., description="Mutation depth of the enumerated seeds")
    seeds_checked: int = Field(..., description="Number of distinct seeds checked")
    witnesses: list[Witness] = Field(default_factory=list, description="Failures that decided the verdict")


def membership(
    f: LaurentPoly,
    sigma: Iterable[int],
    initial: SeedState,
    depth: int,
    states: Optional[Sequence[SeedState]] = None,
) -> MembershipResult:
    """Decide membership in LP over all seeds to depth, then ν_i(f) ≥ 0 for i in Σ."""
    states = list(states) if states is not None else enumerate_seeds(initial, depth)
    sigma = sorted(sigma)
    for j in sigma:
        if j in initial.seed.mutable:
            raise InputError(f"Σ contains the mutable vertex {j}")
    if f.is_zero():
        # ν_i(0) = +∞ for every i
        return MembershipResult(verdict=Verdict.IN_UPPER_BAR, depth=depth, seeds_checked=len(states))
    for state in states:
        try:
            state.express(f)
        except NotLaurentInSeed:
            return MembershipResult(
                verdict=Verdict.NOT_LAURENT,
                depth=depth,
                seeds_checked=len(states),
                witnesses=[Witness(seed_path=list(state.path))],
            )
    witnesses = []
    for j in sigma:
        nu = frozen_valuation(f, j, states)
        if nu < 0:
            witnesses.append(Witness(seed_path=[], offending_vertex=j, exponent=nu))
    verdict = Verdict.IN_UPPER_ONLY if witnesses else Verdict.IN_UPPER_BAR
    return MembershipResult(verdict=verdict, depth=depth, seeds_checked=len(states), witnesses=witnesses)


# -----------------------------------------------------------------------------
# Seed equivalence
# -----------------------------------------------------------------------------


def _frozen_matching(a: DBCSeed, b: DBCSeed) -> Optional[dict[int, int]]:
    def weights(s: DBCSeed) -> dict[tuple, int]:
        out = {}
        for k in s.seed.frozen:
            first, second = s.labels[k].weights(s.datum)
            out[(s.seed.levels[k], first.coords, second.coords)] = k
        return out

    wa, wb = weights(a), weights(b)
    if len(wa) != len(a.seed.frozen) or set(wa) != set(wb):
        return None
    return {wa[key]: wb[key] for key in wa}


def _match_mutables(x: Seed, y: Seed, frozen: dict[int, int]) -> Optional[dict[int, int]]:
    mx, my = x.mutable_vertices, y.mutable_vertices
    if len(mx) != len(my):
        return None
    for perm in permutations(my):
        sigma = dict(frozen)
        sigma.update(zip(mx, perm))
        if all(
            x.eps(i, j) == y.eps(sigma[i], sigma[j])
            for i in x.vertices
            for j in x.vertices
            if i in x.mutable or j in x.mutable
        ):
            return sigma
    return None


def seeds_equivalent(a: DBCSeed, b: DBCSeed, depth: int) -> Optional[tuple[int, ...]]:
    """Mutation path from a to a seed matching b, searched to the given depth."""
    frozen = _frozen_matching(a, b)
    if frozen is None:
        return None
    seen = {a.seed.epsilon}
    queue = deque([(a.seed, ())])
    while queue:
        seed, path = queue.popleft()
        if _match_mutables(seed, b.seed, frozen) is not None:
            return path
        if len(path) == depth:
            continue
        for k in seed.mutable_vertices:
            child = mutate_matrix(seed, k)
            if child.epsilon in seen:
                continue
            seen.add(child.epsilon)
            queue.append((child, path + (k,)))
    return None
