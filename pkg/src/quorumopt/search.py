"""Heuristic exhaustive search over duplicate-free read expressions.

Candidate read expressions are built from or/and/choose with every node
variable appearing exactly once, enumerated in nondecreasing syntax-tree
depth and deduplicated by truth table. Write quorums are always the dual of
the candidate reads (searching both sides independently would be redundant:
the dual is the optimal complement). Each candidate that meets the fault
tolerance floor is scored by solving the strategy LP; the best metric value
wins, ties broken by emission order so runs are reproducible.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from . import expr as _expr
from .errors import (
    DomainError,
    Infeasible,
    NoFeasibleCandidate,
    NoResilientQuorum,
)
from .model import Node, QuorumSystem, Workload, WorkloadLike
from .optimize import Constraints, Objective, Strategy, find_strategy

# Set partitions grow super-exponentially (Bell numbers); past 8 nodes full
# enumeration stops being a desk-scale computation.
SEARCH_NODE_BOUND = 8


@dataclass(frozen=True)
class SearchOptions:
    objective: Union[Objective, str] = Objective.LOAD
    constraints: Constraints = field(default_factory=Constraints)
    min_fault_tolerance: int = 0
    f: int = 0
    timeout: float | None = None
    budget: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        if self.min_fault_tolerance < 0:
            raise DomainError("min_fault_tolerance must be nonnegative")
        if self.timeout is not None and self.timeout <= 0:
            raise DomainError("timeout must be positive")
        if self.budget is not None and self.budget <= 0:
            raise DomainError("budget must be positive")


@dataclass(frozen=True)
class SearchResult:
    qs: QuorumSystem
    strategy: Strategy
    metric_value: Fraction
    candidates_examined: int


def _set_partitions(items: tuple[str, ...]) -> Iterator[list[tuple[str, ...]]]:
    """All partitions into nonempty blocks; the first item stays in the first
    block, so each partition appears exactly once."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [(first,) + smaller[i]] + smaller[i + 1 :]
        yield [(first,)] + smaller


class _Generator:
    """Duplicate-free expressions over a fixed name set, grouped by depth."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(sorted(names))
        self._cache: dict[tuple[tuple[str, ...], int], list[_expr.Expression]] = {}

    def exact_depth(self, block: tuple[str, ...], d: int) -> list[_expr.Expression]:
        key = (block, d)
        if key in self._cache:
            return self._cache[key]
        results: list[_expr.Expression] = []
        if len(block) == 1:
            if d == 0:
                results = [_expr.Var(block[0])]
        elif d >= 1:
            for blocks in _set_partitions(block):
                if len(blocks) < 2:
                    continue
                options = [self.up_to_depth(tuple(sorted(b)), d - 1) for b in blocks]
                for children in itertools.product(*options):
                    if max(c.depth() for c in children) != d - 1:
                        continue
                    for k in range(1, len(children) + 1):
                        results.append(_expr.choose(k, list(children)))
        self._cache[key] = results
        return results

    def up_to_depth(self, block: tuple[str, ...], dmax: int) -> list[_expr.Expression]:
        out: list[_expr.Expression] = []
        for d in range(dmax + 1):
            out.extend(self.exact_depth(block, d))
        return out


def enumerate_candidates(nodes: Sequence[str]) -> Iterator[_expr.Expression]:
    """Stream of duplicate-free expressions over the given node names, in
    nondecreasing depth, deduplicated by truth table. Within a depth,
    expressions are canonical and emitted in sorted order.

    Depth never needs to exceed n-1: every nesting level must split its
    block into at least two sub-blocks.
    """
    names = tuple(sorted(nodes))
    if not 1 <= len(names) <= SEARCH_NODE_BOUND:
        raise DomainError(
            f"search enumerates 1..{SEARCH_NODE_BOUND} nodes, got {len(names)}"
        )
    if len(set(names)) != len(names):
        raise DomainError("node names must be unique")
    if len(names) == 1:
        yield _expr.Var(names[0])
        return

    from .oracle import truth_table

    gen = _Generator(names)
    seen: set[int] = set()
    for d in range(1, len(names)):
        batch: dict[int, _expr.Expression] = {}
        for e in gen.exact_depth(names, d):
            canon = _expr.canonical(e)
            table = truth_table(canon, names)
            if table in seen:
                continue
            prev = batch.get(table)
            if prev is None or str(canon) < str(prev):
                batch[table] = canon
        for table, e in sorted(batch.items(), key=lambda kv: str(kv[1])):
            seen.add(table)
            yield e


def _metric(strategy: Strategy, workload: Workload, objective: Objective) -> Fraction:
    if objective is Objective.LOAD:
        return strategy.capacity(workload)
    if objective is Objective.LATENCY:
        return strategy.latency(workload)
    return strategy.network_load(workload)


def _better(objective: Objective, challenger: Fraction, incumbent: Fraction) -> bool:
    if objective is Objective.LOAD:
        return challenger > incumbent  # capacity: higher is better
    return challenger < incumbent


def search(
    universe: Sequence[Node],
    workload: WorkloadLike,
    options: SearchOptions | None = None,
) -> SearchResult:
    """Best quorum system over duplicate-free read expressions.

    Each candidate's writes are the dual of its reads. Candidates below the
    fault tolerance floor are skipped without solving; infeasible candidates
    are skipped. On timeout or budget exhaustion the best result so far is
    returned; if nothing feasible was found, NoFeasibleCandidate is raised.

    The load objective maximizes capacity; latency and network objectives
    minimize their metric. Ties keep the earliest candidate, so results are
    reproducible under a candidate budget.
    """
    options = options or SearchOptions()
    w = Workload.coerce(workload)
    names = sorted(node.name for node in universe)

    start = time.monotonic()
    best: SearchResult | None = None
    examined = 0
    for reads in enumerate_candidates(names):
        if options.budget is not None and examined >= options.budget:
            break
        if options.timeout is not None and time.monotonic() - start >= options.timeout:
            break
        examined += 1
        qs = QuorumSystem(universe, reads=reads)
        if qs.fault_tolerance() < options.min_fault_tolerance:
            continue
        try:
            sigma = find_strategy(
                qs, w, options.objective, options.constraints, f=options.f
            )
        except (Infeasible, NoResilientQuorum):
            continue
        value = _metric(sigma, w, options.objective)
        if best is None or _better(options.objective, value, best.metric_value):
            best = SearchResult(qs, sigma, value, examined)
    if best is None:
        raise NoFeasibleCandidate(
            f"no feasible quorum system among {examined} candidates"
        )
    return SearchResult(best.qs, best.strategy, best.metric_value, examined)
