"""Nodes, workloads, and read-write quorum systems.

All values are immutable after construction. Capacities, latencies, and
probabilities are held as exact ``Fraction``s so that metric recomputation
downstream stays exact; floats and decimal strings are converted by their
decimal meaning (0.1 becomes 1/10).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import AbstractSet, Iterable, Mapping, Sequence, Union

from . import expr as _expr
from .errors import (
    DomainError,
    IntersectionViolation,
    NoResilientQuorum,
    UnknownNode,
)

Rational = Union[int, float, str, Fraction, Decimal]

_PROB_SUM_TOL = Fraction(1, 10**9)


def as_fraction(value: Rational) -> Fraction:
    """Exact rational from a number or string, reading floats decimally."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        # repr of a builtin float is its shortest round-tripping decimal;
        # float subclasses (numpy) may repr differently, so normalize first
        return Fraction(Decimal(repr(float(value))))
    if isinstance(value, str):
        try:
            if "/" in value:
                return Fraction(value)
            return Fraction(Decimal(value))
        except (ValueError, InvalidOperation, ZeroDivisionError) as e:
            raise DomainError(f"cannot interpret {value!r} as a rational") from e
    raise DomainError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Node:
    """A replica with read/write capacities (ops per second) and a latency
    (seconds). Defaults of 1 give the classical probability-based load."""

    name: str
    read_cap: Fraction = Fraction(1)
    write_cap: Fraction = Fraction(1)
    latency: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise DomainError("node name must be a nonempty string")
        for field in ("read_cap", "write_cap", "latency"):
            value = as_fraction(getattr(self, field))
            if value <= 0:
                raise DomainError(f"{field} of node {self.name!r} must be positive")
            object.__setattr__(self, field, value)


class Workload:
    """Discrete probability distribution over read fractions in [0, 1].

    A scalar read fraction is the single-point distribution. Probabilities
    must sum to 1 within 1e-9; keys are kept exactly as given.
    """

    def __init__(self, points: Mapping[Rational, Rational]):
        if not points:
            raise DomainError("workload needs at least one read fraction")
        converted: dict[Fraction, Fraction] = {}
        for fr, p in points.items():
            fr = as_fraction(fr)
            p = as_fraction(p)
            if not 0 <= fr <= 1:
                raise DomainError(f"read fraction {fr} is outside [0, 1]")
            if not 0 <= p <= 1:
                raise DomainError(f"probability {p} is outside [0, 1]")
            if fr in converted:
                raise DomainError(f"duplicate read fraction {fr}")
            converted[fr] = p
        total = sum(converted.values())
        if abs(total - 1) > _PROB_SUM_TOL:
            raise DomainError(f"workload probabilities sum to {total}, not 1")
        self._points = dict(sorted(converted.items()))

    @classmethod
    def coerce(cls, value: "Workload" | Rational | Mapping[Rational, Rational]) -> "Workload":
        if isinstance(value, Workload):
            return value
        if isinstance(value, Mapping):
            return cls(value)
        return cls({value: 1})

    @classmethod
    def from_weights(cls, weights: Mapping[Rational, Rational]) -> "Workload":
        """Normalize arbitrary nonnegative weights into a distribution."""
        ws = {as_fraction(fr): as_fraction(w) for fr, w in weights.items()}
        total = sum(ws.values())
        if total <= 0:
            raise DomainError("workload weights must have positive total")
        return cls({fr: w / total for fr, w in ws.items() if w > 0})

    @property
    def points(self) -> dict[Fraction, Fraction]:
        return dict(self._points)

    def items(self) -> list[tuple[Fraction, Fraction]]:
        return list(self._points.items())

    @property
    def mean_read_fraction(self) -> Fraction:
        return sum(fr * p for fr, p in self._points.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, Workload) and self._points == other._points

    def __hash__(self) -> int:
        return hash(tuple(self._points.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{fr}: {p}" for fr, p in self._points.items())
        return f"Workload({{{inner}}})"


WorkloadLike = Union[Workload, Rational, Mapping[Rational, Rational]]


def _coerce_expr(e: Union[_expr.Expression, str, None]) -> _expr.Expression | None:
    if e is None or isinstance(e, _expr.Expression):
        return e
    if isinstance(e, str):
        return _expr.parse(e)
    raise DomainError(f"expected an Expression or text, got {e!r}")


class QuorumSystem:
    """A pair of read/write expressions over a node universe in which every
    read quorum intersects every write quorum.

    If only one side is given, the other is its dual, which is the optimal
    complementary choice. Minimal quorums of both sides are enumerated and
    cached at construction in canonical order.
    """

    def __init__(
        self,
        universe: Sequence[Node],
        reads: Union[_expr.Expression, str, None] = None,
        writes: Union[_expr.Expression, str, None] = None,
    ):
        universe = list(universe)
        names = [n.name for n in universe]
        if len(set(names)) != len(names):
            raise DomainError("node names must be unique within a universe")
        reads = _coerce_expr(reads)
        writes = _coerce_expr(writes)
        if reads is None and writes is None:
            raise DomainError("supply read quorums, write quorums, or both")
        if reads is None:
            reads = writes.dual()
        elif writes is None:
            writes = reads.dual()
        known = set(names)
        unknown = (reads.names() | writes.names()) - known
        if unknown:
            raise UnknownNode(
                f"expression names {sorted(unknown)} are not in the universe"
            )
        self._universe = tuple(universe)
        self._nodes = {n.name: n for n in universe}
        self._reads = reads
        self._writes = writes
        self._read_minimal = _expr.minimal_sets(reads)
        self._write_minimal = _expr.minimal_sets(writes)
        for r, w in itertools.product(self._read_minimal, self._write_minimal):
            if not r & w:
                raise IntersectionViolation(r, w)

    @property
    def universe(self) -> tuple[Node, ...]:
        return self._universe

    @property
    def reads(self) -> _expr.Expression:
        return self._reads

    @property
    def writes(self) -> _expr.Expression:
        return self._writes

    @property
    def read_minimal(self) -> list[frozenset[str]]:
        return list(self._read_minimal)

    @property
    def write_minimal(self) -> list[frozenset[str]]:
        return list(self._write_minimal)

    def node(self, name: str) -> Node:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownNode(f"no node named {name!r}") from None

    def node_names(self) -> list[str]:
        return sorted(self._nodes)

    def __repr__(self) -> str:
        return f"QuorumSystem(reads={self._reads}, writes={self._writes})"

    # -- membership ---------------------------------------------------------

    def is_read_quorum(self, names: AbstractSet[str]) -> bool:
        return self._reads.evaluate(names)

    def is_write_quorum(self, names: AbstractSet[str]) -> bool:
        return self._writes.evaluate(names)

    def _side(self, side: str) -> _expr.Expression:
        if side == "read":
            return self._reads
        if side == "write":
            return self._writes
        raise DomainError(f"side must be 'read' or 'write', got {side!r}")

    def minimal_quorums(self, side: str) -> list[frozenset[str]]:
        self._side(side)
        return list(self._read_minimal if side == "read" else self._write_minimal)

    # -- fault tolerance -----------------------------------------------------

    def read_fault_tolerance(self) -> int:
        return _min_hitting_set_size(self._read_minimal) - 1

    def write_fault_tolerance(self) -> int:
        return _min_hitting_set_size(self._write_minimal) - 1

    def fault_tolerance(self) -> int:
        return min(self.read_fault_tolerance(), self.write_fault_tolerance())

    # -- resilient quorums ---------------------------------------------------

    def resilient_quorums(self, side: str, f: int) -> list[frozenset[str]]:
        """Inclusion-minimal quorums of ``side`` that survive the removal of
        any f of their nodes, in canonical order.

        For f = 0 this is exactly the minimal quorums. A set smaller than
        f + 1 nodes can never qualify: removing min(f, |S|) nodes would leave
        the empty set, which is not a quorum.
        """
        if f < 0:
            raise DomainError(f"f must be nonnegative, got {f}")
        if f == 0:
            return self.minimal_quorums(side)
        e = self._side(side)
        # Minimal resilient quorums never contain nodes absent from the
        # expression: evaluation ignores them, so dropping one preserves
        # resilience.
        names = sorted(e.names())
        found: list[frozenset[str]] = []
        for size in range(f + 1, len(names) + 1):
            for combo in itertools.combinations(names, size):
                s = frozenset(combo)
                if any(m <= s for m in found):
                    continue
                if all(
                    e.evaluate(s.difference(removal))
                    for removal in itertools.combinations(combo, f)
                ):
                    found.append(s)
        if not found:
            raise NoResilientQuorum(
                f"no {side} quorum survives every removal of {f} nodes"
            )
        return found


def _min_hitting_set_size(sets: Iterable[frozenset[str]]) -> int:
    """Size of the smallest node set intersecting every given set; exhaustive
    by increasing size (exact at desk scale)."""
    sets = list(sets)
    names = sorted(frozenset().union(*sets))
    for size in range(1, len(names) + 1):
        for combo in itertools.combinations(names, size):
            chosen = frozenset(combo)
            if all(s & chosen for s in sets):
                return size
    raise AssertionError("the union of all elements always hits every set")
