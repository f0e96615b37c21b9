"""quorumopt: model, analyze, and optimize read-write quorum systems.

Quorum families are written as monotone boolean expressions over node
names; a quorum system pairs read and write expressions whose quorums
always intersect. Strategies (probability distributions over quorums) are
optimized by linear programming for load, latency, or network objectives
under capacity, latency, network, and resilience constraints, and a
depth-ordered exhaustive search explores all duplicate-free expressions to
find constrained-optimal systems.
"""

from .errors import (
    DomainError,
    Infeasible,
    IntersectionViolation,
    NoFeasibleCandidate,
    NoResilientQuorum,
    ParseError,
    QuorumError,
    SolverFailure,
    UniverseTooLarge,
    UnknownNode,
)
from .expr import (
    And,
    Choose,
    Expression,
    Or,
    Var,
    and_,
    canonical,
    choose,
    majority,
    minimal_sets,
    or_,
    parse,
)
from .model import Node, QuorumSystem, Workload
from .optimize import (
    Constraints,
    Objective,
    Strategy,
    capacity_curve,
    find_strategy,
    quorum_latency,
    throughput_breakdown,
    uniform_strategy,
)
from .search import SearchOptions, SearchResult, enumerate_candidates, search

__version__ = "0.1.0"

__all__ = [
    "And",
    "Choose",
    "Constraints",
    "DomainError",
    "Expression",
    "Infeasible",
    "IntersectionViolation",
    "NoFeasibleCandidate",
    "NoResilientQuorum",
    "Node",
    "Objective",
    "Or",
    "ParseError",
    "QuorumError",
    "QuorumSystem",
    "SearchOptions",
    "SearchResult",
    "SolverFailure",
    "Strategy",
    "UniverseTooLarge",
    "UnknownNode",
    "Var",
    "Workload",
    "and_",
    "canonical",
    "capacity_curve",
    "choose",
    "enumerate_candidates",
    "find_strategy",
    "majority",
    "minimal_sets",
    "or_",
    "parse",
    "quorum_latency",
    "search",
    "throughput_breakdown",
    "uniform_strategy",
]
