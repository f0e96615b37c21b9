"""Command line interface.

Commands read a JSON config file (version "1") describing nodes, optional
read/write expressions, and a workload, and write a single machine-readable
document to stdout: JSON for analyze/strategy/search (human-readable tables
behind --table), CSV for curve/breakdown. All emitted numbers are quantized
to 9 decimal places so outputs are byte-stable.

Exit codes: 0 success, 2 config or parse error, 3 infeasible,
4 search exhausted without a feasible candidate.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    Infeasible,
    IntersectionViolation,
    NoFeasibleCandidate,
    NoResilientQuorum,
    ParseError,
    UniverseTooLarge,
    UnknownNode,
)
from .expr import canonical
from .model import Node, QuorumSystem, Workload, as_fraction
from .optimize import (
    Constraints,
    Strategy,
    capacity_curve,
    find_strategy,
    throughput_breakdown,
    uniform_strategy,
)
from .search import SearchOptions, search

_CONFIG_ERRORS = (
    DomainError,
    ParseError,
    UnknownNode,
    IntersectionViolation,
    UniverseTooLarge,
)


@dataclass
class Config:
    nodes: list[Node]
    reads: str | None
    writes: str | None
    workload: Workload

    def quorum_system(self) -> QuorumSystem:
        if self.reads is None and self.writes is None:
            raise DomainError("config must declare reads, writes, or both")
        return QuorumSystem(self.nodes, reads=self.reads, writes=self.writes)


def load_config(path: str) -> Config:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f"cannot read config {path}: {e}") from e
    if not isinstance(raw, dict):
        raise DomainError("config must be a JSON object")
    if raw.get("version") != "1":
        raise DomainError('config must declare "version": "1"')

    nodes_raw = raw.get("nodes")
    if not isinstance(nodes_raw, list) or not nodes_raw:
        raise DomainError("config needs a nonempty list of nodes")
    nodes = []
    for entry in nodes_raw:
        if not isinstance(entry, dict) or "name" not in entry:
            raise DomainError(f"node entry {entry!r} needs a name")
        unknown = set(entry) - {"name", "read_cap", "write_cap", "latency_s"}
        if unknown:
            raise DomainError(f"unknown node fields {sorted(unknown)}")
        nodes.append(
            Node(
                entry["name"],
                read_cap=entry.get("read_cap", 1),
                write_cap=entry.get("write_cap", 1),
                latency=entry.get("latency_s", 1),
            )
        )

    reads = raw.get("reads")
    writes = raw.get("writes")
    for label, value in (("reads", reads), ("writes", writes)):
        if value is not None and not isinstance(value, str):
            raise DomainError(f"{label} must be an expression string")

    if "read_fraction" not in raw:
        raise DomainError("config needs a read_fraction")
    fr = raw["read_fraction"]
    if isinstance(fr, dict):
        points = {}
        for key, value in fr.items():
            if not isinstance(key, str):
                raise DomainError("read_fraction keys must be decimal strings")
            points[as_fraction(key)] = as_fraction(value)
        workload = Workload(points)
    elif isinstance(fr, (int, float, str)):
        workload = Workload.coerce(as_fraction(fr))
    else:
        raise DomainError("read_fraction must be a number or a map")

    unknown = set(raw) - {"version", "nodes", "reads", "writes", "read_fraction"}
    if unknown:
        raise DomainError(f"unknown config fields {sorted(unknown)}")
    return Config(nodes, reads, writes, workload)


def _q9(value) -> float:
    """Quantize to 9 decimal places for byte-stable output."""
    return float(f"{float(value):.9f}")


def _dist_doc(dist) -> list[dict]:
    entries = []
    for quorum, prob in dist:
        p = _q9(prob)
        if p == 0.0:
            continue
        entries.append({"quorum": sorted(quorum), "prob": p})
    return entries


def _strategy_doc(sigma: Strategy, workload: Workload) -> dict:
    return {
        "read_dist": _dist_doc(sigma.read_dist),
        "write_dist": _dist_doc(sigma.write_dist),
        "load": _q9(sigma.load(workload)),
        "capacity": _q9(sigma.capacity(workload)),
        "latency": _q9(sigma.latency(workload)),
        "network_load": _q9(sigma.network_load(workload)),
    }


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_table(rows: list[tuple[str, str]]) -> None:
    width = max(len(key) for key, _ in rows)
    for key, value in rows:
        sys.stdout.write(f"{key.ljust(width)}  {value}\n")


def _dist_rows(label: str, entries: list[dict]) -> list[tuple[str, str]]:
    rows = []
    for entry in entries:
        quorum = "{" + ", ".join(entry["quorum"]) + "}"
        rows.append((f"{label} {quorum}", f"{entry['prob']:.9f}"))
    return rows


def _constraints(args) -> Constraints:
    return Constraints(
        capacity_limit=args.capacity_limit,
        latency_limit=args.latency_limit,
        network_limit=args.network_limit,
    )


def cmd_analyze(args) -> int:
    config = load_config(args.config)
    qs = config.quorum_system()
    sigma = find_strategy(qs, config.workload, "load", f=args.f)
    w = config.workload
    doc = {
        "reads": str(canonical(qs.reads)),
        "writes": str(canonical(qs.writes)),
        "fault_tolerance": qs.fault_tolerance(),
        "read_ft": qs.read_fault_tolerance(),
        "write_ft": qs.write_fault_tolerance(),
        "capacity": _q9(sigma.capacity(w)),
        "load": _q9(sigma.load(w)),
        "latency": _q9(sigma.latency(w)),
        "network_load": _q9(sigma.network_load(w)),
    }
    if args.table:
        _emit_table([(k, str(v)) for k, v in doc.items()])
    else:
        _emit_json(doc)
    return 0


def cmd_strategy(args) -> int:
    config = load_config(args.config)
    qs = config.quorum_system()
    sigma = find_strategy(qs, config.workload, args.optimize, _constraints(args), f=args.f)
    doc = _strategy_doc(sigma, config.workload)
    if args.table:
        rows = [(k, str(doc[k])) for k in ("load", "capacity", "latency", "network_load")]
        rows += _dist_rows("read", doc["read_dist"])
        rows += _dist_rows("write", doc["write_dist"])
        _emit_table(rows)
    else:
        _emit_json(doc)
    return 0


def cmd_search(args) -> int:
    config = load_config(args.config)
    if config.reads is not None or config.writes is not None:
        raise DomainError("search configs must not fix reads or writes")
    options = SearchOptions(
        objective=args.optimize,
        constraints=_constraints(args),
        min_fault_tolerance=args.fault_tolerance,
        f=args.f,
        timeout=args.timeout,
        budget=args.budget,
    )
    result = search(config.nodes, config.workload, options)
    doc = {
        "reads": str(canonical(result.qs.reads)),
        "writes": str(canonical(result.qs.writes)),
        "strategy": _strategy_doc(result.strategy, config.workload),
        "metric": _q9(result.metric_value),
        "candidates_examined": result.candidates_examined,
    }
    if args.table:
        rows = [
            ("reads", doc["reads"]),
            ("writes", doc["writes"]),
            ("metric", str(doc["metric"])),
            ("candidates_examined", str(doc["candidates_examined"])),
        ]
        rows += _dist_rows("read", doc["strategy"]["read_dist"])
        rows += _dist_rows("write", doc["strategy"]["write_dist"])
        _emit_table(rows)
    else:
        _emit_json(doc)
    return 0


def cmd_curve(args) -> int:
    config = load_config(args.config)
    qs = config.quorum_system()
    grid = [Fraction(i, args.points) for i in range(args.points + 1)]
    if args.fixed:
        sigma = find_strategy(qs, config.workload, "load", f=args.f)
        rows = capacity_curve(sigma, grid)
    else:
        rows = capacity_curve(qs, grid, f=args.f)
    sys.stdout.write("read_fraction,capacity\n")
    for fr, cap in rows:
        sys.stdout.write(f"{float(fr)!r},{_q9(cap):.9f}\n")
    return 0


def cmd_breakdown(args) -> int:
    config = load_config(args.config)
    qs = config.quorum_system()
    if args.uniform:
        sigma = uniform_strategy(qs)
    else:
        sigma = find_strategy(qs, config.workload, "load")
    sys.stdout.write("node,side,quorum,throughput\n")
    for node, side, quorum, thr in throughput_breakdown(sigma, config.workload):
        label = "*".join(sorted(quorum))
        sys.stdout.write(f"{node},{side},{label},{_q9(thr):.9f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quorumopt",
        description="Analyze and optimize read-write quorum systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="JSON config file")

    def limits(p):
        p.add_argument("--optimize", choices=["load", "latency", "network"], default="load")
        p.add_argument("--capacity-limit", type=float, default=None)
        p.add_argument("--latency-limit", type=float, default=None)
        p.add_argument("--network-limit", type=float, default=None)

    p = sub.add_parser("analyze", help="metrics of the load-optimal strategy")
    common(p)
    p.add_argument("--f", type=int, default=0, help="resilience level")
    p.add_argument("--table", action="store_true", help="human-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("strategy", help="optimize a strategy for the config's system")
    common(p)
    limits(p)
    p.add_argument("--f", type=int, default=0, help="resilience level")
    p.add_argument("--table", action="store_true", help="human-readable output")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("search", help="search duplicate-free quorum systems")
    common(p)
    limits(p)
    p.add_argument("--fault-tolerance", type=int, default=0)
    p.add_argument("--f", type=int, default=0, help="resilience level")
    p.add_argument("--timeout", type=float, default=None, help="wall-clock seconds")
    p.add_argument("--budget", type=int, default=None, help="candidate count budget")
    p.add_argument("--table", action="store_true", help="human-readable output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("curve", help="capacity vs read fraction as CSV")
    common(p)
    p.add_argument("--points", type=int, default=10, help="grid intervals")
    p.add_argument("--f", type=int, default=0, help="resilience level")
    p.add_argument(
        "--fixed",
        action="store_true",
        help="evaluate the workload-optimal strategy instead of re-optimizing per point",
    )
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("breakdown", help="per-node per-quorum throughput as CSV")
    common(p)
    p.add_argument("--uniform", action="store_true", help="use the uniform strategy")
    p.set_defaults(func=cmd_breakdown)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (Infeasible, NoResilientQuorum) as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return 3
    except NoFeasibleCandidate as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
