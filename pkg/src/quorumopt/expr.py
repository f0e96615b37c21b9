"""Monotone boolean expressions over node names.

An expression denotes a superset-closed family of node sets: ``S`` is a
quorum of ``e`` iff ``e.evaluate(S)`` is true. Because the algebra has no
negation, every expression is monotone, so the family is generated by its
inclusion-minimal members (see :func:`minimal_sets`).

Expressions are immutable; all operations are pure functions. ``+`` is
disjunction, ``*`` is conjunction, and ``choose(k, es)`` is true when at
least ``k`` of its children are true.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Sequence

from .errors import DomainError, ParseError, UniverseTooLarge

# Exact subset enumeration sweeps 2^n sets; past this the sweep is no longer
# a desk-scale operation.
ENUMERATION_BOUND = 20


class Expression:
    """Base class; concrete nodes are Var, Or, And, and Choose."""

    __slots__ = ()

    def __add__(self, other: "Expression") -> "Expression":
        return or_(self, other)

    def __mul__(self, other: "Expression") -> "Expression":
        return and_(self, other)

    def evaluate(self, alive: AbstractSet[str]) -> bool:
        """True iff ``alive`` is a quorum of this expression."""
        raise NotImplementedError

    def dual(self) -> "Expression":
        """Swap and/or (thresholds flip k to n-k+1).

        The minimal quorums of the dual are exactly the minimal transversals
        of this expression's minimal quorums, and dual(dual(e)) equals e as a
        boolean function.
        """
        raise NotImplementedError

    def depth(self) -> int:
        """Height of the syntax tree; a bare variable has depth 0."""
        raise NotImplementedError

    def leaves(self) -> tuple[str, ...]:
        """Leaf names in syntactic order, with repetitions."""
        raise NotImplementedError

    def names(self) -> frozenset[str]:
        return frozenset(self.leaves())

    def uses_each_variable_once(self) -> bool:
        """Syntactic duplicate-freedom: no name occurs in two leaves."""
        ls = self.leaves()
        return len(ls) == len(set(ls))

    def __str__(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Var(Expression):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise DomainError("variable name must be a nonempty string")

    def evaluate(self, alive: AbstractSet[str]) -> bool:
        return self.name in alive

    def dual(self) -> Expression:
        return self

    def depth(self) -> int:
        return 0

    def leaves(self) -> tuple[str, ...]:
        return (self.name,)

    def __str__(self) -> str:
        return self.name


def _check_children(children, op: str) -> None:
    if len(children) < 2:
        raise DomainError(f"{op} needs at least 2 children, got {len(children)}")
    for c in children:
        if not isinstance(c, Expression):
            raise DomainError(f"{op} child {c!r} is not an Expression")


@dataclass(frozen=True, slots=True)
class Or(Expression):
    children: tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        _check_children(self.children, "Or")

    def evaluate(self, alive: AbstractSet[str]) -> bool:
        return any(c.evaluate(alive) for c in self.children)

    def dual(self) -> Expression:
        return And(tuple(c.dual() for c in self.children))

    def depth(self) -> int:
        return 1 + max(c.depth() for c in self.children)

    def leaves(self) -> tuple[str, ...]:
        return tuple(itertools.chain.from_iterable(c.leaves() for c in self.children))

    def __str__(self) -> str:
        return " + ".join(str(c) for c in self.children)


@dataclass(frozen=True, slots=True)
class And(Expression):
    children: tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        _check_children(self.children, "And")

    def evaluate(self, alive: AbstractSet[str]) -> bool:
        return all(c.evaluate(alive) for c in self.children)

    def dual(self) -> Expression:
        return Or(tuple(c.dual() for c in self.children))

    def depth(self) -> int:
        return 1 + max(c.depth() for c in self.children)

    def leaves(self) -> tuple[str, ...]:
        return tuple(itertools.chain.from_iterable(c.leaves() for c in self.children))

    def __str__(self) -> str:
        # Or children need parentheses under *; everything else binds tighter.
        parts = []
        for c in self.children:
            s = str(c)
            parts.append(f"({s})" if isinstance(c, Or) else s)
        return "*".join(parts)


@dataclass(frozen=True, slots=True)
class Choose(Expression):
    k: int
    children: tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        _check_children(self.children, "Choose")
        if not isinstance(self.k, int) or not 1 <= self.k <= len(self.children):
            raise DomainError(
                f"choose threshold must satisfy 1 <= k <= {len(self.children)}, got {self.k}"
            )

    def evaluate(self, alive: AbstractSet[str]) -> bool:
        need = self.k
        for c in self.children:
            if c.evaluate(alive):
                need -= 1
                if need == 0:
                    return True
        return False

    def dual(self) -> Expression:
        n = len(self.children)
        return Choose(n - self.k + 1, tuple(c.dual() for c in self.children))

    def depth(self) -> int:
        return 1 + max(c.depth() for c in self.children)

    def leaves(self) -> tuple[str, ...]:
        return tuple(itertools.chain.from_iterable(c.leaves() for c in self.children))

    def __str__(self) -> str:
        inner = ", ".join(str(c) for c in self.children)
        return f"choose({self.k}, [{inner}])"


def or_(*exprs: Expression) -> Expression:
    """Disjunction; splices nested Or children so a+b+c is one node."""
    flat: list[Expression] = []
    for e in exprs:
        if isinstance(e, Or):
            flat.extend(e.children)
        else:
            flat.append(e)
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def and_(*exprs: Expression) -> Expression:
    """Conjunction; splices nested And children so a*b*c is one node."""
    flat: list[Expression] = []
    for e in exprs:
        if isinstance(e, And):
            flat.extend(e.children)
        else:
            flat.append(e)
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def choose(k: int, exprs: Sequence[Expression]) -> Expression:
    """Threshold combinator: true when at least k of exprs are true.

    choose(1, es) is the same function as or(es) and choose(n, es) the same
    as and(es); those cases are normalized to the plain connectives.
    """
    exprs = list(exprs)
    if len(exprs) < 2:
        raise DomainError(f"choose needs at least 2 children, got {len(exprs)}")
    if not isinstance(k, int) or k < 1 or k > len(exprs):
        raise DomainError(
            f"choose threshold must satisfy 1 <= k <= {len(exprs)}, got {k}"
        )
    if k == 1:
        return or_(*exprs)
    if k == len(exprs):
        return and_(*exprs)
    return Choose(k, tuple(exprs))


def majority(exprs: Sequence[Expression]) -> Expression:
    """Strict-majority threshold: choose(floor(n/2) + 1, exprs)."""
    return choose(len(exprs) // 2 + 1, exprs)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
  | (?P<sym>[+*(),\[\]])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        kind, value, pos = self.peek()
        if value != text:
            got = "end of input" if kind == "eof" else repr(value)
            raise ParseError(f"expected {text!r}, found {got}", pos)
        self.advance()

    def parse(self) -> Expression:
        e = self.parse_or()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return e

    def parse_or(self) -> Expression:
        parts = [self.parse_and()]
        while self.peek()[1] == "+":
            self.advance()
            parts.append(self.parse_and())
        return or_(*parts)

    def parse_and(self) -> Expression:
        parts = [self.parse_atom()]
        while self.peek()[1] == "*":
            self.advance()
            parts.append(self.parse_atom())
        return and_(*parts)

    def parse_atom(self) -> Expression:
        kind, value, pos = self.peek()
        if value == "(":
            self.advance()
            e = self.parse_or()
            self.expect(")")
            return e
        if kind == "ident":
            self.advance()
            if value == "choose" and self.peek()[1] == "(":
                self.advance()
                k = self.parse_int()
                self.expect(",")
                children = self.parse_list()
                self.expect(")")
                return choose(k, children)
            if value == "majority" and self.peek()[1] == "(":
                self.advance()
                children = self.parse_list()
                self.expect(")")
                return majority(children)
            return Var(value)
        got = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"expected an expression, found {got}", pos)

    def parse_int(self) -> int:
        kind, value, pos = self.peek()
        if kind != "num":
            raise ParseError(f"expected an integer, found {value!r}", pos)
        self.advance()
        return int(value)

    def parse_list(self) -> list[Expression]:
        self.expect("[")
        items = [self.parse_or()]
        while self.peek()[1] == ",":
            self.advance()
            items.append(self.parse_or())
        self.expect("]")
        return items


def parse(text: str) -> Expression:
    """Parse expression text.

    Grammar: identifiers ``[A-Za-z_][A-Za-z0-9_]*``; ``+`` (or, lowest
    precedence), ``*`` (and), parentheses; ``choose(k, [e1, ..., en])``;
    ``majority([e1, ..., en])`` which is choose(floor(n/2)+1, ...).
    Whitespace is insignificant. Same-operator chains are flattened, so
    ``a*b*c`` is a single conjunction of three children.

    Raises ParseError (with position) for malformed input and DomainError
    for an out-of-range choose threshold.
    """
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def canonical(e: Expression) -> Expression:
    """Equivalent expression with same-operator chains flattened, threshold
    extremes folded into the plain connectives (choose(1, es) is or, and
    choose(n, es) is and), and children sorted by their printed form.
    parse(str(canonical(e))) == canonical(e).
    """
    if isinstance(e, Var):
        return e
    children = [canonical(c) for c in e.children]
    if isinstance(e, Choose) and 1 < e.k < len(children):
        return Choose(e.k, tuple(sorted(children, key=str)))
    as_or = isinstance(e, Or) or (isinstance(e, Choose) and e.k == 1)
    flat: list[Expression] = []
    for c in children:
        if as_or and isinstance(c, Or):
            flat.extend(c.children)
        elif not as_or and isinstance(c, And):
            flat.extend(c.children)
        else:
            flat.append(c)
    ordered = tuple(sorted(flat, key=str))
    return Or(ordered) if as_or else And(ordered)


# ---------------------------------------------------------------------------
# Minimal quorum enumeration
# ---------------------------------------------------------------------------


def minimal_sets(
    e: Expression, universe: Iterable[str] | None = None
) -> list[frozenset[str]]:
    """All inclusion-minimal S with e.evaluate(S) true, in canonical order
    (by size, then lexicographically).

    Runs an exact subset sweep in increasing size with superset pruning:
    a true set none of whose strict subsets was already found is minimal.
    Bounded at ENUMERATION_BOUND names.
    """
    if universe is None:
        names = sorted(e.names())
    else:
        names = list(universe)
        missing = e.names() - set(names)
        if missing:
            raise DomainError(
                f"expression names {sorted(missing)} are not in the universe"
            )
    if len(names) > ENUMERATION_BOUND:
        raise UniverseTooLarge(
            f"{len(names)} nodes exceeds the enumeration bound of {ENUMERATION_BOUND}"
        )
    found: list[frozenset[str]] = []
    for size in range(1, len(names) + 1):
        for combo in itertools.combinations(names, size):
            s = frozenset(combo)
            if any(m <= s for m in found):
                continue
            if e.evaluate(s):
                found.append(s)
    return found
