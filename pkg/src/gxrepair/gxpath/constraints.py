"""Constraint sets and the line-oriented constraint file format.

Each non-blank line holds one expression prefixed by its sort::

    # film database
    node: <type.[="Actor"]> => <acts_in.[<directed_by.[="Anderson"]>].acts_in^-.[="Hoffman"]>
    path: _*

``#`` starts a comment unless it sits inside a quoted string.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .ast import Wildcard, constants_of, is_node, is_path, labels_of, walk
from .fragment import Fragment, classify
from .syntax import ParseError, parse_node, parse_path, pretty


@dataclass(frozen=True)
class ConstraintSet:
    """Ordered restrictions; indices refer to positions in ``constraints``."""

    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if not (is_node(c) or is_path(c)):
                raise TypeError(f"not an expression: {c!r}")

    @classmethod
    def of(cls, node_constraints: Iterable = (), path_constraints: Iterable = ()) -> "ConstraintSet":
        return cls(tuple(node_constraints) + tuple(path_constraints))

    @property
    def node_constraints(self) -> list:
        return [c for c in self.constraints if is_node(c)]

    @property
    def path_constraints(self) -> list:
        return [c for c in self.constraints if is_path(c)]

    def __iter__(self) -> Iterator:
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def __or__(self, other: "ConstraintSet") -> "ConstraintSet":
        return ConstraintSet(self.constraints + other.constraints)

    def fragment(self) -> Fragment:
        """Fragments every constraint belongs to (empty set: all of them)."""
        flags = Fragment.REG | Fragment.POS | Fragment.POS_NODE | Fragment.CORE
        for c in self.constraints:
            flags &= classify(c)
        return flags

    def labels(self) -> frozenset[str]:
        return frozenset().union(*(labels_of(c) for c in self.constraints))

    def constants(self) -> frozenset[str]:
        return frozenset().union(*(constants_of(c) for c in self.constraints))

    def uses_wildcard(self) -> bool:
        return any(isinstance(x, Wildcard) for c in self.constraints for x in walk(c))

    def dumps(self) -> str:
        lines = []
        for c in self.constraints:
            sort = "node" if is_node(c) else "path"
            lines.append(f"{sort}: {pretty(c)}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def loads(cls, text: str) -> "ConstraintSet":
        out = []
        for lineno, raw in enumerate(text.split("\n"), start=1):
            line = _strip_comment(raw).strip()
            if not line:
                continue
            sort, sep, body = line.partition(":")
            sort = sort.strip()
            if not sep or sort not in ("node", "path"):
                raise ParseError("constraint line must start with 'node:' or 'path:'", lineno, 1)
            offset = raw.index(":") + 1
            try:
                out.append(parse_node(body) if sort == "node" else parse_path(body))
            except ParseError as exc:
                col = exc.column + offset if exc.line == 1 else exc.column
                raise ParseError(exc.message, lineno, col) from None
        return cls(tuple(out))

    @classmethod
    def load(cls, path) -> "ConstraintSet":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def _strip_comment(line: str) -> str:
    quoted = False
    i = 0
    while i < len(line):
        c = line[i]
        if quoted and c == "\\":
            i += 2
            continue
        if c == '"':
            quoted = not quoted
        elif c == "#" and not quoted:
            return line[:i]
        i += 1
    return line
