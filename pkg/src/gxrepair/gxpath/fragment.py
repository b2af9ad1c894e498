from __future__ import annotations

import enum

from .ast import Complement, Inverse, Label, Not, Star, is_node, walk


class Fragment(enum.Flag):
    """Language fragments an expression belongs to.

    ``classify`` returns the union of every fragment the expression is a
    member of; ``REG`` is always set.
    """

    REG = enum.auto()
    POS = enum.auto()  # no path complement, no node negation
    POS_NODE = enum.auto()  # positive and a node expression
    CORE = enum.auto()  # Kleene star only over labels and inverse labels


def is_positive(e) -> bool:
    return not any(isinstance(x, (Complement, Not)) for x in walk(e))


def is_core(e) -> bool:
    return all(isinstance(x.arg, (Label, Inverse)) for x in walk(e) if isinstance(x, Star))


def classify(e) -> Fragment:
    flags = Fragment.REG
    if is_positive(e):
        flags |= Fragment.POS
        if is_node(e):
            flags |= Fragment.POS_NODE
    if is_core(e):
        flags |= Fragment.CORE
    return flags
