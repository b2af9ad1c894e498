from .ast import (
    And, Complement, Concat, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Intersect,
    Inverse, Label, NodeExpr, NodeTest, Not, Or, PathExpr, Repeat, Star, Union, Wildcard,
    children, is_node, is_path, walk,
)
from .constraints import ConstraintSet
from .fragment import Fragment, classify, is_positive
from .syntax import ParseError, parse_node, parse_path, pretty

__all__ = [
    "And", "Complement", "Concat", "DataEq", "DataNeq", "Epsilon", "Exists", "ExistsEq",
    "ExistsNeq", "Intersect", "Inverse", "Label", "NodeExpr", "NodeTest", "Not", "Or", "PathExpr",
    "Repeat", "Star", "Union", "Wildcard", "children", "is_node", "is_path", "walk",
    "ConstraintSet", "Fragment", "classify", "is_positive", "ParseError", "parse_node",
    "parse_path", "pretty",
]
