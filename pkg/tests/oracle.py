"""Reference evaluator: the semantics table transcribed clause by clause.

Plain Python sets, no memoization, no matrices, nothing shared with the
package's evaluator beyond the AST classes.
"""
from gxrepair.gxpath.ast import (
    And, Complement, Concat, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Intersect, Inverse, Label,
    NodeTest, Not, Or, Repeat, Star, Union, Wildcard,
)


def _compose(a, b):
    return {(x, z) for (x, y) in a for (y2, z) in b if y == y2}


def path(g, e):
    V = set(g.nodes)
    E = g.edges
    if isinstance(e, Epsilon):
        return {(v, v) for v in V}
    if isinstance(e, Wildcard):
        return {(u, v) for (u, _, v) in E}
    if isinstance(e, Label):
        return {(u, v) for (u, a, v) in E if a == e.name}
    if isinstance(e, Inverse):
        return {(v, u) for (u, a, v) in E if a == e.name}
    if isinstance(e, Concat):
        return _compose(path(g, e.left), path(g, e.right))
    if isinstance(e, Union):
        return path(g, e.left) | path(g, e.right)
    if isinstance(e, Intersect):
        return path(g, e.left) & path(g, e.right)
    if isinstance(e, Star):
        step = path(g, e.arg)
        out = {(v, v) for v in V}
        while True:
            nxt = out | _compose(out, step)
            if nxt == out:
                return out
            out = nxt
    if isinstance(e, Complement):
        return {(u, v) for u in V for v in V} - path(g, e.arg)
    if isinstance(e, NodeTest):
        return {(v, v) for v in node(g, e.test)}
    if isinstance(e, Repeat):
        step = path(g, e.arg)
        power = {(v, v) for v in V}
        out = set()
        for k in range(e.hi + 1):
            if k >= e.lo:
                out |= power
            power = _compose(power, step)
        return out
    raise TypeError(e)


def node(g, e):
    V = set(g.nodes)
    D = g.data
    if isinstance(e, DataEq):
        return {v for v in V if D[v] == e.value}
    if isinstance(e, DataNeq):
        return {v for v in V if D[v] != e.value}
    if isinstance(e, Not):
        return V - node(g, e.arg)
    if isinstance(e, Or):
        return node(g, e.left) | node(g, e.right)
    if isinstance(e, And):
        return node(g, e.left) & node(g, e.right)
    if isinstance(e, Exists):
        return {x for (x, _) in path(g, e.path)}
    if isinstance(e, (ExistsEq, ExistsNeq)):
        a, b = path(g, e.left), path(g, e.right)
        want_equal = isinstance(e, ExistsEq)
        return {v for v in V
                if any(x == v and y == v and (D[w1] == D[w2]) == want_equal
                       for (x, w1) in a for (y, w2) in b)}
    raise TypeError(e)


def consistent(g, constraints):
    V = set(g.nodes)
    for c in constraints:
        if isinstance(c, (DataEq, DataNeq, Not, Or, And, Exists, ExistsEq, ExistsNeq)):
            if node(g, c) != V:
                return False
        elif path(g, c) != {(u, v) for u in V for v in V}:
            return False
    return True
