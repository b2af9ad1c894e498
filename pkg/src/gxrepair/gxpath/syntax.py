"""Concrete text syntax: tokenizer, recursive-descent parser, printer.

Precedence, tightest first: postfix (``*``, ``^-``, ``{n,m}``), prefix
``!``, ``.``, ``&``, ``+``, ``=>``.  Binary operators associate to the
left except ``=>``, which associates to the right and is desugared on the
spot.  See ``docs/grammar.md`` for the full grammar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    And, Complement, Concat, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Intersect,
    Inverse, Label, NodeTest, Not, Or, Repeat, Star, Union, Wildcard, implies_node, implies_path,
    is_node, is_path,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_PUNCT = ["=>", "!=", "^-", "(", ")", "[", "]", "<", ">", "{", "}", ",", ".", "+", "&", "*", "!", "="]
_IDENT = re.compile(r"[^\W\d]\w*")
_NUMBER = re.compile(r"\d+")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}
KEYWORDS = {"eps", "_"}


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            start = i
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise ParseError("unterminated string", *_position(text, start))
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n:
                        raise ParseError("unterminated string", *_position(text, start))
                    esc = text[i + 1]
                    if esc not in _ESCAPES:
                        raise ParseError(f"unknown escape \\{esc}", *_position(text, i))
                    buf.append(_ESCAPES[esc])
                    i += 2
                    continue
                buf.append(c)
                i += 1
            tokens.append(Token("STRING", "".join(buf), start))
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            kind = "EPS" if word == "eps" else "WILD" if word == "_" else "IDENT"
            tokens.append(Token(kind, word, i))
            i = m.end()
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(Token("NUMBER", m.group(), i))
            i = m.end()
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token(p, p, i))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", *_position(text, i))
    tokens.append(Token("EOF", "", n))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token = None):
        tok = tok or self.tok
        return ParseError(message, *_position(self.text, tok.pos))

    def accept(self, kind: str):
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind: str) -> Token:
        t = self.accept(kind)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        return t

    def finish(self):
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self.tok.text!r}")

    # paths

    def path(self):
        left = self.path_union()
        if self.accept("=>"):
            return implies_path(left, self.path())
        return left

    def path_union(self):
        e = self.path_inter()
        while self.accept("+"):
            e = Union(e, self.path_inter())
        return e

    def path_inter(self):
        e = self.path_concat()
        while self.accept("&"):
            e = Intersect(e, self.path_concat())
        return e

    def path_concat(self):
        e = self.path_prefix()
        while self.accept("."):
            e = Concat(e, self.path_prefix())
        return e

    def path_prefix(self):
        if self.accept("!"):
            return Complement(self.path_prefix())
        return self.path_postfix()

    def path_postfix(self):
        e = self.path_atom()
        while True:
            if self.accept("*"):
                e = Star(e)
            elif self.tok.kind == "^-":
                if not isinstance(e, Label):
                    raise self.error("inverse '^-' applies only to a label")
                self.i += 1
                e = Inverse(e.name)
            elif self.tok.kind == "{":
                brace = self.expect("{")
                lo = int(self.expect("NUMBER").text)
                self.expect(",")
                hi = int(self.expect("NUMBER").text)
                self.expect("}")
                if lo > hi:
                    raise self.error(f"repeat bounds {{{lo},{hi}}} need n <= m", brace)
                e = Repeat(e, lo, hi)
            else:
                return e

    def path_atom(self):
        t = self.tok
        if self.accept("EPS"):
            return Epsilon()
        if self.accept("WILD"):
            return Wildcard()
        if t.kind in ("IDENT", "STRING"):
            self.i += 1
            return Label(t.text)
        if self.accept("("):
            e = self.path()
            self.expect(")")
            return e
        if self.accept("["):
            e = self.node()
            self.expect("]")
            return NodeTest(e)
        raise self.error(f"expected a path expression, found {t.text or 'end of input'!r}")

    # nodes

    def node(self):
        left = self.node_or()
        if self.accept("=>"):
            return implies_node(left, self.node())
        return left

    def node_or(self):
        e = self.node_and()
        while self.accept("+"):
            e = Or(e, self.node_and())
        return e

    def node_and(self):
        e = self.node_prefix()
        while self.accept("&"):
            e = And(e, self.node_prefix())
        return e

    def node_prefix(self):
        if self.accept("!"):
            return Not(self.node_prefix())
        return self.node_atom()

    def value(self) -> str:
        t = self.tok
        if t.kind in ("IDENT", "STRING", "EPS", "WILD", "NUMBER"):
            self.i += 1
            return t.text
        raise self.error(f"expected a data value, found {t.text or 'end of input'!r}")

    def node_atom(self):
        if self.accept("="):
            return DataEq(self.value())
        if self.accept("!="):
            return DataNeq(self.value())
        if self.accept("<"):
            left = self.path()
            if self.accept("="):
                e = ExistsEq(left, self.path())
            elif self.accept("!="):
                e = ExistsNeq(left, self.path())
            else:
                e = Exists(left)
            self.expect(">")
            return e
        if self.accept("("):
            e = self.node()
            self.expect(")")
            return e
        raise self.error(f"expected a node expression, found {self.tok.text or 'end of input'!r}")


def parse_path(text: str):
    p = Parser(text)
    e = p.path()
    p.finish()
    return e


def parse_node(text: str):
    p = Parser(text)
    e = p.node()
    p.finish()
    return e


# printing

def _quote(s: str) -> str:
    body = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{body}"'


def _name(s: str) -> str:
    if _IDENT.fullmatch(s) and s not in KEYWORDS:
        return s
    return _quote(s)


def _paren(s: str, level: int, need: int) -> str:
    return f"({s})" if level < need else s


def _path(e, need: int) -> str:
    if isinstance(e, Epsilon):
        s, lv = "eps", 6
    elif isinstance(e, Wildcard):
        s, lv = "_", 6
    elif isinstance(e, Label):
        s, lv = _name(e.name), 6
    elif isinstance(e, NodeTest):
        s, lv = f"[{_node(e.test, 0)}]", 6
    elif isinstance(e, Inverse):
        s, lv = _name(e.name) + "^-", 5
    elif isinstance(e, Star):
        s, lv = _path(e.arg, 5) + "*", 5
    elif isinstance(e, Repeat):
        s, lv = f"{_path(e.arg, 5)}{{{e.lo},{e.hi}}}", 5
    elif isinstance(e, Complement):
        s, lv = "!" + _path(e.arg, 4), 4
    elif isinstance(e, Concat):
        s, lv = f"{_path(e.left, 3)}.{_path(e.right, 4)}", 3
    elif isinstance(e, Intersect):
        s, lv = f"{_path(e.left, 2)} & {_path(e.right, 3)}", 2
    elif isinstance(e, Union):
        s, lv = f"{_path(e.left, 1)} + {_path(e.right, 2)}", 1
    else:
        raise TypeError(f"not a path expression: {e!r}")
    return _paren(s, lv, need)


def _node(e, need: int) -> str:
    if isinstance(e, DataEq):
        s, lv = "=" + _quote(e.value), 4
    elif isinstance(e, DataNeq):
        s, lv = "!=" + _quote(e.value), 4
    elif isinstance(e, Exists):
        s, lv = f"<{_path(e.path, 0)}>", 4
    elif isinstance(e, ExistsEq):
        s, lv = f"<{_path(e.left, 0)} = {_path(e.right, 0)}>", 4
    elif isinstance(e, ExistsNeq):
        s, lv = f"<{_path(e.left, 0)} != {_path(e.right, 0)}>", 4
    elif isinstance(e, Not):
        # '!' directly before '=' would lex as '!='
        inner = _node(e.arg, 3)
        s, lv = "!" + (f"({inner})" if isinstance(e.arg, DataEq) else inner), 3
    elif isinstance(e, And):
        s, lv = f"{_node(e.left, 2)} & {_node(e.right, 3)}", 2
    elif isinstance(e, Or):
        s, lv = f"{_node(e.left, 1)} + {_node(e.right, 2)}", 1
    else:
        raise TypeError(f"not a node expression: {e!r}")
    return _paren(s, lv, need)


def pretty(e) -> str:
    if is_path(e):
        return _path(e, 0)
    if is_node(e):
        return _node(e, 0)
    raise TypeError(f"not an expression: {e!r}")
