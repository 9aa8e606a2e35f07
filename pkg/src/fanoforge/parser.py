"""Recursive-descent parser for divisor and Chow-class expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := rational | name | '(' expr ')'

``rational`` is ``digits ('/' digits)?``. Names are case-sensitive; ``H``
(hyperplane class), ``pt`` (pullback of a point) and ``K`` (pullback of
K_S) are reserved, all other names must be basis names of the model.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import chow
from .chow import BundleData, ChowClass, ConventionMode, Expansion
from .errors import ClassSyntaxError, InvalidInput, UnknownName
from .lattice import SurfaceModel


class DegreeOverflowWarning(UserWarning):
    """A product exceeded degree 3 and was truncated to zero."""


@dataclass(frozen=True)
class Num:
    value: Fraction
    offset: int = 0


@dataclass(frozen=True)
class Name:
    name: str
    offset: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    offset: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    offset: int = 0


Node = Union[Num, Name, Neg, BinOp, Pow]

_TOKEN = re.compile(r"([0-9]+(?:/[0-9]+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.)", re.S)


def tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        start = pos
        if m.group(1) is not None:
            num, _, den = m.group(1).partition("/")
            if den and int(den) == 0:
                raise ClassSyntaxError("zero denominator", start)
            tokens.append(("num", Fraction(int(num), int(den or 1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ClassSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("eof", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, names):
        self.tokens = tokenize(src)
        self.i = 0
        self.names = names

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, kind):
        if self.tok[0] != kind:
            raise ClassSyntaxError(f"expected {kind!r}", self.tok[2])
        t = self.tok
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.tok[0] in ("+", "-"):
            op, _, off = self.tok
            self.i += 1
            node = BinOp(op, node, self.term(), off)
        return node

    def term(self):
        node = self.factor()
        while self.tok[0] == "*":
            off = self.tok[2]
            self.i += 1
            node = BinOp("*", node, self.factor(), off)
        return node

    def factor(self):
        if self.tok[0] == "-":
            off = self.tok[2]
            self.i += 1
            return Neg(self.factor(), off)
        node = self.atom()
        if self.tok[0] == "^":
            off = self.tok[2]
            self.i += 1
            kind, value, voff = self.tok
            if kind != "num" or value.denominator != 1:
                raise ClassSyntaxError("exponent must be a non-negative integer", voff)
            self.i += 1
            node = Pow(node, int(value), off)
        return node

    def atom(self):
        kind, value, off = self.tok
        if kind == "num":
            self.i += 1
            return Num(value, off)
        if kind == "name":
            if value not in self.names:
                raise UnknownName(value, off)
            self.i += 1
            return Name(value, off)
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if kind == "eof" else repr(value)
        raise ClassSyntaxError(f"unexpected {what}", off)


def parse_class(src: str, model: SurfaceModel) -> Node:
    """Parse ``src`` into an AST whose names all resolve against ``model``."""
    names = set(model.basis) | {"H", "pt", "K"}
    p = _Parser(src, names)
    node = p.expr()
    if p.tok[0] != "eof":
        raise ClassSyntaxError(f"unexpected {p.tok[1]!r}", p.tok[2])
    return node


def _leaf(model: SurfaceModel, name: str) -> ChowClass:
    if name == "H":
        return chow.hyperplane(model)
    if name == "pt":
        return chow.point(model)
    if name == "K":
        return chow.pullback(model, model.canonical)
    return chow.pullback(model, model.generator(model.basis.index(name)))


def expand(node: Node, model: SurfaceModel) -> Expansion:
    """Evaluate an AST in the free algebra, without applying any relation.

    Emits :class:`DegreeOverflowWarning` when a product has to drop terms of
    degree above 3.
    """
    if isinstance(node, Num):
        return Expansion.lift(model, chow.one(model)) * node.value
    if isinstance(node, Name):
        return Expansion.lift(model, _leaf(model, node.name))
    if isinstance(node, Neg):
        return -expand(node.operand, model)
    if isinstance(node, Pow):
        base = expand(node.base, model)
        out = Expansion.lift(model, chow.one(model))
        for _ in range(node.exponent):
            out = _mul(out, base, node.offset)
        return out
    if isinstance(node, BinOp):
        left, right = expand(node.left, model), expand(node.right, model)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return _mul(left, right, node.offset)
    raise InvalidInput(f"not an expression node: {node!r}")


def _mul(x: Expansion, y: Expansion, offset: int) -> Expansion:
    prod, overflow = chow.free_product(x, y)
    if overflow:
        warnings.warn(f"product at offset {offset} exceeds degree 3; truncated to zero",
                      DegreeOverflowWarning, stacklevel=3)
    return prod


def evaluate(node: Node, E: BundleData, mode: ConventionMode) -> ChowClass:
    """Normal form of the expression under the mode's Hirsch relation."""
    return chow.normalize(E, expand(node, E.model), mode)


def evaluate_divisor(src: str, model: SurfaceModel):
    """Parse an expression that must denote a divisor class on S."""
    x = expand(parse_class(src, model), model)
    bad = [key for key in x.terms if key != (0, 1)]
    if bad:
        raise InvalidInput(f"{src!r} is not a divisor class on the surface")
    return x.terms.get((0, 1), model.zero())


def format_class(x: ChowClass, model: Optional[SurfaceModel] = None) -> str:
    return x.format(model.basis if model is not None else None)
