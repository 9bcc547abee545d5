"""Recursive-descent parser for polynomial and word expressions.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := int | var | '(' expr ')'
    var    := 'y' k | 'z' k | 'x[' i ',' k ']' | 'xi[' k ',' i ',' j ']'

Indices are 1-based.  In ``word`` mode only integers and ``z`` atoms are
allowed, ``*`` is noncommutative and ``^`` means repetition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .genmat import FreeElement
from .polyring import Context, Polynomial, var_x, var_xi, var_y
from .ringcore import BaseRing

COMMUTATIVE = "commutative"
WORD = "word"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    # each term carries its sign: (+1 | -1, node)
    terms: Tuple[Tuple[int, "Node"], ...]


Node = Union[Num, Var, Neg, Pow, Prod, Sum]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<xi>xi\[)
  | (?P<x>x\[)
  | (?P<y>y(?=\d))
  | (?P<z>z(?=\d))
  | (?P<op>[-+*^(),\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = mt.lastgroup
        chunk = mt.group()
        if kind == "ws":
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(Token(kind if kind != "op" else chunk, chunk, line, col))
        pos = mt.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, mode, n, m):
        if mode not in (COMMUTATIVE, WORD):
            raise ValueError(f"unknown mode {mode!r}")
        self.tokens = tokenize(text)
        self.i = 0
        self.mode = mode
        self.n = n
        self.m = m

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def take(self, kind) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.fail(f"expected {kind!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        terms = [(1, self.term())]
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.take(self.tok.kind).kind == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.tok.kind == "*":
            self.take("*")
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self) -> Node:
        if self.tok.kind == "-":
            self.take("-")
            return Neg(self.factor())
        base = self.atom()
        if self.tok.kind == "^":
            self.take("^")
            exp = self.take("int")
            return Pow(base, int(exp.text))
        return base

    def index(self) -> int:
        return int(self.take("int").text)

    def bound(self, tok, value, limit, what):
        if value < 1 or (limit is not None and value > limit):
            top = "?" if limit is None else limit
            self.fail(f"{what} index {value} out of range 1..{top}", tok)

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(int(tok.text))
        if tok.kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if tok.kind in ("y", "z"):
            self.i += 1
            want = "z" if self.mode == WORD else "y"
            if tok.kind != want:
                self.fail(f"{tok.kind}-variables are not allowed in {self.mode} mode", tok)
            k = self.index()
            self.bound(tok, k, self.m, tok.kind)
            return Var(tok.kind, (k,))
        if tok.kind in ("x", "xi"):
            self.i += 1
            if self.mode == WORD:
                self.fail(f"{tok.kind}-variables are not allowed in word mode", tok)
            idx = [self.index()]
            for _ in range(1 if tok.kind == "x" else 2):
                self.take(",")
                idx.append(self.index())
            self.take("]")
            if tok.kind == "x":
                self.bound(tok, idx[0], self.n, "row")
                self.bound(tok, idx[1], self.m, "matrix")
            else:
                self.bound(tok, idx[0], self.m, "matrix")
                self.bound(tok, idx[1], self.n, "row")
                self.bound(tok, idx[2], self.n, "column")
            return Var(tok.kind, tuple(idx))
        self.fail(f"unexpected {tok.text or 'end of input'!r}")


def parse(text: str, mode: str = COMMUTATIVE, n: Optional[int] = None, m: Optional[int] = None) -> Node:
    """Parse ``text``; ``n`` and ``m`` (when given) bound the variable indices."""
    return _Parser(text, mode, n, m).parse()


def uses_words(text: str) -> bool:
    """True when ``text`` contains ``z`` atoms (so it must be parsed in word mode)."""
    return any(t.kind == "z" for t in tokenize(text))


def _atomic(node: Node) -> bool:
    return isinstance(node, (Num, Var))


def render(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        if node.name in ("y", "z"):
            return f"{node.name}{node.indices[0]}"
        return f"{node.name}[{','.join(map(str, node.indices))}]"
    if isinstance(node, Neg):
        inner = render(node.operand)
        return f"-({inner})" if isinstance(node.operand, (Sum, Prod)) else f"-{inner}"
    if isinstance(node, Pow):
        inner = render(node.base)
        return f"{inner}^{node.exp}" if _atomic(node.base) else f"({inner})^{node.exp}"
    if isinstance(node, Prod):
        return "*".join(
            f"({render(f)})" if isinstance(f, (Sum, Prod)) else render(f) for f in node.factors
        )
    if isinstance(node, Sum):
        out = []
        for idx, (sign, t) in enumerate(node.terms):
            text = render(t)
            if isinstance(t, Sum) or (idx and isinstance(t, Neg)):
                text = f"({text})"
            if idx == 0:
                out.append(text if sign > 0 else f"-({text})" if isinstance(t, Sum) else f"-{text}")
            else:
                out.append(f" + {text}" if sign > 0 else f" - {text}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


def to_polynomial(node: Node, ctx: Context) -> Polynomial:
    """Evaluate a commutative expression in ``ctx``."""
    if isinstance(node, Num):
        return ctx.const(node.value)
    if isinstance(node, Var):
        if node.name == "y":
            return ctx.var(var_y(*node.indices))
        if node.name == "x":
            return ctx.var(var_x(*node.indices))
        if node.name == "xi":
            return ctx.var(var_xi(*node.indices))
        raise ValueError("z-variables need word mode")
    if isinstance(node, Neg):
        return -to_polynomial(node.operand, ctx)
    if isinstance(node, Pow):
        return to_polynomial(node.base, ctx) ** node.exp
    if isinstance(node, Prod):
        out = ctx.one()
        for f in node.factors:
            out = out * to_polynomial(f, ctx)
        return out
    if isinstance(node, Sum):
        out = ctx.zero()
        for sign, t in node.terms:
            val = to_polynomial(t, ctx)
            out = out + val if sign > 0 else out - val
        return out
    raise TypeError(f"not an expression node: {node!r}")


def to_free_element(node: Node, ring: BaseRing) -> FreeElement:
    """Evaluate a word-mode expression in the free algebra."""
    if isinstance(node, Num):
        return FreeElement.const(ring, node.value)
    if isinstance(node, Var):
        if node.name != "z":
            raise ValueError(f"{node.name}-variables are not allowed in word mode")
        return FreeElement.letter(ring, node.indices[0])
    if isinstance(node, Neg):
        return -to_free_element(node.operand, ring)
    if isinstance(node, Pow):
        return to_free_element(node.base, ring) ** node.exp
    if isinstance(node, Prod):
        out = FreeElement.const(ring, 1)
        for f in node.factors:
            out = out * to_free_element(f, ring)
        return out
    if isinstance(node, Sum):
        out = FreeElement(ring)
        for sign, t in node.terms:
            val = to_free_element(t, ring)
            out = out + val if sign > 0 else out - val
        return out
    raise TypeError(f"not an expression node: {node!r}")


def parse_polynomial(text: str, ctx: Context) -> Polynomial:
    return to_polynomial(parse(text, COMMUTATIVE, ctx.n, ctx.m), ctx)


def parse_word(text: str, ring: BaseRing, m: Optional[int] = None) -> FreeElement:
    return to_free_element(parse(text, WORD, None, m), ring)
