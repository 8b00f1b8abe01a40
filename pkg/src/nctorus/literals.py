"""Parser for the scalar / word / vector text grammar.

One recursive-descent grammar covers all three literal kinds::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/" | <juxtaposition>) unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" signed-int)?
    atom   := INT | "s3" | "d" | ("u"|"v")("1"|"2") | "<identity>" | "chi"INT
            | "(" expr ")"

Every expression evaluates to a :class:`~nctorus.vectors.Vector`; a scalar
is a multiple of the identity word.  Juxtaposition multiplies, so
``u1^2 v1^-1 u2`` and ``d^-1 * u1 v1`` are both expressions.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple, Optional

from .field import ONE, SQRT3_SCALAR, Scalar
from .vectors import Vector, ZERO_VECTOR, mul_vec
from .words import IDENTITY, Word, adjoint_blocks, generator


class ParseError(ValueError):
    """Syntax error with a 1-based column."""

    def __init__(self, message: str, column: int, text: str = ""):
        super().__init__(f"column {column}: {message}")
        self.column = column
        self.text = text


class Token(NamedTuple):
    kind: str
    value: str
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<identity><identity>)
  | (?P<chi>chi\d+)
  | (?P<gen>[uv][12])
  | (?P<s3>s3)
  | (?P<d>d)
  | (?P<int>\d+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    pos = 0
    out: List[Token] = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    out.append(Token("eof", "", len(text) + 1))
    return out


_ATOM_START = {"identity", "chi", "gen", "s3", "d", "int"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.column, self.text)

    def expect_op(self, value: str) -> Token:
        if self.tok.kind != "op" or self.tok.value != value:
            shown = self.tok.value or "end of input"
            self.error(f"expected {value!r}, found {shown!r}")
        return self.advance()

    def parse(self) -> Vector:
        if self.tok.kind == "eof":
            self.error("empty expression")
        v = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.value!r}")
        return v

    def expr(self) -> Vector:
        v = self.term()
        while self.tok.kind == "op" and self.tok.value in "+-":
            op = self.advance().value
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> Vector:
        v = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.value == "*":
                self.advance()
                v = mul_vec(v, self.unary())
            elif t.kind == "op" and t.value == "/":
                self.advance()
                rhs_tok = self.tok
                rhs = self.unary()
                v = v.scale(ONE / self._as_scalar(rhs, rhs_tok, "divisor"))
            elif t.kind in _ATOM_START or (t.kind == "op" and t.value == "("):
                v = mul_vec(v, self.unary())
            else:
                return v

    def unary(self) -> Vector:
        if self.tok.kind == "op" and self.tok.value in "+-":
            op = self.advance().value
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self) -> Vector:
        base_tok = self.tok
        v = self.atom()
        if self.tok.kind == "op" and self.tok.value == "^":
            self.advance()
            sign = 1
            if self.tok.kind == "op" and self.tok.value in "+-":
                sign = -1 if self.advance().value == "-" else 1
            if self.tok.kind != "int":
                self.error("expected an integer exponent")
            n = sign * int(self.advance().value)
            v = self._power(v, n, base_tok)
        return v

    def _power(self, v: Vector, n: int, tok: Token) -> Vector:
        if n < 0:
            if len(v) == 1:
                (w, c), = v.items()
                if w == IDENTITY:
                    return Vector.scalar(c ** n)
                if c.is_zero():
                    self.error("zero has no inverse", tok)
                p, z = adjoint_blocks(w)
                inv = Vector.word(Word._raw(z), (ONE / c).shift(p))
                return self._power(inv, -n, tok)
            self.error("negative power of a non-monomial", tok)
        result = Vector.scalar(ONE)
        for _ in range(n):
            result = mul_vec(result, v)
        return result

    def atom(self) -> Vector:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Vector.scalar(int(t.value))
        if t.kind == "s3":
            self.advance()
            return Vector.scalar(SQRT3_SCALAR)
        if t.kind == "d":
            self.advance()
            return Vector.scalar(Scalar.d_power(1))
        if t.kind == "gen":
            self.advance()
            return Vector.word(generator(int(t.value[1]), t.value[0]))
        if t.kind == "identity":
            self.advance()
            return Vector.word(IDENTITY)
        if t.kind == "chi":
            self.advance()
            from .basis import chi

            return chi(int(t.value[3:]))
        if t.kind == "op" and t.value == "(":
            self.advance()
            v = self.expr()
            self.expect_op(")")
            return v
        shown = t.value or "end of input"
        self.error(f"unexpected {shown!r}")

    def _as_scalar(self, v: Vector, tok: Token, what: str) -> Scalar:
        if v.is_zero():
            self.error(f"{what} is zero", tok)
        if len(v) != 1 or IDENTITY not in v:
            self.error(f"{what} must be a scalar", tok)
        return v[IDENTITY]


def parse_vector(text: str) -> Vector:
    return _Parser(text).parse()


def parse_scalar_expr(text: str) -> Scalar:
    v = parse_vector(text)
    if v.is_zero():
        return Scalar.of(0)
    if len(v) != 1 or IDENTITY not in v:
        raise ParseError("expression is not a scalar", 1, text)
    return v[IDENTITY]


def parse_word_literal(text: str):
    """Parse a word literal to a ScaledWord in normal form."""
    from .words import ScaledWord

    v = parse_vector(text)
    if len(v) != 1:
        raise ParseError("expression is not a single word", 1, text)
    (w, c), = v.items()
    return ScaledWord(c, w)


__all__ = ["ParseError", "tokenize", "parse_vector", "parse_scalar_expr", "parse_word_literal",
           "ZERO_VECTOR"]
