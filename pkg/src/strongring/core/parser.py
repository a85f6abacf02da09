"""Recursive-descent parser for ring expressions.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := INT | NAME | "@" PATH | "(" expr ")"
    NAME   := ("K" | "C" | "L" | "P") INT | "Oct" | "Octahedron"
            | IDENT "(" arg ("," arg)* ")" | "Cyl" | "Mob"
    arg    := NUMBER | expr

Parameterised names: ``Susp(G)``, ``ER(n, p, seed)``, ``Primes(n)``,
``Cyl(n)``, ``Mob(n)``.  An integer factor ``n`` stands for ``n * K1``.
``@path`` loads a JSON facet list; the path runs until whitespace or one of
``( ) + *``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import BadParameter, ExpressionSyntaxError, NotASingleTerm, UnknownGenerator
from .complex import SimplicialComplex
from .generators import generate
from .ring import RingElement

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_]*)
  | (?P<path>@[^\s()+*]+)
  | (?P<op>[-+*(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


Value = SimplicialComplex | RingElement


def _lift(v: Value) -> RingElement:
    return v if isinstance(v, RingElement) else RingElement.of(v)


def _as_complex(v: Value, where: int, text: str) -> SimplicialComplex:
    if isinstance(v, SimplicialComplex):
        return v
    try:
        term = v.single_term()
    except NotASingleTerm:
        raise ExpressionSyntaxError("argument must be a single simplicial complex", where, text) from None
    if len(term.factors) != 1:
        raise ExpressionSyntaxError("argument must be a single simplicial complex", where, text)
    return term.factors[0]


class _Parser:
    def __init__(self, text: str, base_dir: Path | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.base_dir = base_dir

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, pos: int | None = None):
        raise ExpressionSyntaxError(msg, self.tok.pos if pos is None else pos, self.text)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def parse(self) -> RingElement:
        v = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return _lift(v)

    def expr(self) -> Value:
        negate = self.eat("-")
        acc = self.term()
        if negate:
            acc = -_lift(acc)
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.tok.text
            self.i += 1
            rhs = _lift(self.term())
            acc = _lift(acc) + rhs if sign == "+" else _lift(acc) - rhs
        return acc

    def term(self) -> Value:
        acc = self.factor()
        while self.eat("*"):
            acc = _lift(acc) * _lift(self.factor())
        return acc

    def factor(self) -> Value:
        t = self.tok
        if t.kind == "num":
            if not t.text.isdigit():
                self.error(f"expected an integer, got {t.text!r}")
            self.i += 1
            return RingElement.integer(int(t.text))
        if t.kind == "path":
            self.i += 1
            return self.load(t)
        if t.kind == "name":
            return self.named()
        if t.kind == "op" and t.text == "(":
            self.i += 1
            try:
                v = self.expr()
            except ExpressionSyntaxError as exc:
                if exc.position >= len(self.text):
                    raise ExpressionSyntaxError("unclosed '('", t.pos, self.text) from None
                raise
            if not self.eat(")"):
                if self.tok.kind == "eof":
                    self.error("unclosed '('", t.pos)
                self.error(f"expected ')', got {self.tok.text!r}")
            return v
        if t.kind == "eof":
            self.error("unexpected end of expression")
        self.error(f"unexpected {t.text!r}")

    def named(self) -> SimplicialComplex:
        t = self.tok
        self.i += 1
        params: list = []
        nxt = self.tok
        if nxt.kind == "num" and nxt.pos == t.pos + len(t.text):
            # K3, C4, L2, P2: the index is glued to the letter
            if not nxt.text.isdigit():
                self.error(f"expected an integer index, got {nxt.text!r}", nxt.pos)
            params.append(int(nxt.text))
            self.i += 1
        elif nxt.kind == "op" and nxt.text == "(":
            self.i += 1
            params.append(self.arg())
            while self.eat(","):
                params.append(self.arg())
            if not self.eat(")"):
                if self.tok.kind == "eof":
                    self.error("unclosed '('", nxt.pos)
                self.error(f"expected ')' or ',', got {self.tok.text!r}")
        try:
            return generate(t.text, *params)
        except UnknownGenerator:
            raise
        except BadParameter as exc:
            raise BadParameter(f"{exc} (at offset {t.pos})") from None

    def arg(self):
        t = self.tok
        nxt = self.toks[self.i + 1]
        if t.kind == "num" and (nxt.kind == "eof" or (nxt.kind == "op" and nxt.text in ",)")):
            self.i += 1
            return int(t.text) if t.text.isdigit() else float(t.text)
        return _as_complex(self.expr(), t.pos, self.text)

    def load(self, t: _Tok) -> SimplicialComplex:
        path = Path(t.text[1:])
        if self.base_dir is not None and not path.is_absolute():
            path = self.base_dir / path
        try:
            return SimplicialComplex.load_json(path)
        except OSError as exc:
            raise BadParameter(f"cannot read {path}: {exc.strerror}") from None


def parse_ring_expression(text: str, base_dir: str | Path | None = None) -> RingElement:
    """Parse ``text`` into a normalized ring element.

    >>> parse_ring_expression("C4 - 2*K3 + L2*L3").terms[1][0]
    -2
    """
    return _Parser(text, None if base_dir is None else Path(base_dir)).parse()
