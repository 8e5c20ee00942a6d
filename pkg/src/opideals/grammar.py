"""Textual grammar for sequence expressions and ideal descriptions.

Sequences:  pow(p) | pow(p,q) | geo(r) | fin(v1,...,vk) | scale(c,E)
            | amp(m,E) | dec(k,E) | sum(E,E) | max(E,E) | prod(E,E)
Ideals:     prin(E) | KH | FH | prod(I,I) | sum(I,I) | pow(I,n)

Numbers are integers, fractions a/b, or decimals; decimals parse to exact
rationals.  ``render_seq``/``render_ideal`` emit the canonical spelling, and
parsing a rendered expression reproduces it exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ideals import (
    FH,
    IdealDesc,
    IdealPower,
    IdealProduct,
    IdealSum,
    KH,
    Principal,
    SoftInterior,
    ZeroIdeal,
)
from .sequences import (
    Ampliate,
    Decimate,
    DomainError,
    Finite,
    Geometric,
    Max,
    PowerLog,
    Product,
    Scale,
    SeqExpr,
    Sum,
    ampliate,
    decimate,
    finite,
    geometric,
    power_log,
    scale,
    seq_max,
    seq_product,
    seq_sum,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


_TOKEN = re.compile(
    r"\s*(?:(?P<number>-?\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<punct>[(),]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == m.start():
            if text[i:].strip():
                raise ParseError(f"unexpected character {text[i]!r}", i)
            break
        for kind in ("number", "name", "punct"):
            if m.group(kind) is not None:
                out.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, kind: str | None = None, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if kind and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.pos)
        if text and tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        self.i += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input starting with {tok.text!r}", tok.pos)

    def number(self) -> tuple[Fraction, int]:
        tok = self.next("number")
        try:
            return Fraction(tok.text), tok.pos
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad number {tok.text!r}", tok.pos) from exc

    def args(self, parse_item, minimum: int, maximum: int | None, pos: int) -> list:
        self.next("punct", "(")
        items = [parse_item()]
        while self.peek() and self.peek().text == ",":
            self.next("punct", ",")
            items.append(parse_item())
        self.next("punct", ")")
        if len(items) < minimum or (maximum is not None and len(items) > maximum):
            want = str(minimum) if maximum == minimum else f"{minimum}..{maximum or 'n'}"
            raise ParseError(f"wrong number of arguments (expected {want}, got {len(items)})", pos)
        return items

    # -- sequences ---------------------------------------------------------

    def seq(self) -> SeqExpr:
        tok = self.next("name")
        name = tok.text
        try:
            if name == "pow":
                nums = self.args(lambda: self.number()[0], 1, 2, tok.pos)
                return power_log(*nums)
            if name == "geo":
                (r,) = self.args(lambda: self.number()[0], 1, 1, tok.pos)
                return geometric(r)
            if name == "fin":
                vals = self.args(lambda: self.number()[0], 1, None, tok.pos)
                return finite(vals)
            if name == "scale":
                self.next("punct", "(")
                c, _ = self.number()
                self.next("punct", ",")
                inner = self.seq()
                self.next("punct", ")")
                return scale(c, inner)
            if name in ("amp", "dec"):
                self.next("punct", "(")
                count, npos = self.number()
                if count.denominator != 1 or count < 1:
                    raise ParseError(f"{name} needs a positive integer order", npos)
                self.next("punct", ",")
                inner = self.seq()
                self.next("punct", ")")
                return ampliate(inner, int(count)) if name == "amp" else decimate(inner, int(count))
            if name in ("sum", "max", "prod"):
                self.next("punct", "(")
                a = self.seq()
                self.next("punct", ",")
                b = self.seq()
                self.next("punct", ")")
                return {"sum": seq_sum, "max": seq_max, "prod": seq_product}[name](a, b)
        except DomainError as exc:
            raise ParseError(str(exc), tok.pos) from exc
        raise ParseError(f"unknown sequence constructor {name!r}", tok.pos)

    # -- ideals ------------------------------------------------------------

    def ideal(self) -> IdealDesc:
        tok = self.next("name")
        name = tok.text
        try:
            if name == "KH":
                return KH()
            if name == "FH":
                return FH()
            if name == "prin":
                self.next("punct", "(")
                inner = self.seq()
                self.next("punct", ")")
                return Principal(inner)
            if name in ("prod", "sum"):
                self.next("punct", "(")
                a = self.ideal()
                self.next("punct", ",")
                b = self.ideal()
                self.next("punct", ")")
                return IdealProduct(a, b) if name == "prod" else IdealSum(a, b)
            if name == "pow":
                self.next("punct", "(")
                base = self.ideal()
                self.next("punct", ",")
                n, npos = self.number()
                self.next("punct", ")")
                if n.denominator != 1 or n < 1:
                    raise ParseError("ideal powers need a positive integer exponent", npos)
                return IdealPower(base, int(n))
        except DomainError as exc:
            raise ParseError(str(exc), tok.pos) from exc
        raise ParseError(f"unknown ideal constructor {name!r}", tok.pos)


def parse_seq(text: str) -> SeqExpr:
    p = _Parser(text)
    e = p.seq()
    p.done()
    return e


def parse_ideal(text: str) -> IdealDesc:
    p = _Parser(text)
    d = p.ideal()
    p.done()
    return d


def _num(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_seq(e: SeqExpr) -> str:
    if isinstance(e, PowerLog):
        return f"pow({_num(e.p)})" if e.q == 0 else f"pow({_num(e.p)},{_num(e.q)})"
    if isinstance(e, Geometric):
        return f"geo({_num(e.ratio)})"
    if isinstance(e, Finite):
        return "fin(" + ",".join(_num(v) for v in e.values) + ")" if e.values else "fin(0)"
    if isinstance(e, Scale):
        return f"scale({_num(e.factor)},{render_seq(e.inner)})"
    if isinstance(e, Ampliate):
        return f"amp({e.order},{render_seq(e.inner)})"
    if isinstance(e, Decimate):
        return f"dec({e.step},{render_seq(e.inner)})"
    if isinstance(e, Sum):
        return f"sum({render_seq(e.left)},{render_seq(e.right)})"
    if isinstance(e, Max):
        return f"max({render_seq(e.left)},{render_seq(e.right)})"
    if isinstance(e, Product):
        return f"prod({render_seq(e.left)},{render_seq(e.right)})"
    raise TypeError(f"not a sequence expression: {e!r}")


def render_ideal(d: IdealDesc) -> str:
    if isinstance(d, Principal):
        return f"prin({render_seq(d.generator)})"
    if isinstance(d, KH):
        return "KH"
    if isinstance(d, FH):
        return "FH"
    if isinstance(d, ZeroIdeal):
        return "prin(fin(0))"
    if isinstance(d, SoftInterior):
        return f"prod(prin({render_seq(d.generator)}),KH)"
    if isinstance(d, IdealProduct):
        return f"prod({render_ideal(d.left)},{render_ideal(d.right)})"
    if isinstance(d, IdealSum):
        return f"sum({render_ideal(d.left)},{render_ideal(d.right)})"
    if isinstance(d, IdealPower):
        return f"pow({render_ideal(d.base)},{d.exponent})"
    raise TypeError(f"not an ideal description: {d!r}")
