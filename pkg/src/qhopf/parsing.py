"""Element grammar: parsing and deterministic printing.

Grammar (whitespace insignificant, `#` separates tensor legs):

    elem   := tensor (('+'|'-') tensor)*
    tensor := prod ('#' prod)*
    prod   := factor ('*' factor)*
    factor := rational | 'h' ['^' int] | name ['^' int] | '(' elem ')'

Rationals are integers or `p/q`.  A parenthesized sub-expression must be
arity 1.  The printer emits one `coeff * h^k * m1 # ... # mn` summand per
(h-degree, monomial tuple) pair in a fixed order, so printing is
bit-reproducible and `parse(print(a)) == a`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Monomial, Presentation, TensorElement
from .errors import ArityError, ParseError
from .scalars import TruncScalar

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*#^()]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                raise ParseError(f"unexpected character {stripped[0]!r}", pos)
            if m.group(1):
                self.items.append(("number", m.group(1), m.start(1)))
            elif m.group(2):
                self.items.append(("name", m.group(2), m.start(2)))
            else:
                self.items.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", pos)
        self.i += 1


class _Parser:
    def __init__(self, text: str, context: Presentation):
        self.toks = _Tokens(text)
        self.ctx = context

    def parse(self, arity: int) -> TensorElement:
        result = self._elem(arity)
        kind, val, pos = self.toks.peek()
        if kind is not None:
            raise ParseError(f"trailing input {val!r}", pos)
        return result

    def _elem(self, arity: int) -> TensorElement:
        negate = self.toks.accept("-")
        acc = self._tensor(arity)
        if negate:
            acc = -acc
        while True:
            if self.toks.accept("+"):
                acc = acc + self._tensor(arity)
            elif self.toks.accept("-"):
                acc = acc - self._tensor(arity)
            else:
                return acc

    def _tensor(self, arity: int) -> TensorElement:
        legs = [self._prod()]
        while self.toks.accept("#"):
            legs.append(self._prod())
        if len(legs) != arity:
            _, _, pos = self.toks.peek()
            raise ParseError(
                f"term has {len(legs)} tensor legs, expected {arity}", pos)
        out = legs[0]
        for i, leg in enumerate(legs[1:], start=2):
            out = out.embed(range(1, i), i) * leg.embed((i,), i)
        return out

    def _prod(self) -> TensorElement:
        acc = self._factor()
        while self.toks.accept("*"):
            acc = acc * self._factor()
        return acc

    def _factor(self) -> TensorElement:
        kind, val, pos = self.toks.next()
        ctx = self.ctx
        if kind == "number":
            return TensorElement.scalar_multiple(
                ctx, TruncScalar.constant(Fraction(val), ctx.order))
        if kind == "name":
            if val == "h":
                power = self._opt_exponent()
                return TensorElement.scalar_multiple(
                    ctx, TruncScalar.h_power(power, ctx.order))
            try:
                gen = TensorElement.generator(ctx, val)
            except KeyError:
                raise ParseError(f"unknown generator {val!r}", pos) from None
            power = self._opt_exponent()
            out = TensorElement.unit(ctx, 1)
            for _ in range(power):
                out = out * gen
            return out
        if kind == "op" and val == "(":
            inner = self._elem(1)
            self.toks.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", pos)

    def _opt_exponent(self) -> int:
        if self.toks.accept("^"):
            kind, val, pos = self.toks.next()
            if kind != "number" or "/" in val:
                raise ParseError("exponent must be a non-negative integer", pos)
            return int(val)
        return 1


def parse_element(text: str, context: Presentation, arity: int = 1) -> TensorElement:
    """Parse `text` as an element of H^{otimes arity} over `context`."""
    if arity < 1:
        raise ArityError("arity must be at least 1")
    return _Parser(text, context).parse(arity)


def print_element(a: TensorElement) -> str:
    """Canonical text form; `parse_element` inverts it up to normal form."""
    table = a.context.generators
    summands: list[tuple[tuple, bool, str]] = []
    for key, scalar in a.sorted_terms():
        mono_txt = " # ".join(m.render(table) for m in key)
        for k, c in enumerate(scalar.coeffs):
            if not c:
                continue
            magnitude = abs(c)
            pieces = []
            if magnitude != 1 or (k == 0 and len(key) == 1
                                  and all(m.is_unit for m in key)):
                pieces.append(str(magnitude))
            if k == 1:
                pieces.append("h")
            elif k > 1:
                pieces.append(f"h^{k}")
            if len(key) > 1 or any(not m.is_unit for m in key) or not pieces:
                pieces.append(mono_txt)
            sort_key = (tuple(m.exponents for m in key), k)
            summands.append((sort_key, c < 0, " * ".join(pieces)))
    if not summands:
        return "0"
    summands.sort(key=lambda kv: kv[0])
    parts = []
    for i, (_, negative, txt) in enumerate(summands):
        if i == 0:
            parts.append(("-" + txt) if negative else txt)
        else:
            parts.append((" - " if negative else " + ") + txt)
    return "".join(parts)
