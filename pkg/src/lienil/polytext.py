"""Text grammar for noncommutative polynomials.

Generators are ``x, y, z, t`` (ranks up to 4) or ``x1 ... x9``.  Scalars are
integers or parenthesised rationals; ``+ - * / ^`` have the usual meaning,
juxtaposition multiplies, and ``[a, b, c]`` is the right-normed commutator::

    2*[x,y]*x^4*y^4 - (1/3)*x*y
"""
from __future__ import annotations

import re
from fractions import Fraction

from .freealg import NcPoly, right_normed, word_key
from .scalars import QQ, FieldSpec

LETTERS = "xyzt"

_TOKEN = re.compile(r"\s*(?:(\d+)|(x[1-9]|[xyzt])|(.))")


class ParseError(ValueError):
    pass


def letter_name(i: int, rank: int) -> str:
    if rank <= len(LETTERS):
        return LETTERS[i]
    return f"x{i + 1}"


def _letter_index(name: str) -> int:
    if len(name) == 2:
        return int(name[1]) - 1
    return LETTERS.index(name)


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad input at {text[pos:]!r}")
        pos = m.end()
        num, gen, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif gen is not None:
            out.append(("gen", _letter_index(gen)))
        elif sym.strip():
            if sym not in "+-*/^()[],":
                raise ParseError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
    out.append(("end", None))
    return out


def _max_letter(tokens):
    return max((v for k, v in tokens if k == "gen"), default=-1)


class _Parser:
    def __init__(self, tokens, rank, field):
        self.toks = tokens
        self.i = 0
        self.rank = rank
        self.field = field

    def peek(self):
        return self.toks[self.i]

    def take(self, sym=None):
        tok = self.toks[self.i]
        if sym is not None and tok != ("sym", sym):
            raise ParseError(f"expected {sym!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        r = self.term()
        if sign < 0:
            r = -r
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def _starts_factor(self, tok):
        return tok[0] in ("num", "gen") or tok in (("sym", "("), ("sym", "["))

    def term(self):
        r = self.power()
        while True:
            tok = self.peek()
            if tok == ("sym", "*"):
                self.take()
                r = r * self.power()
            elif tok == ("sym", "/"):
                self.take()
                d = self.power()
                if d.degree() > 0 or d.is_zero():
                    raise ParseError("can only divide by a nonzero scalar")
                r = r / d.coeff(())
            elif self._starts_factor(tok):
                r = r * self.power()
            else:
                return r

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, v = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** v
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return NcPoly.const(v, self.rank, self.field)
        if kind == "gen":
            return NcPoly.gen(v, self.rank, self.field)
        if v == "-":
            return -self.power()
        if v == "(":
            r = self.expr()
            self.take(")")
            return r
        if v == "[":
            args = [self.expr()]
            while self.peek() == ("sym", ","):
                self.take()
                args.append(self.expr())
            self.take("]")
            if len(args) < 2:
                raise ParseError("a commutator needs at least two entries")
            return right_normed(*args)
        raise ParseError(f"unexpected {v!r}")


def parse_poly(text: str, rank: int | None = None, field: FieldSpec = QQ) -> NcPoly:
    toks = _tokens(text)
    need = _max_letter(toks) + 1
    if rank is None:
        rank = max(need, 1)
    elif need > rank:
        raise ParseError(f"{text!r} uses {need} generators but rank is {rank}")
    p = _Parser(toks, rank, field)
    r = p.expr()
    if p.peek()[0] != "end":
        raise ParseError(f"trailing input after position {p.i}")
    return r


def format_word(w, rank: int) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = letter_name(w[i], rank)
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"({c.numerator}/{c.denominator})"
    return str(c)


def format_poly(f: NcPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for w in sorted(f.terms, key=word_key):
        c = f.terms[w]
        neg = not f.field.characteristic and c < 0
        mag = -c if neg else c
        body = format_word(w, f.rank)
        if mag == 1 and w:
            s = body
        elif not w:
            s = _format_coeff(mag)
        else:
            s = f"{_format_coeff(mag)}*{body}"
        if out:
            out.append(("- " if neg else "+ ") + s)
        else:
            out.append(("-" if neg else "") + s)
    return " ".join(out)
