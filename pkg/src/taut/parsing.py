"""Text grammar for polynomials and differential operators.

::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := (coeff | factor) ('*' factor)*
    factor := var ('^' nat)? | dvar ('^' nat)?
    coeff  := int ('/' posint)?
    dvar   := 'd' identifier

A partial is written ``d`` followed by either the full variable name
(``dx11``) or, when unambiguous, by the part of the name after its leading
letters (``d11`` for ``x11``). Products are taken in the order written, so
``d1*x1`` parses to ``x1*d1 + 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction as Q
from typing import Sequence

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)
_NAME = re.compile(r"^([A-Za-z_]+?)(\d\w*)?$")


class ParseError(ValueError):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def _tokenize(text):
    tokens = []
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        num, ident, other = m.groups()
        if num is not None:
            tokens.append(("num", num, pos))
        elif ident is not None:
            tokens.append(("id", ident, pos))
        elif other in "+-*/^":
            tokens.append((other, other, pos))
        else:
            line, col = _position(text, pos)
            raise ParseError(f"unexpected character {other!r}", line, col)
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def check_variable_names(vars: Sequence[str]):
    for v in vars:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ValueError(f"invalid variable name {v!r}")
        if v.startswith("d"):
            raise ValueError(f"variable names may not start with 'd': {v!r}")
    if len(set(vars)) != len(vars):
        raise ValueError("duplicate variable names")


def short_suffixes(vars: Sequence[str]) -> dict:
    """Map index -> suffix usable as ``d<suffix>`` (only unambiguous ones)."""
    found = {}
    for i, v in enumerate(vars):
        m = _NAME.match(v)
        if m and m.group(2):
            found.setdefault(m.group(2), []).append(i)
    return {ix[0]: s for s, ix in found.items() if len(ix) == 1}


class _Parser:
    def __init__(self, text, vars, build, allow_partials):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.build = build
        self.allow_partials = allow_partials
        self.index = {v: k for k, v in enumerate(self.vars)}
        self.suffix = {s: k for k, s in short_suffixes(self.vars).items()}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        line, col = _position(self.text, tok[2])
        raise ParseError(msg, line, col)

    def expect(self, kind):
        t = self.peek()
        if t[0] != kind:
            self.fail(f"expected {kind!r}, found {t[1] or 'end of input'!r}")
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        total = self.build.scale(self.term(), sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            total = self.build.add(total, self.build.scale(self.term(), sign))
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return total

    def term(self):
        t = self.peek()
        if t[0] == "num":
            value = self.coeff()
            acc = self.build.const(value)
        elif t[0] == "id":
            acc = self.factor()
        else:
            self.fail(f"expected a term, found {t[1] or 'end of input'!r}")
        while self.peek()[0] == "*":
            self.take()
            acc = self.build.mul(acc, self.factor())
        return acc

    def coeff(self):
        num = int(self.take()[1])
        if self.peek()[0] == "/":
            self.take()
            tok = self.expect("num")
            den = int(tok[1])
            if den == 0:
                self.fail("zero denominator", tok)
            return Q(num, den)
        return Q(num)

    def factor(self):
        tok = self.peek()
        if tok[0] != "id":
            self.fail(f"expected a variable, found {tok[1] or 'end of input'!r}")
        self.take()
        base = self.atom(tok)
        if self.peek()[0] == "^":
            self.take()
            k = int(self.expect("num")[1])
            return self.build.power(base, k)
        return base

    def atom(self, tok):
        name = tok[1]
        if name in self.index:
            return self.build.var(self.index[name])
        if name.startswith("d") and self.allow_partials:
            rest = name[1:]
            if rest in self.index:
                return self.build.partial(self.index[rest])
            if rest in self.suffix:
                return self.build.partial(self.suffix[rest])
        self.fail(f"unknown variable {name!r}", tok)


class _PolyBuild:
    def __init__(self, vars):
        from .algebra import Polynomial

        self.P = Polynomial
        self.vars = vars

    def const(self, c):
        return self.P.constant(self.vars, c)

    def var(self, i):
        return self.P.var(self.vars, self.vars[i])

    def partial(self, i):  # pragma: no cover - disabled for polynomials
        raise AssertionError

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, s):
        return a * s

    def power(self, a, k):
        return a ** k


class _OpBuild:
    def __init__(self, vars, localized):
        from .weyl import WeylElement

        self.W = WeylElement
        self.vars = vars
        self.localized = localized

    def const(self, c):
        return self.W.constant(self.vars, c, localized=self.localized)

    def var(self, i):
        return self.W.x(self.vars, i, localized=self.localized)

    def partial(self, i):
        return self.W.d(self.vars, i, localized=self.localized)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, s):
        return a * s

    def power(self, a, k):
        return a ** k


def parse_polynomial(text: str, vars: Sequence[str]):
    vars = tuple(vars)
    return _Parser(text, vars, _PolyBuild(vars), False).parse()


def parse_operator(text: str, vars: Sequence[str], localized: Sequence[str] = ()):
    vars = tuple(vars)
    check_variable_names(vars)
    return _Parser(text, vars, _OpBuild(vars, tuple(localized)), True).parse()


# ---------------------------------------------------------------------------
# printing


def _fmt_q(q: Q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _join_terms(items):
    """``items``: list of (Fraction coeff, [factor strings])."""
    if not items:
        return "0"
    out = []
    for idx, (c, factors) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = "*".join(factors) if a == 1 else _fmt_q(a) + "*" + "*".join(factors)
        else:
            body = _fmt_q(a)
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _powers(names, exps):
    return [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]


def partial_names(vars: Sequence[str]):
    short = short_suffixes(vars)
    return ["d" + short[i] if i in short else "d" + v for i, v in enumerate(vars)]


def format_polynomial(p, order=None) -> str:
    from .algebra import default_order

    order = order or default_order()
    return _join_terms([(c, _powers(p.vars, e)) for e, c in p.sorted_terms(order)])


def format_operator(w, order=None) -> str:
    from .algebra import default_order

    order = order or default_order()
    n = len(w.vars)
    dnames = partial_names(w.vars)
    items = []
    if w.localized:
        for e, c in w.sorted_terms(order):
            f = _powers(w.vars, e[:n]) + _powers(dnames, e[n:])
            if c.den.is_constant() and len(c.num.terms) == 1:
                (ce, q), = c.num.terms.items()
                q = q / c.den.terms[(0,) * n]
                items.append((q, _powers(w.vars, ce) + f))
            else:
                items.append((Q(1), [f"({c})"] + f))
        return _join_terms(items)
    for e, c in w.sorted_terms(order):
        items.append((c, _powers(w.vars, e[:n]) + _powers(dnames, e[n:])))
    return _join_terms(items)
