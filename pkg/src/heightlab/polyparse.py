"""Parser for the expression grammar shared by the CLI and the tests.

Accepted: integer literals, rationals written with /, variables from the
families x, t, x0..xN, u0..uN, y0..yN, operators + - * ^ and parentheses.
Multiplication is explicit (write 3*x^2, not 3x^2).  Division is only
defined when the divisor reduces to a nonzero constant.

The parser produces a sparse exponent map over a declared variable tuple;
`to_unipoly` / `to_bipoly` / `to_mpoly` shape that into the concrete types.
"""

from __future__ import annotations

import re
from fractions import Fraction


class ParseError(ValueError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z]\w*)|(\*\*)|([-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            tail = text[pos:].strip()
            if not tail:
                break
            raise ParseError(f"cannot tokenize near {tail[:12]!r}")
        num, name, dstar, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif dstar is not None:
            tokens.append(("op", "^"))
        else:
            tokens.append(("op", op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _SparsePoly:
    """Exponent-map polynomial over a fixed variable tuple, parser internal."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = terms or {}

    @classmethod
    def const(cls, nvars, c):
        c = Fraction(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, idx):
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def add(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _SparsePoly(self.nvars, out)

    def neg(self):
        return _SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def mul(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _SparsePoly(self.nvars, out)

    def pow(self, n):
        result = _SparsePoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return result

    def as_constant(self):
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if all(k == 0 for k in e):
                return c
        return None


class _Parser:
    def __init__(self, tokens, varnames):
        self.tokens = tokens
        self.pos = 0
        self.varnames = list(varnames)
        self.nvars = len(self.varnames)
        self.index = {v: i for i, v in enumerate(self.varnames)}

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse(self):
        e = self.expr()
        kind, _ = self.peek()
        if kind != "end":
            raise ParseError("trailing input")
        return e

    def expr(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            t = self.term()
            acc = t if val == "+" else t.neg()
        else:
            acc = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                acc = acc.add(t if val == "+" else t.neg())
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    acc = acc.mul(rhs)
                else:
                    c = rhs.as_constant()
                    if c is None:
                        raise ParseError("division only by a nonzero constant")
                    if c == 0:
                        raise ParseError("division by zero")
                    acc = acc.mul(_SparsePoly.const(self.nvars, 1 / c))
            else:
                return acc

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            f = self.factor()
            return f if val == "+" else f.neg()
        atom = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, n = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            atom = atom.pow(n)
        return atom

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return _SparsePoly.const(self.nvars, val)
        if kind == "name":
            if val not in self.index:
                raise ParseError(
                    f"unknown variable {val!r}; declared: {', '.join(self.varnames)}"
                )
            return _SparsePoly.var(self.nvars, self.index[val])
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def parse_terms(text: str, varnames) -> dict[tuple, Fraction]:
    """Parse `text` over the declared variables; returns {exponent: coeff}."""
    if not text.strip():
        raise ParseError("empty input")
    p = _Parser(_tokenize(text), varnames)
    return p.parse().terms


def parse_poly(text: str, varnames=("x",)):
    """Parse into UniPoly (one variable), BiPoly (two), or MPoly (more)."""
    terms = parse_terms(text, varnames)
    n = len(varnames)
    if n == 1:
        from .unipoly import UniPoly

        if not terms:
            return UniPoly.zero()
        deg = max(e[0] for e in terms)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in terms.items():
            coeffs[e[0]] = c
        return UniPoly(coeffs)
    if n == 2:
        from .bipoly import BiPoly

        return BiPoly(terms)
    from .mpoly import MPoly

    return MPoly(n, terms)
