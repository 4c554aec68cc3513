"""Sparse multivariate polynomials over the rationals.

Used for homogeneous forms in a handful of variables (projective ambients
up to P^3 and their dual coordinates).  Exponents are tuples, coefficients
Fraction.  Includes a vectorized numpy evaluator for Monte Carlo work.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

import numpy as np


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] = ()):
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = Fraction(c)
            if not c:
                continue
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError("exponent arity mismatch")
            clean[e] = c
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def parse(cls, text: str, varnames) -> "MPoly":
        from .polyparse import parse_terms

        return cls(len(varnames), parse_terms(text, varnames))

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "MPoly":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs) -> "MPoly":
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(n, terms)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient_vector(self) -> list[Fraction]:
        return [self.terms[e] for e in sorted(self.terms)]

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.nvars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("arity mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def partial(self, idx: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                e2 = list(e)
                k = e2[idx]
                e2[idx] -= 1
                out[tuple(e2)] = c * k
        return MPoly(self.nvars, out)

    def evaluate(self, point):
        acc = Fraction(0) if all(isinstance(p, (int, Fraction)) for p in point) else 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def substitute(self, idx: int, replacement: "MPoly") -> "MPoly":
        """Replace variable idx by a polynomial (same arity)."""
        acc = MPoly(self.nvars)
        for e, c in self.terms.items():
            term = MPoly.constant(self.nvars, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                base = replacement if i == idx else MPoly.variable(self.nvars, i)
                term = term * base ** k
            acc = acc + term
        return acc

    def drop_variable(self, idx: int) -> "MPoly":
        """Remove a variable that no longer occurs; reindexes the others."""
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                raise ValueError("variable still occurs")
            out[e[:idx] + e[idx + 1:]] = c
        return MPoly(self.nvars - 1, out)

    def compose(self, args: list["MPoly"]) -> "MPoly":
        """Full substitution x_i -> args[i]; args share some common arity."""
        if len(args) != self.nvars:
            raise ValueError("need one argument per variable")
        n = args[0].nvars
        acc = MPoly(n)
        pow_cache: dict[tuple[int, int], MPoly] = {}

        def powered(i, k):
            key = (i, k)
            if key not in pow_cache:
                pow_cache[key] = args[i] ** k
            return pow_cache[key]

        for e, c in self.terms.items():
            term = MPoly.constant(n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * powered(i, k)
            acc = acc + term
        return acc

    # -- canonical form ----------------------------------------------------

    def content(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_integer(self) -> "MPoly":
        """Integer coefficients, content 1, lexicographically-leading term positive."""
        if self.is_zero:
            return self
        c = self.content()
        p = self * (1 / c)
        if p.terms[max(p.terms)] < 0:
            p = -p
        return p

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- numeric evaluation ------------------------------------------------

    def numpy_evaluator(self):
        """Returns f(points) for `points` of shape (samples, nvars).

        Coefficients go to float64; exponent products are accumulated per
        distinct (variable, power) pair.  Fine for the desk-scale forms
        this package handles (tens of terms).
        """
        exps = np.array(sorted(self.terms), dtype=np.int64)
        coeffs = np.array([float(self.terms[tuple(e)]) for e in exps])

        def ev(points):
            acc = np.zeros(points.shape[0], dtype=points.dtype)
            for e, c in zip(exps, coeffs):
                term = np.full(points.shape[0], c, dtype=points.dtype)
                for i, k in enumerate(e):
                    if k:
                        term = term * points[:, i] ** int(k)
                acc = acc + term
            return acc

        return ev

    def to_string(self, varnames=None) -> str:
        if self.is_zero:
            return "0"
        if varnames is None:
            varnames = [f"x{i}" for i in range(self.nvars)]

        def key(e):
            return (-sum(e), tuple(-k for k in e))

        parts = []
        for e in sorted(self.terms, key=key):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            pieces = []
            for i, k in enumerate(e):
                if k:
                    pieces.append(varnames[i] if k == 1 else f"{varnames[i]}^{k}")
            if not pieces or mag != 1:
                pieces.insert(0, str(mag))
            parts.append((sign, "*".join(pieces)))
        sign0, body0 = parts[0]
        s = body0 if sign0 == "+" else "-" + body0
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"MPoly({self.to_string()})"
