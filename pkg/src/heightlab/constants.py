"""Explicit constants as expression trees with certified evaluation.

Each named constant is built as a small DAG of arithmetic nodes and
evaluated two ways: exactly over the rationals when the tree allows it,
and as an outward-rounded big-float interval otherwise.  Interval
endpoints carry arbitrary-size exponents, so quantities like m^(20 m 8^g)
are representable directly; only their base-10 logarithms are printed.

Evaluation cost grows with the magnitude of exponents, not with the
printed size: anything whose binary exponent would itself need more than
about 2^27 bits to store is refused with OverflowError rather than
silently crawling.  In practice the full composition chains evaluate in
seconds for g <= 2 and are construction-only beyond that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import iv, mp, mpf

DEFAULT_PREC = 256
# storing exp(x) needs ~|x|/log 2 bits of exponent; refuse past this
_EXP_MAG_CAP = 1 << 27
# exact integer powers larger than this many bits fall back to intervals
_EXACT_BITS_CAP = 4_000_000

_KINDS = {"constant", "variable", "sum", "product", "quotient", "power",
          "exponential", "logarithm", "factorial", "max"}


def _as_expr(x) -> "BoundExpr":
    if isinstance(x, BoundExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return BoundExpr.constant(x)
    if isinstance(x, float):
        return BoundExpr.constant(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} as an expression")


class BoundExpr:
    """One node of an expression DAG.

    Nodes are immutable by convention and shared freely; evaluation
    memoizes on node identity, so a shared subterm is computed once.
    """

    __slots__ = ("kind", "children", "value", "name")

    def __init__(self, kind: str, children=(), value=None, name=None):
        if kind not in _KINDS:
            raise ValueError(f"unknown node kind {kind!r}")
        self.kind = kind
        self.children = tuple(children)
        self.value = value
        self.name = name

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value) -> "BoundExpr":
        return cls("constant", value=Fraction(value))

    @classmethod
    def variable(cls, name: str) -> "BoundExpr":
        return cls("variable", name=str(name))

    @classmethod
    def sum(cls, *children) -> "BoundExpr":
        return cls("sum", [_as_expr(c) for c in children])

    @classmethod
    def product(cls, *children) -> "BoundExpr":
        return cls("product", [_as_expr(c) for c in children])

    @classmethod
    def quotient(cls, num, den) -> "BoundExpr":
        return cls("quotient", [_as_expr(num), _as_expr(den)])

    @classmethod
    def power(cls, base, exponent) -> "BoundExpr":
        return cls("power", [_as_expr(base), _as_expr(exponent)])

    @classmethod
    def exp(cls, x) -> "BoundExpr":
        return cls("exponential", [_as_expr(x)])

    @classmethod
    def log(cls, x) -> "BoundExpr":
        return cls("logarithm", [_as_expr(x)])

    @classmethod
    def factorial(cls, x) -> "BoundExpr":
        return cls("factorial", [_as_expr(x)])

    @classmethod
    def max(cls, *children) -> "BoundExpr":
        if not children:
            raise ValueError("max needs at least one child")
        return cls("max", [_as_expr(c) for c in children])

    # -- operator sugar ----------------------------------------------

    def __add__(self, other):
        return BoundExpr.sum(self, other)

    def __radd__(self, other):
        return BoundExpr.sum(other, self)

    def __mul__(self, other):
        return BoundExpr.product(self, other)

    def __rmul__(self, other):
        return BoundExpr.product(other, self)

    def __truediv__(self, other):
        return BoundExpr.quotient(self, other)

    def __rtruediv__(self, other):
        return BoundExpr.quotient(other, self)

    # -- inspection ---------------------------------------------------

    def free_variables(self) -> set:
        out = set()
        stack = [self]
        seen = set()
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            if node.kind == "variable":
                out.add(node.name)
            stack.extend(node.children)
        return out

    def to_json(self):
        if self.kind == "constant":
            v = self.value
            return {"node": "constant",
                    "value": str(v.numerator) if v.denominator == 1
                    else f"{v.numerator}/{v.denominator}"}
        if self.kind == "variable":
            return {"node": "variable", "name": self.name}
        return {"node": self.kind,
                "children": [c.to_json() for c in self.children]}

    def json_dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_string(self) -> str:
        return _render(self, 0)

    def __repr__(self):
        s = self.to_string()
        if len(s) > 120:
            s = s[:117] + "..."
        return f"BoundExpr({s})"

    # -- evaluation ---------------------------------------------------

    def exact(self, env=None) -> Optional[Fraction]:
        """Exact rational value, or None where the tree leaves the
        rationals (logs, huge powers, unbound variables)."""
        return _exact(self, env or {}, {})

    def interval(self, prec: int = DEFAULT_PREC, env=None):
        """Outward-rounded interval enclosure as an iv.mpf."""
        saved = iv.prec
        try:
            iv.prec = prec
            return _interval(self, env or {}, {}, {})
        finally:
            iv.prec = saved

    def log10_interval(self, prec: int = DEFAULT_PREC, env=None):
        saved = iv.prec
        try:
            iv.prec = prec
            v = _interval(self, env or {}, {}, {})
            if not v.a > 0:
                raise ValueError("log10 needs a certainly-positive value")
            return iv.log(v) / iv.log(10)
        finally:
            iv.prec = saved

    def log10_str(self, prec: int = DEFAULT_PREC, env=None,
                  digits: int = 8) -> str:
        w = self.log10_interval(prec, env)
        return mp.nstr(w.mid, digits)


def _render(node: BoundExpr, parent_prec: int) -> str:
    # precedence: sum/max 1, product/quotient 2, power 3, atoms 4
    if node.kind == "constant":
        v = node.value
        s = str(v.numerator) if v.denominator == 1 \
            else f"{v.numerator}/{v.denominator}"
        return f"({s})" if v < 0 and parent_prec > 1 else s
    if node.kind == "variable":
        return node.name
    if node.kind == "logarithm":
        return f"log({_render(node.children[0], 0)})"
    if node.kind == "exponential":
        return f"exp({_render(node.children[0], 0)})"
    if node.kind == "factorial":
        inner = _render(node.children[0], 4)
        return f"{inner}!"
    if node.kind == "max":
        return "max(" + ", ".join(_render(c, 0) for c in node.children) + ")"
    if node.kind == "power":
        s = (f"{_render(node.children[0], 4)}^"
             f"{_render(node.children[1], 4)}")
        return f"({s})" if parent_prec >= 3 else s
    if node.kind == "quotient":
        s = f"{_render(node.children[0], 2)} / {_render(node.children[1], 3)}"
        return f"({s})" if parent_prec > 2 else s
    if node.kind == "product":
        s = " * ".join(_render(c, 2) for c in node.children)
        return f"({s})" if parent_prec > 2 else s
    s = " + ".join(_render(c, 1) for c in node.children)
    return f"({s})" if parent_prec > 1 else s


def _exact(node: BoundExpr, env, memo) -> Optional[Fraction]:
    key = id(node)
    if key in memo:
        return memo[key]
    res: Optional[Fraction] = None
    k = node.kind
    if k == "constant":
        res = node.value
    elif k == "variable":
        v = env.get(node.name)
        if isinstance(v, BoundExpr):
            res = _exact(v, env, memo)
        elif isinstance(v, (int, Fraction)):
            res = Fraction(v)
        elif isinstance(v, float):
            res = Fraction(v)
    elif k in ("sum", "product", "max"):
        vals = [_exact(c, env, memo) for c in node.children]
        if all(v is not None for v in vals):
            if k == "sum":
                res = sum(vals, Fraction(0))
            elif k == "product":
                res = math.prod(vals, start=Fraction(1))
            else:
                res = max(vals)
    elif k == "quotient":
        num = _exact(node.children[0], env, memo)
        den = _exact(node.children[1], env, memo)
        if num is not None and den is not None:
            if den == 0:
                raise ZeroDivisionError("exact denominator is zero")
            res = num / den
    elif k == "power":
        base = _exact(node.children[0], env, memo)
        ex = _exact(node.children[1], env, memo)
        if base is not None and ex is not None and ex.denominator == 1:
            n = ex.numerator
            size = (base.numerator.bit_length()
                    + base.denominator.bit_length() + 1)
            if abs(n) * size <= _EXACT_BITS_CAP:
                if n >= 0:
                    res = base ** n
                elif base != 0:
                    res = base ** n
                else:
                    raise ZeroDivisionError("0 to a negative power")
    elif k == "factorial":
        v = _exact(node.children[0], env, memo)
        if v is not None and v.denominator == 1 and 0 <= v <= 200_000:
            res = Fraction(math.factorial(v.numerator))
    # logarithm and exponential never evaluate exactly here
    memo[key] = res
    return res


def _iv_from_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _guard_exp_arg(x):
    for end in (x.a, x.b):
        if end != 0 and mp.mag(end) > _EXP_MAG_CAP:
            raise OverflowError(
                "exponential argument too large: the result's binary "
                "exponent alone would exceed the storage cap")


def _iv_exp(x):
    _guard_exp_arg(x)
    return iv.exp(x)


def _interval(node: BoundExpr, env, memo, exact_memo):
    key = id(node)
    if key in memo:
        return memo[key]
    k = node.kind
    if k == "constant":
        res = _iv_from_fraction(node.value)
    elif k == "variable":
        if node.name not in env:
            missing = ", ".join(sorted(node.free_variables()))
            raise ValueError(f"unbound variables: {missing}")
        v = env[node.name]
        if isinstance(v, BoundExpr):
            res = _interval(v, env, memo, exact_memo)
        elif isinstance(v, (int, Fraction)):
            res = _iv_from_fraction(Fraction(v))
        elif isinstance(v, float):
            res = _iv_from_fraction(Fraction(v))
        else:
            res = iv.mpf(v)
    elif k == "sum":
        res = iv.mpf(0)
        for c in node.children:
            res = res + _interval(c, env, memo, exact_memo)
    elif k == "product":
        res = iv.mpf(1)
        for c in node.children:
            res = res * _interval(c, env, memo, exact_memo)
    elif k == "quotient":
        num = _interval(node.children[0], env, memo, exact_memo)
        den = _interval(node.children[1], env, memo, exact_memo)
        if den.a <= 0 <= den.b:
            raise ZeroDivisionError("denominator interval contains zero")
        res = num / den
    elif k == "max":
        vals = [_interval(c, env, memo, exact_memo) for c in node.children]
        lo = max(v.a for v in vals)
        hi = max(v.b for v in vals)
        res = iv.mpf([lo, hi])
    elif k == "logarithm":
        v = _interval(node.children[0], env, memo, exact_memo)
        if not v.a > 0:
            raise ValueError("logarithm of a not-certainly-positive value")
        res = iv.log(v)
    elif k == "exponential":
        res = _iv_exp(_interval(node.children[0], env, memo, exact_memo))
    elif k == "factorial":
        v = _exact(node.children[0], env, exact_memo)
        if v is None or v.denominator != 1 or v < 0:
            raise ValueError("factorial needs an exact nonnegative integer")
        n = v.numerator
        if n > 500_000:
            raise OverflowError("factorial argument beyond the cap")
        res = _iv_from_fraction(Fraction(math.factorial(n)))
    elif k == "power":
        base = _interval(node.children[0], env, memo, exact_memo)
        ex = _exact(node.children[1], env, exact_memo)
        if ex is not None and ex.denominator == 1:
            n = ex.numerator
            if n == 0:
                res = iv.mpf(1)
            elif abs(n).bit_length() <= 32:
                if n < 0 and base.a <= 0 <= base.b:
                    raise ZeroDivisionError("negative power of an interval "
                                            "containing zero")
                res = base ** n
            else:
                if not base.a > 0:
                    raise ValueError("huge powers need a certainly-positive "
                                     "base")
                res = _iv_exp(iv.mpf(n) * iv.log(base))
        else:
            if not base.a > 0:
                raise ValueError("non-integer powers need a "
                                 "certainly-positive base")
            e_iv = _interval(node.children[1], env, memo, exact_memo)
            res = _iv_exp(e_iv * iv.log(base))
    else:  # pragma: no cover
        raise AssertionError(k)
    memo[key] = res
    return res


# ---------------------------------------------------------------------------
# named constants


def genus_cap(g: int) -> int:
    """Upper bound for the auxiliary genus: (16^g g!)^2 + 16^g g!."""
    if g < 1:
        raise ValueError("g >= 1")
    t = 16 ** g * math.factorial(g)
    return t * t + t


def theta_ambient(g: int) -> tuple:
    """(ambient dimension, degree) of the fourth-power theta embedding."""
    if g < 1:
        raise ValueError("g >= 1")
    return 16 ** g - 1, 16 ** g * math.factorial(g)


def _K_const(g: int) -> float:
    return 7.0 * 4 ** (2 * g) * math.log(4 ** (2 * g))


def bost_david_gap(g: int, h: float) -> float:
    """Displayed comparison gap 7*4^(2g)*log(4^(2g)) * log(max(1,h)+2)."""
    if g < 1:
        raise ValueError("g >= 1")
    if h < 0:
        raise ValueError("h >= 0")
    return _K_const(g) * math.log(max(1.0, h) + 2.0)


def derive_c31(g: int) -> float:
    """sup over h >= 0 of 2*bost_david_gap(g, h) - h.

    The gap function 2K log(max(1,h)+2) - h is concave for h >= 1 with
    critical point h* = 2K - 2, giving the closed form 2K log(2K)-2K+2;
    K is large enough that h* > 1 for every g >= 1.
    """
    if g < 1:
        raise ValueError("g >= 1")
    K = _K_const(g)
    return 2 * K * math.log(2 * K) - 2 * K + 2


def c31_sweep_ok(g: int, h_max: float = 1e10, samples: int = 160) -> bool:
    """Numerical check that the closed form dominates the swept gap."""
    c = derive_c31(g)
    hs = [0.0] + [math.exp(math.log(h_max) * i / (samples - 1))
                  for i in range(samples)]
    return all(2 * bost_david_gap(g, h) - h <= c + 1e-6 * max(1.0, abs(c))
               for h in hs)


def c31_expr(g) -> BoundExpr:
    """c31 as an expression; g may be an int or an expression node,
    which is what the composition chains need for huge auxiliary genera.
    """
    ge = _as_expr(g)
    four_2g = BoundExpr.power(4, BoundExpr.product(2, ge))
    K = BoundExpr.product(7, four_2g, BoundExpr.log(four_2g))
    twoK = BoundExpr.product(2, K)
    return BoundExpr.sum(BoundExpr.product(twoK, BoundExpr.log(twoK)),
                         BoundExpr.product(-1, twoK),
                         BoundExpr.constant(2))


def remond_theta_expr(g0: int, degC: int, N: int) -> BoundExpr:
    """Coefficient (2 degC+1)^2 * (log(N+1))^4 * m^(20 m 8^g0)."""
    m = 4 * g0 + 2 * degC - 2
    if m < 1:
        raise ValueError("need 4*g0 + 2*degC - 2 >= 1")
    exponent = BoundExpr.product(20, m, BoundExpr.power(8, g0))
    return BoundExpr.product(
        BoundExpr.power(2 * degC + 1, 2),
        BoundExpr.power(BoundExpr.log(N + 1), 4),
        BoundExpr.power(m, exponent),
    )


def remond_theta_log(g0: int, degC: int, N: int,
                     prec: int = DEFAULT_PREC) -> float:
    """log10 of the coefficient above; overflows to OverflowError when
    the logarithm itself leaves float range."""
    w = remond_theta_expr(g0, degC, N).log10_interval(prec)
    return float(w.mid)


def c9(g: int) -> int:
    """4^(3g+1) g! (g+1)."""
    if g < 1:
        raise ValueError("g >= 1")
    return 4 ** (3 * g + 1) * math.factorial(g) * (g + 1)


def c7_chain(g: int) -> BoundExpr:
    """c9(g) * (1 + c31(g)): valid since c9(h + c31 + 1) never exceeds
    c9 (1 + c31)(h + 1) for h >= 0."""
    return BoundExpr.product(c9(g), BoundExpr.sum(1, c31_expr(g)))


def c10_chain(g0: int, degC: int, N: int) -> BoundExpr:
    """3 * (intersection coefficient) + c31(max(g0, 1))."""
    return BoundExpr.sum(
        BoundExpr.product(3, remond_theta_expr(g0, degC, N)),
        c31_expr(max(g0, 1)),
    )


def c13_chain(g: int, g0: int, degC: int, N: int) -> BoundExpr:
    return BoundExpr.product(c7_chain(g), c10_chain(g0, degC, N))


def C3_chain(g: int) -> BoundExpr:
    """Coefficient making the Jacobian height bound independent of the
    auxiliary data: evaluated at the capped parameters g0 = genus_cap(g),
    degC = degA, N = 16^g - 1, and of the form max(c13, a + 2b) where
    c14 = a + b*(mS+2) splits into its mS-free and mS-linear parts and
    mS+2 <= 2(mS+1) eliminates the surface term.
    """
    if g < 1:
        raise ValueError("g >= 1")
    N, degA = theta_ambient(g)
    g0 = genus_cap(g)
    c7 = c7_chain(g)
    c10 = c10_chain(g0, degA, N)
    c13 = BoundExpr.product(c7, c10)
    a = BoundExpr.product(c10, BoundExpr.sum(c7, 1))
    b = BoundExpr.product(c10, g, degA, N + 1)
    return BoundExpr.max(c13, BoundExpr.sum(a, BoundExpr.product(2, b)))


def theorem14_compose(c0, c1, c2_at_cap, c3, c4, g: int,
                      mS: float) -> tuple:
    """(c5, c6) for an admissible family with the given data.

    c5 = c0 c1 c3 / C3(g); c6 = c2_at_cap c3 / C3(g) + c4 / C3(g) + mS+1.
    The caller evaluates c2 at the capped genus themselves; it enters
    here as a plain value.
    """
    C3 = C3_chain(g)
    c5 = BoundExpr.quotient(BoundExpr.product(c0, c1, c3), C3)
    c6 = BoundExpr.sum(
        BoundExpr.quotient(BoundExpr.product(c2_at_cap, c3), C3),
        BoundExpr.quotient(_as_expr(c4), C3),
        _as_expr(mS),
        BoundExpr.constant(1),
    )
    return c5, c6


@dataclass(frozen=True)
class ZarhinRecord:
    dimension: int
    height_factor: int
    field_degree_log10: float


def zarhin_factors(g: int) -> ZarhinRecord:
    """(A x dual)^4 data: dimension 8g, height factor 8, and the log10
    of the 48^(256 g^2) bound on the splitting-field degree."""
    if g < 1:
        raise ValueError("g >= 1")
    return ZarhinRecord(dimension=8 * g, height_factor=8,
                        field_degree_log10=256 * g * g * math.log10(48))


def torsion_degree(N: int, g: int) -> float:
    """log10 of the N-torsion field-degree bound N^(4 g^2)."""
    if N < 1 or g < 1:
        raise ValueError("N, g >= 1")
    return 4 * g * g * math.log10(N)


def faltbad_coefficient(g: int, K_degree: int = 1) -> BoundExpr:
    """c5(8g) / (8 * 48^(256 g^2) * [K:Q]), with c5 at the blown-up
    dimension left as a free variable for the caller to bind."""
    if g < 1 or K_degree < 1:
        raise ValueError("g, K_degree >= 1")
    c5_var = BoundExpr.variable(f"c5({8 * g})")
    den = BoundExpr.product(8, BoundExpr.power(48, 256 * g * g), K_degree)
    return BoundExpr.quotient(c5_var, den)


def honda_compose(g: int, hF, mS, c20, M_degree: int = 1) -> BoundExpr:
    """c20 evaluated at (genus_cap(g), C3(g) * (hF + mS + 1)), times the
    optional field degree; c20 is a caller-supplied two-argument map
    returning a number or an expression."""
    if g < 1 or M_degree < 1:
        raise ValueError("g >= 1 and M_degree >= 1")
    inner = BoundExpr.product(C3_chain(g),
                              BoundExpr.sum(_as_expr(hF), _as_expr(mS), 1))
    out = _as_expr(c20(genus_cap(g), inner))
    if M_degree != 1:
        out = BoundExpr.product(out, M_degree)
    return out


# ---------------------------------------------------------------------------
# reporting


def constants_report(g: int, prec: int = DEFAULT_PREC) -> list:
    """Rows (name, display, trace) for the main constants at genus g."""
    N, degA = theta_ambient(g)
    rows = [
        ("C2", str(genus_cap(g)), "(16^g g!)^2 + 16^g g!"),
        ("theta_N", str(N), "16^g - 1"),
        ("theta_degA", str(degA), "16^g g!"),
        ("c9", str(c9(g)), "4^(3g+1) g! (g+1)"),
        ("c31", f"{derive_c31(g):.10g}", "2K log(2K) - 2K + 2"),
        ("zarhin_log10", f"{zarhin_factors(g).field_degree_log10:.10g}",
         "256 g^2 log10(48)"),
    ]
    c7 = c7_chain(g)
    rows.append(("c7_log10", c7.log10_str(prec), c7.to_string()))
    C3 = C3_chain(g)
    try:
        disp = C3.log10_str(prec)
    except OverflowError:
        disp = "construction only (beyond the evaluation magnitude cap)"
    trace = C3.to_string()
    if len(trace) > 400:
        trace = trace[:397] + "..."
    rows.append(("C3_log10", disp, trace))
    return rows
