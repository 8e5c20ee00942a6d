"""Asymptotic normal forms for sequence expressions.

Every expression in the grammar is either eventually zero or is, up to
bounded constants, of the shape

    base^(n/root) * n^(-power) * log(n)^(-logpower)

with a rational base in (0, 1].  These classes are totally ordered under
eventual domination (compare rates first, then power, then log exponents),
which is what makes big-O and little-o questions decidable across the whole
grammar without touching a single limit numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .sequences import (
    Ampliate,
    Decimate,
    Finite,
    Geometric,
    Max,
    PowerLog,
    Product,
    Scale,
    SeqExpr,
    Sum,
    support,
)

ONE = Fraction(1)


@dataclass(frozen=True)
class GrowthClass:
    base: Fraction  # rate = base^(1/root), base in (0, 1]
    root: int
    power: Fraction
    logpower: Fraction

    @property
    def rate_is_one(self) -> bool:
        return self.base == 1


def _mk(base: Fraction, root: int, power: Fraction, logpower: Fraction) -> GrowthClass:
    if base == 1:
        return GrowthClass(ONE, 1, power, logpower)
    return GrowthClass(base, root, power, logpower)


@dataclass(frozen=True)
class Profile:
    """Support size (None = infinite) plus the growth class of the tail."""

    support: int | None
    growth: GrowthClass | None  # None exactly when support is finite

    @property
    def is_finite(self) -> bool:
        return self.support is not None

    @property
    def is_zero(self) -> bool:
        return self.support == 0


def rate_cmp(a: GrowthClass, b: GrowthClass) -> int:
    """Compare decay rates base^(1/root) exactly via cross powers."""
    if a.base == 1 and b.base == 1:
        return 0
    lhs = a.base**b.root
    rhs = b.base**a.root
    return (lhs > rhs) - (lhs < rhs)


def class_big_o(a: GrowthClass, b: GrowthClass) -> bool:
    """Does every sequence of class a satisfy a_n = O(b_n)?"""
    r = rate_cmp(a, b)
    if r:
        return r < 0
    if a.power != b.power:
        return a.power > b.power
    return a.logpower >= b.logpower


def class_little_o(a: GrowthClass, b: GrowthClass) -> bool:
    r = rate_cmp(a, b)
    if r:
        return r < 0
    if a.power != b.power:
        return a.power > b.power
    return a.logpower > b.logpower


def amp_class(c: GrowthClass, m: int) -> GrowthClass:
    """Class of the m-fold ampliation: the rate takes an m-th root."""
    if m == 1 or c.base == 1:
        return c
    return _mk(c.base, c.root * m, c.power, c.logpower)


def dec_class(c: GrowthClass, k: int) -> GrowthClass:
    if k == 1 or c.base == 1:
        return c
    g = gcd(k, c.root)
    return _mk(c.base ** (k // g), c.root // g, c.power, c.logpower)


def mul_class(a: GrowthClass, b: GrowthClass) -> GrowthClass:
    power = a.power + b.power
    logpower = a.logpower + b.logpower
    if a.base == 1 and b.base == 1:
        return _mk(ONE, 1, power, logpower)
    root = lcm(a.root, b.root)
    base = (a.base ** (root // a.root)) * (b.base ** (root // b.root))
    return _mk(base, root, power, logpower)


def dominant(a: GrowthClass, b: GrowthClass) -> GrowthClass:
    """The class of a pointwise sum or max: whichever decays more slowly."""
    if class_big_o(a, b):
        return b
    if class_big_o(b, a):
        return a
    raise AssertionError("growth classes are totally ordered")


@lru_cache(maxsize=None)
def profile(e: SeqExpr) -> Profile:
    if isinstance(e, PowerLog):
        return Profile(None, _mk(ONE, 1, e.p, e.q))
    if isinstance(e, Geometric):
        return Profile(None, _mk(e.ratio, 1, Fraction(0), Fraction(0)))
    if isinstance(e, Finite):
        return Profile(len(e.values), None)
    if isinstance(e, Scale):
        return profile(e.inner)
    if isinstance(e, Ampliate):
        p = profile(e.inner)
        if p.support is not None:
            return Profile(e.order * p.support, None)
        return Profile(None, amp_class(p.growth, e.order))
    if isinstance(e, Decimate):
        p = profile(e.inner)
        if p.support is not None:
            return Profile(p.support // e.step, None)
        return Profile(None, dec_class(p.growth, e.step))
    if isinstance(e, (Sum, Max)):
        pa, pb = profile(e.left), profile(e.right)
        if pa.support is not None and pb.support is not None:
            return Profile(max(pa.support, pb.support), None)
        if pa.support is not None:
            return pb
        if pb.support is not None:
            return pa
        return Profile(None, dominant(pa.growth, pb.growth))
    if isinstance(e, Product):
        pa, pb = profile(e.left), profile(e.right)
        if pa.support is not None or pb.support is not None:
            return Profile(support(e), None)
        return Profile(None, mul_class(pa.growth, pb.growth))
    raise TypeError(f"not a sequence expression: {e!r}")


def _rate_log(c: GrowthClass) -> float:
    """log(rate) as a float; 0.0 for rate one."""
    if c.base == 1:
        return 0.0
    return (math.log(c.base.numerator) - math.log(c.base.denominator)) / c.root


def min_ampliation_order(eta: Profile, gen: Profile, strict: bool) -> int | None:
    """Smallest m with eta dominated by the m-fold ampliation of gen.

    Non-strict domination is O, strict is o.  Returns None when no finite
    ampliation order works.  Finite supports are handled exactly; infinite
    classes reduce to exact rational rate comparisons, so the answer holds
    for the denoted sequences themselves, not for a sampled window.
    """
    if eta.is_zero:
        return 1
    if gen.is_zero:
        return None
    if gen.support is not None:
        if eta.support is None:
            return None
        if strict:
            # beyond both supports the ratio is 0/0; a finitely supported
            # sequence is never treated as o() of another one
            return None
        return -(-eta.support // gen.support)
    if eta.support is not None:
        return 1  # finitely supported = o(any strictly positive class)
    a, g = eta.growth, gen.growth
    if g.base == 1:
        if a.base != 1:
            return 1  # a genuinely geometric-type rate beats any power/log class
        ok = class_little_o(a, g) if strict else class_big_o(a, g)
        return 1 if ok else None
    if a.base == 1:
        return None  # rate-one class never dominated by ampliated sub-one rates
    # both rates below one: find the least m with rate(a) <=/< rate(g)^(1/m),
    # i.e. a.base^(g.root * m) <=/< g.base^(a.root); the left side strictly
    # decreases in m, so a float estimate plus a short exact scan suffices.
    target = float(a.root * _rate_log(g) / (g.root * _rate_log(a)))
    if target > 1e5:
        # rates absurdly close: the exact scan would need gigantic powers;
        # the float estimate is strict by a wide continuity margin
        return math.ceil(target) + 1
    start = max(1, math.floor(target) - 2)
    rhs = g.base**a.root
    step = a.base**g.root
    limit = start + 64
    m = start
    lhs = step**start
    while m <= limit:
        if lhs < rhs:
            return m
        if lhs == rhs:
            # rates tie exactly at this m; the power/log parts decide
            cmp_ok = (
                class_little_o(a, amp_class(g, m)) if strict else class_big_o(a, amp_class(g, m))
            )
            return m if cmp_ok else m + 1
        lhs *= step
        m += 1
    # enormous orders (possible for rates very close to one): trust the float
    # estimate with a safety step; the comparison is strict by continuity
    m = max(1, math.ceil(target) + 1)
    return m


def strictly_slower(c: GrowthClass) -> GrowthClass:
    """A class strictly above (slower-decaying than) c at every ampliation."""
    if c.base != 1:
        return _mk(ONE, 1, Fraction(1), Fraction(0))
    if c.power > 0:
        return _mk(ONE, 1, c.power / 2, Fraction(0))
    return _mk(ONE, 1, Fraction(0), c.logpower / 2)
