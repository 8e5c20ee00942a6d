"""Expression trees for non-negative, non-increasing null sequences.

Singular-value sequences of compact operators live in the cone c0* of
non-negative sequences decreasing to zero.  This module builds a closed
grammar of such sequences: power/log atoms n^(-p) * log(n+1)^(-q),
geometric atoms r^n, finitely supported sequences, and the combinators
(positive scaling, ampliation, decimation, pointwise sum/max/product)
under which the cone is closed.

Evaluation is exact rational wherever the value is rational (integer power
exponents, geometric atoms, finite sequences and their combinations) and
IEEE binary64 where logarithms or fractional powers force it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Union

RationalLike = Union[int, float, str, Fraction]
Value = Union[Fraction, float]


class DomainError(ValueError):
    """A construction would leave the cone of non-increasing null sequences."""


def as_fraction(x: RationalLike, what: str = "value") -> Fraction:
    try:
        if isinstance(x, float):
            return Fraction(x).limit_denominator(10**12) if not x.is_integer() else Fraction(int(x))
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError(f"{what} is not a rational number: {x!r}") from exc


class SeqExpr:
    """Base class for sequence expressions; all nodes are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class PowerLog(SeqExpr):
    """n |-> n^(-p) * log(n+1)^(-q).  Uses log(n+1) so every term is positive."""

    p: Fraction
    q: Fraction = Fraction(0)

    def __post_init__(self):
        if self.p < 0:
            raise DomainError(f"power exponent must be >= 0, got {self.p}")
        if self.p == 0 and self.q <= 0:
            raise DomainError("pow(0, q) needs q > 0 to decrease to zero")
        if self.q < 0 and not _decreasing_head(self.p, self.q):
            raise DomainError(
                f"pow({self.p},{self.q}) increases near n = 1; not a valid non-increasing sequence"
            )


@dataclass(frozen=True)
class Geometric(SeqExpr):
    """n |-> r^n with 0 < r < 1."""

    ratio: Fraction

    def __post_init__(self):
        if not (0 < self.ratio < 1):
            raise DomainError(f"geometric ratio must lie in (0,1), got {self.ratio}")


@dataclass(frozen=True)
class Finite(SeqExpr):
    """A finitely supported sequence; zero beyond its stored values.

    Trailing zeros are stripped, so ``len(values)`` is the support size and
    every stored entry is positive.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = self.values
        for a, b in zip(vals, vals[1:]):
            if a < b:
                raise DomainError(f"finite sequence must be non-increasing, got {vals}")
        if vals and vals[-1] < 0:
            raise DomainError("finite sequence entries must be non-negative")
        while vals and vals[-1] == 0:
            vals = vals[:-1]
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Scale(SeqExpr):
    factor: Fraction
    inner: SeqExpr

    def __post_init__(self):
        if self.factor <= 0:
            raise DomainError(f"scale factor must be positive, got {self.factor}")


@dataclass(frozen=True)
class Ampliate(SeqExpr):
    """Repeat every entry of the inner sequence ``order`` times."""

    order: int
    inner: SeqExpr

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("ampliation order must be a positive integer")


@dataclass(frozen=True)
class Decimate(SeqExpr):
    """n |-> inner(step * n)."""

    step: int
    inner: SeqExpr

    def __post_init__(self):
        if self.step < 1:
            raise DomainError("decimation step must be a positive integer")


@dataclass(frozen=True)
class Sum(SeqExpr):
    left: SeqExpr
    right: SeqExpr


@dataclass(frozen=True)
class Max(SeqExpr):
    left: SeqExpr
    right: SeqExpr


@dataclass(frozen=True)
class Product(SeqExpr):
    left: SeqExpr
    right: SeqExpr


def _decreasing_head(p: Fraction, q: Fraction) -> bool:
    # With q < 0 the log factor grows, so the head may increase.  Violations
    # are confined to p*log(n+1) < -q, and -q/p > ~1.5 already fails at n=1,
    # so the first 16 steps decide for every (p, q).
    fp, fq = float(p), float(q)
    vals = [math.exp(-fp * math.log(n) - fq * math.log(math.log(n + 1.0))) for n in range(1, 18)]
    return all(vals[i + 1] <= vals[i] * (1 + 1e-12) for i in range(len(vals) - 1))


# ---------------------------------------------------------------------------
# constructors (the public way to build expressions; they normalize)


def power_log(p: RationalLike, q: RationalLike = 0) -> SeqExpr:
    return PowerLog(as_fraction(p, "power exponent"), as_fraction(q, "log exponent"))


def geometric(ratio: RationalLike) -> SeqExpr:
    return Geometric(as_fraction(ratio, "geometric ratio"))


def finite(values) -> SeqExpr:
    return Finite(tuple(as_fraction(v, "finite entry") for v in values))


def scale(factor: RationalLike, e: SeqExpr) -> SeqExpr:
    c = as_fraction(factor, "scale factor")
    if c <= 0:
        raise DomainError(f"scale factor must be positive, got {c}")
    if c == 1:
        return e
    if isinstance(e, Scale):
        return Scale(c * e.factor, e.inner)
    if isinstance(e, Finite):
        return Finite(tuple(c * v for v in e.values))
    return Scale(c, e)


def ampliate(e: SeqExpr, m: int) -> SeqExpr:
    """m-fold ampliation: every entry repeated m times.

    Normalizes so that 1-fold ampliation is the identity and nested
    ampliations compose multiplicatively.
    """
    if m < 1:
        raise DomainError("ampliation order must be a positive integer")
    if m == 1:
        return e
    if isinstance(e, Ampliate):
        return Ampliate(m * e.order, e.inner)
    return Ampliate(m, e)


def decimate(e: SeqExpr, k: int) -> SeqExpr:
    """k-step decimation n |-> e(k*n); inverts ampliation by the same order."""
    if k < 1:
        raise DomainError("decimation step must be a positive integer")
    if k == 1:
        return e
    if isinstance(e, Decimate):
        return decimate(e.inner, k * e.step)
    if isinstance(e, Ampliate):
        g = gcd(k, e.order)
        k2, m2 = k // g, e.order // g
        if k2 == 1:
            return ampliate(e.inner, m2)
        if m2 == 1:
            return decimate(e.inner, k2)
        return Decimate(k2, ampliate(e.inner, m2))
    return Decimate(k, e)


def seq_sum(a: SeqExpr, b: SeqExpr) -> SeqExpr:
    return Sum(a, b)


def seq_max(a: SeqExpr, b: SeqExpr) -> SeqExpr:
    return Max(a, b)


def seq_product(a: SeqExpr, b: SeqExpr) -> SeqExpr:
    return Product(a, b)


ZERO = Finite(())


# ---------------------------------------------------------------------------
# evaluation


def evaluate(e: SeqExpr, n: int) -> Value:
    """Value of the denoted sequence at index n >= 1.

    Returns an exact ``Fraction`` whenever the value is rational, a float
    otherwise.
    """
    if n < 1:
        raise ValueError(f"sequence indices start at 1, got {n}")
    if isinstance(e, PowerLog):
        if e.q == 0 and e.p.denominator == 1:
            return Fraction(1, n ** e.p.numerator)
        return math.exp(-float(e.p) * math.log(n) - float(e.q) * math.log(math.log(n + 1.0)))
    if isinstance(e, Geometric):
        return e.ratio**n
    if isinstance(e, Finite):
        return e.values[n - 1] if n <= len(e.values) else Fraction(0)
    if isinstance(e, Scale):
        return e.factor * evaluate(e.inner, n)
    if isinstance(e, Ampliate):
        return evaluate(e.inner, -(-n // e.order))
    if isinstance(e, Decimate):
        return evaluate(e.inner, e.step * n)
    if isinstance(e, Sum):
        return evaluate(e.left, n) + evaluate(e.right, n)
    if isinstance(e, Max):
        return max(evaluate(e.left, n), evaluate(e.right, n))
    if isinstance(e, Product):
        return evaluate(e.left, n) * evaluate(e.right, n)
    raise TypeError(f"not a sequence expression: {e!r}")


def _log_fraction(v: Fraction) -> float:
    if v == 0:
        return -math.inf
    return math.log(v.numerator) - math.log(v.denominator)


def eval_log(e: SeqExpr, n: int) -> float:
    """Natural log of the value at index n (-inf for zero entries).

    Works in log space throughout, so geometric atoms at huge indices never
    touch big integers and never underflow.
    """
    if n < 1:
        raise ValueError(f"sequence indices start at 1, got {n}")
    if isinstance(e, PowerLog):
        return -float(e.p) * math.log(n) - float(e.q) * math.log(math.log(n + 1.0))
    if isinstance(e, Geometric):
        return n * _log_fraction(e.ratio)
    if isinstance(e, Finite):
        return _log_fraction(e.values[n - 1]) if n <= len(e.values) else -math.inf
    if isinstance(e, Scale):
        return _log_fraction(e.factor) + eval_log(e.inner, n)
    if isinstance(e, Ampliate):
        return eval_log(e.inner, -(-n // e.order))
    if isinstance(e, Decimate):
        return eval_log(e.inner, e.step * n)
    if isinstance(e, Sum):
        la, lb = eval_log(e.left, n), eval_log(e.right, n)
        hi, lo = max(la, lb), min(la, lb)
        if hi == -math.inf:
            return -math.inf
        return hi + math.log1p(math.exp(lo - hi)) if lo > -math.inf else hi
    if isinstance(e, Max):
        return max(eval_log(e.left, n), eval_log(e.right, n))
    if isinstance(e, Product):
        la, lb = eval_log(e.left, n), eval_log(e.right, n)
        if -math.inf in (la, lb):
            return -math.inf
        return la + lb
    raise TypeError(f"not a sequence expression: {e!r}")


def support(e: SeqExpr) -> int | None:
    """Number of nonzero entries, or None when the sequence never vanishes."""
    if isinstance(e, (PowerLog, Geometric)):
        return None
    if isinstance(e, Finite):
        return len(e.values)
    if isinstance(e, Scale):
        return support(e.inner)
    if isinstance(e, Ampliate):
        s = support(e.inner)
        return None if s is None else e.order * s
    if isinstance(e, Decimate):
        s = support(e.inner)
        return None if s is None else s // e.step
    if isinstance(e, (Sum, Max)):
        sa, sb = support(e.left), support(e.right)
        return None if sa is None or sb is None else max(sa, sb)
    if isinstance(e, Product):
        sa, sb = support(e.left), support(e.right)
        if sa is None:
            return sb
        if sb is None:
            return sa
        return min(sa, sb)
    raise TypeError(f"not a sequence expression: {e!r}")


def is_zero(e: SeqExpr) -> bool:
    return support(e) == 0


def value_stream(e: SeqExpr) -> Iterator[Value]:
    """Yield e(1), e(2), ... with amortized O(1) work per step.

    Geometric atoms advance by one multiplication per index, which keeps
    dense exact scans over large windows affordable.
    """
    if isinstance(e, PowerLog):
        if e.q == 0 and e.p.denominator == 1:
            k = e.p.numerator
            return (Fraction(1, n**k) for n in itertools.count(1))
        return (evaluate(e, n) for n in itertools.count(1))
    if isinstance(e, Geometric):

        def geo() -> Iterator[Value]:
            v = e.ratio
            while True:
                yield v
                v *= e.ratio

        return geo()
    if isinstance(e, Finite):
        return itertools.chain(iter(e.values), itertools.repeat(Fraction(0)))
    if isinstance(e, Scale):
        return (e.factor * v for v in value_stream(e.inner))
    if isinstance(e, Ampliate):
        inner = value_stream(e.inner)
        return itertools.chain.from_iterable(itertools.repeat(v, e.order) for v in inner)
    if isinstance(e, Decimate):
        return itertools.islice(value_stream(e.inner), e.step - 1, None, e.step)
    if isinstance(e, Sum):
        return (a + b for a, b in zip(value_stream(e.left), value_stream(e.right)))
    if isinstance(e, Max):
        return (max(a, b) for a, b in zip(value_stream(e.left), value_stream(e.right)))
    if isinstance(e, Product):
        return (a * b for a, b in zip(value_stream(e.left), value_stream(e.right)))
    raise TypeError(f"not a sequence expression: {e!r}")


def head(e: SeqExpr, count: int) -> list[Value]:
    return list(itertools.islice(value_stream(e), count))
