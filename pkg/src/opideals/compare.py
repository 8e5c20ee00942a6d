"""Three-valued big-O / little-o comparison of sequence expressions.

The symbolic path decides every comparison inside the grammar exactly, via
the total order on growth classes, and is never Unknown.  A numeric
fallback samples the ratio a_n/b_n on a geometric index grid; numeric
evidence can never prove an asymptotic statement, so the fallback answers
Yes/No only on unambiguous trends and returns Unknown otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .growth import class_big_o, class_little_o, profile
from .sequences import SeqExpr, eval_log, evaluate, support


class Outcome(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    """Evidence attached to a Yes verdict."""

    k: int | None = None
    m: int | None = None
    constant: Fraction | None = None
    window: tuple[int, int] | None = None
    note: str = ""


@dataclass(frozen=True)
class Certificate:
    """Evidence attached to a No verdict: where and how the bound fails."""

    window: tuple[int, int] | None = None
    note: str = ""
    samples: tuple[tuple[int, float], ...] = ()


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Witness | None = None
    certificate: Certificate | None = None
    reason: str | None = None

    def __post_init__(self):
        if self.outcome is Outcome.YES and self.witness is None:
            raise ValueError("Yes verdicts carry a witness")
        if self.outcome is Outcome.NO and self.certificate is None:
            raise ValueError("No verdicts carry a certificate")
        if self.outcome is Outcome.UNKNOWN and not self.reason:
            raise ValueError("Unknown verdicts carry a reason")

    @classmethod
    def yes(cls, witness: Witness) -> "Verdict":
        return cls(Outcome.YES, witness=witness)

    @classmethod
    def no(cls, certificate: Certificate) -> "Verdict":
        return cls(Outcome.NO, certificate=certificate)

    @classmethod
    def unknown(cls, reason: str) -> "Verdict":
        return cls(Outcome.UNKNOWN, reason=reason)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN


@dataclass(frozen=True)
class Settings:
    """Tunables for the numeric fallback and witness searches.

    The window is sampled on a geometric grid; a bounded ratio yields Yes
    with constant = twice the observed supremum, a monotone blow-up past
    ``divergence_threshold`` yields No, a ratio stuck above
    ``vanishing_threshold`` refutes little-o, and anything else is Unknown.
    """

    window_lo: int = 16
    window_hi: int = 1 << 20
    sample_count: int = 64
    divergence_threshold: float = 1e3
    vanishing_threshold: float = 1e-3
    bounded_slack: float = 1.05
    flat_floor: float = 0.9
    constant_factor: float = 2.0
    grid_k: int = 32
    grid_m: int = 32

    def window(self) -> tuple[int, int]:
        return (self.window_lo, self.window_hi)


DEFAULT_SETTINGS = Settings()


def sample_indices(lo: int, hi: int, count: int) -> list[int]:
    if hi < lo:
        lo, hi = hi, lo
    if lo < 1:
        lo = 1
    if count < 2 or lo == hi:
        return [hi]
    ratio = (hi / lo) ** (1.0 / (count - 1))
    out: set[int] = set()
    x = float(lo)
    for _ in range(count):
        out.add(min(hi, max(lo, round(x))))
        x *= ratio
    out.add(hi)
    return sorted(out)


def _ratio_log(a: SeqExpr, b: SeqExpr, n: int, both_zero: float) -> float:
    """log(a_n / b_n); ``both_zero`` supplies the 0/0 convention."""
    la, lb = eval_log(a, n), eval_log(b, n)
    if la == -math.inf and lb == -math.inf:
        return both_zero
    if lb == -math.inf:
        return math.inf
    if la == -math.inf:
        return -math.inf
    return la - lb


def observed_supremum(a: SeqExpr, b: SeqExpr, settings: Settings) -> float:
    """sup of a_n/b_n over a dense head plus the sampled window (as a float)."""
    hi = settings.window_hi
    head = min(hi, 1024)
    sup_a = support(a)
    if sup_a is not None:
        head = min(hi, max(head, sup_a))
    idx = list(range(1, head + 1))
    idx += sample_indices(settings.window_lo, hi, 2 * settings.sample_count)
    best = 0.0
    for n in sorted(set(idx)):
        r = _ratio_log(a, b, n, both_zero=-math.inf)
        if r == math.inf:
            return math.inf
        if r > -math.inf:
            best = max(best, math.exp(min(r, 700.0)))
    return best


def rational_ceiling(x: float) -> Fraction:
    """Smallest convenient rational upper bound for a positive float."""
    if x <= 0:
        return Fraction(1)
    if x == math.inf:
        raise ValueError("no rational bound for an infinite supremum")
    scaled = math.ceil(x * (1 << 24))
    return Fraction(scaled, 1 << 24)


def observed_constant(a: SeqExpr, b: SeqExpr, settings: Settings) -> Fraction:
    sup = observed_supremum(a, b, settings)
    return rational_ceiling(settings.constant_factor * max(sup, 1e-30))


def _tail_samples(a: SeqExpr, b: SeqExpr, settings: Settings, count: int = 4) -> tuple:
    ns = sample_indices(settings.window_lo, settings.window_hi, settings.sample_count)[-count:]
    out = []
    for n in ns:
        r = _ratio_log(a, b, n, both_zero=0.0)
        out.append((n, math.exp(min(r, 700.0)) if r > -math.inf else 0.0))
    return tuple(out)


def _symbolic(a: SeqExpr, b: SeqExpr, strict: bool, settings: Settings) -> Verdict:
    pa, pb = profile(a), profile(b)
    window = (1, settings.window_hi)
    if pa.is_zero:
        return Verdict.yes(Witness(constant=Fraction(1), window=window, note="left side is zero"))
    if pb.support is not None:
        if pa.support is None:
            return Verdict.no(
                Certificate(
                    window=(pb.support + 1, pb.support + 2),
                    note="right side vanishes beyond its support while the left side stays positive",
                )
            )
        if strict:
            # the tail ratio is 0/0, which never witnesses little-o
            return Verdict.no(
                Certificate(
                    window=(max(pa.support, pb.support), settings.window_hi),
                    note="both sides are finitely supported; the ratio does not vanish",
                )
            )
        if pa.support > pb.support:
            return Verdict.no(
                Certificate(
                    window=(pb.support + 1, pa.support),
                    note="left support exceeds right support",
                )
            )
        sup = 0.0
        for n in range(1, pa.support + 1):
            va, vb = evaluate(a, n), evaluate(b, n)
            sup = max(sup, float(va) / float(vb))
        return Verdict.yes(
            Witness(
                constant=rational_ceiling(settings.constant_factor * sup),
                window=(1, pa.support),
                note="finite supports compared pointwise",
            )
        )
    if pa.support is not None:
        if strict:
            return Verdict.yes(
                Witness(
                    constant=Fraction(1),
                    window=(pa.support + 1, settings.window_hi),
                    note="finitely supported left side vanishes under a positive class",
                )
            )
        return Verdict.yes(
            Witness(
                constant=observed_constant(a, b, settings),
                window=window,
                note="finitely supported left side",
            )
        )
    ok = class_little_o(pa.growth, pb.growth) if strict else class_big_o(pa.growth, pb.growth)
    if ok:
        return Verdict.yes(
            Witness(constant=observed_constant(a, b, settings), window=window, note="growth-class domination")
        )
    kind = "does not vanish" if strict and class_big_o(pa.growth, pb.growth) else "grows without bound"
    return Verdict.no(
        Certificate(
            window=settings.window(),
            note=f"growth classes refute the bound: the ratio {kind}",
            samples=_tail_samples(a, b, settings),
        )
    )


def _numeric(a: SeqExpr, b: SeqExpr, strict: bool, settings: Settings) -> Verdict:
    pa, pb = profile(a), profile(b)
    if pa.is_zero:
        return Verdict.yes(Witness(constant=Fraction(1), window=settings.window(), note="left side is zero"))
    if pb.support is not None and pa.support is None:
        return Verdict.no(
            Certificate(
                window=(pb.support + 1, pb.support + 2),
                note="right side eventually zero while the left side is not",
            )
        )
    ns = sample_indices(settings.window_lo, settings.window_hi, settings.sample_count)
    ratios: list[tuple[int, float]] = []
    for n in ns:
        r = _ratio_log(a, b, n, both_zero=0.0)
        if r == math.inf:
            return Verdict.no(
                Certificate(window=(n, n), note=f"right side vanishes at index {n} with nonzero left side")
            )
        ratios.append((n, math.exp(min(r, 700.0)) if r > -math.inf else 0.0))
    vals = [v for _, v in ratios]
    if len(vals) < 8:
        return Verdict.unknown("too few distinct sample indices in the window to read a trend")
    half = len(vals) // 2
    h1, h2 = vals[:half], vals[half:]
    tail = vals[-max(1, len(vals) // 4):]
    sup = max(vals)
    diverging = (
        vals[-1] >= settings.divergence_threshold
        and all(h2[i + 1] >= h2[i] * 0.999 for i in range(len(h2) - 1))
    )
    if diverging:
        return Verdict.no(
            Certificate(
                window=settings.window(),
                note="sampled ratio climbs monotonically past the divergence threshold",
                samples=tuple(ratios[-4:]),
            )
        )
    bounded = max(tail) <= max(max(h1), 1e-300) * settings.bounded_slack
    if not strict:
        if bounded:
            return Verdict.yes(
                Witness(
                    constant=rational_ceiling(settings.constant_factor * sup),
                    window=settings.window(),
                    note="sampled ratio shows no sustained growth",
                )
            )
        return Verdict.unknown(
            "sampled ratio still grows at the window end but has not crossed the divergence threshold"
        )
    if bounded and max(tail) < settings.vanishing_threshold:
        return Verdict.yes(
            Witness(
                constant=rational_ceiling(settings.constant_factor * sup),
                window=settings.window(),
                note="sampled ratio falls below the vanishing threshold",
            )
        )
    stabilized = (
        bounded
        and max(tail) >= settings.vanishing_threshold
        and vals[-1] >= settings.flat_floor * max(h2)
    )
    if stabilized:
        return Verdict.no(
            Certificate(
                window=settings.window(),
                note="sampled ratio stabilizes above the vanishing threshold",
                samples=tuple(ratios[-4:]),
            )
        )
    return Verdict.unknown("sampled ratio trend is inconclusive over the window")


def big_o(
    a: SeqExpr,
    b: SeqExpr,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    mode: str = "auto",
) -> Verdict:
    """Decide a_n = O(b_n).

    ``mode='auto'`` (or 'symbolic') uses the exact growth-class order and
    always returns Yes or No; ``mode='numeric'`` forces the sampled
    fallback, whose honest third answer is Unknown.
    """
    if mode == "numeric":
        return _numeric(a, b, strict=False, settings=settings)
    if mode in ("auto", "symbolic"):
        return _symbolic(a, b, strict=False, settings=settings)
    raise ValueError(f"unknown comparison mode: {mode!r}")


def little_o(
    a: SeqExpr,
    b: SeqExpr,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    mode: str = "auto",
) -> Verdict:
    """Decide a_n = o(b_n); strict analogue of :func:`big_o`."""
    if mode == "numeric":
        return _numeric(a, b, strict=True, settings=settings)
    if mode in ("auto", "symbolic"):
        return _symbolic(a, b, strict=True, settings=settings)
    raise ValueError(f"unknown comparison mode: {mode!r}")
