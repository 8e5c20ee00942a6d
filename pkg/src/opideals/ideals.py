"""Ideals of B(H) through their characteristic sets.

An ideal of the bounded operators on a separable Hilbert space is captured
exactly by the set of non-increasing null sequences that occur as singular
values of its members.  On that coordinate system, membership in a
principal ideal is a big-O question against an ampliated generator,
products of principal ideals multiply their generators pointwise, the sum
of principal ideals is generated by the pointwise sum, the compacts have
every null sequence, and the finite-rank ideal has exactly the finitely
supported ones.

Every description built from those pieces reduces to one of five normal
forms: the zero ideal, the finite-rank ideal, the compacts, a principal
ideal, or a soft interior (a principal ideal multiplied by the compacts,
whose membership test is little-o instead of big-O).

``is_soft`` decides the collapse question: the principal ideal generated by
S equals its product with J exactly when s(S) is dominated by an ampliation
of itself times some member of J.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .compare import (
    DEFAULT_SETTINGS,
    Certificate,
    Settings,
    Verdict,
    Witness,
    big_o,
    little_o,
    observed_constant,
)
from .growth import min_ampliation_order, profile
from .sequences import (
    SeqExpr,
    ampliate,
    decimate,
    finite,
    power_log,
    seq_product,
    seq_sum,
    support,
)


class PreconditionError(ValueError):
    """An operation was applied outside its stated hypotheses."""


class IdealDesc:
    """Base class for ideal descriptions; immutable like sequence expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class Principal(IdealDesc):
    """The smallest ideal containing an operator with the given singular values."""

    generator: SeqExpr


@dataclass(frozen=True)
class KH(IdealDesc):
    """The compact operators: every null sequence belongs."""


@dataclass(frozen=True)
class FH(IdealDesc):
    """The finite-rank operators: exactly the finitely supported sequences."""


@dataclass(frozen=True)
class ZeroIdeal(IdealDesc):
    """The zero ideal (reduced form of a principal ideal with zero generator)."""


@dataclass(frozen=True)
class SoftInterior(IdealDesc):
    """Reduced form of Principal(g) * KH; membership is little-o against g."""

    generator: SeqExpr


@dataclass(frozen=True)
class IdealProduct(IdealDesc):
    left: IdealDesc
    right: IdealDesc


@dataclass(frozen=True)
class IdealSum(IdealDesc):
    left: IdealDesc
    right: IdealDesc


@dataclass(frozen=True)
class IdealPower(IdealDesc):
    base: IdealDesc
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("ideal powers need a positive integer exponent")


@dataclass(frozen=True)
class SoftnessResult:
    """Outcome of the softness decision with its structured witness.

    A Yes verdict carries the ampliation order ``k`` applied to the
    generator's own singular values, the order ``m`` applied to the ideal's
    generator (when J is principal-like), and the witness sequence
    ``t_witness``, which itself belongs to J.
    """

    verdict: Verdict
    k: int | None = None
    m: int | None = None
    t_witness: SeqExpr | None = None


_REDUCED = (Principal, KH, FH, ZeroIdeal, SoftInterior)


def reduce_ideal(desc: IdealDesc) -> IdealDesc:
    """Rewrite a description into one of the five normal forms.

    Products of principal ideals multiply generators; a product with the
    compacts becomes a soft interior; sums collapse onto whichever summand
    dominates (the sum of two principal ideals is principal, generated by
    the pointwise sum).  Idempotent on its own output.
    """
    if isinstance(desc, Principal):
        if support(desc.generator) == 0:
            return ZeroIdeal()
        return desc
    if isinstance(desc, SoftInterior):
        s = support(desc.generator)
        if s == 0:
            return ZeroIdeal()
        if s is not None:
            return FH()  # F(H) absorbs: a finite-rank generator times the compacts
        return desc
    if isinstance(desc, (KH, FH, ZeroIdeal)):
        return desc
    if isinstance(desc, IdealPower):
        out = reduce_ideal(desc.base)
        for _ in range(desc.exponent - 1):
            out = _reduce_product(out, reduce_ideal(desc.base))
        return out
    if isinstance(desc, IdealProduct):
        return _reduce_product(reduce_ideal(desc.left), reduce_ideal(desc.right))
    if isinstance(desc, IdealSum):
        return _reduce_sum(reduce_ideal(desc.left), reduce_ideal(desc.right))
    raise TypeError(f"not an ideal description: {desc!r}")


def _reduce_product(a: IdealDesc, b: IdealDesc) -> IdealDesc:
    if isinstance(a, ZeroIdeal) or isinstance(b, ZeroIdeal):
        return ZeroIdeal()
    if isinstance(a, FH) or isinstance(b, FH):
        return FH()
    if isinstance(a, KH):
        if isinstance(b, KH):
            return KH()
        gen = b.generator  # Principal or SoftInterior
        return reduce_ideal(SoftInterior(gen))
    if isinstance(b, KH):
        return _reduce_product(b, a)
    ga, gb = a.generator, b.generator
    softened = isinstance(a, SoftInterior) or isinstance(b, SoftInterior)
    gen = seq_product(ga, gb)
    return reduce_ideal(SoftInterior(gen) if softened else Principal(gen))


def _reduce_sum(a: IdealDesc, b: IdealDesc) -> IdealDesc:
    if isinstance(a, ZeroIdeal):
        return b
    if isinstance(b, ZeroIdeal):
        return a
    if isinstance(a, KH) or isinstance(b, KH):
        return KH()
    if isinstance(a, FH):
        return b
    if isinstance(b, FH):
        return a
    if isinstance(a, Principal) and isinstance(b, Principal):
        return reduce_ideal(Principal(seq_sum(a.generator, b.generator)))
    if isinstance(a, SoftInterior) and isinstance(b, SoftInterior):
        return reduce_ideal(SoftInterior(seq_sum(a.generator, b.generator)))
    # mixed principal + soft interior: the growth-class order is total, so
    # one side always swallows the other
    if isinstance(a, SoftInterior):
        a, b = b, a
    pa, pb = profile(a.generator), profile(b.generator)
    if min_ampliation_order(pb, pa, strict=False) is not None:
        return a  # (b)K(H) sits inside (b) which sits inside (a)
    if min_ampliation_order(pa, pb, strict=True) is not None:
        return b  # (a) sits inside the soft interior of (b)
    raise AssertionError("total class order left a sum unreduced")


def _member_reduced(eta: SeqExpr, red: IdealDesc, settings: Settings, mode: str) -> Verdict:
    p_eta = profile(eta)
    if isinstance(red, ZeroIdeal):
        if p_eta.is_zero:
            return Verdict.yes(Witness(constant=Fraction(1), note="zero sequence in the zero ideal"))
        return Verdict.no(Certificate(note="nonzero sequence against the zero ideal"))
    if isinstance(red, KH):
        return Verdict.yes(Witness(m=1, constant=Fraction(1), note="every expression denotes a null sequence"))
    if isinstance(red, FH):
        if p_eta.is_finite:
            return Verdict.yes(
                Witness(m=1, constant=Fraction(1), note=f"finite support of size {p_eta.support}")
            )
        return Verdict.no(Certificate(note="infinite support cannot be finite rank"))
    gen = red.generator
    strict = isinstance(red, SoftInterior)
    if mode == "numeric":
        return _member_numeric(eta, gen, strict, settings)
    m = min_ampliation_order(p_eta, profile(gen), strict=strict)
    if m is None:
        compare = little_o if strict else big_o
        base = compare(eta, ampliate(gen, 1), settings=settings)
        note = (
            "the sequence never vanishes against an ampliated generator"
            if strict
            else "no ampliation of the generator dominates the sequence"
        )
        cert = base.certificate or Certificate(note=note)
        return Verdict.no(Certificate(window=cert.window, note=f"{note}: {cert.note}", samples=cert.samples))
    target = ampliate(gen, m)
    constant = observed_constant(eta, target, settings)
    return Verdict.yes(
        Witness(m=m, constant=constant, window=(1, settings.window_hi), note="ampliated generator dominates")
    )


def _member_numeric(eta: SeqExpr, gen: SeqExpr, strict: bool, settings: Settings) -> Verdict:
    compare = little_o if strict else big_o
    saw_unknown = False
    last_no = None
    for m in range(1, settings.grid_m + 1):
        v = compare(eta, ampliate(gen, m), settings=settings, mode="numeric")
        if v.is_yes:
            w = v.witness
            return Verdict.yes(Witness(m=m, constant=w.constant, window=w.window, note=w.note))
        if v.is_unknown:
            saw_unknown = True
        else:
            last_no = v
    if saw_unknown:
        return Verdict.unknown("numeric sampling left some ampliation orders undecided")
    cert = last_no.certificate if last_no else Certificate(note="no ampliation order within the grid")
    return Verdict.no(
        Certificate(
            window=cert.window,
            note=f"no ampliation order up to {settings.grid_m} dominates: {cert.note}",
            samples=cert.samples,
        )
    )


def member(
    eta: SeqExpr,
    ideal: IdealDesc,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    mode: str = "auto",
) -> Verdict:
    """Does a diagonal operator with singular values ``eta`` belong to the ideal?

    Principal ideals test big-O domination by some ampliation of the
    generator (the witness records the order); soft interiors test
    little-o; the compacts accept everything; finite rank demands finite
    support.  Composite descriptions are reduced first.
    """
    return _member_reduced(eta, reduce_ideal(ideal), settings, mode)


def ideal_equal(
    left: IdealDesc,
    right: IdealDesc,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    mode: str = "auto",
) -> Verdict:
    """Mutual-inclusion test on reduced forms.

    Yes verdicts pair the two inclusion witnesses; No verdicts name the
    failing direction and exhibit a separating sequence when one is handy.
    """
    a, b = reduce_ideal(left), reduce_ideal(right)
    if type(a) is type(b) and not isinstance(a, (Principal, SoftInterior)):
        return Verdict.yes(Witness(note=f"identical reduced forms ({a.__class__.__name__})"))

    inc_ab = _included(a, b, settings, mode)
    if inc_ab.is_no:
        c = inc_ab.certificate
        return Verdict.no(Certificate(window=c.window, note=f"left not included in right: {c.note}", samples=c.samples))
    inc_ba = _included(b, a, settings, mode)
    if inc_ba.is_no:
        c = inc_ba.certificate
        return Verdict.no(Certificate(window=c.window, note=f"right not included in left: {c.note}", samples=c.samples))
    if inc_ab.is_yes and inc_ba.is_yes:
        return Verdict.yes(Witness(note="mutual inclusion of reduced generators"))
    return Verdict.unknown("one of the inclusion tests was inconclusive")


def _strictly_slower_seq(gen: SeqExpr) -> SeqExpr:
    """A compact sequence outside every ampliation of (gen): halve its decay."""
    p = profile(gen)
    if p.support is not None or not p.growth.rate_is_one:
        return power_log(1)
    g = p.growth
    if g.power > 0:
        return power_log(g.power / 2)
    return power_log(0, g.logpower / 2)


def _included(a: IdealDesc, b: IdealDesc, settings: Settings, mode: str) -> Verdict:
    """Is the reduced ideal a contained in the reduced ideal b?"""
    if isinstance(a, ZeroIdeal):
        return Verdict.yes(Witness(note="zero ideal included everywhere"))
    if isinstance(b, ZeroIdeal):
        return Verdict.no(Certificate(note="nonzero ideal against the zero ideal"))
    if isinstance(a, FH):
        return Verdict.yes(Witness(note="finite rank lies in every nonzero ideal"))
    if isinstance(b, KH):
        return Verdict.yes(Witness(note="every ideal here lies in the compacts"))
    if isinstance(a, KH):
        if isinstance(b, (Principal, SoftInterior)):
            from .grammar import render_seq

            sep = _strictly_slower_seq(b.generator)
            return Verdict.no(
                Certificate(note=f"compact sequence {render_seq(sep)} escapes every ampliation of the generator")
            )
        return Verdict.no(Certificate(note="the compacts strictly contain the finite-rank ideal"))
    if isinstance(b, FH):
        gen = a.generator
        if support(gen) is not None:
            return Verdict.yes(Witness(note="finitely supported generator"))
        return Verdict.no(Certificate(note="generator has infinite support, so the ideal exceeds finite rank"))
    # a is Principal or SoftInterior, b is Principal or SoftInterior
    if isinstance(a, Principal) and isinstance(b, SoftInterior):
        return member(a.generator, b, settings=settings, mode=mode)
    # soft interiors compare at generator level: (g)K(H) <= (h)K(H) and
    # (g)K(H) <= (h) both reduce to g belonging to (h) up to ampliation
    return member(a.generator, Principal(b.generator), settings=settings, mode=mode)


def _finite_soft_result(s_expr: SeqExpr) -> SoftnessResult:
    sup = support(s_expr)
    t = finite([1] * sup) if sup else finite([])
    verdict = Verdict.yes(
        Witness(k=1, m=None, constant=Fraction(1), window=(1, max(sup, 1)), note="finite rank is soft in every ideal")
    )
    return SoftnessResult(verdict=verdict, k=1, m=None, t_witness=t)


def _soft_t_for_compacts(s_expr: SeqExpr, k: int, settings: Settings) -> SeqExpr | None:
    """A compact T with s <= C * (k-ampliation of s) * T, matching witness k.

    The k-ampliation of s itself works for purely geometric classes; the
    ampliate-then-decimate candidate has rate exponent (k-1)/(2k), which
    keeps the product's rate strictly slower than s and absorbs any
    power/log factors.
    """
    candidates = [ampliate(s_expr, k)]
    if k >= 2:
        candidates.append(decimate(ampliate(s_expr, 4 * k), 2 * k - 2))
    for t in candidates:
        if big_o(s_expr, seq_product(ampliate(s_expr, k), t), settings=settings).is_yes:
            return t
    return None


def is_soft(
    s_expr: SeqExpr,
    ideal: IdealDesc,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    mode: str = "auto",
) -> SoftnessResult:
    """Is the principal ideal generated by s_expr equal to its product with J?

    Requires membership of the generator in J.  For J the compacts this is
    the decimation test: some k-step decimation of s must be little-o of s.
    For principal-like J the engine searches structured witnesses, an
    ampliation of s paired with an ampliation of J's generator (log-damped
    when J is a soft interior, so the witness stays inside J).
    """
    pre = member(s_expr, ideal, settings=settings, mode=mode)
    if not pre.is_yes:
        raise PreconditionError(
            "softness of (S) in J is only defined for S in J; membership verdict was "
            f"{pre.outcome.value}"
        )
    red = reduce_ideal(ideal)
    if support(s_expr) is not None:
        return _finite_soft_result(s_expr)
    # s has infinite support; J = zero or finite rank would have failed membership
    if isinstance(red, KH):
        saw_unknown = None
        for k in range(2, settings.grid_k + 1):
            v = little_o(decimate(s_expr, k), s_expr, settings=settings, mode=mode)
            if v.is_yes:
                t = _soft_t_for_compacts(s_expr, k, settings)
                constant = (
                    observed_constant(s_expr, seq_product(ampliate(s_expr, k), t), settings)
                    if t is not None
                    else v.witness.constant
                )
                verdict = Verdict.yes(
                    Witness(k=k, constant=constant, window=(1, settings.window_hi),
                            note="decimated tail vanishes against the sequence")
                )
                return SoftnessResult(verdict=verdict, k=k, m=None, t_witness=t)
            if v.is_unknown and saw_unknown is None:
                saw_unknown = v.reason
        if saw_unknown is not None:
            return SoftnessResult(verdict=Verdict.unknown(saw_unknown))
        base = little_o(decimate(s_expr, 2), s_expr, settings=settings, mode=mode)
        cert = base.certificate or Certificate(note="decimated tails stay comparable to the sequence")
        verdict = Verdict.no(
            Certificate(window=cert.window,
                        note=f"no decimation step up to {settings.grid_k} vanishes: {cert.note}",
                        samples=cert.samples)
        )
        return SoftnessResult(verdict=verdict)

    gen = red.generator
    damped = isinstance(red, SoftInterior)

    def t_candidate(m: int) -> SeqExpr:
        t = ampliate(gen, m)
        return seq_product(t, power_log(0, 1)) if damped else t

    saw_unknown = None
    for k in range(1, settings.grid_k + 1):
        for m in range(1, settings.grid_m + 1):
            t = t_candidate(m)
            v = big_o(s_expr, seq_product(ampliate(s_expr, k), t), settings=settings, mode=mode)
            if v.is_yes:
                verdict = Verdict.yes(
                    Witness(k=k, m=m, constant=v.witness.constant, window=v.witness.window,
                            note="structured witness: ampliated self times ampliated generator")
                )
                return SoftnessResult(verdict=verdict, k=k, m=m, t_witness=t)
            if v.is_unknown and saw_unknown is None:
                saw_unknown = v.reason
    if mode != "numeric":
        # rates very close to one can need ampliation orders beyond the grid;
        # the class algebra locates the order directly
        ext = _soft_rate_extension(s_expr, gen, damped, settings)
        if ext is not None:
            return ext
    if saw_unknown is not None:
        return SoftnessResult(verdict=Verdict.unknown(saw_unknown))
    base = big_o(s_expr, seq_product(ampliate(s_expr, 2), t_candidate(1)), settings=settings, mode=mode)
    cert = base.certificate or Certificate(note="no structured witness dominates")
    verdict = Verdict.no(
        Certificate(window=cert.window,
                    note=f"no structured witness within the {settings.grid_k}x{settings.grid_m} grid: {cert.note}",
                    samples=cert.samples)
    )
    return SoftnessResult(verdict=verdict)


def _soft_rate_extension(
    s_expr: SeqExpr, gen: SeqExpr, damped: bool, settings: Settings
) -> SoftnessResult | None:
    ps, pg = profile(s_expr), profile(gen)
    if ps.support is not None or pg.support is not None:
        return None
    if ps.growth.rate_is_one or pg.growth.rate_is_one:
        return None
    from .growth import _rate_log  # rate arithmetic on the log scale

    for k in (2, 3):
        need = (1 - 1 / k) * _rate_log(ps.growth)
        est = max(1, int(need / _rate_log(pg.growth)) - 1)
        for m in range(est, est + 8):
            t = ampliate(gen, m)
            if damped:
                t = seq_product(t, power_log(0, 1))
            v = big_o(s_expr, seq_product(ampliate(s_expr, k), t), settings=settings)
            if v.is_yes:
                verdict = Verdict.yes(
                    Witness(k=k, m=m, constant=v.witness.constant, window=v.witness.window,
                            note="structured witness located beyond the default grid")
                )
                return SoftnessResult(verdict=verdict, k=k, m=m, t_witness=t)
    return None
