from fractions import Fraction

import pytest

import opideals as op
from opideals.ideals import (
    FH,
    IdealPower,
    IdealProduct,
    IdealSum,
    KH,
    PreconditionError,
    Principal,
    SoftInterior,
    ZeroIdeal,
    ideal_equal,
    is_soft,
    member,
    reduce_ideal,
)

from conftest import random_atom

P1 = op.power_log(1)
P2 = op.power_log(2)
P3 = op.power_log(3)
G2 = op.geometric(Fraction(1, 2))


def test_member_power_gap_is_refuted():
    assert member(P2, Principal(P3)).is_no


def test_member_compacts_accepts_everything(rng):
    for _ in range(20):
        assert member(random_atom(rng), KH()).is_yes


def test_member_finite_rank_everywhere():
    v = member(op.finite([3, 1]), Principal(G2))
    assert v.is_yes
    assert member(op.finite([3, 1]), FH()).is_yes
    assert member(P1, FH()).is_no
    assert member(op.finite([1] * 12), Principal(op.finite([2]))).is_yes


def test_member_records_ampliation_witness():
    # (1/2)^n needs a 2-fold ampliation of (1/4)^n before it dominates
    v = member(G2, Principal(op.geometric(Fraction(1, 4))))
    assert v.is_yes
    assert v.witness.m == 2


def test_member_far_ampliation_beyond_default_grid():
    eta = op.geometric(Fraction(99, 100))
    gen = op.geometric(Fraction(1, 100))
    v = member(eta, Principal(gen))
    assert v.is_yes
    assert v.witness.m >= 100  # honest witness, not a grid-truncated refusal


def test_member_zero_ideal():
    zero = Principal(op.finite([0]))
    assert member(op.finite([0]), zero).is_yes
    assert member(op.finite([1]), zero).is_no


def test_reduce_power_of_principal():
    r = reduce_ideal(IdealPower(Principal(P1), 3))
    assert isinstance(r, Principal)
    assert ideal_equal(r, Principal(P3)).is_yes


def test_reduce_product_commutes_up_to_membership(rng):
    for _ in range(20):
        a, b = random_atom(rng), random_atom(rng)
        lhs = reduce_ideal(IdealProduct(Principal(a), Principal(b)))
        rhs = reduce_ideal(IdealProduct(Principal(b), Principal(a)))
        assert ideal_equal(lhs, rhs).is_yes


def test_reduce_is_idempotent(rng):
    for _ in range(20):
        desc = IdealProduct(
            Principal(random_atom(rng)),
            IdealSum(Principal(random_atom(rng)), KH() if rng.random() < 0.3 else Principal(random_atom(rng))),
        )
        once = reduce_ideal(desc)
        assert reduce_ideal(once) == once


def test_reduce_fixed_points():
    assert reduce_ideal(Principal(P1)) == Principal(P1)
    assert reduce_ideal(KH()) == KH()
    assert reduce_ideal(FH()) == FH()


def test_reduce_product_with_compacts_is_soft_interior():
    r = reduce_ideal(IdealProduct(Principal(P1), KH()))
    assert r == SoftInterior(P1)
    assert reduce_ideal(IdealProduct(KH(), KH())) == KH()
    assert reduce_ideal(IdealProduct(FH(), Principal(P1))) == FH()
    assert reduce_ideal(IdealProduct(Principal(op.finite([1])), KH())) == FH()


def test_reduce_mixed_sum_collapses():
    # (geo) + (pow1)K(H): the soft interior of the slower class swallows the geometric
    r = reduce_ideal(IdealSum(Principal(G2), IdealProduct(Principal(P1), KH())))
    assert r == SoftInterior(P1)
    # (pow1) + (pow1)K(H) collapses onto the principal side
    r2 = reduce_ideal(IdealSum(Principal(P1), IdealProduct(Principal(P1), KH())))
    assert r2 == Principal(P1)


def test_semiring_laws_on_membership(rng):
    probes = [P1, P2, G2, op.finite([2, 1])]
    for _ in range(30):
        i, j, k = (Principal(random_atom(rng)) for _ in range(3))
        comm_l = reduce_ideal(IdealProduct(i, j))
        comm_r = reduce_ideal(IdealProduct(j, i))
        assoc_l = reduce_ideal(IdealProduct(i, IdealProduct(j, k)))
        assoc_r = reduce_ideal(IdealProduct(IdealProduct(i, j), k))
        dist_l = reduce_ideal(IdealProduct(i, IdealSum(j, k)))
        dist_r = reduce_ideal(IdealSum(IdealProduct(i, j), IdealProduct(i, k)))
        for x in probes:
            assert member(x, comm_l).outcome == member(x, comm_r).outcome
            assert member(x, assoc_l).outcome == member(x, assoc_r).outcome
            assert member(x, dist_l).outcome == member(x, dist_r).outcome


def test_soft_geometric_in_compacts():
    res = is_soft(G2, KH())
    assert res.verdict.is_yes
    assert res.k == 2
    assert res.t_witness is not None
    assert member(res.t_witness, KH()).is_yes


def test_soft_harmonic_in_compacts_fails():
    res = is_soft(P1, KH())
    assert res.verdict.is_no
    assert res.verdict.certificate is not None


def test_soft_finite_rank_everywhere():
    for ideal in (KH(), FH(), Principal(G2), Principal(P1)):
        res = is_soft(op.finite([1]), ideal)
        assert res.verdict.is_yes
        assert member(res.t_witness, ideal).is_yes


def test_soft_requires_membership():
    with pytest.raises(PreconditionError):
        is_soft(P1, Principal(G2))


def test_soft_verdict_matches_soft_interior_membership(rng):
    # the product formulation (S) = (S)J and the little-o formulation agree
    for _ in range(25):
        s = random_atom(rng)
        left = is_soft(s, KH()).verdict
        right = member(s, IdealProduct(Principal(s), KH()))
        assert left.outcome == right.outcome


def test_softness_monotone_under_larger_ideal(rng):
    # J = (gen) inside J' = KH: softness can only improve
    for _ in range(20):
        gen = random_atom(rng)
        s = op.seq_product(gen, random_atom(rng))
        if not member(s, Principal(gen)).is_yes:
            continue
        if is_soft(s, Principal(gen)).verdict.is_yes:
            assert is_soft(s, KH()).verdict.is_yes


def test_soft_witness_structure_principal_case():
    res = is_soft(G2, Principal(G2))
    assert res.verdict.is_yes
    assert res.k is not None and res.m is not None
    assert member(res.t_witness, Principal(G2)).is_yes
    # a power-log generator is never soft relative to a power-log ideal
    res2 = is_soft(P2, Principal(P1))
    assert res2.verdict.is_no


def test_soft_geometric_inside_harmonic_principal():
    res = is_soft(G2, Principal(P1))
    assert res.verdict.is_yes
    assert member(res.t_witness, Principal(P1)).is_yes


def test_soft_in_soft_interior_ideal():
    j = IdealProduct(Principal(P1), KH())
    res = is_soft(G2, j)
    assert res.verdict.is_yes
    assert member(res.t_witness, j).is_yes


def test_ideal_equal_basics():
    assert ideal_equal(Principal(P1), Principal(P1)).is_yes
    assert ideal_equal(KH(), KH()).is_yes
    assert ideal_equal(FH(), KH()).is_no
    assert ideal_equal(Principal(op.finite([7, 1])), FH()).is_yes
    assert ideal_equal(Principal(P1), KH()).is_no


def test_ideal_equal_soft_interior_split():
    soft = IdealProduct(Principal(P1), KH())
    v = ideal_equal(Principal(P1), soft)
    assert v.is_no
    assert "included" in v.certificate.note
    assert ideal_equal(Principal(G2), IdealProduct(Principal(G2), KH())).is_yes


def test_ideal_equal_ampliation_invariance():
    assert ideal_equal(Principal(P1), Principal(op.ampliate(P1, 5))).is_yes
    assert ideal_equal(Principal(G2), Principal(op.geometric(Fraction(1, 4)))).is_yes
    assert ideal_equal(Principal(G2), Principal(P1)).is_no


def test_finite_rank_minimality(rng):
    for _ in range(15):
        ideal = Principal(random_atom(rng))
        assert member(op.finite([5, 3, 1]), ideal).is_yes
    assert member(op.finite([5]), ZeroIdeal()).is_no


def test_softness_monotone_on_geometric_family():
    # (S) soft in (gen) and gen in J' forces softness in J' as well
    for r, u in ((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 2))):
        gen = op.geometric(r)
        s = op.geometric(r * u)
        assert member(s, Principal(gen)).is_yes
        assert is_soft(s, Principal(gen)).verdict.is_yes
        for bigger in (KH(), Principal(op.power_log(1))):
            assert member(gen, bigger).is_yes
            assert is_soft(s, bigger).verdict.is_yes


def test_member_with_max_combinator():
    eta = op.seq_max(G2, P3)
    assert member(eta, Principal(P2)).is_yes
    assert member(eta, Principal(op.power_log(4))).is_no


def test_witness_orders_at_exact_rate_ties():
    quarter = op.geometric(Fraction(1, 4))
    # (1/2)^n against ampliations of (1/4)^n: rates tie exactly at m = 2
    v = member(G2, Principal(quarter))
    assert v.is_yes and v.witness.m == 2
    # the little-o form needs one more ampliation step past the tie
    v2 = member(G2, SoftInterior(quarter))
    assert v2.is_yes and v2.witness.m == 3
    # a decaying polynomial factor resolves the tie without the extra step
    damped = op.seq_product(G2, op.power_log(1))
    v3 = member(damped, SoftInterior(quarter))
    assert v3.is_yes and v3.witness.m == 2
