"""Acceptance criteria, one test per criterion, each printing PASS or FAIL.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance and window is pinned here, not deferred.
"""

import json
import random
import time
from fractions import Fraction

import opideals as op
from opideals.cli import main as cli_main
from opideals.compare import big_o, little_o
from opideals.classify import (
    classify_finitely_generated,
    classify_principal,
    nonlinearity_witness,
    two_generator_principality,
)
from opideals.ideals import (
    IdealPower,
    IdealProduct,
    IdealSum,
    KH,
    Principal,
    ideal_equal,
    member,
    reduce_ideal,
)
from opideals.oracle import (
    verify_ampliation_ratio,
    verify_power_gap_divergence,
    verify_product_split,
)
from opideals.sequences import evaluate

from conftest import random_atom, random_expr

P1 = op.power_log(1)
G2 = op.geometric(Fraction(1, 2))


def _report(number: int, name: str, failures: list):
    status = "PASS" if not failures else "FAIL"
    print(f"[acceptance] criterion {number} ({name}): {status}")
    assert not failures, failures


def test_criterion_1_softness_regression(capsys):
    failures = []
    cli_main(["soft", "geo(1/2)", "KH", "--json"])  # warm-up, excluded from timing
    capsys.readouterr()

    t0 = time.perf_counter()
    code = cli_main(["soft", "geo(1/2)", "KH", "--json"])
    dt_yes = time.perf_counter() - t0
    doc = json.loads(capsys.readouterr().out)
    if code != 0 or doc["softness"]["verdict"]["outcome"] != "yes":
        failures.append("geo(1/2) should be soft in KH")
    if doc["softness"]["k"] != 2:
        failures.append(f"witness k should be 2, got {doc['softness']['k']}")

    t0 = time.perf_counter()
    code = cli_main(["soft", "pow(1)", "KH", "--json"])
    dt_no = time.perf_counter() - t0
    doc = json.loads(capsys.readouterr().out)
    if code != 0 or doc["softness"]["verdict"]["outcome"] != "no":
        failures.append("pow(1) should not be soft in KH")
    for dt in (dt_yes, dt_no):
        if dt >= 0.1:
            failures.append(f"softness query took {dt:.3f}s (budget 0.1s)")
    with capsys.disabled():
        _report(1, "softness regression", failures)


def test_criterion_2_ratio_limit_oracle():
    failures = []
    for m in (2, 3, 5):
        t0 = time.perf_counter()
        rep = verify_ampliation_ratio(m, n_max=10**6, tolerance=1e-3)
        dt = time.perf_counter() - t0
        if not rep.passed:
            failures.append(f"ratio oracle failed for m={m}")
        tail = [v for n, v in rep.observed if n >= rep.window[0]]
        if not all(abs(v - 1 / m) <= 1e-3 for v in tail):
            failures.append(f"tail not within 1e-3 of 1/{m}")
        if dt >= 1.0:
            failures.append(f"ratio oracle m={m} took {dt:.3f}s (budget 1s)")
    _report(2, "ratio-limit oracle", failures)


def test_criterion_3_divergence_oracle():
    failures = []
    t0 = time.perf_counter()
    for m in (1, 4):
        rep = verify_power_gap_divergence(m, n_max=10**6, threshold=1e3)
        if not rep.passed:
            failures.append(f"divergence oracle failed for m={m}")
    if not member(op.power_log(2), Principal(op.power_log(3))).is_no:
        failures.append("member(pow(2), prin(pow(3))) should be No symbolically")
    dt = time.perf_counter() - t0
    if dt >= 1.0:
        failures.append(f"divergence criterion took {dt:.3f}s (budget 1s)")
    _report(3, "divergence oracle", failures)


def test_criterion_4_collapse_classification():
    failures = []
    rep = classify_principal(G2, KH())
    if not rep.is_bh_ideal.is_yes or [l.relation for l in rep.chain] != ["equal"] * 5:
        failures.append("geo(1/2) should collapse the whole chain")
    rep = classify_principal(P1, KH())
    if not rep.is_bh_ideal.is_no or [l.relation for l in rep.chain][1:] != ["strict"] * 4:
        failures.append("pow(1) should leave the last four positions strict")
    if not nonlinearity_witness(P1, KH()).is_yes:
        failures.append("the harmonic generator should yield a nonlinear subideal")
    rng = random.Random(0xACCE5)
    for _ in range(50):
        s = random_atom(rng)
        r = classify_principal(s, KH())
        soft = r.softness.verdict
        collapsed = [l.relation for l in r.chain][1:] == ["equal"] * 4
        if soft.is_yes != collapsed or r.is_bh_ideal.outcome != soft.outcome:
            failures.append(f"coherence broken for {op.render_seq(s)}")
    _report(4, "collapse classification", failures)


def test_criterion_5_finitely_generated_case():
    failures = []
    if not two_generator_principality(P1, P1, KH()).is_no:
        failures.append("interleaved harmonic pair should not be principal in KH")
    rng = random.Random(0xF66)
    for _ in range(25):
        s = random_atom(rng)
        single = classify_finitely_generated([s], KH())
        plain = classify_principal(s, KH())
        same = (
            single.is_bh_ideal.outcome == plain.is_bh_ideal.outcome
            and [l.relation for l in single.chain] == [l.relation for l in plain.chain]
        )
        if not same:
            failures.append(f"singleton mismatch for {op.render_seq(s)}")
    _report(5, "finitely generated case", failures)


def test_criterion_6_semiring_properties():
    failures = []
    rng = random.Random(0x5E71)
    probes = [P1, op.power_log(2), G2, op.finite([2, 1])]
    for _ in range(100):
        i, j, k = (Principal(random_atom(rng)) for _ in range(3))
        pairs = [
            (IdealProduct(i, j), IdealProduct(j, i)),
            (IdealProduct(i, IdealProduct(j, k)), IdealProduct(IdealProduct(i, j), k)),
            (IdealProduct(i, IdealSum(j, k)), IdealSum(IdealProduct(i, j), IdealProduct(i, k))),
        ]
        for lhs, rhs in pairs:
            rl, rr = reduce_ideal(lhs), reduce_ideal(rhs)
            for x in probes:
                if member(x, rl).outcome != member(x, rr).outcome:
                    failures.append(f"semiring law broken on {op.render_ideal(lhs)}")
    cube = reduce_ideal(IdealPower(Principal(P1), 3))
    if not ideal_equal(cube, Principal(op.power_log(3))).is_yes:
        failures.append("cube of the harmonic principal ideal should equal prin(pow(3))")
    _report(6, "semiring properties", failures)


def test_criterion_7_factorization_oracle():
    failures = []
    cases = [
        (op.geometric(Fraction(1, 4)), Principal(G2), Principal(G2)),
        (op.power_log(3), Principal(P1), Principal(op.power_log(2))),
        (P1, KH(), KH()),
    ]
    for c, left, right in cases:
        rep = verify_product_split(c, left, right, n_max=10**5)
        if not rep.passed:
            failures.append(f"split failed for {op.render_seq(c)}: {rep.detail}")
        if rep.tolerance != 0.0 or any(err != 0.0 for _, err in rep.observed):
            failures.append(f"nonzero reconstruction error for {op.render_seq(c)}")
    _report(7, "factorization oracle", failures)


def test_criterion_8_sequence_algebra_properties():
    failures = []
    t0 = time.perf_counter()
    rng = random.Random(0xA17)

    for _ in range(100):
        e = random_expr(rng, depth=3)
        vals = [evaluate(e, n) for n in range(1, 80)]
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)) or any(v < 0 for v in vals):
            failures.append(f"monotonicity broken for {op.render_seq(e)}")
        if op.ampliate(op.ampliate(e, 2), 3) != op.ampliate(e, 6):
            failures.append("ampliation does not compose multiplicatively")
        rt = op.decimate(op.ampliate(e, 4), 4)
        for n in (1, 2, 3, 10, 97):
            if evaluate(rt, n) != evaluate(e, n):
                failures.append("decimation does not invert ampliation")

    for _ in range(100):
        a, b = random_atom(rng), random_atom(rng)
        for sym, num in (
            (big_o(a, b), big_o(a, b, mode="numeric")),
            (little_o(a, b), little_o(a, b, mode="numeric")),
        ):
            if not num.is_unknown and num.outcome != sym.outcome:
                failures.append(
                    f"numeric contradicts symbolic on {op.render_seq(a)} vs {op.render_seq(b)}"
                )
    dt = time.perf_counter() - t0
    if dt >= 30.0:
        failures.append(f"property suite took {dt:.1f}s (budget 30s)")
    _report(8, "sequence algebra properties", failures)
