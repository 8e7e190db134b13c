"""Acceptance criteria, one test per criterion.

Every comparison is exact (Fractions, residues, group normal forms); the
only tolerances are the stated wall-clock bounds.  Each test prints one
pass line; a pytest failure is the fail line.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from divring import cli, matideal, matroid, ogroup, series
from divring.galg import AlgebraElement, parse_algebra
from divring.ogroup import DUAL_LEFT_ORDER, GroupDescriptor, compare
from divring.scalars import (
    Fp,
    IntegersMod,
    ModulePresentation,
    QQ,
    QuadImaginary,
    ZETA3,
    ZZ,
    parse_scaling_constant,
)
from divring.series import SeriesStream, act_right, dubrovin_invert, pair, rho, rho_inverse

from conftest import random_algebra, random_element

GROUP_CONSTANTS = [QuadImaginary(-1), QuadImaginary(1), ZETA3,
                   parse_scaling_constant("gauss(3/5,4/5)")]


def _announce(num, label, t0):
    print("ACCEPTANCE %2d %-58s PASS (%.2fs)" % (num, label, time.monotonic() - t0))


def test_criterion_1_inversion_goldens(capsys):
    t0 = time.monotonic()
    kb = GroupDescriptor(-1)
    x = parse_algebra("1 - t", QQ, kb)

    b1 = dubrovin_invert(SeriesStream.from_algebra(parse_algebra("1", QQ, kb)), x)
    terms, status = b1.prefix(20)
    assert status == "filled"
    t = kb.parse("t")
    assert terms == [(t ** i, Fraction(1)) for i in range(20)]

    b2 = dubrovin_invert(SeriesStream.from_algebra(parse_algebra("s", QQ, kb)), x)
    terms2, status2 = b2.prefix(20)
    assert status2 == "filled"
    s = kb.parse("s")
    assert terms2 == [(t ** n * s, Fraction(-1)) for n in range(1, 21)]

    # the CLI reproduces the same lines
    import contextlib, io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.run(["invert", "--group", "c=-1", "--x", "1 - t",
                        "--a", "1", "--terms", "20"])
    assert code == 0
    assert buf.getvalue().splitlines() == ["1 * %s" % (t ** i) for i in range(20)]

    elapsed = time.monotonic() - t0
    assert elapsed < 1.0, "criterion 1 exceeded 1 s (%.2fs)" % elapsed
    with capsys.disabled():
        _announce(1, "inversion goldens, first 20 terms exact", t0)


def test_criterion_2_and_4_roundtrip_with_support_audit(capsys):
    t0 = time.monotonic()
    rng = random.Random(20260808)
    cases = 0
    while cases < 200:
        group = GroupDescriptor(GROUP_CONSTANTS[cases % 4])
        field = QQ if rng.random() < 0.5 else Fp(5)
        a = random_algebra(rng, group, field, max_terms=5)
        x = random_algebra(rng, group, field, max_terms=3, nonzero=True)
        # check_support=True keeps the remainder-support assertion live for
        # every inversion step (criterion 4: zero failures); strict_prefix
        # refuses to verify anything weaker than the 50-point bound
        assert series.roundtrip_prefix_agreement(
            SeriesStream.from_algebra(a), x, 50, 8000,
            check_support=True, strict_prefix=True)
        cases += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, "criterion 2 exceeded 30 s (%.2fs)" % elapsed
    with capsys.disabled():
        _announce(2, "200 exact round trips (coefficients in F5 and Q)", t0)
        _announce(4, "remainder support stayed inside rho(Y) throughout", t0)


def test_criterion_3_rho_bijection(capsys):
    t0 = time.monotonic()
    rng = random.Random(77)
    for const in GROUP_CONSTANTS:
        group = GroupDescriptor(const)
        x = random_algebra(rng, group, QQ, max_terms=3, nonzero=True)
        supp = x.support()
        prev_pre = prev_img = None
        for _ in range(10_000):
            g = random_element(rng, group)
            pre = rho_inverse(supp, g)
            assert rho(supp, pre) == g
            # monotonicity via the collected (preimage, image) pairs: rho is
            # strictly order-preserving iff preimage order forces image order
            if prev_pre is not None and compare(prev_pre, pre) == -1:
                assert compare(prev_img, g) == -1
            prev_pre, prev_img = pre, g
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, "criterion 3 exceeded 5 s (%.2fs)" % elapsed
    with capsys.disabled():
        _announce(3, "rho round trip and monotonicity on 4 x 10^4 samples", t0)


def _f2_ctx():
    f2 = Fp(2)
    return matroid.ClosureContext(f2, ModulePresentation(f2, (2,)))


def test_criterion_5_exchange_audits(capsys):
    t0 = time.monotonic()
    ta = time.monotonic()
    ctx2 = _f2_ctx()
    for n in (1, 2):
        rep = matroid.exchange_audit(ctx2, n)
        assert rep.passed
    assert time.monotonic() - ta < 60.0

    tb = time.monotonic()
    z4 = IntegersMod(4)
    ctx4 = matroid.ClosureContext(z4, ModulePresentation(z4, (4,)))
    rep = matroid.exchange_audit(ctx4, 1)
    assert not rep.passed
    assert any(f.instance == "A=() u=(2,) t=(1,)" for f in rep.failures)
    chain = next(f for f in rep.failures if f.instance == "A=() u=(2,) t=(1,)")
    assert chain.witness == ("ann chain {((0,),), ((1,),), ((2,),), ((3,),)} "
                             "> {((0,),), ((2,),)} > {((0,),)}")
    assert time.monotonic() - tb < 60.0

    tc = time.monotonic()
    ctxq = matroid.ClosureContext(ZZ, ModulePresentation(ZZ, None))
    rep = matroid.exchange_audit(ctxq, 2, entry_bound=2)
    assert rep.passed
    assert time.monotonic() - tc < 60.0

    with capsys.disabled():
        _announce(5, "exchange audits: clean F2 and Q windows, Z/4 chain found", t0)


def test_criterion_6_strong_lemma_suite(capsys):
    t0 = time.monotonic()
    totals = {}
    for p in (2, 3):
        f = Fp(p)
        ctx = matroid.ClosureContext(f, ModulePresentation(f, (p,)))
        rep = matroid.strong_lemmas_audit(ctx, trials=250, seed=p, max_n=4)
        assert rep.passed, [fr.axiom for fr in rep.failures][:3]
        for axiom, (tested, failed) in rep.counts.items():
            totals[axiom] = totals.get(axiom, 0) + tested
            assert failed == 0
    # every clause of the toolkit was exercised across the two fields
    assert len(totals) >= 11
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, "criterion 6 exceeded 60 s (%.2fs)" % elapsed
    with capsys.disabled():
        _announce(6, "strong-matrix lemma suite over F2/F3, n <= 4", t0)


def test_criterion_7_either_or_meta(capsys):
    t0 = time.monotonic()
    ctx = _f2_ctx()
    eo_passed = all(matroid.either_or_audit(ctx, n).passed for n in (1, 2))
    assert eo_passed
    # the implication is asserted programmatically: with either/or exhausted
    # the exchange search must come back empty
    for n in (1, 2):
        assert matroid.exchange_audit(ctx, n).passed
    with capsys.disabled():
        _announce(7, "either/or holds exhaustively and forces empty exchange", t0)


def test_criterion_8_matrix_ideal_goldens(capsys):
    t0 = time.monotonic()
    z4 = ModulePresentation(ZZ, (4,))
    spec = matideal.InducedNonInjective(z4)

    ta = time.monotonic()
    count = 0
    for a in matideal.window_matrices(ZZ, 2, 2):
        count += 1
        assert matideal.ideal_member(spec, a) == (matideal.det(a) % 2 == 0)
    assert count == 625
    assert time.monotonic() - ta < 60.0

    rep = matideal.module_conditions_audit(z4, ZZ, "injective", max_n=2, entry_bound=2)
    assert not rep.failures_for("no-thin-map-injects")
    dichotomy = rep.failures_for("kernel-one-to-one-dichotomy")
    assert dichotomy
    assert any("X=((1, 0),)" in f.instance for f in dichotomy)
    # reconstruct the witness shape: last entries acting as a unit vs the prime
    m = z4
    kernel = [v for v in itertools.product(m.elements(), repeat=2)
              if m.dot(v, (1, 0)) == m.zero()]
    unit_images = [m.dot(v, (0, 1)) for v in kernel]
    prime_images = [m.dot(v, (0, 2)) for v in kernel]
    assert len(set(unit_images)) == len(kernel)
    assert any(v != m.zero() for v in prime_images) and len(set(prime_images)) < len(kernel)

    axioms = matideal.axioms_audit(spec, ZZ, max_size=2, entry_bound=2)
    for axiom in ("diag-sum-absorbs", "unit-block-strips", "identity-not-member",
                  "diag-sum-prime", "elementary-left-multiplication",
                  "elementary-right-multiplication"):
        tested, failed = axioms.counts[axiom]
        assert tested > 0 and failed == 0

    with capsys.disabled():
        _announce(8, "matrix-ideal goldens over Z with M = Z/4", t0)


def test_criterion_9_malcolmson_window(capsys):
    t0 = time.monotonic()
    rep = matideal.malcolmson_audit(matideal.DetDivisibleBy(2), ZZ, n=2, entry_bound=2)
    assert rep.passed
    assert rep.counts["row-det-sum-closure"][1] == 0
    assert rep.counts["elementary-left-closure"][1] == 0
    assert rep.counts["closures-stand-together"] == [1, 0]
    assert rep.counts["signed-swap-identity"] == [1, 0]
    with capsys.disabled():
        _announce(9, "row-sum and elementary closures agree on the window", t0)


def test_criterion_10_pairing_identity(capsys):
    t0 = time.monotonic()
    rng = random.Random(55)
    kb = GroupDescriptor(-1)
    z3 = GroupDescriptor(ZETA3)
    done = 0
    while done < 500:
        group = kb if done % 2 == 0 else z3
        a_alg = random_algebra(rng, group)
        b_alg = random_algebra(rng, group)
        r_alg = random_algebra(rng, group)
        a = SeriesStream.from_algebra(a_alg)
        b = SeriesStream.from_algebra(b_alg, order=DUAL_LEFT_ORDER)
        lhs = pair(act_right(a, r_alg), b, 4000)
        rhs = pair(a, SeriesStream.from_algebra(r_alg * b_alg, order=DUAL_LEFT_ORDER), 4000)
        assert lhs == rhs
        done += 1

    g0 = kb.parse("t^2*s")
    single = pair(
        SeriesStream.from_algebra(AlgebraElement.monomial(QQ, kb, g0)),
        SeriesStream.from_algebra(AlgebraElement.monomial(QQ, kb, g0.inverse()),
                                  order=DUAL_LEFT_ORDER), 100)
    assert single == Fraction(1)

    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, "criterion 10 exceeded 5 s (%.2fs)" % elapsed
    with capsys.disabled():
        _announce(10, "pairing adjunction on 500 random triples", t0)


def test_criterion_11_partition_experiment(capsys):
    t0 = time.monotonic()
    z3 = GroupDescriptor(ZETA3)
    s = z3.element(ZETA3 * ZETA3, 0)
    sample = [z3.identity(), s]
    cls = [tuple(ogroup.local_order_class(g, sample))
           for g in (z3.identity(), z3.gen_x, z3.gen_x ** 2)]
    assert cls[0] == cls[1]
    assert cls[2] != cls[0]

    rep = ogroup.positivity_periodicity_probe(z3, sample, 6)
    assert rep.period == 3

    gauss = GroupDescriptor(parse_scaling_constant("gauss(3/5,4/5)"))
    rep2 = ogroup.positivity_periodicity_probe(
        gauss, [gauss.identity(), gauss.gen_y], 50)
    assert rep2.period is None or rep2.period > 25

    with capsys.disabled():
        _announce(11, "local-order partition classes and periodicity", t0)


def test_golden_suite_and_seed_independence(capsys):
    # the externally anchored examples re-run as one suite; changing the
    # sampling seed of sampled audits must not move any golden verdict
    t0 = time.monotonic()
    assert cli.golden_suite()
    z4 = IntegersMod(4)
    ctx4 = matroid.ClosureContext(z4, ModulePresentation(z4, (4,)))
    for seed in (0, 1234):
        rep = matroid.closure_axioms_audit(ctx4, 2, samples=20, seed=seed)
        assert rep.passed
    with capsys.disabled():
        _announce(0, "golden suite green; seeds move no golden verdict", t0)
