"""Acceptance criteria 1-10.

Each test prints one line ``criterion N: PASS|FAIL (seconds) detail`` and
checks its runtime limit.  The lines are collected and repeated in the
terminal summary.  Criterion 7 contains two parts that cannot hold (the
displayed line being replayed is not in the ideal, or a displayed step needs
a central term dropped); they are reported as FAIL and marked xfail, see the
decision ledger.
"""

import itertools
import random
import re
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from affmta import mta
from affmta import replay as R
from affmta.l10 import KINDS, STRATEGIES, LoopElt, check_h4, reduce_paper, sym
from affmta.l10_exact import audit_relations
from affmta.modes import Mode, ModeExpr, affine_bracket, commutator, e, f, h, pbw_normal
from affmta.pbw import PbwElt, ZhuL10Elt, casimir, parse_pbw, pbw_from_word, witness_phi, zhu_closure, zhu_mul
from affmta.report import FAILED, FLAGGED, INCONCLUSIVE, VERIFIED
from affmta.scalars import K
from affmta.sl2 import GENS
from affmta.vacuum_unit import nonexistence_certificate, vacuum_constraints, witness_samples

RESULTS: dict = {}


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    rep = request.config.pluginmanager.getplugin("terminalreporter")
    lines = [RESULTS[n] for n in sorted(RESULTS)]
    if rep is not None:
        rep.write_sep("=", "acceptance criteria")
        for line in lines:
            rep.write_line(line)
    else:
        print("\n".join(lines))


@contextmanager
def criterion(n: int, limit: float):
    """Time the block, record one PASS/FAIL line, then enforce the limit."""
    info = {"detail": "", "ok": True}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        info["ok"] = False
        info["detail"] = info["detail"] or f"{type(exc).__name__}: {exc}".splitlines()[0]
        raise
    finally:
        dt = time.perf_counter() - t0
        ok = info["ok"] and dt < limit
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s, limit {limit:g}s) {info['detail']}".rstrip()
        RESULTS[n] = line
        print(line)
    assert dt < limit, f"criterion {n} took {dt:.2f}s > {limit}s"


def test_criterion_1_zhu_closure():
    with criterion(1, 1.0) as c:
        basis = zhu_closure()
        assert basis == ["1", "e", "f", "h", "ef"]
        z = {b: ZhuL10Elt.basis(b) for b in basis}
        assert zhu_mul(z["e"], z["e"]).is_zero() and zhu_mul(z["f"], z["f"]).is_zero()
        assert zhu_mul(z["e"], z["h"]) == z["e"].scale(-1)
        assert zhu_mul(z["h"], z["f"]) == z["f"].scale(-1)
        assert zhu_mul(z["h"], z["h"]) + z["h"] == zhu_mul(z["e"], z["f"]).scale(2)
        c["detail"] = f"dimension {len(basis)}"


def test_criterion_2_ideal_collapse():
    with criterion(2, 1.0) as c:
        rng = range(-10, 11)
        for m, n in itertools.product(rng, rng):
            assert not reduce_paper(ModeExpr.word(e(m), e(n))), (m, n)
            assert not reduce_paper(ModeExpr.word(f(m), f(n))), (m, n)
        c["detail"] = "ee = ff = 0 on 441 index pairs"


def test_criterion_3_r_independence():
    with criterion(3, 5.0) as c:
        rng = range(-5, 6)
        for x, y, r in itertools.product(rng, rng, rng):
            expr = ModeExpr.word(h(x), h(y)) + ModeExpr.word(h(x + y)) - ModeExpr.word(e(r), f(x + y - r), coeff=2)
            assert not reduce_paper(expr), (x, y, r)
        c["detail"] = "1331 triples"


def test_criterion_4_h4():
    with criterion(4, 30.0) as c:
        rnd = random.Random(4)
        points = [(0,) * 7] + [tuple(rnd.randint(-3, 3) for _ in range(7)) for _ in range(500)]
        bad = [p for p in points if check_h4(*p).status != VERIFIED]
        assert not bad, bad[:3]
        c["detail"] = f"{len(points)} tuples verified"


def test_criterion_5_unit_degree_one():
    with criterion(5, 5.0) as c:
        rep = mta.verify_strong_unit(1, mta.LITERAL)
        assert rep.status == VERIFIED and len(rep.cases) == 30
        assert all(case.status == VERIFIED for case in rep.cases)
        assert mta.unit_idempotent(1)
        for i in range(len(mta.unit_terms(1))):
            bad = [x for x in mta.verify_strong_unit(1, mta.LITERAL, perturb={i: 1}).cases if x.status == FAILED]
            assert bad, i
            assert bad[0].first_divergence().label == "compare"
        c["detail"] = "30/30 verified, idempotent, 3/3 perturbations caught"


def _central_values(rep, d):
    return {s.after for x in rep.cases for s in x.trace
            if s.before == f"[f({d}), e(-{d})]" and s.label.endswith(": bracket")}


def test_criterion_6_units_two_to_six():
    with criterion(6, 120.0) as c:
        tally = {}
        for d in range(2, 7):
            for regime in mta.REGIMES:
                for pairs in mta.PAIR_MODES:
                    rep = mta.verify_strong_unit(d, regime, pairs)
                    again = mta.verify_strong_unit(d, regime, pairs)
                    assert rep.canonical_json() == again.canonical_json()
                    for x in rep.cases:
                        if x.status != VERIFIED:
                            assert x.first_divergence() is not None
                    vals = _central_values(rep, d)
                    assert vals == {f"{d} - h(0)"}, vals
                    # the displayed -h(0) + 1 is flagged exactly at that bracket
                    for x in rep.cases:
                        for s in x.trace:
                            if s.before == f"[f({d}), e(-{d})]" and s.label.endswith(": bracket"):
                                assert s.status == FLAGGED and "1 - h(0)" in s.note
                    tally[rep.status] = tally.get(rep.status, 0) + 1
        c["detail"] = "20 deterministic reports, " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items()))


def _bindings(case):
    return {k: int(v) for k, v in re.findall(r"(\w+)=(-?\d+)", case.input)}


def _degenerate_binding(name, b):
    if name == "FIRSTREL":
        return 0 in (b["k"] + b["n1"], b["k"] + b["n2"])
    if name == "SECONDREL":
        return 0 in (b["k"] + b["n1"], b["k"] + b["n2"], b["l"] + b["n1"], b["l"] + b["n2"])
    return False


def test_criterion_7_replay():
    unattainable = []
    with criterion(7, 30.0) as c:
        reps = {r.claim.split(":", 1)[1]: r for r in R.replay_suite(list(R.BUILTIN))}
        for name in ("BASECASE", "ALLZERO", "CHECKIDEAL", "H4"):
            assert reps[name].status == VERIFIED, name
        for name in ("FIRSTREL", "SECONDREL"):
            for x in reps[name].cases:
                if _degenerate_binding(name, _bindings(x)):
                    assert x.status == FLAGGED and "central term" in x.first_divergence().note, x.input
                else:
                    assert x.status == VERIFIED, x.input
        steps = {s.label.split(": ", 1)[1]: s.status for s in reps["LIN-CHAIN"].cases[0].trace}
        for i in ("4a", "4b", 5, 6, 7, 8, 9, 10, 11, 12):
            assert steps[f"lin(lin{i})"] == VERIFIED, i
        if reps["FF-ZERO"].status != VERIFIED:
            unattainable.append(f"FF-ZERO {reps['FF-ZERO'].status} ({reps['FF-ZERO'].cases[0].first_divergence().note})")
        third = [x for x in reps["THIRDREL"].cases if x.status != VERIFIED]
        if third:
            unattainable.append(f"THIRDREL displayed line {third[0].status} at {len(third)} bindings")
        if unattainable:
            c["ok"] = False
            c["detail"] = "attainable parts verified; not attainable: " + "; ".join(unattainable)
        else:
            c["detail"] = "all parts verified"
    if unattainable:
        pytest.xfail("; ".join(unattainable))


def test_criterion_8_nonexistence():
    with criterion(8, 10.0) as c:
        for lev in (K, Fraction(0), Fraction(1), Fraction(5), Fraction(-1, 2)):
            eq = vacuum_constraints(lev).equation("e", "e")
            assert dict(eq.terms) == {"c_fe": parse_pbw("h") + PbwElt.scalar(lev), "c_he": parse_pbw("-2 e")}
            assert eq.rhs == 1
            assert witness_phi(PbwElt.one(), lev) == 1
            assert all(witness_phi(s, lev) == 0 for s in witness_samples(200, 0, lev))
            rep = nonexistence_certificate(lev, samples=200)
            assert rep.status == VERIFIED, rep.summary()
        crit = nonexistence_certificate(-2, samples=200)
        inc = [s for x in crit.cases for s in x.trace if s.status == INCONCLUSIVE]
        assert [s.label for s in inc] == ["lin8 -> lin9"]
        c["detail"] = "formal k and k = 0, 1, 5, -1/2 verified; k = -2 inconclusive at lin8 -> lin9"


def _rand_mode(rnd):
    return Mode(rnd.choice(GENS), rnd.randint(-4, 4))


def test_criterion_9_properties():
    with criterion(9, 30.0) as c:
        rnd = random.Random(9)
        for _ in range(500):
            x, y, z = (_rand_mode(rnd) for _ in range(3))
            assert pbw_normal(affine_bracket(x, y, K) + affine_bracket(y, x, K), K).is_zero()
            wx, wy, wz = (ModeExpr.word(m) for m in (x, y, z))
            jac = (commutator(wx, commutator(wy, wz, K), K) + commutator(wy, commutator(wz, wx, K), K)
                   + commutator(wz, commutator(wx, wy, K), K))
            assert pbw_normal(jac, K).is_zero()
        for _ in range(500):
            a, b, d = (LoopElt.basis(sym(rnd.choice(KINDS), rnd.randint(-4, 4))) for _ in range(3))
            assert (a * b) * d == a * (b * d)
        for _ in range(200):
            w = ModeExpr.word(*(_rand_mode(rnd) for _ in range(4)))
            assert len({str(reduce_paper(w, strategy=s)) for s in STRATEGIES}) == 1
        om = casimir()
        assert not (om - parse_pbw("k(k + 2)")).is_zero()
        for g in ("e", "f", "h"):
            x = pbw_from_word(g)
            assert om * x == x * om
        c["detail"] = "500 Jacobi triples, 500 associativity triples, 200 confluent words, Casimir"


def test_criterion_10_audit():
    with criterion(10, 10.0) as c:
        a = audit_relations(5).canonical_json()
        assert a == audit_relations(5, jobs=1).canonical_json()
        assert a == audit_relations(5, jobs=4).canonical_json()
        full = audit_relations(5)
        restricted = full.restrict(R.rule_tuples_used())
        assert not restricted.entries
        c["detail"] = f"byte-stable ({len(full.entries)} entries), empty on replay tuples"
