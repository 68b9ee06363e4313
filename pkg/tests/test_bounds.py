import math

import pytest

import oracles
from shiftsum.bounds import (
    BoundReport,
    lemma3_pairs,
    lemma3_scan,
    load_calibration,
    make_report,
    nontrivial_range_probe,
    theorem1_report,
    theorem1_rhs,
    theorem2_report,
    weil_check,
    weil_rhs,
)
from shiftsum.characters import character
from shiftsum.modarith import get_context
from shiftsum.multfunc import make_mobius
from shiftsum.sums import SumValue


def test_theorem1_rhs_terms():
    N, q = 10**4, 101
    ll = math.log(math.log(6 * N))
    ref = N * q ** -0.25 * ll + q ** 0.25 * math.sqrt(N) * math.log(6 * N) + N / math.sqrt(ll)
    assert theorem1_rhs(N, q) == pytest.approx(ref, rel=1e-15)


def test_report_ratio_and_flag():
    r = make_report("x", 5.0, 10.0, N=20)
    assert r.ratio == 0.5 and r.nontrivial
    assert not make_report("x", 20.0, 10.0, N=20).nontrivial
    assert BoundReport.from_dict(r.to_dict()) == r
    with pytest.raises(ValueError):
        make_report("x", 1.0, 0.0)


def test_theorem_reports():
    chi = character(1009, 504)
    rep, s = theorem1_report(make_mobius(), chi, 1, 10**4)
    assert rep.lhs_abs == abs(s.value) and rep.t == 1
    rep2, _ = theorem2_report(make_mobius(), chi, [1, 2], 10**4)
    assert rep2.label == "theorem2[t=2]"


def test_weil_check_raises_on_violation():
    assert weil_check(SumValue(1.0, 7), 1, 0, 7).ratio < 1
    with pytest.raises(AssertionError):
        weil_check(SumValue(10.0, 7), 1, 0, 7)
    assert weil_rhs(2, 1, 9) == 9.0


def test_probe_window():
    p = nontrivial_range_probe(10**6, 1009, 0.1)
    assert p.lower < 1009 < p.upper and p.in_window
    assert not nontrivial_range_probe(10**6, 10**13 + 37, 0.1).in_window
    assert not nontrivial_range_probe(10**6, 11, 1.0).in_window
    with pytest.raises(ValueError):
        nontrivial_range_probe(100, 7, 0)


def brute_lemma3(q, pairs):
    best = 0.0
    for k in range(1, q - 1):
        chi = oracles.CharOracle(q, k)
        for s, t in pairs:
            acc = 0j
            for x in range(1, q + 1):
                acc += chi((x + s) * oracles.inv_bf(x + t, q))
                best = max(best, abs(acc))
    return best / (math.sqrt(q) * math.log(q))


def test_lemma3_scan_against_brute_force():
    pairs = lemma3_pairs(13, width=4)
    assert lemma3_scan(get_context(13), pairs) == pytest.approx(brute_lemma3(13, pairs), rel=1e-12)


def test_calibration_fixtures():
    cal = load_calibration()
    assert cal["mertens_1e6"]["value"] == 212
    for row in cal.values():
        assert {"label", "grid", "value", "oracle", "date"} <= set(row)
    assert lemma3_scan(get_context(11), lemma3_pairs(11)) == pytest.approx(cal["lemma3_sup_q11"]["value"], rel=1e-9)
