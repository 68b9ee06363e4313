import math

import numpy as np
import pytest

import oracles
from shiftsum.characters import character
from shiftsum.decomposition import (
    DecompositionReport,
    Sigma12Report,
    Theorem2Case,
    admissible_blocks,
    block_bounds,
    block_value,
    compute_params,
    lemma1_blocks,
    product_sigma2,
    sigma12,
    theorem2_case_split,
)
from shiftsum.modarith import get_context
from shiftsum.multfunc import make_mobius, make_random_pm1
from shiftsum.sums import ShiftError

MU = make_mobius()


def test_params_empty_at_desk_scale():
    for N in (10**4, 10**6, 88081885):
        p = compute_params(N)
        assert p.empty and p.r_range == []


def test_params_first_nonempty_ranges():
    assert compute_params(88081886).r_range == [2]
    assert compute_params(10**9).r_range == [2]
    # loglog 6N = 4 exactly in double precision
    N = math.ceil(math.exp(math.exp(4)) / 6)
    assert compute_params(N).d1 == 4.0
    assert compute_params(N).r_range == [3]
    assert compute_params(N // 2).r_range == [2]


def test_block_bounds():
    assert block_bounds(0) == (1, 2)
    assert block_bounds(1) == (3, 7)
    assert block_bounds(3) == (21, 54)
    assert admissible_blocks(1000) == [0, 1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("k", [50, 1, 20])
@pytest.mark.parametrize("r", [1, 3, 4])
def test_sigma12_against_oracle(k, r):
    N, q = 1000, 101
    mu_ref, _ = oracles.mu_lambda_trial_division(N)
    chi_o = oracles.CharOracle(q, k)
    ref = oracles.block_oracle(lambda n: int(mu_ref[n]), chi_o, 1, N, r, q)
    s = sigma12(MU, character(q, k), 1, N, r)
    assert s.ymax == ref["ymax"] and s.n_primes == len(ref["primes"])
    assert abs(s.sigma1 - ref["sigma1"]) < 1e-9
    assert abs(s.sigma2 - ref["sigma2"]) < 1e-9
    assert abs(s.diag - ref["diag"]) < 1e-9
    assert abs(s.offdiag - ref["offdiag"]) < 1e-9
    assert s.cauchy_ok and s.partition_ok
    assert s.exact == (k == 50)
    b = block_value(MU, character(q, k), 1, N, r)
    assert abs(b.value - ref["sigma1"]) < 1e-9


def test_sigma12_frozen_values():
    # block_oracle at N=1000, q=101, r=3, quadratic character, a=1
    s = sigma12(MU, character(101, 50), 1, 1000, 3)
    assert (s.sigma2_exact, s.diag_exact, s.offdiag_exact) == (247, 221, 26)
    assert s.sigma1 == 79.0


def test_sigma12_report_roundtrip():
    s = sigma12(MU, character(101, 3), 1, 1000, 2)
    assert Sigma12Report.from_dict(s.to_dict()) == s


def test_sigma12_rejects_large_r():
    with pytest.raises(ValueError):
        sigma12(MU, character(101, 50), 1, 100, 5)


def test_lemma1_report():
    chi = character(1009, 504)
    rep = lemma1_blocks(MU, chi, 1, 10**4)
    assert rep.warning and "empty" in rep.warning
    assert rep.blocks == []
    assert rep.rhs_total == pytest.approx(rep.err_loglog + rep.err_q)
    assert rep.measured_C == pytest.approx(rep.lhs / rep.rhs_total)
    full = lemma1_blocks(MU, chi, 1, 10**4, r_values=admissible_blocks(10**4), with_sigma12=True)
    assert full.warning is None and len(full.blocks) == len(full.sigma12) == 10
    assert all(s.cauchy_ok and s.partition_ok for s in full.sigma12)
    again = DecompositionReport.from_dict(full.to_dict())
    assert again.to_dict() == full.to_dict()


def test_case_split():
    ctx = get_context(7)
    assert theorem2_case_split([0, 1], ctx) is Theorem2Case.SOME_SHIFT_ZERO
    assert theorem2_case_split([7, 1], ctx) is Theorem2Case.SOME_SHIFT_ZERO
    assert theorem2_case_split([1, 2], ctx) is Theorem2Case.NO_SHIFT_ZERO
    with pytest.raises(ShiftError):
        theorem2_case_split([1, 8], ctx)


@pytest.mark.parametrize("shifts", [(1, 2), (0, 3), (1, 2, 5)])
def test_product_sigma2_partition(shifts):
    f = make_random_pm1(2)
    N, q, r = 2000, 31, 3
    rep = product_sigma2(f, character(q, 10), shifts, N, r)
    assert abs(rep.diag + rep.exceptional + rep.regular - rep.sigma2) < 1e-8
    assert rep.sigma1 <= math.sqrt(rep.ymax) * math.sqrt(rep.sigma2.real) + 1e-9
    # each pair sum is over at most ymax terms
    assert rep.regular_max_abs <= rep.ymax + 1e-9
    assert rep.to_dict()["case"] == rep.case.value


def test_product_sigma2_inner_sums_against_naive():
    q, k, N, r, shifts = 31, 10, 2000, 3, (1, 2)
    chi_o = oracles.CharOracle(q, k)
    mu_ref, _ = oracles.mu_lambda_trial_division(N)
    lo, hi = block_bounds(r)
    P = [p for p in range(lo, hi + 1) if oracles.is_prime_td(p) and p != q]
    ymax = math.floor(N / math.exp(r))
    s1 = 0.0
    for y in range(1, ymax + 1):
        s1 += abs(sum(int(mu_ref[p]) * chi_o(p * y + 1) * chi_o(p * y + 2) for p in P if p * y <= N))
    rep = product_sigma2(MU, character(q, k), shifts, N, r)
    assert rep.sigma1 == pytest.approx(s1, abs=1e-9)
