import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from shiftsum.multfunc import (
    SieveLimitError,
    build_spf_sieve,
    make_function,
    make_liouville,
    make_mobius,
    make_one,
    make_random_pm1,
    random_sign,
)

SIEVE = build_spf_sieve(20000)
MU_REF, LAM_REF = oracles.mu_lambda_trial_division(20000)


def test_spf_against_trial_division():
    for n in range(2, 3000):
        assert SIEVE.spf[n] == oracles.factor_td(n)[0][0]


def test_factor():
    for n in (1, 2, 360, 9973, 19998):
        assert SIEVE.factor(n) == oracles.factor_td(n)


def test_primes_range():
    P = SIEVE.primes(100, 200)
    assert list(P) == [p for p in range(100, 201) if oracles.is_prime_td(p)]
    assert SIEVE.primes(50, 10).size == 0


def test_tables_against_oracle():
    assert np.array_equal(make_mobius().table(SIEVE), MU_REF)
    assert np.array_equal(make_liouville().table(SIEVE), LAM_REF)
    one = make_one().table(SIEVE)
    assert one[0] == 0 and np.all(one[1:] == 1)


def test_scalar_eval_matches_table():
    mu = make_mobius()
    for n in (1, 2, 4, 6, 30, 210, 9991):
        assert mu(n, SIEVE) == oracles.mobius_td(n)
    assert make_liouville()(12) == oracles.liouville_td(12)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 140), st.integers(1, 140))
def test_multiplicativity(m, n):
    mu, lam = make_mobius(), make_liouville()
    rnd = make_random_pm1(7)
    if math.gcd(m, n) == 1:
        assert mu(m * n, SIEVE) == mu(m, SIEVE) * mu(n, SIEVE)
    assert lam(m * n, SIEVE) == lam(m, SIEVE) * lam(n, SIEVE)
    assert rnd(m * n, SIEVE) == rnd(m, SIEVE) * rnd(n, SIEVE)


def test_random_function_deterministic():
    f, g = make_random_pm1(3), make_random_pm1(3)
    assert f is g
    t = f.table(SIEVE)
    P = SIEVE.primes(2, 2000)
    assert all(t[p] == random_sign(3, int(p)) for p in P)
    assert not np.array_equal(t, make_random_pm1(4).table(SIEVE))
    # roughly balanced signs on primes
    assert abs(t[P].mean()) < 0.2


def test_complex_valued_function():
    from shiftsum.multfunc import MultiplicativeFunction

    f = MultiplicativeFunction("chi4", lambda p, e: (1j if p % 4 == 1 else -1j if p % 4 == 3 else 0) ** e)
    t = f.table(SIEVE, 100)
    assert t.dtype == np.complex128
    assert t[15] == f(3, SIEVE) * f(5, SIEVE)
    assert f.conjugate()(5, SIEVE) == -1j


def test_make_function_names():
    assert make_function("mu") is make_mobius()
    assert make_function("random:9").name == "random:9"
    with pytest.raises(ValueError):
        make_function("zeta")


def test_sieve_limits():
    with pytest.raises(SieveLimitError):
        build_spf_sieve(10**6, budget=1000)
    with pytest.raises(ValueError):
        build_spf_sieve(1)
    with pytest.raises(ValueError):
        SIEVE.factor(0)
