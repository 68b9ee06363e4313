import numpy as np
import pytest

import oracles
from shiftsum.modarith import (
    ModulusError,
    PrimeContext,
    build_dlog_table,
    find_primitive_root,
    get_context,
    is_prime,
    mod_inverse,
    prime_factors,
)


def test_is_prime_matches_trial_division():
    for n in range(-3, 5000):
        assert is_prime(n) == oracles.is_prime_td(n), n


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime(1000003)


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(97) == [97]


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101, 1009, 10007])
def test_primitive_root_is_smallest(q):
    assert find_primitive_root(q) == oracles.primitive_root_bf(q)


def test_primitive_root_rejects_composite():
    with pytest.raises(ModulusError):
        find_primitive_root(15)


@pytest.mark.parametrize("q", [3, 7, 101, 1009])
def test_dlog_table_against_power_walk(q):
    ctx = PrimeContext(q)
    ref = oracles.dlog_bf(q)
    assert ctx.dlog[0] == -1
    for x in range(1, q):
        assert ctx.dlog[x] == ref[x]
        assert ctx.powers[ctx.dlog[x]] == x


def test_tables_read_only():
    ctx = get_context(101)
    with pytest.raises(ValueError):
        ctx.dlog[1] = 5
    with pytest.raises(ValueError):
        ctx.roots[0] = 0


def test_build_dlog_rejects_non_generator():
    with pytest.raises(ModulusError):
        build_dlog_table(7, 2)  # 2 has order 3 mod 7


@pytest.mark.parametrize("q", [2, 4, 9, 1])
def test_context_rejects_bad_modulus(q):
    with pytest.raises(ModulusError):
        PrimeContext(q)


def test_inverse_convention():
    ctx = get_context(101)
    assert mod_inverse(0, ctx) == 0
    assert mod_inverse(101, ctx) == 0
    for x in range(1, 101):
        assert mod_inverse(x, ctx) == oracles.inv_bf(x, 101)
    xs = np.arange(-5, 300)
    inv = ctx.inverse_array(xs)
    assert all(inv[i] == oracles.inv_bf(int(x), 101) for i, x in enumerate(xs))


def test_roots_pinned():
    ctx = get_context(13)
    assert ctx.roots[0] == 1
    assert ctx.roots[6] == -1
    assert ctx.roots[3] == 1j and ctx.roots[9] == -1j


def test_context_cache():
    assert get_context(1009) is get_context(1009)
