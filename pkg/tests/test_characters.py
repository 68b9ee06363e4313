import cmath

import numpy as np
import pytest

import oracles
from shiftsum.characters import (
    char_eval,
    char_eval_int,
    char_sum_complete,
    character,
    characters_of_order,
    evaluate_index_histogram,
    exponent_histogram,
    histogram_int_value,
    index_table,
    legendre_character,
    principal_character,
)
from shiftsum.modarith import get_context


@pytest.mark.parametrize("q,k", [(7, 1), (7, 3), (11, 4), (13, 5), (101, 17)])
def test_values_match_oracle(q, k):
    chi = character(q, k)
    ref = oracles.CharOracle(q, k)
    for n in range(-q, 3 * q):
        assert abs(chi(n) - ref(n)) < 1e-12


@pytest.mark.parametrize("q", [3, 5, 7, 11, 101, 1009])
def test_quadratic_is_euler_criterion(q):
    chi = legendre_character(get_context(q))
    n = np.arange(-q, 2 * q)
    assert list(chi.int_values(n)) == [oracles.legendre_euler(int(x), q) for x in n]
    assert all(char_eval_int(chi, int(x)) == oracles.legendre_euler(int(x), q) for x in n)


def test_character_axioms():
    chi = character(31, 7)
    for m in range(1, 40):
        for n in range(1, 40):
            assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12
    assert chi(0) == 0 and chi(31) == 0
    assert abs(chi(5) - chi(5 + 31)) < 1e-15


def test_conjugate_and_order():
    chi = character(13, 4)
    assert chi.order == 3
    assert abs(chi.conjugate()(2) - chi(2).conjugate()) < 1e-12
    assert character(13, 6).is_quadratic and character(13, 6).is_real
    assert principal_character(get_context(13)).is_principal


def test_characters_of_order():
    ctx = get_context(13)
    assert [c.k for c in characters_of_order(ctx, 3)] == [4, 8]
    assert characters_of_order(ctx, 5) == []


def test_int_values_reject_complex():
    with pytest.raises(ValueError):
        character(13, 1).int_values(np.arange(5))


def test_index_out_of_range():
    with pytest.raises(ValueError):
        character(7, 6)


def test_complete_sums():
    for q in (5, 7, 13):
        assert char_sum_complete(character(q, 0)) == q - 1
        for k in range(1, q - 1):
            assert abs(char_sum_complete(character(q, k))) < 1e-12


def test_histogram_int_value_rejects_complex_support():
    ctx = get_context(13)
    h = np.zeros(12, dtype=np.int64)
    h[0], h[6] = 5, 2
    assert histogram_int_value(ctx, h) == 3
    h[4] = 1
    with pytest.raises(ValueError):
        histogram_int_value(ctx, h)


def test_evaluate_index_histogram():
    chi = character(13, 5)
    h = np.arange(12, dtype=np.int64)
    ref = sum(int(h[j]) * cmath.exp(2j * cmath.pi * 5 * j / 12) for j in range(12))
    v, ex = evaluate_index_histogram(chi, h)
    assert ex is None and abs(v - ref) < 1e-12
    v, ex = evaluate_index_histogram(character(13, 6), h)
    assert ex == sum((-1) ** j * j for j in range(12))


def test_index_table_dtype():
    assert index_table(character(13, 6)).dtype == np.int8
    assert index_table(character(13, 1)).dtype == np.complex128


def test_exponent_histogram_drops_multiples():
    chi = character(7, 1)
    h = exponent_histogram(chi, np.arange(14))
    assert h.sum() == 12
    assert char_eval(chi, 7) == 0
