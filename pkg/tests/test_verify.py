import random

import pytest

from shiftsum import verify


@pytest.mark.parametrize("name,kw", [
    ("weil", {"qmax": 13}),
    ("jacobsthal", {"qmax": 60}),
    ("orthogonality", {"qmax": 30}),
    ("lemma3", {}),
    ("lemma4-identity", {"n": 50}),
    ("lemma5", {}),
    ("lemma6", {"q": 31, "pmax": 30}),
    ("cauchy", {"Ns": [2000], "qs": [31], "fs": ["mobius"], "k": 3}),
    ("partition", {"Ns": [2000], "qs": [31], "fs": ["random:5"]}),
    ("splitting", {"Ns": [500], "qs": [7]}),
])
def test_suites_pass_on_small_grids(name, kw):
    rows = list(verify.SUITES[name](**kw))
    assert rows and all(r.ok for r in rows), [r for r in rows if not r.ok][:3]


def test_weil_characters():
    assert [c.k for c in verify.weil_characters(13)] == [0, 6, 4]
    assert [c.k for c in verify.weil_characters(11)] == [0, 5]


def test_lemma4_instances_are_valid():
    rng = random.Random(1)
    for _ in range(200):
        q, k, p1, p2, a, X, Z = verify.random_lemma4_instance(rng, 500)
        assert q % 2 and (p1 - p2) % q and 1 <= a < q and X <= Z and 1 <= k <= q - 2


def test_congruence_scan():
    assert verify.congruence_scan(3, 6, [1, 2], 101)
    assert not verify.congruence_scan(3, 5, [1, 2], 101)


def test_case_row_ratio():
    assert verify.CaseRow("x", "y", 3 + 4j, 10.0, True).ratio == 0.5
