"""Verification suites run by ``shiftsum verify``.

Each suite yields :class:`CaseRow` records; a suite passes when every row
has ``ok`` set.  Hard inequalities (complete-sum bounds, Cauchy, exact
identities) fail rows outright; constant-free shapes only report ratios.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from . import bounds
from .characters import (
    DirichletCharacter,
    char_sum_complete,
    character,
    exponent_histogram,
    legendre_character,
)
from .decomposition import admissible_blocks, sigma12
from .modarith import get_context, is_prime
from .multfunc import make_function
from .sums import (
    lemma4_substituted,
    lemma4_sum,
    lemma5_sum,
    lemma6_exceptional,
    lemma6_sum,
    rational_char_sum,
    shifted_sum,
    shifted_sum_split,
    weil_complete_sum,
)

IDENTITY_TOL = 1e-9


@dataclass
class CaseRow:
    lemma: str
    case: str
    value: complex
    bound: float
    ok: bool

    @property
    def ratio(self) -> float:
        return abs(self.value) / self.bound if self.bound > 0 else math.inf


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def weil_characters(q: int) -> list[DirichletCharacter]:
    """Principal, quadratic and (when ``3 | q-1``) one cubic character."""
    ctx = get_context(q)
    chars = [character(ctx, 0), legendre_character(ctx)]
    if (q - 1) % 3 == 0:
        chars.append(character(ctx, (q - 1) // 3))
    return chars


def suite_weil(qmax: int = 101, qmin: int = 7) -> Iterator[CaseRow]:
    """Complete sums against ``(r + d) sqrt(q)`` over the small exhaustive grid."""
    polys = list(itertools.product(range(3), repeat=3))
    for q in primes_between(qmin, qmax):
        ctx = get_context(q)
        chars = weil_characters(q)
        for r in (1, 2, 3):
            for shifts in itertools.combinations((0, 1, 2), r):
                for chis in itertools.product(chars, repeat=r):
                    if all(c.is_principal for c in chis):
                        continue
                    for poly in polys:
                        d = max((i for i, c in enumerate(poly) if c), default=0)
                        v = weil_complete_sum(chis, shifts, poly, ctx)
                        b = bounds.weil_rhs(r, d, q)
                        yield CaseRow(
                            "weil",
                            f"q={q} k={[c.k for c in chis]} a={list(shifts)} poly={list(poly)}",
                            v.value,
                            b,
                            abs(v.value) <= b + 1e-9,
                        )


def suite_jacobsthal(qmax: int = 499) -> Iterator[CaseRow]:
    """``sum_x chi2(x) chi2(x+1) = -1`` on the integer path."""
    for q in primes_between(3, qmax):
        ctx = get_context(q)
        chi = legendre_character(ctx)
        v = weil_complete_sum([chi, chi], [0, 1], [0], ctx)
        yield CaseRow("jacobsthal", f"q={q}", v.value, 1.0, v.exact and v.exact_value == -1)


def suite_orthogonality(qmax: int = 199) -> Iterator[CaseRow]:
    """Complete sums of non-principal characters vanish.

    The exact check is on the exponent histogram: it must be constant on the
    classes it hits, and those classes form the full group of ``order``-th
    roots of unity, whose sum is zero.
    """
    for q in primes_between(3, qmax):
        ctx = get_context(q)
        x = np.arange(q)
        for k in range(1, q - 1):
            chi = character(ctx, k)
            hist = exponent_histogram(chi, x)
            support = np.flatnonzero(hist)
            step = (q - 1) // chi.order
            exact_ok = (
                support.size == chi.order
                and np.all(support % step == 0)
                and np.all(hist[support] == hist[support[0]])
            )
            v = char_sum_complete(chi)
            if chi.is_quadratic:
                exact_ok = exact_ok and v == 0
            yield CaseRow("orthogonality", f"q={q} k={k}", v, 1.0, bool(exact_ok) and abs(v) <= 1e-9)


def suite_lemma3(qs: Sequence[int] = (11, 101), slack: float = 1.5) -> Iterator[CaseRow]:
    """Incomplete rational sums: scan ratio stays below ``slack`` x calibration."""
    cal = bounds.load_calibration()
    for q in qs:
        ctx = get_context(q)
        ratio = bounds.lemma3_scan(ctx, bounds.lemma3_pairs(q))
        ref = cal.get(f"lemma3_sup_q{q}", {}).get("value")
        limit = slack * ref if ref is not None else math.inf
        yield CaseRow("lemma3", f"q={q} scan ratio={ratio:.6g} calibration={ref}", ratio, limit, ratio <= limit)
        # full period: the sum is exactly -1 for every non-principal character
        for k in (1, (q - 1) // 2):
            v = rational_char_sum(character(ctx, k), 1, 2, q)
            yield CaseRow("lemma3", f"q={q} k={k} s=1 t=2 h=q", v.value, 1.0, abs(v.value + 1) <= 1e-9)


def random_lemma4_instance(rng: random.Random, qmax: int = 10**4):
    qs = primes_between(3, min(qmax, 2000)) if qmax <= 2000 else None
    while True:
        q = rng.choice(qs) if qs else rng.randrange(3, qmax + 1)
        if not is_prime(q):
            continue
        small = [p for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47) if p != q]
        p1, p2 = rng.sample(small, 2)
        if (p1 - p2) % q == 0:
            continue
        a = rng.randrange(1, q)
        X = rng.randrange(0, 2 * q)
        Z = X + rng.randrange(0, 2 * q)
        k = rng.choice([(q - 1) // 2, rng.randrange(1, q - 1)])
        return q, k, p1, p2, a, X, Z


def suite_lemma4_identity(n: int = 1000, seed: int = 0, qmax: int = 10**4) -> Iterator[CaseRow]:
    """Direct sum against the substituted form ``chi(p1) conj(chi(p2)) sum ...``."""
    rng = random.Random(seed)
    for _ in range(n):
        q, k, p1, p2, a, X, Z = random_lemma4_instance(rng, qmax)
        chi = character(q, k)
        lhs = lemma4_sum(chi, p1, p2, a, X, Z)
        rhs = lemma4_substituted(chi, p1, p2, a, X, Z)
        if lhs.exact and rhs.exact:
            ok = lhs.exact_value == rhs.exact_value
        else:
            ok = abs(lhs.value - rhs.value) <= IDENTITY_TOL
        yield CaseRow(
            "lemma4-identity",
            f"q={q} k={k} p1={p1} p2={p2} a={a} X={X} Z={Z}",
            lhs.value - rhs.value,
            bounds.lemma4_rhs(X, Z, q) if Z > X else 1.0,
            ok,
        )


def suite_lemma5(qs: Sequence[int] = (11, 13, 31, 101), seed: int = 0) -> Iterator[CaseRow]:
    """Full-period t-fold rational sums obey the complete-sum bound ``2t sqrt(q)``."""
    rng = random.Random(seed)
    for q in qs:
        ctx = get_context(q)
        for t in (2, 3):
            if 2 * t > q:
                continue
            for _ in range(5):
                vals = rng.sample(range(q), 2 * t)
                a_list, b_list = vals[:t], vals[t:]
                for k in sorted({1, (q - 1) // 2}):
                    chi = character(ctx, k)
                    v = lemma5_sum(chi, a_list, b_list, q)
                    b = bounds.weil_rhs(2 * t, 0, q)
                    yield CaseRow("lemma5", f"q={q} k={k} a={a_list} b={b_list} h=q", v.value, b,
                                  abs(v.value) <= b + 1e-9)


def congruence_scan(p1: int, p2: int, a_list: Sequence[int], q: int) -> bool:
    """``a_i p2 = a_j p1 (mod q)`` for some ``i != j`` (no inverses)."""
    return any(
        (ai * p2 - aj * p1) % q == 0
        for i, ai in enumerate(a_list)
        for j, aj in enumerate(a_list)
        if i != j
    )


def suite_lemma6(q: int = 101, a_list: Sequence[int] = (1, 2), pmax: int = 50) -> Iterator[CaseRow]:
    """Exceptional-pair flag against a direct congruence scan, plus the
    complete-sum bound on non-exceptional full periods."""
    ctx = get_context(q)
    chi = legendre_character(ctx)
    t = len(a_list)
    ps = [p for p in primes_between(2, pmax - 1) if p % q]
    for p1 in ps:
        for p2 in ps:
            if (p1 - p2) % q == 0:
                continue
            v, flag = lemma6_sum(chi, p1, p2, a_list, 0, q)
            ref = congruence_scan(p1, p2, a_list, q)
            ok = flag == ref == lemma6_exceptional(p1, p2, a_list, q)
            bound = float(q + 1) if flag else bounds.weil_rhs(2 * t, 0, q)
            ok = ok and abs(v.value) <= bound + 1e-9
            yield CaseRow("lemma6", f"q={q} p1={p1} p2={p2} a={list(a_list)} exceptional={flag}", v.value, bound, ok)


def suite_cauchy(Ns: Sequence[int] = (10**4, 10**5), qs: Sequence[int] = (101, 1009),
                 fs: Sequence[str] = ("mobius", "liouville"), a: int = 1, k: int | None = None,
                 check: str = "cauchy") -> Iterator[CaseRow]:
    """Cauchy step and pair partition for every admissible block."""
    for N in Ns:
        for q in qs:
            ctx = get_context(q)
            chi = legendre_character(ctx) if k is None else character(ctx, k)
            for name in fs:
                f = make_function(name)
                for r in admissible_blocks(N):
                    s = sigma12(f, chi, a, N, r)
                    case = f"N={N} q={q} k={chi.k} f={name} r={r}"
                    if check == "cauchy":
                        yield CaseRow("cauchy", case, s.sigma1, s.cauchy_rhs, s.cauchy_ok)
                    else:
                        yield CaseRow("partition", case, s.diag + s.offdiag - s.sigma2, 1.0, s.partition_ok)


def suite_splitting(Ns: Sequence[int] = (10**3, 10**4), qs: Sequence[int] = (7, 101),
                    fs: Sequence[str] = ("mobius", "liouville", "one")) -> Iterator[CaseRow]:
    """Total = coprime part + multiples of ``q`` part, exactly."""
    for N in Ns:
        for q in qs:
            chi = legendre_character(get_context(q))
            for name in fs:
                f = make_function(name)
                total = shifted_sum(f, chi, 1, N)
                cop, mul = shifted_sum_split(f, chi, 1, N)
                ok = total.exact_value == cop.exact_value + mul.exact_value
                ok = ok and abs(mul.value) <= N // q + 1
                yield CaseRow("splitting", f"N={N} q={q} f={name}", total.value - cop.value - mul.value,
                              float(N // q + 1), ok)


SUITES: dict[str, Callable[..., Iterator[CaseRow]]] = {
    "weil": suite_weil,
    "jacobsthal": suite_jacobsthal,
    "orthogonality": suite_orthogonality,
    "lemma3": suite_lemma3,
    "lemma4-identity": suite_lemma4_identity,
    "lemma5": suite_lemma5,
    "lemma6": suite_lemma6,
    "cauchy": suite_cauchy,
    "partition": lambda **kw: suite_cauchy(check="partition", **kw),
    "splitting": suite_splitting,
}
