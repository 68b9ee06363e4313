"""Evaluators for the shifted sums and the complete/incomplete character sums
used to bound them.

Every evaluator returns a :class:`SumValue`.  When the coefficients and the
character are integer valued (the quadratic or principal character with a
built-in ``f``) the value is accumulated exactly and ``exact_value`` holds the
integer result.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .characters import (
    DirichletCharacter,
    evaluate_index_histogram,
    histogram_value,
)
from .modarith import PrimeContext, is_prime
from .multfunc import MultiplicativeFunction, SpfSieve, build_spf_sieve

CHUNK = 1 << 18


class ShiftError(ValueError):
    """Invalid shift configuration."""


@dataclass(frozen=True)
class SumValue:
    value: complex
    n_terms: int
    exact: bool = False
    exact_value: int | None = None

    def __abs__(self) -> float:
        return abs(self.value)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))

    def to_dict(self) -> dict:
        d = {
            "value": {"re": self.value.real, "im": self.value.imag},
            "abs": abs(self.value),
            "n_terms": self.n_terms,
            "exact": self.exact,
        }
        if self.exact_value is not None:
            d["exact_value"] = self.exact_value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SumValue:
        v = d["value"]
        return cls(complex(v["re"], v["im"]), int(d["n_terms"]), bool(d["exact"]), d.get("exact_value"))


@dataclass(frozen=True)
class ShiftConfig:
    a_list: tuple[int, ...]
    N: int

    @property
    def t(self) -> int:
        return len(self.a_list)

    @property
    def t_ge_2(self) -> bool:
        return self.t >= 2

    def validate(self, q: int) -> None:
        """Check the hypotheses of the single-shift or product theorem."""
        if self.N < 1:
            raise ShiftError("N must be at least 1")
        if self.t == 0:
            raise ShiftError("at least one shift required")
        if self.t == 1:
            if math.gcd(self.a_list[0], q) != 1:
                raise ShiftError(f"shift {self.a_list[0]} is not coprime to q={q}")
        else:
            check_distinct_shifts(self.a_list, q)


def check_distinct_shifts(shifts: Sequence[int], q: int) -> None:
    res = [a % q for a in shifts]
    if len(set(res)) != len(res):
        raise ShiftError(f"shifts {list(shifts)} are not pairwise distinct mod {q}")


# coefficient tables -------------------------------------------------------

_SIEVES: dict[str, SpfSieve] = {}
_TABLES: dict[tuple, np.ndarray] = {}


def get_sieve(N: int) -> SpfSieve:
    """Shared sieve covering at least ``N``; grows on demand."""
    s = _SIEVES.get("main")
    if s is None or s.limit < N:
        s = build_spf_sieve(max(N, 1 << 12))
        _SIEVES["main"] = s
        _TABLES.clear()
    return s


def coefficient_table(f: MultiplicativeFunction, N: int, sieve: SpfSieve | None = None) -> np.ndarray:
    """``f(n)`` for ``0 <= n <= N``; cached for the shared sieve."""
    if sieve is not None:
        if sieve.limit < N:
            raise ValueError(f"N={N} exceeds sieve limit {sieve.limit}")
        return f.table(sieve, N)
    sieve = get_sieve(N)
    key = (f, sieve.limit)
    tab = _TABLES.get(key)
    if tab is None:
        tab = f.table(sieve)
        _TABLES[key] = tab
    return tab[: N + 1]


def _value_from_hist(chi: DirichletCharacter, hist: np.ndarray, n_terms: int) -> SumValue:
    value, exact = evaluate_index_histogram(chi, hist)
    return SumValue(value, n_terms, exact is not None, exact)


def _index_histogram(fvals, ctx, shifts, lo, hi, threads, backend):
    chunks = [(s, min(s + CHUNK, hi)) for s in range(lo, hi, CHUNK)]

    def run(c):
        return kernels.dlog_histogram(fvals, ctx.dlog, ctx.q, shifts, c[0], c[1], backend=backend)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    # fixed chunk order keeps the complex path independent of worker count
    total = np.zeros(ctx.q - 1, dtype=parts[0].dtype if parts else np.int64)
    for p in parts:
        total = total + p
    return total


def shifted_sum(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a: int,
    N: int,
    *,
    sieve: SpfSieve | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> SumValue:
    """``sum_{n <= N} f(n) chi(n + a)``."""
    if N < 1:
        raise ShiftError("N must be at least 1")
    fvals = coefficient_table(f, N, sieve)
    hist = _index_histogram(fvals, chi.ctx, [a], 1, N + 1, threads, backend)
    return _value_from_hist(chi, hist, N)


def shifted_product_sum(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a_list: Sequence[int],
    N: int,
    *,
    sieve: SpfSieve | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> SumValue:
    """``sum_{n <= N} f(n) chi(n + a_1) ... chi(n + a_t)`` for ``t >= 2``.

    The character is evaluated once at ``prod (n + a_i) mod q``.
    """
    if len(a_list) < 2:
        raise ShiftError("product sum needs at least two shifts")
    check_distinct_shifts(a_list, chi.q)
    if N < 1:
        raise ShiftError("N must be at least 1")
    fvals = coefficient_table(f, N, sieve)
    hist = _index_histogram(fvals, chi.ctx, list(a_list), 1, N + 1, threads, backend)
    return _value_from_hist(chi, hist, N)


def shifted_sum_split(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a: int,
    N: int,
    *,
    sieve: SpfSieve | None = None,
) -> tuple[SumValue, SumValue]:
    """Split the shifted sum into the parts with ``(n, q) = 1`` and ``q | n``."""
    q = chi.q
    fvals = coefficient_table(f, N, sieve)
    coprime = fvals.copy()
    coprime[::q] = 0
    hist = _index_histogram(coprime, chi.ctx, [a], 1, N + 1, 1, None)
    multiples = np.arange(q, N + 1, q, dtype=np.int64)
    w = fvals[multiples]
    x = chi.ctx.dlog[(multiples + a) % q]
    keep = (x >= 0) & (w != 0)
    h2 = np.zeros(q - 1, dtype=np.complex128 if np.iscomplexobj(w) else np.int64)
    np.add.at(h2, x[keep], w[keep])
    return (
        _value_from_hist(chi, hist, N - multiples.size),
        _value_from_hist(chi, h2, multiples.size),
    )


# complete and incomplete sums --------------------------------------------

def sum_over_residues(chi: DirichletCharacter, residues: np.ndarray, weight: complex | int = 1) -> SumValue:
    """``weight * sum chi(x)`` over an array of integers."""
    residues = np.asarray(residues, dtype=np.int64) % chi.q
    j = chi.ctx.dlog[residues]
    hist = np.bincount(j[j >= 0], minlength=chi.q - 1).astype(np.int64)
    value, exact = evaluate_index_histogram(chi, hist)
    n = int(residues.size)
    if isinstance(weight, (int, np.integer)) and exact is not None:
        return SumValue(weight * value, n, True, int(weight) * exact)
    return SumValue(weight * value, n, False, None)


def _poly_mod(poly: Sequence[int], x: np.ndarray, q: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(list(poly)):
        acc = (acc * x + int(c)) % q
    return acc


def poly_degree(poly: Sequence[int], q: int) -> int:
    """Degree over ``F_q`` of a coefficient list ``[c0, c1, ...]`` (0 for constants)."""
    d = 0
    for i, c in enumerate(poly):
        if int(c) % q:
            d = i
    return d


def weil_complete_sum(
    chi_list: Sequence[DirichletCharacter],
    a_list: Sequence[int],
    poly: Sequence[int],
    ctx: PrimeContext,
) -> SumValue:
    """``sum_{x in F_q} chi_1(x + a_1) ... chi_r(x + a_r) e(f(x)/q)``.

    ``poly`` lists coefficients from the constant term up.  Values are
    collected as counts per root of unity of order ``q(q-1)`` before the
    final complex sum.
    """
    q = ctx.q
    if len(chi_list) != len(a_list) or not chi_list:
        raise ShiftError("need one shift per character")
    if any(c.q != q for c in chi_list):
        raise ValueError("characters must share the modulus")
    if all(c.is_principal for c in chi_list):
        raise ValueError("at least one character must be non-principal")
    check_distinct_shifts(a_list, q)
    x = np.arange(q, dtype=np.int64)
    expo = np.zeros(q, dtype=np.int64)
    alive = np.ones(q, dtype=bool)
    for chi, a in zip(chi_list, a_list):
        j = ctx.dlog[(x + a) % q].astype(np.int64)
        alive &= j >= 0
        expo = (expo + chi.k * np.maximum(j, 0)) % (q - 1)
    fx = _poly_mod(poly, x, q)
    all_real = all(c.is_real for c in chi_list)
    if not np.any(fx):
        hist = np.bincount(expo[alive], minlength=q - 1).astype(np.int64)
        if all_real:
            half = (q - 1) // 2
            ex = int(hist[0]) - int(hist[half])
            return SumValue(complex(ex), q, True, ex)
        return SumValue(histogram_value(ctx, hist), q, False, None)
    M = q * (q - 1)
    num = (expo * q + fx * (q - 1)) % M
    hist = np.bincount(num[alive], minlength=M).astype(np.float64)
    nz = np.nonzero(hist)[0]
    theta = 2.0 * np.pi * nz / M
    w = hist[nz]
    return SumValue(complex(math.fsum(w * np.cos(theta)), math.fsum(w * np.sin(theta))), q, False, None)


def rational_char_sum(chi: DirichletCharacter, s: int, t: int, h: int) -> SumValue:
    """``sum_{x=1}^{h} chi((x + s) / (x + t))`` with ``1/0 = 0``."""
    q = chi.q
    if chi.is_principal:
        raise ValueError("character must be non-principal")
    if (s - t) % q == 0:
        raise ShiftError("s and t must be distinct mod q")
    if not 1 <= h <= q:
        raise ValueError(f"h must lie in [1, {q}]")
    x = np.arange(1, h + 1, dtype=np.int64)
    r = (x + s) % q * chi.ctx.inverse_array(x + t) % q
    return sum_over_residues(chi, r)


def _check_prime_pair(p1: int, p2: int, q: int) -> None:
    for p in (p1, p2):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p % q == 0:
            raise ValueError(f"prime {p} divides q={q}")
    if (p1 - p2) % q == 0:
        raise ValueError(f"p1={p1} and p2={p2} are congruent mod {q}")


def lemma4_sum(chi: DirichletCharacter, p1: int, p2: int, a: int, X: int, Z: int) -> SumValue:
    """``sum_{X < y <= Z} chi((p1 y + a) / (p2 y + a))`` with ``1/0 = 0``."""
    q = chi.q
    _check_prime_pair(p1, p2, q)
    if math.gcd(a, q) != 1:
        raise ValueError(f"a={a} is not coprime to q={q}")
    if Z < X:
        raise ValueError("need X <= Z")
    y = np.arange(X + 1, Z + 1, dtype=np.int64)
    r = (p1 * y + a) % q * chi.ctx.inverse_array(p2 * y + a) % q
    return sum_over_residues(chi, r)


def lemma4_substituted(chi: DirichletCharacter, p1: int, p2: int, a: int, X: int, Z: int) -> SumValue:
    """Same sum after pulling out ``chi(p1) conj(chi(p2))``.

    Uses ``pow(x, -1, q)`` for the inverses so that it shares no inverse
    routine with :func:`lemma4_sum`.
    """
    q = chi.q
    _check_prime_pair(p1, p2, q)
    if math.gcd(a, q) != 1:
        raise ValueError(f"a={a} is not coprime to q={q}")
    if Z < X:
        raise ValueError("need X <= Z")
    s = a * pow(p1, -1, q) % q
    t = a * pow(p2, -1, q) % q
    terms = []
    for y in range(X + 1, Z + 1):
        den = (y + t) % q
        inv = pow(den, -1, q) if den else 0
        terms.append((y + s) * inv % q)
    inner = sum_over_residues(chi, np.array(terms, dtype=np.int64))
    if chi.is_real:
        c = _real_value(chi, p1) * _real_value(chi, p2)
        ex = None if inner.exact_value is None else c * inner.exact_value
        return SumValue(c * inner.value, inner.n_terms, ex is not None, ex)
    c = chi(p1) * chi(p2).conjugate()
    return SumValue(c * inner.value, inner.n_terms, False, None)


def _real_value(chi: DirichletCharacter, n: int) -> int:
    from .characters import char_eval_int

    return char_eval_int(chi, n)


def lemma5_sum(chi: DirichletCharacter, a_list: Sequence[int], b_list: Sequence[int], h: int) -> SumValue:
    """``sum_{x=1}^{h} chi(prod (x + a_i) / prod (x + b_i))`` with ``1/0 = 0``."""
    q = chi.q
    if chi.is_principal:
        raise ValueError("character must be non-principal")
    if len(a_list) != len(b_list) or len(a_list) < 2:
        raise ShiftError("need t >= 2 numerator and denominator shifts")
    check_distinct_shifts(list(a_list) + list(b_list), q)
    if not 1 <= h <= q:
        raise ValueError(f"h must lie in [1, {q}]")
    x = np.arange(1, h + 1, dtype=np.int64)
    num = np.ones_like(x)
    den = np.ones_like(x)
    for a, b in zip(a_list, b_list):
        num = num * ((x + a) % q) % q
        den = den * ((x + b) % q) % q
    r = num * chi.ctx.inverse_array(den) % q
    return sum_over_residues(chi, r)


def lemma6_exceptional(p1: int, p2: int, a_list: Sequence[int], q: int) -> bool:
    """True iff ``p2 = a_j p1 / a_i (mod q)`` for some ``i != j``."""
    p1 %= q
    p2 %= q
    for i, ai in enumerate(a_list):
        inv = pow(ai % q, -1, q)
        for j, aj in enumerate(a_list):
            if i != j and p2 == inv * aj % q * p1 % q:
                return True
    return False


def lemma6_sum(
    chi: DirichletCharacter, p1: int, p2: int, a_list: Sequence[int], X: int, Z: int
) -> tuple[SumValue, bool]:
    """``sum_{X < y <= Z} chi(prod (p1 y + a_i) / prod (p2 y + a_i))`` and the
    exceptional-pair flag."""
    q = chi.q
    if len(a_list) < 2:
        raise ShiftError("need t >= 2 shifts")
    for a in a_list:
        if a % q == 0:
            raise ShiftError(f"shift {a} is divisible by q={q}")
    check_distinct_shifts(a_list, q)
    _check_prime_pair(p1, p2, q)
    if Z < X:
        raise ValueError("need X <= Z")
    y = np.arange(X + 1, Z + 1, dtype=np.int64)
    num = np.ones_like(y)
    den = np.ones_like(y)
    for a in a_list:
        num = num * ((p1 * y + a) % q) % q
        den = den * ((p2 * y + a) % q) % q
    r = num * chi.ctx.inverse_array(den) % q
    return sum_over_residues(chi, r), lemma6_exceptional(p1, p2, a_list, q)
