"""Multiplicative coefficient functions with ``|f(n)| <= 1``.

A function is given by its values on prime powers; bulk tables are built
from a smallest-prime-factor sieve, so multiplicativity holds by
construction.
"""

from __future__ import annotations

import os
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels

# bytes per sieve entry: spf (4) + exponent (1) + cofactor (4) + table (1)
_BYTES_PER_ENTRY = 10
DEFAULT_SIEVE_BUDGET = int(os.environ.get("SHIFTSUM_SIEVE_BUDGET", 10**8 * _BYTES_PER_ENTRY + (1 << 20)))

_MASK64 = (1 << 64) - 1


class SieveLimitError(MemoryError):
    """The requested sieve exceeds the memory budget."""


@dataclass(frozen=True, eq=False)
class SpfSieve:
    """Smallest prime factor of every ``n <= limit``.

    ``spf[0] = 0`` and ``spf[1] = 1`` are placeholders.
    """

    limit: int
    spf: np.ndarray = field(repr=False)
    expo: np.ndarray = field(repr=False)
    cof: np.ndarray = field(repr=False)

    def primes(self, lo: int = 2, hi: int | None = None) -> np.ndarray:
        """Primes ``p`` with ``lo <= p <= hi`` as ``int64``."""
        hi = self.limit if hi is None else min(hi, self.limit)
        lo = max(lo, 2)
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        seg = self.spf[lo : hi + 1]
        return np.flatnonzero(seg == np.arange(lo, hi + 1, dtype=np.int32)).astype(np.int64) + lo

    def factor(self, n: int) -> list[tuple[int, int]]:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range [1, {self.limit}]")
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


def build_spf_sieve(N: int, budget: int | None = None, backend: str | None = None) -> SpfSieve:
    """Linear sieve of smallest prime factors up to ``N``."""
    if N < 2:
        raise ValueError("sieve limit must be at least 2")
    budget = DEFAULT_SIEVE_BUDGET if budget is None else budget
    if (N + 1) * _BYTES_PER_ENTRY > budget:
        raise SieveLimitError(f"sieve up to {N} needs ~{(N + 1) * _BYTES_PER_ENTRY} bytes, budget {budget}")
    spf = kernels.spf_sieve(N, backend=backend)
    expo, cof = kernels.prime_power_split(spf, backend=backend)
    for arr in (spf, expo, cof):
        arr.setflags(write=False)
    return SpfSieve(N, spf, expo, cof)


@dataclass(frozen=True, eq=False)
class MultiplicativeFunction:
    """``f`` defined by ``prime_power_value(p, e)``.

    ``vector_rule``, when given, evaluates the same rule on arrays of primes and
    exponents.  ``integer`` declares that every value lies in ``{-1, 0, 1}``,
    which enables the exact integer kernels.
    """

    name: str
    prime_power_value: Callable[[int, int], complex]
    complete: bool = False
    integer: bool = False
    vector_rule: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def __call__(self, n: int, sieve: SpfSieve | None = None) -> complex:
        if sieve is None:
            sieve = _small_sieve(n)
        return eval_f(self, n, sieve)

    def conjugate(self) -> MultiplicativeFunction:
        if self.integer:
            return self
        rule = self.prime_power_value
        vrule = self.vector_rule
        return MultiplicativeFunction(
            name=f"conj({self.name})",
            prime_power_value=lambda p, e: complex(rule(p, e)).conjugate(),
            complete=self.complete,
            integer=False,
            vector_rule=None if vrule is None else (lambda p, e: np.conj(vrule(p, e))),
        )

    def prime_values(self, primes: np.ndarray) -> np.ndarray:
        """``f(p)`` for an array of primes (``int8`` on the integer path)."""
        primes = np.asarray(primes, dtype=np.int64)
        e = np.ones_like(primes)
        return self._rule_array(primes, e)

    def _rule_array(self, p: np.ndarray, e: np.ndarray) -> np.ndarray:
        if self.vector_rule is not None:
            v = self.vector_rule(p, e)
        else:
            v = _apply_scalar_rule(self.prime_power_value, p, e)
        if self.integer:
            return np.asarray(v).real.astype(np.int8) if np.iscomplexobj(v) else np.asarray(v).astype(np.int8)
        return np.asarray(v, dtype=np.complex128)

    def table(self, sieve: SpfSieve, N: int | None = None, backend: str | None = None) -> np.ndarray:
        """``f(n)`` for ``0 <= n <= N`` (``f(0) = 0``)."""
        N = sieve.limit if N is None else N
        if N > sieve.limit:
            raise ValueError(f"N={N} exceeds sieve limit {sieve.limit}")
        spf = sieve.spf[: N + 1].astype(np.int64)
        expo = sieve.expo[: N + 1].astype(np.int64)
        spf[:2] = 2
        expo[:2] = 1
        g = self._rule_array(spf, expo)
        g[:2] = 0
        return kernels.multiplicative_table(np.ascontiguousarray(sieve.cof[: N + 1]), g, backend=backend)


def _apply_scalar_rule(rule, p: np.ndarray, e: np.ndarray) -> np.ndarray:
    pairs = np.stack([p, e], axis=1)
    uniq, inv = np.unique(pairs, axis=0, return_inverse=True)
    vals = np.array([complex(rule(int(pp), int(ee))) for pp, ee in uniq], dtype=np.complex128)
    out = vals[inv.reshape(-1)]
    if np.all(out.imag == 0):
        return out.real
    return out


_SMALL: dict[str, SpfSieve] = {}


def _small_sieve(n: int) -> SpfSieve:
    s = _SMALL.get("s")
    if s is None or s.limit < n:
        s = build_spf_sieve(max(2 * n, 1 << 12))
        _SMALL["s"] = s
    return s


def eval_f(f: MultiplicativeFunction, n: int, sieve: SpfSieve) -> complex:
    """``f(n)`` by repeated division with the smallest-prime-factor table."""
    if not 1 <= n <= sieve.limit:
        raise ValueError(f"{n} outside sieve range [1, {sieve.limit}]")
    v: complex = 1
    for p, e in sieve.factor(n):
        v *= f.prime_power_value(p, e)
        if v == 0:
            break
    if f.integer:
        return int(v.real) if isinstance(v, complex) else int(v)
    return complex(v)


# built-in functions

@lru_cache(maxsize=None)
def make_mobius() -> MultiplicativeFunction:
    return MultiplicativeFunction(
        name="mobius",
        prime_power_value=lambda p, e: -1 if e == 1 else 0,
        integer=True,
        vector_rule=lambda p, e: np.where(e == 1, -1, 0).astype(np.int8),
    )


@lru_cache(maxsize=None)
def make_liouville() -> MultiplicativeFunction:
    return MultiplicativeFunction(
        name="liouville",
        prime_power_value=lambda p, e: -1 if e % 2 else 1,
        complete=True,
        integer=True,
        vector_rule=lambda p, e: (1 - 2 * (e % 2)).astype(np.int8),
    )


@lru_cache(maxsize=None)
def make_one() -> MultiplicativeFunction:
    return MultiplicativeFunction(
        name="one",
        prime_power_value=lambda p, e: 1,
        complete=True,
        integer=True,
        vector_rule=lambda p, e: np.ones(np.shape(p), dtype=np.int8),
    )


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    with np.errstate(over="ignore"):
        x = x + np.uint64(0x9E3779B97F4A7C15)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def random_sign(seed: int, p: int) -> int:
    """``f(p)`` of :func:`make_random_pm1`: a hash of ``(seed, p)``."""
    key = _splitmix64(seed & _MASK64) ^ p
    return -1 if _splitmix64(key) >> 63 else 1


@lru_cache(maxsize=None)
def make_random_pm1(seed: int) -> MultiplicativeFunction:
    """Completely multiplicative ``f`` with ``f(p) = +-1`` keyed by ``(seed, p)``."""
    seed_key = np.uint64(_splitmix64(seed & _MASK64))

    def rule(p: int, e: int) -> int:
        return random_sign(seed, p) ** e

    def vrule(p: np.ndarray, e: np.ndarray) -> np.ndarray:
        h = _splitmix64_array(p.astype(np.uint64) ^ seed_key)
        s = np.where((h >> np.uint64(63)) == 1, -1, 1)
        return np.where(e % 2 == 1, s, 1).astype(np.int8)

    return MultiplicativeFunction(
        name=f"random:{seed}", prime_power_value=rule, complete=True, integer=True, vector_rule=vrule
    )


def make_function(spec: str) -> MultiplicativeFunction:
    """Built-in function by name: ``mobius``, ``liouville``, ``one``, ``random:<seed>``."""
    spec = spec.strip().lower()
    if spec in ("mobius", "mu", "moebius"):
        return make_mobius()
    if spec in ("liouville", "lambda"):
        return make_liouville()
    if spec in ("one", "1"):
        return make_one()
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad seed in function spec {spec!r}") from None
        return make_random_pm1(seed)
    raise ValueError(f"unknown function {spec!r}; expected mobius, liouville, one or random:<seed>")
