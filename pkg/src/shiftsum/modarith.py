"""Exact arithmetic modulo a prime: primality, primitive roots, inverses and
discrete-log tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

MAX_MODULUS = 10**7


class ModulusError(ValueError):
    """Raised when a modulus is not an admissible prime."""


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def find_primitive_root(q: int) -> int:
    """Smallest primitive root modulo the prime ``q``."""
    if not is_prime(q):
        raise ModulusError(f"{q} is not prime")
    if q == 2:
        return 1
    cofactors = [(q - 1) // p for p in prime_factors(q - 1)]
    for g in range(2, q):
        if all(pow(g, c, q) != 1 for c in cofactors):
            return g
    raise ModulusError(f"no primitive root found for {q}")  # unreachable for prime q


def build_dlog_table(q: int, g: int) -> tuple[np.ndarray, np.ndarray]:
    """Walk the powers of ``g`` and return ``(dlog, powers)``.

    ``dlog[x]`` is the index of ``x`` for ``1 <= x < q`` and ``-1`` at ``x = 0``;
    ``powers[j] = g**j mod q`` for ``0 <= j < q - 1``.
    """
    dlog = np.full(q, -1, dtype=np.int32)
    powers = np.empty(q - 1, dtype=np.int64)
    x = 1
    for j in range(q - 1):
        if dlog[x] != -1:
            raise ModulusError(f"{g} is not a primitive root mod {q}")
        dlog[x] = j
        powers[j] = x
        x = x * g % q
    if x != 1:
        raise ModulusError(f"{g} is not a primitive root mod {q}")
    return dlog, powers


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """A prime modulus with its smallest primitive root and index tables.

    Immutable after construction; the tables are read-only arrays and the
    context may be shared between threads.
    """

    q: int
    g: int = field(init=False)
    dlog: np.ndarray = field(init=False, repr=False)
    powers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        q = int(self.q)
        if q < 3 or not is_prime(q):
            raise ModulusError(f"modulus must be an odd prime, got {q}")
        if q > MAX_MODULUS:
            raise ModulusError(f"modulus {q} exceeds table limit {MAX_MODULUS}")
        g = find_primitive_root(q)
        dlog, powers = build_dlog_table(q, g)
        dlog.setflags(write=False)
        powers.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "dlog", dlog)
        object.__setattr__(self, "powers", powers)

    @property
    def order(self) -> int:
        """Order of the unit group, ``q - 1``."""
        return self.q - 1

    @cached_property
    def roots(self) -> np.ndarray:
        """``roots[m] = exp(2*pi*i*m/(q-1))``."""
        m = np.arange(self.q - 1, dtype=np.float64)
        theta = 2.0 * np.pi * m / (self.q - 1)
        r = np.cos(theta) + 1j * np.sin(theta)
        # pin the values that are exactly representable
        r[0] = 1.0
        if (self.q - 1) % 2 == 0:
            r[(self.q - 1) // 2] = -1.0
        if (self.q - 1) % 4 == 0:
            r[(self.q - 1) // 4] = 1j
            r[3 * (self.q - 1) // 4] = -1j
        r.setflags(write=False)
        return r

    def inverse(self, x: int) -> int:
        return mod_inverse(x, self)

    def inverse_array(self, x: np.ndarray) -> np.ndarray:
        """Vectorized inverse via the index tables; zero maps to zero."""
        x = np.asarray(x, dtype=np.int64) % self.q
        idx = self.dlog[x].astype(np.int64)
        inv = self.powers[(-idx) % (self.q - 1)]
        return np.where(x == 0, 0, inv)


def mod_inverse(x: int, ctx: PrimeContext) -> int:
    """Inverse of ``x`` modulo ``ctx.q``, with the convention ``1/0 = 0``."""
    q = ctx.q
    x %= q
    if x == 0:
        return 0
    j = int(ctx.dlog[x])
    return int(ctx.powers[(q - 1 - j) % (q - 1)])


_CONTEXT_CACHE: dict[int, PrimeContext] = {}


def get_context(q: int) -> PrimeContext:
    """Cached :class:`PrimeContext` for ``q``."""
    ctx = _CONTEXT_CACHE.get(q)
    if ctx is None:
        ctx = PrimeContext(q)
        _CONTEXT_CACHE[q] = ctx
    return ctx
