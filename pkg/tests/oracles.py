"""Independent brute-force references.

Nothing here imports ``shiftsum``: characters come from a power walk and
``cmath.exp``, the Legendre symbol from Euler's criterion, and the
arithmetic functions from trial division.
"""

from __future__ import annotations

import cmath
import math

import numpy as np


def is_prime_td(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def order_mod(g: int, q: int) -> int:
    x, k = g % q, 1
    while x != 1:
        x = x * g % q
        k += 1
    return k


def primitive_root_bf(q: int) -> int:
    for g in range(2, q):
        if order_mod(g, q) == q - 1:
            return g
    raise ValueError(q)


def dlog_bf(q: int) -> dict[int, int]:
    g = primitive_root_bf(q)
    return {pow(g, j, q): j for j in range(q - 1)}


class CharOracle:
    """chi(g^j) = exp(2 pi i k j / (q-1)) with g the smallest primitive root."""

    def __init__(self, q: int, k: int):
        self.q, self.k = q, k
        self.ind = dlog_bf(q)

    def __call__(self, n: int) -> complex:
        x = n % self.q
        if x == 0:
            return 0j
        return cmath.exp(2j * math.pi * self.k * self.ind[x] / (self.q - 1))


def legendre_euler(n: int, q: int) -> int:
    x = n % q
    if x == 0:
        return 0
    return 1 if pow(x, (q - 1) // 2, q) == 1 else -1


def inv_bf(x: int, q: int) -> int:
    x %= q
    if x == 0:
        return 0
    for y in range(1, q):
        if x * y % q == 1:
            return y
    raise ValueError


def factor_td(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def mobius_td(n: int) -> int:
    fs = factor_td(n)
    if any(e > 1 for _, e in fs):
        return 0
    return (-1) ** len(fs)


def liouville_td(n: int) -> int:
    return (-1) ** sum(e for _, e in factor_td(n))


def mu_lambda_trial_division(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Mobius and Liouville for ``0..N`` by vectorized trial division."""
    m = np.arange(N + 1, dtype=np.int64)
    squarefree = np.ones(N + 1, dtype=bool)
    omega = np.zeros(N + 1, dtype=np.int64)  # distinct prime factors
    big_omega = np.zeros(N + 1, dtype=np.int64)
    for p in range(2, math.isqrt(N) + 1):
        if not is_prime_td(p):
            continue
        e = np.zeros(N + 1, dtype=np.int64)
        hit = (m % p == 0) & (m > 0)
        while hit.any():
            m[hit] //= p
            e[hit] += 1
            hit = hit & (m % p == 0)
        omega += e > 0
        big_omega += e
        squarefree &= e < 2
    rest = m > 1
    omega += rest
    big_omega += rest
    mu = np.where(squarefree, 1 - 2 * (omega % 2), 0)
    lam = 1 - 2 * (big_omega % 2)
    mu[0] = lam[0] = 0
    return mu, lam


def legendre_table(q: int) -> np.ndarray:
    """Quadratic character mod q from the set of squares."""
    tab = -np.ones(q, dtype=np.int64)
    tab[0] = 0
    for x in range(1, q):
        tab[x * x % q] = 1
    return tab


def naive_shifted_sum(fvals, chi, a: int, N: int) -> complex:
    return sum(fvals(n) * chi(n + a) for n in range(1, N + 1))


def naive_product_sum(fvals, chi, shifts, N: int) -> complex:
    total = 0j
    for n in range(1, N + 1):
        term = fvals(n)
        for a in shifts:
            term *= chi(n + a)
        total += term
    return total


def block_oracle(fvals, chi, a, N, r, q):
    """Block inner sums, first and second moments and the pair expansion by
    direct double loops."""
    lo = math.ceil(math.exp(r))
    hi = math.ceil(math.exp(r + 1)) - 1
    primes = [p for p in range(lo, min(hi, N) + 1) if is_prime_td(p) and p != q]
    Y = N / math.exp(r)
    ymax = math.floor(Y)
    S = []
    for y in range(1, ymax + 1):
        S.append(sum(fvals(p) * chi(p * y + a) for p in primes if p * y <= N))
    sigma1 = sum(abs(s) for s in S)
    sigma2 = sum(abs(s) ** 2 for s in S)
    diag = off = 0j
    for p1 in primes:
        for p2 in primes:
            lim = min(ymax, N // max(p1, p2))
            acc = 0j
            for y in range(1, lim + 1):
                acc += chi((p1 * y + a) * inv_bf(p2 * y + a, q))
            w = fvals(p1) * complex(fvals(p2)).conjugate() * acc
            if (p1 - p2) % q == 0:
                diag += w
            else:
                off += w
    return dict(primes=primes, ymax=ymax, S=S, sigma1=sigma1, sigma2=sigma2, diag=diag, offdiag=off)
