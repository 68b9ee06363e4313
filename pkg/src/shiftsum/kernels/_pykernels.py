"""Pure numpy implementations of the kernel API.

Used when the compiled extension is missing (or ``SHIFTSUM_BACKEND=python``)
and for complex-valued coefficient functions, which the compiled kernels do
not accept.
"""

from __future__ import annotations

import math

import numpy as np


def spf_sieve(N: int) -> np.ndarray:
    """Smallest-prime-factor table by a strided Eratosthenes pass."""
    spf = np.zeros(N + 1, dtype=np.int32)
    if N >= 1:
        spf[1] = 1
    for p in range(2, math.isqrt(N) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def prime_power_split(spf: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    N = spf.shape[0] - 1
    n = np.arange(N + 1, dtype=np.int64)
    p = spf.astype(np.int64)
    p[0] = 1
    expo = np.zeros(N + 1, dtype=np.uint8)
    expo[2:] = 1
    cof = np.ones(N + 1, dtype=np.int64)
    cof[2:] = n[2:] // p[2:]
    active = np.flatnonzero((cof > 1) & (spf[cof] == p))
    active = active[active >= 2]
    while active.size:
        cof[active] //= p[active]
        expo[active] += 1
        keep = (cof[active] > 1) & (spf[cof[active]] == p[active])
        active = active[keep]
    return expo, cof.astype(np.int32)


def multiplicative_table(cof: np.ndarray, gvals: np.ndarray) -> np.ndarray:
    """Resolve ``f[n] = gvals[n] * f[cof[n]]`` by pointer jumping."""
    f = gvals.copy()
    if f.shape[0] > 0:
        f[0] = 0
    if f.shape[0] > 1:
        f[1] = 1
    ptr = cof.astype(np.int64)
    active = np.flatnonzero(ptr > 1)
    while active.size:
        nxt = ptr[active]
        f[active] = f[active] * gvals[nxt]
        ptr[active] = cof[nxt]
        active = active[ptr[active] > 1]
    return f


def dlog_histogram(fvals, dlog, q, shifts, start, stop):
    """Histogram over ``ind(prod (n + a_i))`` weighted by ``f(n)``.

    Integer ``fvals`` give an exact ``int64`` histogram; complex ``fvals``
    give a ``complex128`` one.
    """
    n = np.arange(start, stop, dtype=np.int64)
    fv = fvals[start:stop]
    prod = np.ones_like(n)
    for a in shifts:
        prod = prod * ((n + int(a)) % q) % q
    j = dlog[prod]
    keep = (j >= 0) & (fv != 0)
    j = j[keep]
    w = fv[keep]
    if np.iscomplexobj(w):
        re = np.bincount(j, weights=w.real, minlength=q - 1)
        im = np.bincount(j, weights=w.imag, minlength=q - 1)
        return re + 1j * im
    pos = np.bincount(j[w > 0], weights=w[w > 0].astype(np.float64), minlength=q - 1)
    neg = np.bincount(j[w < 0], weights=-w[w < 0].astype(np.float64), minlength=q - 1)
    return np.rint(pos).astype(np.int64) - np.rint(neg).astype(np.int64)


def _prime_y_pairs(primes, N, ymax):
    counts = np.minimum(N // primes, ymax)
    counts = np.maximum(counts, 0)
    idx = np.repeat(np.arange(primes.shape[0]), counts)
    starts = np.cumsum(counts) - counts
    y = np.arange(idx.shape[0], dtype=np.int64) - np.repeat(starts, counts) + 1
    return idx, y


def _block_sums(primes, fp, dlog, tab, q, a, N, ymax, dtype):
    primes = np.asarray(primes, dtype=np.int64)
    idx, y = _prime_y_pairs(primes, N, ymax)
    x = (primes[idx] * y + a) % q
    j = dlog[x]
    vals = np.where(j >= 0, tab[np.maximum(j, 0)], 0) * fp[idx]
    if np.iscomplexobj(vals):
        re = np.bincount(y, weights=vals.real, minlength=ymax + 1)
        im = np.bincount(y, weights=vals.imag, minlength=ymax + 1)
        return (re + 1j * im).astype(dtype)
    return np.rint(np.bincount(y, weights=vals.astype(np.float64), minlength=ymax + 1)).astype(dtype)


def block_sums_int(primes, fp, dlog, tab, q, a, N, ymax):
    return _block_sums(primes, fp, dlog, tab, q, a, N, ymax, np.int64)


def block_sums_complex(primes, fp, dlog, tab, q, a, N, ymax):
    return _block_sums(primes, fp, dlog, tab, q, a, N, ymax, np.complex128)


_ROW_CHUNK = 512


def _pair_expansion(primes, fp, dlog, powers, tab, q, a, N, ymax, exact):
    primes = np.asarray(primes, dtype=np.int64)
    qm1 = q - 1
    cls = primes % q
    diag = 0 if exact else 0j
    off = 0 if exact else 0j
    ytop = int(min(ymax, N // primes[0])) if primes.size else 0
    # pair (p1, p2) runs over y <= min(ymax, N // max(p1, p2)), i.e. both
    # primes are at most N // y; iterate y and take the admissible prefix
    for y in range(1, ytop + 1):
        m = int(np.searchsorted(primes, N // y, side="right"))
        if m == 0:
            break
        P = primes[:m]
        F = fp[:m]
        u = (P * y + a) % q
        w = (P * y + a) % q
        jw = dlog[w].astype(np.int64)
        winv = np.where(jw >= 0, powers[(qm1 - jw) % qm1], 0)
        for r0 in range(0, m, _ROW_CHUNK):
            r1 = min(r0 + _ROW_CHUNK, m)
            x = (u[r0:r1, None] * winv[None, :]) % q
            jx = dlog[x]
            vals = np.where(jx >= 0, tab[np.maximum(jx, 0)], 0)
            wts = F[r0:r1, None] * F[None, :]
            terms = vals * wts
            same = cls[r0:r1, None] == cls[None, :m]
            if exact:
                d = int(terms[same].astype(np.int64).sum())
                diag += d
                off += int(terms.astype(np.int64).sum()) - d
            else:
                d = complex(terms[same].sum())
                diag += d
                off += complex(terms[~same].sum())
    return diag, off


def pair_expansion_int(primes, fp, dlog, powers, tab, q, a, N, ymax):
    return _pair_expansion(primes, fp, dlog, powers, tab, q, a, N, ymax, True)


def pair_expansion_complex(primes, fp, dlog, powers, tab, q, a, N, ymax):
    return _pair_expansion(primes, fp, dlog, powers, tab, q, a, N, ymax, False)
