# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log
from libc.stdint cimport int8_t, int32_t, int64_t, uint8_t

cnp.import_array()


def spf_sieve(Py_ssize_t N):
    """Linear sieve of smallest prime factors; ``spf[0] = 0``, ``spf[1] = 1``."""
    cdef cnp.ndarray[int32_t, ndim=1] spf_arr = np.zeros(N + 1, dtype=np.int32)
    # pi(N) < 1.26 N / log N for N > 1
    cdef Py_ssize_t cap = N + 1 if N < 64 else <Py_ssize_t>(1.26 * N / log(N)) + 16
    cdef cnp.ndarray[int32_t, ndim=1] primes_arr = np.empty(cap, dtype=np.int32)
    cdef int32_t[::1] spf = spf_arr
    cdef int32_t[::1] primes = primes_arr
    cdef Py_ssize_t n, i, np_ = 0
    cdef int64_t m
    cdef int32_t p, s
    if N >= 1:
        spf[1] = 1
    with nogil:
        for n in range(2, N + 1):
            if spf[n] == 0:
                spf[n] = <int32_t>n
                primes[np_] = <int32_t>n
                np_ += 1
            s = spf[n]
            for i in range(np_):
                p = primes[i]
                m = <int64_t>p * n
                if p > s or m > N:
                    break
                spf[m] = p
    return spf_arr


def prime_power_split(const int32_t[::1] spf):
    """Split ``n = p**e * c`` with ``p = spf[n]`` and ``p`` not dividing ``c``."""
    cdef Py_ssize_t N = spf.shape[0] - 1
    cdef cnp.ndarray[uint8_t, ndim=1] expo_arr = np.zeros(N + 1, dtype=np.uint8)
    cdef cnp.ndarray[int32_t, ndim=1] cof_arr = np.ones(N + 1, dtype=np.int32)
    cdef uint8_t[::1] expo = expo_arr
    cdef int32_t[::1] cof = cof_arr
    cdef Py_ssize_t n, m
    cdef int32_t p
    with nogil:
        for n in range(2, N + 1):
            p = spf[n]
            m = n // p
            if m > 1 and spf[m] == p:
                expo[n] = expo[m] + 1
                cof[n] = cof[m]
            else:
                expo[n] = 1
                cof[n] = <int32_t>m
    return expo_arr, cof_arr


def multiplicative_table(const int32_t[::1] cof, const int8_t[::1] gvals):
    """``f[n] = gvals[n] * f[cof[n]]`` with ``f[1] = 1`` and ``f[0] = 0``."""
    cdef Py_ssize_t N = cof.shape[0] - 1
    cdef cnp.ndarray[int8_t, ndim=1] f_arr = np.zeros(N + 1, dtype=np.int8)
    cdef int8_t[::1] f = f_arr
    cdef Py_ssize_t n
    if N >= 1:
        f[1] = 1
    with nogil:
        for n in range(2, N + 1):
            f[n] = gvals[n] * f[cof[n]]
    return f_arr


def dlog_histogram(const int8_t[::1] fvals, const int32_t[::1] dlog, int64_t q,
                   const int64_t[::1] shifts, Py_ssize_t start, Py_ssize_t stop):
    """Histogram of ``ind(prod_i (n + a_i) mod q)`` weighted by ``f(n)``.

    Covers ``start <= n < stop``; terms with a zero product are dropped.
    """
    cdef cnp.ndarray[int64_t, ndim=1] hist_arr = np.zeros(q - 1, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    cdef Py_ssize_t n, i, t = shifts.shape[0]
    cdef int64_t x, r, n0
    cdef int64_t[64] offs
    cdef int8_t fv
    if t > 64:
        raise ValueError("at most 64 shifts supported")
    for i in range(t):
        offs[i] = ((shifts[i] % q) + q) % q
    with nogil:
        if t == 1:
            x = (start + offs[0]) % q
            for n in range(start, stop):
                fv = fvals[n]
                if fv != 0 and x != 0:
                    hist[dlog[x]] += fv
                x += 1
                if x == q:
                    x = 0
        else:
            n0 = start % q
            for n in range(start, stop):
                fv = fvals[n]
                if fv != 0:
                    r = 1
                    for i in range(t):
                        x = n0 + offs[i]
                        if x >= q:
                            x -= q
                        r = (r * x) % q
                        if r == 0:
                            break
                    if r != 0:
                        hist[dlog[r]] += fv
                n0 += 1
                if n0 == q:
                    n0 = 0
    return hist_arr


def block_sums_int(const int64_t[::1] primes, const int8_t[::1] fp, const int32_t[::1] dlog,
                   const int8_t[::1] tab, int64_t q, int64_t a, int64_t N, Py_ssize_t ymax):
    """``S[y] = sum_{p, p*y <= N} f(p) chi(p*y + a)`` for ``1 <= y <= ymax``.

    ``primes`` is sorted; ``tab[j]`` is the character value at index ``j``.
    ``S[0]`` is unused.
    """
    cdef cnp.ndarray[int64_t, ndim=1] S_arr = np.zeros(ymax + 1, dtype=np.int64)
    cdef int64_t[::1] S = S_arr
    cdef Py_ssize_t y, i, m = primes.shape[0]
    cdef int64_t x, acc, a0 = ((a % q) + q) % q
    with nogil:
        for y in range(1, ymax + 1):
            acc = 0
            for i in range(m):
                if primes[i] * y > N:
                    break
                x = (primes[i] * y + a0) % q
                if x != 0:
                    acc += fp[i] * tab[dlog[x]]
            S[y] = acc
    return S_arr


def block_sums_complex(const int64_t[::1] primes, const int8_t[::1] fp, const int32_t[::1] dlog,
                       const double complex[::1] tab, int64_t q, int64_t a, int64_t N,
                       Py_ssize_t ymax):
    """Complex-character variant of :func:`block_sums_int`."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] S_arr = np.zeros(ymax + 1, dtype=np.complex128)
    cdef double complex[::1] S = S_arr
    cdef Py_ssize_t y, i, m = primes.shape[0]
    cdef int64_t x, a0 = ((a % q) + q) % q
    cdef double complex acc
    with nogil:
        for y in range(1, ymax + 1):
            acc = 0
            for i in range(m):
                if primes[i] * y > N:
                    break
                x = (primes[i] * y + a0) % q
                if x != 0:
                    acc = acc + <double>fp[i] * tab[dlog[x]]
            S[y] = acc
    return S_arr


def pair_expansion_int(const int64_t[::1] primes, const int8_t[::1] fp, const int32_t[::1] dlog,
                       const int64_t[::1] powers, const int8_t[::1] tab, int64_t q, int64_t a,
                       int64_t N, int64_t ymax):
    """Expanded square over prime pairs, split by ``p1 = p2 (mod q)``.

    Returns ``(diag, offdiag)`` where each pair contributes
    ``f(p1) f(p2) sum_y chi((p1 y + a) / (p2 y + a))`` over
    ``y <= min(ymax, N / max(p1, p2))`` and ``1/0 = 0``.
    """
    cdef Py_ssize_t i1, i2, m = primes.shape[0]
    cdef int64_t y, ylim, u, w, winv, x, p1, p2, pmax, acc, qm1 = q - 1
    cdef int64_t a0 = ((a % q) + q) % q
    cdef int64_t diag = 0, off = 0
    cdef int w_f
    with nogil:
        for i1 in range(m):
            p1 = primes[i1]
            if fp[i1] == 0:
                continue
            for i2 in range(m):
                if fp[i2] == 0:
                    continue
                p2 = primes[i2]
                pmax = p1 if p1 > p2 else p2
                ylim = N // pmax
                if ylim > ymax:
                    ylim = ymax
                acc = 0
                for y in range(1, ylim + 1):
                    w = (p2 * y + a0) % q
                    if w == 0:
                        continue
                    winv = powers[(qm1 - dlog[w]) % qm1]
                    u = (p1 * y + a0) % q
                    x = (u * winv) % q
                    if x != 0:
                        acc += tab[dlog[x]]
                w_f = fp[i1] * fp[i2]
                if p1 % q == p2 % q:
                    diag += w_f * acc
                else:
                    off += w_f * acc
    return diag, off


def pair_expansion_complex(const int64_t[::1] primes, const int8_t[::1] fp, const int32_t[::1] dlog,
                           const int64_t[::1] powers, const double complex[::1] tab, int64_t q,
                           int64_t a, int64_t N, int64_t ymax):
    """Complex-character variant of :func:`pair_expansion_int`."""
    cdef Py_ssize_t i1, i2, m = primes.shape[0]
    cdef int64_t y, ylim, u, w, winv, x, p1, p2, pmax, qm1 = q - 1
    cdef int64_t a0 = ((a % q) + q) % q
    cdef double complex acc, diag = 0, off = 0
    cdef int w_f
    with nogil:
        for i1 in range(m):
            p1 = primes[i1]
            if fp[i1] == 0:
                continue
            for i2 in range(m):
                if fp[i2] == 0:
                    continue
                p2 = primes[i2]
                pmax = p1 if p1 > p2 else p2
                ylim = N // pmax
                if ylim > ymax:
                    ylim = ymax
                acc = 0
                for y in range(1, ylim + 1):
                    w = (p2 * y + a0) % q
                    if w == 0:
                        continue
                    winv = powers[(qm1 - dlog[w]) % qm1]
                    u = (p1 * y + a0) % q
                    x = (u * winv) % q
                    if x != 0:
                        acc = acc + tab[dlog[x]]
                w_f = fp[i1] * fp[i2]
                if p1 % q == p2 % q:
                    diag = diag + <double>w_f * acc
                else:
                    off = off + <double>w_f * acc
    return diag, off
