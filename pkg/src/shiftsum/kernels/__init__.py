"""Hot loops, backed by the compiled extension when it is importable.

Set ``SHIFTSUM_BACKEND=python`` to force the numpy fallback.  Both backends
expose the same functions; calls with non-``int8`` coefficient arrays are
always routed to the numpy implementation.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_c = None
if os.environ.get("SHIFTSUM_BACKEND", "").lower() != "python":
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _c is not None else ["python"]


def get_backend(name: str | None = None):
    """Module implementing the kernel API for ``name`` (default: active)."""
    name = name or BACKEND
    if name == "cython":
        if _c is None:
            raise RuntimeError("compiled kernels are not available")
        return _c
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def _pick(arr, backend):
    mod = get_backend(backend)
    if mod is not _pykernels and arr.dtype != np.int8:
        return _pykernels
    return mod


def spf_sieve(N: int, backend: str | None = None) -> np.ndarray:
    return get_backend(backend).spf_sieve(int(N))


def prime_power_split(spf: np.ndarray, backend: str | None = None):
    return get_backend(backend).prime_power_split(np.ascontiguousarray(spf, dtype=np.int32))


def multiplicative_table(cof: np.ndarray, gvals: np.ndarray, backend: str | None = None):
    return _pick(gvals, backend).multiplicative_table(cof, gvals)


def dlog_histogram(fvals, dlog, q, shifts, start, stop, backend=None):
    shifts = np.ascontiguousarray(shifts, dtype=np.int64)
    return _pick(fvals, backend).dlog_histogram(fvals, dlog, int(q), shifts, int(start), int(stop))


def block_sums(primes, fp, dlog, tab, q, a, N, ymax, backend=None):
    """Inner sums over a prime block for each ``y`` (see ``block_sums_int``)."""
    mod = _pick(fp, backend)
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if np.iscomplexobj(tab) or np.iscomplexobj(fp):
        tab = np.ascontiguousarray(tab, dtype=np.complex128)
        return mod.block_sums_complex(primes, fp, dlog, tab, int(q), int(a), int(N), int(ymax))
    tab = np.ascontiguousarray(tab, dtype=np.int8)
    return mod.block_sums_int(primes, fp, dlog, tab, int(q), int(a), int(N), int(ymax))


def pair_expansion(primes, fp, dlog, powers, tab, q, a, N, ymax, backend=None):
    """``(diag, offdiag)`` of the expanded square over prime pairs."""
    mod = _pick(fp, backend)
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    powers = np.ascontiguousarray(powers, dtype=np.int64)
    if np.iscomplexobj(tab) or np.iscomplexobj(fp):
        tab = np.ascontiguousarray(tab, dtype=np.complex128)
        return mod.pair_expansion_complex(primes, fp, dlog, powers, tab, int(q), int(a), int(N), int(ymax))
    tab = np.ascontiguousarray(tab, dtype=np.int8)
    return mod.pair_expansion_int(primes, fp, dlog, powers, tab, int(q), int(a), int(N), int(ymax))
