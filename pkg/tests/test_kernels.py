import numpy as np
import pytest

from shiftsum import kernels
from shiftsum.characters import character, index_table
from shiftsum.decomposition import block_primes, block_ymax
from shiftsum.multfunc import build_spf_sieve, make_liouville, make_mobius

BACKENDS = kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.get_backend("python").__name__.endswith("_pykernels")
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@needs_both
@pytest.mark.parametrize("N", [2, 3, 100, 1000, 99991])
def test_sieve_parity(N):
    a = kernels.spf_sieve(N, backend="cython")
    b = kernels.spf_sieve(N, backend="python")
    assert np.array_equal(a, b)
    ea, ca = kernels.prime_power_split(a, backend="cython")
    eb, cb = kernels.prime_power_split(b, backend="python")
    assert np.array_equal(ea, eb) and np.array_equal(ca, cb)


@needs_both
def test_tables_and_histograms_parity():
    N = 200000
    s_c = build_spf_sieve(N, backend="cython")
    for f in (make_mobius(), make_liouville()):
        t = f.table(s_c, backend="cython")
        assert np.array_equal(t, f.table(s_c, backend="python"))
        chi = character(1009, 504)
        for shifts in ([1], [1, 2, 3]):
            h1 = kernels.dlog_histogram(t, chi.ctx.dlog, 1009, shifts, 1, N + 1, backend="cython")
            h2 = kernels.dlog_histogram(t, chi.ctx.dlog, 1009, shifts, 1, N + 1, backend="python")
            assert np.array_equal(h1, h2)


@needs_both
@pytest.mark.parametrize("k", [50, 7])
@pytest.mark.parametrize("r", [2, 4, 6])
def test_block_kernels_parity(k, r):
    N, q = 20000, 101
    sieve = build_spf_sieve(N)
    chi = character(q, k)
    P = block_primes(r, N, q, sieve)
    fp = make_mobius().prime_values(P)
    tab = index_table(chi)
    ymax = block_ymax(N, r)
    args = (P, fp, chi.ctx.dlog, tab, q, 1, N, ymax)
    a = kernels.block_sums(*args, backend="cython")
    b = kernels.block_sums(*args, backend="python")
    assert np.allclose(a, b, atol=1e-9) and a.dtype == b.dtype
    pargs = (P, fp, chi.ctx.dlog, chi.ctx.powers, tab, q, 1, N, ymax)
    da, oa = kernels.pair_expansion(*pargs, backend="cython")
    db, ob = kernels.pair_expansion(*pargs, backend="python")
    assert abs(da - db) < 1e-6 and abs(oa - ob) < 1e-6
    if k == 50:
        assert (int(da), int(oa)) == (int(db), int(ob))
