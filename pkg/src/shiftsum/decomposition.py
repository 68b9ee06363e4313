"""Prime-block decomposition of the shifted sum.

For block index ``r`` the primes ``p`` in ``[e^r, e^(r+1))`` (coprime to ``q``)
are paired with ``y <= N / e^r`` and the block value is

    sum_y | sum_{p, p*y <= N} f(p) chi(p*y + a) |.

Blocks run over ``floor(d0) + 1 <= r <= floor(d1) - 1`` with
``d1 = log log 6N`` and ``d0 = sqrt(d1)``.  That range is empty for
``N < 88081886`` and is the single block ``{2}`` up to ``N ~ 8.6e22``, so the
block machinery also accepts explicit ``r`` values for experiments at desk
scale.

Conventions (recorded in every report):

* ``e^r`` is evaluated in double precision; the prime range of block ``r`` is
  the integer interval ``[ceil(e^r), ceil(e^(r+1)) - 1]``.
* ``y`` runs over ``1 <= y <= floor(N / e^r)`` (double precision quotient).
* ``p <= N / y`` is tested exactly as ``p * y <= N``.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .characters import DirichletCharacter, index_table
from .modarith import PrimeContext
from .multfunc import MultiplicativeFunction, SpfSieve
from .sums import (
    ShiftError,
    SumValue,
    check_distinct_shifts,
    get_sieve,
    lemma6_exceptional,
    shifted_sum,
)

BLOCK_CONVENTION = (
    "block r: primes in [ceil(e^r), ceil(e^(r+1)) - 1] with e^r in double precision, "
    "p != q; y in [1, floor(N / e^r)]; p <= N/y tested as p*y <= N"
)
CAUCHY_TOL = 1e-9


@dataclass(frozen=True)
class DecompositionParams:
    N: int
    d0: float
    d1: float
    D0: float
    D1: float
    r_lo: int
    r_hi: int

    @property
    def r_range(self) -> list[int]:
        return list(range(self.r_lo, self.r_hi + 1))

    @property
    def empty(self) -> bool:
        return self.r_hi < self.r_lo

    def to_dict(self) -> dict:
        d = asdict(self)
        d["r_range"] = self.r_range
        d["empty"] = self.empty
        return d


def compute_params(N: int) -> DecompositionParams:
    """Block parameters for length ``N`` (natural logarithms)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    D1 = math.log(6 * N)
    d1 = math.log(D1)
    d0 = math.sqrt(d1)
    return DecompositionParams(
        N=N,
        d0=d0,
        d1=d1,
        D0=math.exp(d0),
        D1=D1,
        r_lo=math.floor(d0) + 1,
        r_hi=math.floor(d1) - 1,
    )


def block_bounds(r: int) -> tuple[int, int]:
    """Integer interval ``[lo, hi]`` of the real block ``[e^r, e^(r+1))``."""
    return math.ceil(math.exp(r)), math.ceil(math.exp(r + 1)) - 1


def block_ymax(N: int, r: int) -> int:
    return math.floor(N / math.exp(r))


def block_primes(r: int, N: int, q: int, sieve: SpfSieve) -> np.ndarray:
    lo, hi = block_bounds(r)
    P = sieve.primes(lo, min(hi, N))
    return P[P != q]


# reports -------------------------------------------------------------------

@dataclass
class Sigma12Report:
    r: int
    Y: float
    ymax: int
    p_lo: int
    p_hi: int
    n_primes: int
    sigma1: float
    sigma2: complex
    diag: complex
    offdiag: complex
    cauchy_rhs: float
    cauchy_ok: bool
    partition_ok: bool
    exact: bool
    diag_pairs: int
    diag_pair_bound: float
    sigma2_exact: int | None = None
    diag_exact: int | None = None
    offdiag_exact: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("sigma2", "diag", "offdiag"):
            v = complex(d[k])
            d[k] = {"re": v.real, "im": v.imag}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Sigma12Report:
        d = dict(d)
        for k in ("sigma2", "diag", "offdiag"):
            d[k] = complex(d[k]["re"], d[k]["im"])
        return cls(**d)


@dataclass
class BlockValue:
    r: int
    p_lo: int
    p_hi: int
    n_primes: int
    ymax: int
    value: float
    exact_value: int | None = None


@dataclass
class DecompositionReport:
    N: int
    q: int
    k: int
    a: int
    f_name: str
    params: DecompositionParams
    lhs: float
    lhs_value: SumValue
    blocks: list[BlockValue]
    err_loglog: float
    err_q: float
    rhs_total: float
    measured_C: float
    warning: str | None = None
    convention: str = BLOCK_CONVENTION
    sigma12: list[Sigma12Report] = field(default_factory=list)

    @property
    def block_sum(self) -> float:
        return math.fsum(b.value for b in self.blocks)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "q": self.q,
            "k": self.k,
            "a": self.a,
            "f_name": self.f_name,
            "params": self.params.to_dict(),
            "lhs": self.lhs,
            "lhs_value": self.lhs_value.to_dict(),
            "blocks": [asdict(b) for b in self.blocks],
            "err_loglog": self.err_loglog,
            "err_q": self.err_q,
            "rhs_total": self.rhs_total,
            "measured_C": self.measured_C,
            "warning": self.warning,
            "convention": self.convention,
            "sigma12": [s.to_dict() for s in self.sigma12],
        }

    @classmethod
    def from_dict(cls, d: dict) -> DecompositionReport:
        p = d["params"]
        params = DecompositionParams(p["N"], p["d0"], p["d1"], p["D0"], p["D1"], p["r_lo"], p["r_hi"])
        return cls(
            N=d["N"],
            q=d["q"],
            k=d["k"],
            a=d["a"],
            f_name=d["f_name"],
            params=params,
            lhs=d["lhs"],
            lhs_value=SumValue.from_dict(d["lhs_value"]),
            blocks=[BlockValue(**b) for b in d["blocks"]],
            err_loglog=d["err_loglog"],
            err_q=d["err_q"],
            rhs_total=d["rhs_total"],
            measured_C=d["measured_C"],
            warning=d.get("warning"),
            convention=d.get("convention", BLOCK_CONVENTION),
            sigma12=[Sigma12Report.from_dict(s) for s in d.get("sigma12", [])],
        )


# computation ---------------------------------------------------------------

def _block_inner_sums(f, chi, a, N, r, sieve, backend):
    q = chi.q
    P = block_primes(r, N, q, sieve)
    ymax = block_ymax(N, r)
    fp = f.prime_values(P)
    tab = index_table(chi)
    if P.size == 0 or ymax < 1:
        dtype = np.int64 if (fp.dtype == np.int8 and tab.dtype == np.int8) else np.complex128
        return P, fp, tab, ymax, np.zeros(max(ymax, 0) + 1, dtype=dtype)
    S = kernels.block_sums(P, fp, chi.ctx.dlog, tab, q, a, N, ymax, backend=backend)
    return P, fp, tab, ymax, S


def block_value(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a: int,
    N: int,
    r: int,
    *,
    sieve: SpfSieve | None = None,
    backend: str | None = None,
) -> BlockValue:
    """``sum_{y <= N/e^r} |sum_p f(p) chi(p*y + a)|`` for block ``r``."""
    sieve = sieve or get_sieve(N)
    P, _, _, ymax, S = _block_inner_sums(f, chi, a, N, r, sieve, backend)
    lo, hi = block_bounds(r)
    S = S[1:]
    if S.dtype.kind == "i":
        ex = int(np.abs(S).sum())
        return BlockValue(r, lo, hi, int(P.size), ymax, float(ex), ex)
    return BlockValue(r, lo, hi, int(P.size), ymax, math.fsum(np.abs(S)), None)


def sigma12(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a: int,
    N: int,
    r: int,
    *,
    sieve: SpfSieve | None = None,
    backend: str | None = None,
) -> Sigma12Report:
    """First and second moments of the block-``r`` inner sums.

    ``sigma2`` is computed as ``sum_y |S(y)|^2``; ``diag`` and ``offdiag`` come
    from the expansion over prime pairs ``(p1, p2)`` with the ``y`` range
    ``y <= min(Y, N / max(p1, p2))`` and the character taken at the ratio
    ``(p1 y + a) / (p2 y + a)``, split by ``p1 = p2 (mod q)``.
    """
    if r < 0:
        raise ValueError("block index must be non-negative")
    if math.exp(r) > N:
        raise ValueError(f"e^{r} exceeds N={N}")
    sieve = sieve or get_sieve(N)
    q = chi.q
    P, fp, tab, ymax, S = _block_inner_sums(f, chi, a, N, r, sieve, backend)
    lo, hi = block_bounds(r)
    S = S[1:]
    exact = S.dtype.kind == "i"
    if P.size and ymax >= 1:
        diag, off = kernels.pair_expansion(P, fp, chi.ctx.dlog, chi.ctx.powers, tab, q, a, N, ymax, backend=backend)
    else:
        diag, off = (0, 0) if exact else (0j, 0j)

    cls = P % q
    _, counts = np.unique(cls, return_counts=True)
    diag_pairs = int((counts.astype(np.int64) ** 2).sum())
    diag_pair_bound = P.size * ((hi - lo + 1) / q + 1)

    if exact:
        s1 = int(np.abs(S).sum())
        s2 = int((S * S).sum())
        diag, off = int(diag), int(off)
        sigma1 = float(s1)
        rhs = math.sqrt(ymax) * math.sqrt(s2)
        return Sigma12Report(
            r=r, Y=N / math.exp(r), ymax=ymax, p_lo=lo, p_hi=hi, n_primes=int(P.size),
            sigma1=sigma1, sigma2=complex(s2), diag=complex(diag), offdiag=complex(off),
            cauchy_rhs=rhs, cauchy_ok=sigma1 <= rhs + CAUCHY_TOL,
            partition_ok=(diag + off == s2), exact=True,
            diag_pairs=diag_pairs, diag_pair_bound=diag_pair_bound,
            sigma2_exact=s2, diag_exact=diag, offdiag_exact=off,
        )
    absS = np.abs(S)
    sigma1 = math.fsum(absS)
    s2 = math.fsum(absS * absS)
    rhs = math.sqrt(ymax) * math.sqrt(s2)
    diag, off = complex(diag), complex(off)
    tol = 1e-9 * max(1.0, s2)
    return Sigma12Report(
        r=r, Y=N / math.exp(r), ymax=ymax, p_lo=lo, p_hi=hi, n_primes=int(P.size),
        sigma1=sigma1, sigma2=complex(s2), diag=diag, offdiag=off,
        cauchy_rhs=rhs, cauchy_ok=sigma1 <= rhs + CAUCHY_TOL,
        partition_ok=abs(diag + off - s2) <= tol, exact=False,
        diag_pairs=diag_pairs, diag_pair_bound=diag_pair_bound,
    )


def admissible_blocks(N: int) -> list[int]:
    """Every ``r >= 0`` whose block starts at or below ``N``."""
    out = []
    r = 0
    while math.exp(r) <= N:
        out.append(r)
        r += 1
    return out


def lemma1_blocks(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a: int,
    N: int,
    *,
    r_values: Sequence[int] | None = None,
    with_sigma12: bool = False,
    sieve: SpfSieve | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> DecompositionReport:
    """Both sides of the block decomposition inequality for one instance.

    ``r_values`` overrides the default range ``floor(d0)+1 .. floor(d1)-1``.
    """
    q = chi.q
    params = compute_params(N)
    sieve = sieve or get_sieve(N)
    lhs_value = shifted_sum(f, chi, a, N, sieve=sieve, threads=threads, backend=backend)
    rs = params.r_range if r_values is None else list(r_values)
    warning = None
    if r_values is None and params.empty:
        warning = (
            f"empty block range: floor(d0)+1={params.r_lo} > floor(d1)-1={params.r_hi}; "
            "right side reduces to the error terms"
        )

    def one(r):
        b = block_value(f, chi, a, N, r, sieve=sieve, backend=backend)
        s = sigma12(f, chi, a, N, r, sieve=sieve, backend=backend) if with_sigma12 else None
        return b, s

    if threads > 1 and len(rs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, rs))
    else:
        results = [one(r) for r in rs]
    blocks = [b for b, _ in results]
    s12 = [s for _, s in results if s is not None]

    err_loglog = N / math.sqrt(params.d1)
    err_q = N / q
    rhs_total = math.fsum([b.value for b in blocks] + [err_loglog, err_q])
    lhs = abs(lhs_value.value)
    return DecompositionReport(
        N=N, q=q, k=chi.k, a=a, f_name=f.name, params=params,
        lhs=lhs, lhs_value=lhs_value, blocks=blocks,
        err_loglog=err_loglog, err_q=err_q, rhs_total=rhs_total,
        measured_C=lhs / rhs_total, warning=warning, sigma12=s12,
    )


# product sums ----------------------------------------------------------------

class Theorem2Case(str, enum.Enum):
    SOME_SHIFT_ZERO = "SOME_SHIFT_ZERO"
    NO_SHIFT_ZERO = "NO_SHIFT_ZERO"


def theorem2_case_split(a_list: Sequence[int], ctx: PrimeContext) -> Theorem2Case:
    """Whether one of the shifts is divisible by ``q``."""
    if len(a_list) < 2:
        raise ShiftError("need t >= 2 shifts")
    check_distinct_shifts(a_list, ctx.q)
    if any(a % ctx.q == 0 for a in a_list):
        return Theorem2Case.SOME_SHIFT_ZERO
    return Theorem2Case.NO_SHIFT_ZERO


@dataclass
class ProductSigma2Report:
    """Second moment of the block sums for a product of shifted characters.

    Pairs are split into ``diag`` (``p1 = p2 mod q``), ``exceptional``
    (``p2 = a_j p1 / a_i`` for some ``i != j`` over the unit shifts) and
    ``regular``.
    """

    r: int
    case: Theorem2Case
    ymax: int
    n_primes: int
    sigma1: float
    sigma2: complex
    diag: complex
    exceptional: complex
    regular: complex
    exceptional_pairs: int
    regular_max_abs: float
    exceptional_max_abs: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value
        for k in ("sigma2", "diag", "exceptional", "regular"):
            v = complex(d[k])
            d[k] = {"re": v.real, "im": v.imag}
        return d


def product_sigma2(
    f: MultiplicativeFunction,
    chi: DirichletCharacter,
    a_list: Sequence[int],
    N: int,
    r: int,
    *,
    sieve: SpfSieve | None = None,
) -> ProductSigma2Report:
    """Block moments for ``sum_p f(p) chi(p y + a_1) ... chi(p y + a_t)``.

    ``regular_max_abs`` and ``exceptional_max_abs`` are the largest pair sums
    ``|sum_y chi(prod (p1 y + a_i) / prod (p2 y + a_i))|`` in each class.
    """
    q = chi.q
    ctx = chi.ctx
    case = theorem2_case_split(a_list, ctx)
    sieve = sieve or get_sieve(N)
    P = block_primes(r, N, q, sieve)
    ymax = block_ymax(N, r)
    fp = f.prime_values(P).astype(np.complex128)
    units = [a for a in a_list if a % q]
    flag = np.zeros((P.size, P.size), dtype=bool)
    for i1, p1 in enumerate(P):
        for i2, p2 in enumerate(P):
            if (p1 - p2) % q and len(units) >= 2:
                flag[i1, i2] = lemma6_exceptional(int(p1), int(p2), units, q)
    same = (P[:, None] % q) == (P[None, :] % q)

    S = np.zeros(ymax + 1, dtype=np.complex128)
    pair_sum = np.zeros((P.size, P.size), dtype=np.complex128)
    for y in range(1, ymax + 1):
        m = int(np.searchsorted(P, N // y, side="right"))
        if m == 0:
            break
        Py = P[:m]
        prod = np.ones(m, dtype=np.int64)
        for a in a_list:
            prod = prod * ((Py * y + a) % q) % q
        v = chi.values(prod)
        S[y] = np.sum(fp[:m] * v)
        inv = ctx.inverse_array(prod)
        ratio = (prod[:, None] * inv[None, :]) % q
        pair_sum[:m, :m] += chi.values(ratio)
    S = S[1:]
    W = fp[:, None] * np.conj(fp[None, :]) * pair_sum
    diag = complex(W[same].sum())
    exc = complex(W[flag].sum())
    reg_mask = ~same & ~flag
    reg = complex(W[reg_mask].sum())
    absS = np.abs(S)
    return ProductSigma2Report(
        r=r,
        case=case,
        ymax=ymax,
        n_primes=int(P.size),
        sigma1=math.fsum(absS),
        sigma2=complex(math.fsum(absS * absS)),
        diag=diag,
        exceptional=exc,
        regular=reg,
        exceptional_pairs=int(flag.sum()),
        regular_max_abs=float(np.abs(pair_sum[reg_mask]).max()) if reg_mask.any() else 0.0,
        exceptional_max_abs=float(np.abs(pair_sum[flag]).max()) if flag.any() else 0.0,
    )
