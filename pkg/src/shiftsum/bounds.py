"""Right-hand sides of the bounds, ratio reports and calibration fixtures.

All bound shapes are evaluated without implied constants; only the complete
sum bound ``(r + d) sqrt(q)`` carries an explicit constant and is checked as a
hard inequality.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from .characters import DirichletCharacter
from .modarith import PrimeContext
from .multfunc import MultiplicativeFunction
from .sums import SumValue, shifted_product_sum, shifted_sum

CALIBRATION_FILE = "calibration.json"


@dataclass(frozen=True)
class BoundReport:
    label: str
    lhs_abs: float
    rhs: float
    ratio: float
    nontrivial: bool
    N: int | None = None
    q: int | None = None
    t: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> BoundReport:
        return cls(**d)


def make_report(label: str, lhs_abs: float, rhs: float, N: int | None = None, q: int | None = None,
                t: int | None = None) -> BoundReport:
    if rhs <= 0:
        raise ValueError(f"bound must be positive, got {rhs}")
    nontrivial = N is not None and lhs_abs < N
    return BoundReport(label, float(lhs_abs), float(rhs), float(lhs_abs) / rhs, nontrivial, N, q, t)


def _loglog6(N: int) -> float:
    return math.log(math.log(6 * N))


def theorem1_rhs(N: int, q: float) -> float:
    """``N q^(-1/4) loglog 6N + q^(1/4) N^(1/2) log 6N + N / sqrt(loglog 6N)``."""
    ll = _loglog6(N)
    return N * q ** -0.25 * ll + q ** 0.25 * math.sqrt(N) * math.log(6 * N) + N / math.sqrt(ll)


def theorem2_rhs(N: int, q: float) -> float:
    """Same three terms as :func:`theorem1_rhs`; the constant may depend on ``t``."""
    return theorem1_rhs(N, q)


def weil_rhs(r: int, d: int, q: int) -> float:
    return (r + d) * math.sqrt(q)


def lemma3_rhs(q: int) -> float:
    return math.sqrt(q) * math.log(q)


def lemma4_rhs(X: int, Z: int, q: int) -> float:
    return (Z - X) / q * math.sqrt(q) + math.sqrt(q) * math.log(q)


def theorem1_report(f: MultiplicativeFunction, chi: DirichletCharacter, a: int, N: int,
                    **kw) -> tuple[BoundReport, SumValue]:
    s = shifted_sum(f, chi, a, N, **kw)
    return make_report("theorem1", abs(s.value), theorem1_rhs(N, chi.q), N, chi.q, 1), s


def theorem2_report(f: MultiplicativeFunction, chi: DirichletCharacter, a_list: Sequence[int], N: int,
                    **kw) -> tuple[BoundReport, SumValue]:
    s = shifted_product_sum(f, chi, a_list, N, **kw)
    t = len(a_list)
    return make_report(f"theorem2[t={t}]", abs(s.value), theorem2_rhs(N, chi.q), N, chi.q, t), s


@dataclass(frozen=True)
class RangeProbe:
    N: int
    q: int
    eps: float
    lower: float
    upper: float
    in_window: bool
    rhs: float
    rhs_nontrivial: bool
    note: str = "window edges evaluated with constant 1; the stated window is asymptotic"

    def to_dict(self) -> dict:
        return asdict(self)


def nontrivial_range_probe(N: int, q: int, eps: float) -> RangeProbe:
    """Locate ``q`` relative to ``(loglog 6N)^(4+eps) <= q <= N^2 / (log 6N)^(4+eps)``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    lower = _loglog6(N) ** (4 + eps)
    upper = N * N / math.log(6 * N) ** (4 + eps)
    rhs = theorem1_rhs(N, q)
    return RangeProbe(N, q, eps, lower, upper, lower <= q <= upper, rhs, rhs < N)


def weil_check(value: SumValue, r: int, d: int, q: int, tol: float = 1e-9) -> BoundReport:
    rep = make_report(f"weil[r={r},d={d}]", abs(value.value), weil_rhs(r, d, q), q=q)
    if rep.lhs_abs > rep.rhs + tol:
        raise AssertionError(f"complete sum {value.value} exceeds ({r}+{d})*sqrt({q})")
    return rep


def lemma3_scan(ctx: PrimeContext, pairs: Sequence[tuple[int, int]]) -> float:
    """``max |sum_{x<=h} chi((x+s)/(x+t))| / (sqrt(q) log q)`` over every
    ``h <= q``, every non-principal character and the given ``(s, t)``."""
    q = ctx.q
    n = q - 1
    ks = np.arange(1, n, dtype=np.int64)
    x = np.arange(1, q + 1, dtype=np.int64)
    best = 0.0
    for s, t in pairs:
        r = (x + s) % q * ctx.inverse_array(x + t) % q
        j = ctx.dlog[r].astype(np.int64)
        E = (ks[:, None] * np.maximum(j, 0)[None, :]) % n
        V = np.where(j[None, :] >= 0, ctx.roots[E], 0)
        best = max(best, float(np.abs(np.cumsum(V, axis=1)).max()))
    return best / lemma3_rhs(q)


def lemma3_pairs(q: int, width: int = 11) -> list[tuple[int, int]]:
    """Default ``(s, t)`` grid: distinct pairs from ``0 .. width-1``."""
    w = min(width, q)
    return [(s, t) for s in range(w) for t in range(w) if s != t]


def load_calibration() -> dict[str, dict]:
    """Calibration fixtures keyed by label."""
    text = resources.files("shiftsum").joinpath("data", CALIBRATION_FILE).read_text()
    return {row["label"]: row for row in json.loads(text)["fixtures"]}
