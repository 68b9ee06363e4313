"""Dirichlet characters modulo a prime, indexed by their exponent.

A character is fixed by an integer ``k`` in ``[0, q-2]`` through
``chi(g**j) = e(k*j/(q-1))`` where ``g`` is the smallest primitive root of
``q`` and ``e(t) = exp(2*pi*i*t)``.  Values are carried as exponents modulo
``q - 1`` and only turned into complex numbers when accumulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .modarith import PrimeContext, get_context


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    ctx: PrimeContext
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.ctx.q - 2:
            raise ValueError(f"character index must lie in [0, {self.ctx.q - 2}], got {self.k}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.ctx.q == other.ctx.q and self.k == other.k

    def __hash__(self) -> int:
        return hash((self.ctx.q, self.k))

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.q}, k={self.k})"

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    @property
    def is_quadratic(self) -> bool:
        return 2 * self.k == self.ctx.q - 1

    @property
    def is_real(self) -> bool:
        """True when every value lies in {-1, 0, 1} (principal or quadratic)."""
        return self.is_principal or self.is_quadratic

    @property
    def order(self) -> int:
        return (self.q - 1) // math.gcd(self.k, self.q - 1)

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.ctx, (self.q - 1 - self.k) % (self.q - 1))

    def exponent(self, n: int) -> int:
        """Exponent ``m`` with ``chi(n) = e(m/(q-1))``, or ``-1`` when ``q | n``."""
        x = n % self.q
        if x == 0:
            return -1
        return self.k * int(self.ctx.dlog[x]) % (self.q - 1)

    def exponents(self, n: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`exponent`; ``-1`` marks multiples of ``q``."""
        x = np.asarray(n, dtype=np.int64) % self.q
        j = self.ctx.dlog[x].astype(np.int64)
        m = (self.k * j) % (self.q - 1)
        return np.where(j < 0, -1, m)

    def __call__(self, n: int) -> complex:
        return char_eval(self, n)

    def values(self, n: np.ndarray) -> np.ndarray:
        """Complex values at an integer array."""
        m = self.exponents(n)
        out = self.ctx.roots[np.where(m < 0, 0, m)]
        return np.where(m < 0, 0.0, out)

    def int_values(self, n: np.ndarray) -> np.ndarray:
        """Exact values in {-1, 0, 1} for a real character."""
        if not self.is_real:
            raise ValueError("integer path requires a principal or quadratic character")
        x = np.asarray(n, dtype=np.int64) % self.q
        j = self.ctx.dlog[x].astype(np.int64)
        if self.is_principal:
            v = np.ones_like(j)
        else:
            v = 1 - 2 * (j & 1)
        return np.where(j < 0, 0, v).astype(np.int64)


def char_eval(chi: DirichletCharacter, n: int) -> complex:
    m = chi.exponent(n)
    if m < 0:
        return 0j
    return complex(chi.ctx.roots[m])


def char_eval_int(chi: DirichletCharacter, n: int) -> int:
    """Exact evaluation for real characters; raises for complex ones."""
    if not chi.is_real:
        raise ValueError("integer path requires a principal or quadratic character")
    x = n % chi.q
    if x == 0:
        return 0
    if chi.is_principal:
        return 1
    return -1 if chi.ctx.dlog[x] & 1 else 1


def character(q: int | PrimeContext, k: int) -> DirichletCharacter:
    ctx = q if isinstance(q, PrimeContext) else get_context(q)
    return DirichletCharacter(ctx, k)


def principal_character(ctx: PrimeContext) -> DirichletCharacter:
    return DirichletCharacter(ctx, 0)


def legendre_character(ctx: PrimeContext) -> DirichletCharacter:
    """The quadratic character; agrees with the Legendre symbol."""
    return DirichletCharacter(ctx, (ctx.q - 1) // 2)


def characters_of_order(ctx: PrimeContext, d: int) -> list[DirichletCharacter]:
    """All characters whose order is exactly ``d``."""
    n = ctx.q - 1
    if n % d:
        return []
    step = n // d
    return [DirichletCharacter(ctx, k) for k in range(0, n, step) if (n // math.gcd(k, n)) == d]


def exponent_histogram(chi: DirichletCharacter, n: np.ndarray) -> np.ndarray:
    """Counts of each exponent class over ``n`` (multiples of ``q`` dropped)."""
    m = chi.exponents(n)
    return np.bincount(m[m >= 0], minlength=chi.q - 1).astype(np.int64)


def histogram_value(ctx: PrimeContext, hist: np.ndarray) -> complex:
    """``sum_m hist[m] * e(m/(q-1))`` with correctly rounded real/imag parts."""
    hist = np.asarray(hist)
    nz = np.nonzero(hist)[0]
    if nz.size == 0:
        return 0j
    w = hist[nz].astype(np.float64) if hist.dtype.kind in "iu" else hist[nz]
    r = ctx.roots[nz]
    if np.iscomplexobj(w):
        terms = w * r
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    return complex(math.fsum(w * r.real), math.fsum(w * r.imag))


def char_sum_complete(chi: DirichletCharacter) -> complex:
    """``sum_{x mod q} chi(x)``: ``q-1`` for the principal character, else 0."""
    hist = exponent_histogram(chi, np.arange(chi.q))
    if chi.is_real:
        return complex(histogram_int_value(chi.ctx, hist))
    return histogram_value(chi.ctx, hist)


def histogram_int_value(ctx: PrimeContext, hist: np.ndarray) -> int:
    """Exact value of an exponent histogram whose support is {0, (q-1)/2}."""
    half = (ctx.q - 1) // 2
    support = np.nonzero(hist)[0]
    if np.any((support != 0) & (support != half)):
        raise ValueError("histogram is not supported on real exponents")
    return int(hist[0]) - int(hist[half])


def index_table(chi: DirichletCharacter) -> np.ndarray:
    """Character value at each discrete-log index ``j``: ``int8`` when real."""
    n = chi.q - 1
    j = np.arange(n, dtype=np.int64)
    if chi.is_principal:
        return np.ones(n, dtype=np.int8)
    if chi.is_quadratic:
        return (1 - 2 * (j & 1)).astype(np.int8)
    return chi.ctx.roots[(chi.k * j) % n]


def evaluate_index_histogram(chi: DirichletCharacter, hist: np.ndarray) -> tuple[complex, int | None]:
    """Value of ``sum_j hist[j] * chi(g**j)``.

    Returns ``(value, exact)`` where ``exact`` is the integer value when both
    the histogram and the character are integer-valued, else ``None``.
    """
    n = chi.q - 1
    hist = np.asarray(hist)
    integer = hist.dtype.kind in "iu"
    if integer and chi.is_real:
        exact = int(hist @ index_table(chi).astype(np.int64))
        return complex(exact), exact
    cls = (chi.k * np.arange(n, dtype=np.int64)) % n
    if integer:
        by_class = np.zeros(n, dtype=np.int64)
        np.add.at(by_class, cls, hist.astype(np.int64))
    else:
        by_class = np.zeros(n, dtype=np.complex128)
        np.add.at(by_class, cls, hist)
    return histogram_value(chi.ctx, by_class), None
