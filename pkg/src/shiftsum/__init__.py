"""Shifted character sums with multiplicative coefficients.

Evaluates ``sum_{n <= N} f(n) chi(n + a)`` and its ``t``-shift products for
Dirichlet characters modulo a prime, together with the complete and
incomplete character sums and the prime-block decomposition used to bound
them.
"""

from .bounds import BoundReport, nontrivial_range_probe, theorem1_rhs, theorem2_rhs, weil_rhs
from .characters import DirichletCharacter, character, legendre_character, principal_character
from .decomposition import lemma1_blocks, sigma12
from .kernels import BACKEND
from .modarith import ModulusError, PrimeContext, get_context, is_prime
from .multfunc import (
    MultiplicativeFunction,
    SieveLimitError,
    build_spf_sieve,
    make_function,
    make_liouville,
    make_mobius,
    make_one,
    make_random_pm1,
)
from .sums import ShiftError, SumValue, shifted_product_sum, shifted_sum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundReport",
    "DirichletCharacter",
    "ModulusError",
    "MultiplicativeFunction",
    "PrimeContext",
    "ShiftError",
    "SieveLimitError",
    "SumValue",
    "build_spf_sieve",
    "character",
    "get_context",
    "is_prime",
    "legendre_character",
    "lemma1_blocks",
    "make_function",
    "make_liouville",
    "make_mobius",
    "make_one",
    "make_random_pm1",
    "nontrivial_range_probe",
    "principal_character",
    "shifted_product_sum",
    "shifted_sum",
    "sigma12",
    "theorem1_rhs",
    "theorem2_rhs",
    "weil_rhs",
]
