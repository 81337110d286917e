"""Congruences modulo prime powers, Bernoulli residues and Wolstenholme primes."""

from fractions import Fraction

from ._core import (
    WolstError,
    bernoulli_mod,
    central_binomial,
    check_ids,
    describe,
    elementary_symmetric,
    is_prime,
    kummer_reduce,
    power_sum_inverses,
    remark1_experiment,
    run_check,
    run_suite,
    scan,
    sieve_primes,
    wolstenholme_quotient,
)
from ._core import bernoulli_exact as _bernoulli_exact


def bernoulli_exact(n: int) -> Fraction:
    """B_n as a Fraction, with B_1 = -1/2."""
    num, den = _bernoulli_exact(n)
    return Fraction(num, den)


__all__ = [
    "WolstError",
    "bernoulli_exact",
    "bernoulli_mod",
    "central_binomial",
    "check_ids",
    "describe",
    "elementary_symmetric",
    "is_prime",
    "kummer_reduce",
    "power_sum_inverses",
    "remark1_experiment",
    "run_check",
    "run_suite",
    "scan",
    "sieve_primes",
    "wolstenholme_quotient",
]
