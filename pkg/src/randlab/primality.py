"""Probabilistic primality testing and random prime generation.

The core test takes odd n = 2**k * q + 1 (q odd) and a base x, computes
y = x**q mod n, accepts immediately if y == 1, then squares y up to k times:
seeing n-1 accepts, seeing 1 without having seen n-1 first rejects.  A "no"
is always correct; a "yes" on composite n happens for fewer than a quarter
of the bases, so independent repetitions drive the error below any target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .natnum import decompose_two_power, mod_pow
from .rng import SplitMix64

PROBABLY_PRIME = "probably-prime"
COMPOSITE = "composite"

# Exhaustive witness scans are quadratic-ish; keep them desk-scale.
WITNESS_SCAN_LIMIT = 10**6

# Give up drawing random candidates after this many composite rejections.
PRIME_SEARCH_LIMIT = 10**6


class PrimelessIntervalError(RuntimeError):
    """Raised when random prime search keeps drawing composites."""


@dataclass(frozen=True)
class PrimalityVerdict:
    answer: str  # PROBABLY_PRIME or COMPOSITE
    rounds_used: int
    error_bound: Fraction  # false-positive bound: 4**-(requested rounds)

    @property
    def is_probably_prime(self) -> bool:
        return self.answer == PROBABLY_PRIME


def algorithm_p_single(n: int, x: int) -> bool:
    """One round of the strong pseudoprime test for odd n >= 3, 1 < x < n.

    Returns True ("yes": n passed, consistent with prime) or False ("no":
    x witnesses that n is composite).
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    if not 1 < x < n:
        raise ValueError("need 1 < x < n")
    k, q = decompose_two_power(n)
    y = mod_pow(x, q, n)
    if y == 1:
        return True
    for _ in range(k):
        if y == n - 1:
            return True
        if y == 1:
            return False
        y = y * y % n
    return False


def is_probable_prime(n: int, rounds: int, rng: SplitMix64) -> PrimalityVerdict:
    """Run up to ``rounds`` independent random-base rounds on n.

    Composite answers are exact and returned at the first witnessing round;
    probably-prime means every round passed, which for composite n has
    probability below 4**-rounds.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    bound = Fraction(1, 4**rounds)
    if n < 2:
        return PrimalityVerdict(COMPOSITE, 0, bound)
    if n == 2:
        return PrimalityVerdict(PROBABLY_PRIME, 0, bound)
    if n % 2 == 0:
        return PrimalityVerdict(COMPOSITE, 0, bound)
    if n == 3:
        # (1, 3) contains only x = 2; handle directly rather than loop on it.
        return PrimalityVerdict(PROBABLY_PRIME, 0, bound)
    for used in range(1, rounds + 1):
        x = rng.uniform_natural_in(1, n)  # arbitrary-precision draw from (1, n)
        if not algorithm_p_single(n, x):
            return PrimalityVerdict(COMPOSITE, used, bound)
    return PrimalityVerdict(PROBABLY_PRIME, rounds, bound)


def _is_prime_by_trial_division(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def witness_density(n: int) -> Fraction:
    """Fraction of bases x in (1, n) on which the single-round test says yes.

    Exhaustive over all n-2 bases; n must be an odd composite with
    9 <= n <= 10**6.  For primes the notion of a false-positive rate is
    undefined (every base passes), so they are rejected.
    """
    if n < 9 or n % 2 == 0:
        raise ValueError("n must be odd and >= 9")
    if n > WITNESS_SCAN_LIMIT:
        raise ValueError("n too large for exhaustive scan (limit %d)" % WITNESS_SCAN_LIMIT)
    if _is_prime_by_trial_division(n):
        raise ValueError("n must be composite")
    count = sum(1 for x in range(2, n) if algorithm_p_single(n, x))
    return Fraction(count, n - 2)


def random_prime_in(lo: int, hi: int, rounds: int, rng: SplitMix64) -> int:
    """Uniformly draw from (lo, hi) until a probable prime appears.

    Raises PrimelessIntervalError after 10**6 consecutive composite draws,
    which for any interval actually containing primes is overwhelmingly
    unlikely.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if hi <= lo + 1:
        raise ValueError("open interval (%d, %d) is empty" % (lo, hi))
    for _ in range(PRIME_SEARCH_LIMIT):
        candidate = rng.uniform_natural_in(lo, hi)
        if is_probable_prime(candidate, rounds, rng).is_probably_prime:
            return candidate
    raise PrimelessIntervalError(
        "no probable prime in (%d, %d) after %d draws" % (lo, hi, PRIME_SEARCH_LIMIT)
    )
