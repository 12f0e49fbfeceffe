"""Deterministic seedable random source used by every randomized routine.

The generator is SplitMix64: 64-bit state, one addition and three xor/multiply
mixing steps per output.  It is small enough to re-derive by hand, has
published reference constants, and is bit-exact across platforms, which is
what makes every experiment in this package replayable from a single seed.

Reference output for seed 0: 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, ...
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

# Weyl-sequence increment (golden ratio in 64-bit fixed point).
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator.

    State is a single 64-bit word.  Instances are cheap values: copy with
    ``clone()`` before handing one to code that must not disturb your
    sequence.  Never share one instance between concurrent trials; derive a
    stream per trial with ``derive_stream`` instead.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def clone(self) -> "SplitMix64":
        return SplitMix64(self.state)

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform_below(self, bound: int) -> int:
        """Uniform integer in [0, bound), exact by rejection (no modulo bias).

        Bounds up to 2^64 draw single words and reject those at or above the
        largest multiple of ``bound`` that fits; larger bounds assemble a
        bit-string as wide as the bound and reject out-of-range values.
        Consumes one or more raw outputs either way.
        """
        if bound < 1:
            raise ValueError("bound must be >= 1")
        if bound > MASK64 + 1:
            return self._bits_below(bound)
        # Largest multiple of bound that fits in 2^64; values past it would
        # make low residues more likely, so they are re-drawn.
        limit = (MASK64 + 1) - ((MASK64 + 1) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def _bits_below(self, span: int) -> int:
        """Uniform in [0, span) for arbitrary-precision span, by rejection
        on bit-strings as wide as the span."""
        bits = span.bit_length()
        words = (bits + 63) // 64
        mask = (1 << bits) - 1
        while True:
            r = 0
            for i in range(words):
                r |= self.next_u64() << (64 * i)
            r &= mask
            if r < span:
                return r

    def uniform_natural_in(self, lo: int, hi: int) -> int:
        """Uniform integer strictly between lo and hi (both ends excluded).

        Works for arbitrary-precision bounds; the distribution is exactly
        uniform over {lo+1, ..., hi-1}.
        """
        if hi <= lo + 1:
            raise ValueError("open interval (%d, %d) is empty" % (lo, hi))
        return lo + 1 + self._bits_below(hi - lo - 1)


def derive_stream(seed: int, index: int) -> SplitMix64:
    """Decorrelated generator number ``index`` for a master ``seed``.

    The stream seed is one SplitMix64 output of (seed XOR index*GOLDEN_GAMMA),
    so distinct indices give unrelated sequences while staying a pure
    function of (seed, index).
    """
    if index < 0:
        raise ValueError("stream index must be non-negative")
    mixed = (seed ^ ((index * GOLDEN_GAMMA) & MASK64)) & MASK64
    return SplitMix64(SplitMix64(mixed).next_u64())
