"""Natural-number arithmetic kernels shared by the whole package.

Values are plain Python ints restricted to be non-negative; what this module
adds are the modular kernels (binary exponentiation, gcd, modular inverse
with an explicit failure witness) and string parsing for arbitrary-size CLI
inputs.  The inverse deliberately reports the blocking divisor instead of a
bare error: elliptic-curve factoring treats that divisor as its answer.
"""

from __future__ import annotations


class NotInvertible(Exception):
    """Raised when ``a`` has no inverse modulo ``m``.

    Carries ``divisor`` = gcd(a, m) > 1 (or m itself when a == 0), which is a
    nontrivial divisor of the modulus whenever the modulus is composite.
    """

    def __init__(self, divisor: int):
        super().__init__("not invertible; blocking divisor %d" % divisor)
        self.divisor = divisor


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus by left-to-right binary exponentiation."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if base < 0 or exponent < 0:
        raise ValueError("base and exponent must be non-negative")
    result = 1
    base %= modulus
    for i in range(exponent.bit_length() - 1, -1, -1):
        result = result * result % modulus
        if (exponent >> i) & 1:
            result = result * base % modulus
    return result


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; gcd(0, 0) = 0 by convention."""
    if a < 0 or b < 0:
        raise ValueError("arguments must be non-negative")
    while b:
        a, b = b, a % b
    return a


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of a modulo modulus, or NotInvertible carrying gcd(a, modulus).

    Extended Euclid; requires 0 <= a < modulus and modulus >= 2.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if not 0 <= a < modulus:
        raise ValueError("need 0 <= a < modulus")
    if a == 0:
        raise NotInvertible(modulus)
    # Invariants: r = s*a + t*modulus (t never needed), running Euclid.
    old_r, r = a, modulus
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise NotInvertible(old_r)
    return old_s % modulus


def decompose_two_power(n: int) -> tuple[int, int]:
    """Write odd n >= 3 as n = 2**k * q + 1 with q odd, k >= 1; return (k, q)."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    q = n - 1
    k = 0
    while q % 2 == 0:
        q //= 2
        k += 1
    return k, q


def parse_natural(text: str) -> int:
    """Parse a decimal or 0x-prefixed hexadecimal non-negative integer."""
    s = text.strip()
    if s.startswith(("0x", "0X")):
        value = int(s, 16)
    else:
        value = int(s, 10)
    if value < 0:
        raise ValueError("value must be non-negative: %r" % text)
    return value


def to_decimal(value: int) -> str:
    if value < 0:
        raise ValueError("value must be non-negative")
    return str(value)


def to_hex(value: int) -> str:
    if value < 0:
        raise ValueError("value must be non-negative")
    return hex(value)
