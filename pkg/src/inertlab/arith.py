"""Exact integer arithmetic primitives.

Deterministic primality and factorization for 64-bit inputs, square
detection, odd parts, the full Kronecker symbol, and saturating
partial products. Everything here is a pure function on values.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

MAX_INPUT = 1 << 64

#: Product threshold above which SatProduct flags saturation. Every
#: comparison target used by the verifiers fits in 64 bits, so a
#: saturated product is conclusively larger than any of them.
SATURATION_THRESHOLD = 1 << 127

# Witness set giving a deterministic Miller-Rabin test for all n < 2^64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_square(n: int) -> bool:
    """True iff n is the square of a nonnegative integer."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def odd_part(n: int) -> int:
    """n divided by its largest power-of-two divisor (n >= 1)."""
    if n < 1:
        raise ValueError(f"odd_part requires n >= 1, got {n}")
    return n // (n & -n)


def kronecker(a: int, n: int) -> int:
    """Full Kronecker symbol (a/n) for arbitrary integers.

    Conventions: (a/0) = 1 iff a = +-1 else 0; (a/-1) = -1 iff a < 0;
    (a/2) = 0 for even a, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8);
    completely multiplicative in n.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # Pull the power of two out of n.
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t % 2 == 1 and a % 8 in (3, 5):
        result = -result
    # Jacobi symbol over the remaining odd positive n.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# --- prime cache -----------------------------------------------------------

_primes: list[int] = []
_sieve_limit = 0


def _extend_sieve(limit: int) -> None:
    global _primes, _sieve_limit
    limit = max(limit, 2 * _sieve_limit, 1 << 12)
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    _primes = [i for i, flag in enumerate(sieve) if flag]
    _sieve_limit = limit


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending. Backed by a growing cached sieve."""
    if limit > _sieve_limit:
        _extend_sieve(limit)
    return _primes[: bisect_right(_primes, limit)]


def prime_at(index: int) -> int:
    """The index-th prime, 0-based (prime_at(0) == 2)."""
    while index >= len(_primes):
        _extend_sieve(2 * _sieve_limit if _sieve_limit else 1 << 12)
    return _primes[index]


def iter_primes():
    """Yield 2, 3, 5, ... indefinitely."""
    i = 0
    while True:
        yield prime_at(i)
        i += 1


# --- factorization ---------------------------------------------------------

_TRIAL_DIVISION_LIMIT = 100_000


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization of n, primes ascending."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n with no factor <= 10**5.

    Brent's cycle variant with a deterministic restart schedule over
    the polynomial constant, so repeated runs split identically.
    """
    for c in range(1, 256):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            # Backtrack one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")  # unreachable for 64-bit inputs


def factorize(n: int) -> Factorization:
    """Complete prime factorization of 1 <= n < 2**64."""
    if not 1 <= n < MAX_INPUT:
        raise ValueError(f"factorize requires 1 <= n < 2**64, got {n}")
    m = n
    factors: list[tuple[int, int]] = []
    for p in primes_up_to(min(_TRIAL_DIVISION_LIMIT, math.isqrt(m))):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        if m < _TRIAL_DIVISION_LIMIT**2 or is_prime(m):
            factors.append((m, 1))
        else:
            # Cofactor is composite with all prime factors > 10**5.
            stack = [m]
            found: dict[int, int] = {}
            while stack:
                v = stack.pop()
                if is_prime(v):
                    found[v] = found.get(v, 0) + 1
                    continue
                g = _pollard_brent(v)
                stack.extend((g, v // g))
            factors.extend(sorted(found.items()))
    factors.sort()
    return Factorization(n, tuple(factors))


# --- saturating products ---------------------------------------------------


@dataclass(frozen=True)
class SatProduct:
    """Running product with a saturation flag at 2**127.

    The exact value is retained (Python integers are unbounded); the
    flag records that the product already exceeds every 64-bit
    comparison target the verifiers use.
    """

    value: int
    saturated: bool = False

    @classmethod
    def one(cls) -> "SatProduct":
        return cls(1, False)

    def times(self, factor: int) -> "SatProduct":
        v = self.value * factor
        return SatProduct(v, v > SATURATION_THRESHOLD)

    def exceeds(self, target: int) -> bool:
        """True iff the product is strictly greater than target."""
        return self.saturated or self.value > target

    def at_least(self, target: int) -> bool:
        return self.saturated or self.value >= target

    def __int__(self) -> int:
        return self.value
