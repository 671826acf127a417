"""Discriminants and their inert-prime sequences.

A valid discriminant is a non-square integer D = 0,1 (mod 4). Its
inert primes are the primes q with Kronecker symbol (D/q) = -1,
enumerated ascending; partial products of the sequence drive all of
the inequality verifiers.
"""
from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple

from . import arith
from .arith import SatProduct, factorize, is_square, kronecker

#: Largest prime magnitude the sequence generator will scan before
#: raising SequenceCapError. Inert primes have density ~1/2 among all
#: primes, so hitting this cap signals misuse, not a slow search.
DEFAULT_PRIME_CAP = 10**8


class DiscriminantError(ValueError):
    """Rejected discriminant (wrong residue class or perfect square)."""


class SequenceCapError(RuntimeError):
    """Sequence generation exceeded its configured prime-magnitude cap."""


class PreconditionError(ValueError):
    """A named precondition of an operation does not hold."""


@dataclass(frozen=True)
class Discriminant:
    """Validated non-square discriminant, d = |D| >= 3."""

    D: int
    d: int


def make_discriminant(D: int) -> Discriminant:
    if D % 4 not in (0, 1):
        raise DiscriminantError(f"D = {D} is not 0 or 1 (mod 4)")
    if is_square(D):
        raise DiscriminantError(f"D = {D} is a perfect square")
    return Discriminant(D, abs(D))


class InertSequence:
    """Lazily extended ascending sequence of inert primes for one discriminant.

    Caches the terms found so far together with the partial products
    Q_i = q_1 * ... * q_i (Q_0 = 1). Reads are safe concurrently;
    extension is serialized by an internal lock.
    """

    def __init__(self, disc: Discriminant, prime_cap: int = DEFAULT_PRIME_CAP):
        self.disc = disc
        self.terms: list[int] = []
        self.scan_cursor = 1
        self.prime_cap = prime_cap
        self._products: list[SatProduct] = [SatProduct.one()]
        self._next_prime_index = 0
        self._lock = threading.Lock()

    def extend_to_count(self, k: int) -> "InertSequence":
        """Ensure at least k terms are cached; returns self."""
        if len(self.terms) >= k:
            return self
        with self._lock:
            while len(self.terms) < k:
                p = arith.prime_at(self._next_prime_index)
                if p > self.prime_cap:
                    raise SequenceCapError(
                        f"no {k}-th inert prime for D = {self.disc.D} "
                        f"below the cap {self.prime_cap}"
                    )
                self._next_prime_index += 1
                self.scan_cursor = p
                if kronecker(self.disc.D, p) == -1:
                    self.terms.append(p)
                    self._products.append(self._products[-1].times(p))
        return self

    def term(self, i: int) -> int:
        """q_i, 1-based."""
        if i < 1:
            raise IndexError(f"term index must be >= 1, got {i}")
        self.extend_to_count(i)
        return self.terms[i - 1]

    def product(self, i: int) -> SatProduct:
        """Q_i = q_1 * ... * q_i; the empty product 1 for i <= 0."""
        if i <= 0:
            return SatProduct.one()
        self.extend_to_count(i)
        return self._products[i]

    def count_terms_at_most(self, bound: int) -> int:
        """Number of terms <= bound."""
        while not self.terms or self.terms[-1] <= bound:
            self.extend_to_count(len(self.terms) + 1)
        return bisect_right(self.terms, bound)


def omega_minus(disc: Discriminant, n: int) -> int:
    """Number of inert-prime divisors of n, counted with multiplicity."""
    return sum(
        e for p, e in factorize(n).factors if kronecker(disc.D, p) == -1
    )


class InertDivisor(NamedTuple):
    M: int
    q: int


def _select_divisor(disc: Discriminant, M: int, s1: int, s2: int) -> int:
    candidates = [
        p
        for p, _ in factorize(M).factors
        if kronecker(disc.D, p) == -1 and math.gcd(p, s1 * s2) == 1
    ]
    if not candidates:
        raise AssertionError(
            f"no inert divisor of M = {M} coprime to {s1}*{s2} for D = {disc.D}"
        )
    # Prefer odd divisors; q = 2 only when M carries no odd inert divisor.
    odd = [p for p in candidates if p % 2]
    return odd[0] if odd else candidates[0]


def find_inert_divisor(
    disc: Discriminant, s1: int, s2: int, variant: str = "difference"
) -> InertDivisor:
    """Constructive inert divisor of M = +-(s2 - d*s1) or M' = d*s1 + s2.

    Requires gcd(d*s1, s2) = 1. For the difference variant the sign and
    the parity of the inert-divisor count of s2 must select one of the
    admissible cases (and M must come out positive); for the sum variant
    the count must be odd. Returns (M, q) with q an inert prime dividing
    M and coprime to s1*s2, hence q <= M.
    """
    if s1 < 1 or s2 < 1:
        raise PreconditionError("s1 and s2 must be positive")
    D, d = disc.D, disc.d
    ds1 = d * s1
    if math.gcd(ds1, s2) != 1:
        raise PreconditionError(f"gcd(d*s1, s2) = gcd({ds1}, {s2}) != 1")
    omega = omega_minus(disc, s2)
    if variant == "difference":
        if omega % 2 == 1 and s2 > ds1:
            M = s2 - ds1
        elif s2 < ds1 and (
            (D < 0 and omega % 2 == 0) or (D > 0 and omega % 2 == 1)
        ):
            M = ds1 - s2
        else:
            raise PreconditionError(
                f"no difference case applies: D = {D}, "
                f"omega_minus(s2) = {omega}, d*s1 = {ds1}, s2 = {s2}"
            )
    elif variant == "sum":
        if omega % 2 == 0:
            raise PreconditionError(
                f"sum variant requires odd omega_minus(s2), got {omega}"
            )
        M = ds1 + s2
    else:
        raise PreconditionError(f"unknown variant {variant!r}")
    if M <= 0:
        raise PreconditionError(f"M = {M} is not positive")
    return InertDivisor(M, _select_divisor(disc, M, s1, s2))


@dataclass(frozen=True)
class TurningReport:
    """The unique n with Q_n < M and Q_{n+1} >= M (equality flagged)."""

    disc: Discriminant
    M: int
    index: int
    Q_n: SatProduct
    Q_n1: SatProduct
    boundary_equal: bool


def turning_index(
    disc: Discriminant, M: int, seq: InertSequence | None = None
) -> TurningReport:
    """Largest n >= 1 with q_1*...*q_n < M; requires M >= d."""
    if M < disc.d:
        raise PreconditionError(f"turning_index requires M >= d, got M = {M}")
    if seq is None:
        seq = InertSequence(disc)
    n = 1
    while not seq.product(n + 1).at_least(M):
        n += 1
    q_n1 = seq.product(n + 1)
    return TurningReport(
        disc=disc,
        M=M,
        index=n,
        Q_n=seq.product(n),
        Q_n1=q_n1,
        boundary_equal=(not q_n1.saturated and q_n1.value == M),
    )


@dataclass(frozen=True)
class Theorem1Setup:
    """Threshold H and the index i0 of the last term <= H."""

    disc: Discriminant
    H: int
    i0: int


def theorem1_setup(
    disc: Discriminant, seq: InertSequence | None = None
) -> Theorem1Setup:
    """H = |D| generically, 11 for D in {-3, -4, 5}; i0 = #terms <= H."""
    H = 11 if disc.D in (-3, -4, 5) else disc.d
    if seq is None:
        seq = InertSequence(disc)
    return Theorem1Setup(disc, H, seq.count_terms_at_most(H))
