"""Euclid-type inequality verifiers and exhaustive discriminant scans.

The verifiers check, per discriminant, that each inert prime is
dominated by the product of its predecessors (plus the strengthened
and bound variants with their known exceptional discriminants). The
scans reproduce the finite case analyses over discriminant ranges.
"""
from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field

from . import arith
from .arith import SatProduct, kronecker
from .sequences import (
    Discriminant,
    InertSequence,
    PreconditionError,
    theorem1_setup,
    turning_index,
)

#: Negative discriminants with q_4 > d - q_1 over 3 <= d <= 23**5.
LEMMA22_NEG_HITS = (-24, -20, -19, -16, -15, -12, -11, -8, -7, -4, -3)

#: Positive discriminants surviving the narrowed case-2 check.
LEMMA22_POS_HITS = (5, 8, 12)

#: Discriminants where the bound q_{i(D)+1} < d fails.
LEMMA22_EXCEPTIONS = (-4, -3)

#: Discriminants where q_{i(D)+2} < Q_{i(D)+1} fails.
LEMMA23_EXCEPTIONS = (-3, 5)

FULL_SCALE_NEG_LIMIT = 23**5  # 6 436 343
FULL_SCALE_WINDOW = (23**5, 29**5)  # 20 511 149


class ScanAnomalyError(RuntimeError):
    """A scan or verifier produced a result contradicting a known claim."""


@dataclass(frozen=True)
class InequalityRecord:
    """One checked inequality: lhs < rhs (or lhs <= rhs when strict=False)."""

    i: int
    lhs: int
    rhs: SatProduct
    holds: bool
    tag: str = ""
    exception: bool = False


def verify_theorem1(
    disc: Discriminant, i_max: int, seq: InertSequence | None = None
) -> list[InequalityRecord]:
    """Check q_{i+1} < Q_i for i0 <= i <= i_max."""
    if seq is None:
        seq = InertSequence(disc)
    setup = theorem1_setup(disc, seq)
    if i_max < setup.i0:
        raise PreconditionError(
            f"i_max = {i_max} is below i0 = {setup.i0} for D = {disc.D}"
        )
    records = []
    for i in range(setup.i0, i_max + 1):
        lhs = seq.term(i + 1)
        rhs = seq.product(i)
        records.append(InequalityRecord(i, lhs, rhs, rhs.exceeds(lhs)))
    return records


@dataclass(frozen=True)
class Lemma22Record:
    """Bound check on the first inert prime past the turning index."""

    case: int
    turning: int
    bound: int
    q_next: int
    holds: bool
    exception: bool
    contradiction: bool


def verify_lemma22_bound(
    disc: Discriminant, seq: InertSequence | None = None
) -> Lemma22Record:
    """Check q_{i(D)+1} <= d - Q_j with the case-dependent offset j.

    Case 1 (D < 0 with even turning index, or D > 0 with odd) uses
    j = i(D); cases 2 (D > 0, even) and 3 (D < 0, odd) use j = i(D)-2.
    D = -3, -4 are the only admissible failures (flagged as exceptions);
    any other failure is marked as a contradiction.
    """
    if seq is None:
        seq = InertSequence(disc)
    D, d = disc.D, disc.d
    n0 = turning_index(disc, d, seq).index
    odd = n0 % 2 == 1
    if (D < 0 and not odd) or (D > 0 and odd):
        case = 1
        bound = d - seq.product(n0).value
    elif D > 0:
        case = 2
        bound = d - seq.product(n0 - 2).value
    else:
        case = 3
        bound = d - seq.product(n0 - 2).value
    q_next = seq.term(n0 + 1)
    holds = q_next <= bound
    exception = not holds and D in LEMMA22_EXCEPTIONS
    return Lemma22Record(
        case=case,
        turning=n0,
        bound=bound,
        q_next=q_next,
        holds=holds,
        exception=exception,
        contradiction=not holds and not exception,
    )


def verify_lemma23(
    disc: Discriminant, i_max: int, seq: InertSequence | None = None
) -> list[InequalityRecord]:
    """Check the inequalities past the turning index n0 = i(D).

    Tagged "plain": q_{i+1} < Q_i for i >= n0 + 1, failing only for
    D = -3, 5 at i = n0 + 1 (flagged as exceptions). Tagged "strong":
    d + q_{i+1} <= Q_i for i >= n0 + 1 when n0 is even, i >= n0 + 2
    when n0 is odd.
    """
    if seq is None:
        seq = InertSequence(disc)
    D, d = disc.D, disc.d
    n0 = turning_index(disc, d, seq).index
    if i_max < n0 + 2:
        raise PreconditionError(
            f"i_max = {i_max} is below i(D)+2 = {n0 + 2} for D = {disc.D}"
        )
    records = []
    for i in range(n0 + 1, i_max + 1):
        lhs = seq.term(i + 1)
        rhs = seq.product(i)
        holds = rhs.exceeds(lhs)
        records.append(
            InequalityRecord(
                i,
                lhs,
                rhs,
                holds,
                tag="plain",
                exception=(
                    not holds and i == n0 + 1 and D in LEMMA23_EXCEPTIONS
                ),
            )
        )
    strong_start = n0 + 1 if n0 % 2 == 0 else n0 + 2
    for i in range(strong_start, i_max + 1):
        lhs = d + seq.term(i + 1)
        rhs = seq.product(i)
        records.append(
            InequalityRecord(i, lhs, rhs, rhs.at_least(lhs), tag="strong")
        )
    return records


@dataclass(frozen=True)
class PanaitopolRecord:
    n: int
    lhs: int
    rhs: int
    holds: bool


def verify_panaitopol(ell: int, n_max: int) -> list[PanaitopolRecord]:
    """Check p_{n+1}**ell < p_1*...*p_n for 2*ell <= n <= n_max."""
    if ell < 1:
        raise PreconditionError(f"ell must be >= 1, got {ell}")
    if n_max < 2 * ell:
        raise PreconditionError(f"n_max = {n_max} is below 2*ell = {2 * ell}")
    primorials = [1]
    for k in range(n_max + 1):
        primorials.append(primorials[-1] * arith.prime_at(k))
    records = []
    for n in range(2 * ell, n_max + 1):
        lhs = arith.prime_at(n) ** ell  # prime_at is 0-based: p_{n+1}
        rhs = primorials[n]
        records.append(PanaitopolRecord(n, lhs, rhs, lhs < rhs))
    return records


# --- scan engine -----------------------------------------------------------

_QR_TABLE_LIMIT = 4096
_qr_tables: dict[int, bytearray] = {}
_odd_prime_tables_cache: list[tuple[int, bytearray]] = []


def _qr_table(p: int) -> bytearray:
    table = _qr_tables.get(p)
    if table is None:
        table = bytearray(p)
        for x in range(1, p):
            table[x * x % p] = 1
        _qr_tables[p] = table
    return table


def _odd_prime_tables() -> list[tuple[int, bytearray]]:
    if not _odd_prime_tables_cache:
        for p in arith.primes_up_to(_QR_TABLE_LIMIT)[1:]:
            _odd_prime_tables_cache.append((p, _qr_table(p)))
    return _odd_prime_tables_cache


def symbol_at_prime(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for prime p, via quadratic-residue tables."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    if p <= _QR_TABLE_LIMIT:
        r = D % p
        if r == 0:
            return 0
        return 1 if _qr_table(p)[r] else -1
    return kronecker(D, p)


def _inert_count_below_gap(D: int, need: int) -> bool:
    """True iff fewer than `need` inert primes for D lie at or below d - q1.

    Equivalent to q_need > d - q_1. Valid discriminants always have an
    inert prime below d, so the search terminates.
    """
    d = abs(D)
    tables = _odd_prime_tables()
    q1 = 0
    bound = 0
    count = 0
    if D % 2:
        if D % 8 in (3, 5):  # (D/2) = -1
            q1, bound = 2, d - 2
            if bound < 2:
                return True
            count = 1
    for p, table in tables:
        if q1:
            if p > bound:
                return count < need
            r = D % p
            if r and not table[r]:
                count += 1
                if count == need:
                    return False
        else:
            if p >= d:
                raise ScanAnomalyError(f"no inert prime below d for D = {D}")
            r = D % p
            if r and not table[r]:
                q1, bound = p, d - p
                if bound < p:
                    return True
                count = 1
    # Rare continuation past the tabulated primes.
    i = len(tables) + 1  # +1 for p = 2
    while True:
        p = arith.prime_at(i)
        i += 1
        if q1:
            if p > bound:
                return count < need
            if kronecker(D, p) == -1:
                count += 1
                if count == need:
                    return False
        else:
            if p >= d:
                raise ScanAnomalyError(f"no inert prime below d for D = {D}")
            if kronecker(D, p) == -1:
                q1, bound = p, d - p
                if bound < p:
                    return True
                count = 1


def _inert_prefix_is(D: int, wanted: tuple[int, ...]) -> bool:
    """True iff the inert sequence for D starts exactly with `wanted`."""
    matched = 0
    i = 0
    while matched < len(wanted):
        p = arith.prime_at(i)
        i += 1
        if p > wanted[matched]:
            return False
        if symbol_at_prime(D, p) == -1:
            if p != wanted[matched]:
                return False
            matched += 1
    return True


def _inert_prefix(D: int, k: int) -> list[int]:
    out = []
    i = 0
    while len(out) < k:
        p = arith.prime_at(i)
        i += 1
        if symbol_at_prime(D, p) == -1:
            out.append(p)
    return out


@dataclass(frozen=True)
class ScanResult:
    lo: int
    hi: int
    predicate_name: str
    hits: tuple[int, ...]
    scanned_count: int
    duration: float
    shards: int = 1


def _valid_neg(d: int) -> bool:
    # -d = 0,1 (mod 4) <=> d = 0,3 (mod 4); negative D is never a square.
    return d >= 3 and d % 4 in (0, 3)


def _valid_pos(D: int) -> bool:
    return D >= 3 and D % 4 in (0, 1) and not arith.is_square(D)


def _chunk_q4_neg(args: tuple) -> tuple[list[int], int]:
    lo, hi = args
    hits, count = [], 0
    for d in range(lo, hi + 1):
        if d % 4 in (1, 2) or d < 3:
            continue
        count += 1
        if _inert_count_below_gap(-d, 4):
            hits.append(-d)
    return hits, count


def _chunk_q1_window(args: tuple) -> tuple[list[int], int]:
    lo, hi, q1_required, include_positive = args
    hits, count = [], 0
    for d in range(lo, hi + 1):
        for D in (-d, d) if include_positive else (-d,):
            if D < 0:
                if not _valid_neg(d):
                    continue
            elif not _valid_pos(D):
                continue
            count += 1
            if _inert_prefix_is(D, (q1_required,)) and _inert_count_below_gap(
                D, 4
            ):
                hits.append(D)
    return hits, count


def _chunk_small_pairs(args: tuple) -> tuple[list[int], int]:
    lo, hi, q1, q2 = args
    hits, count = [], 0
    for D in range(lo, hi + 1):
        if D % 4 not in (0, 1) or arith.is_square(D) or abs(D) < 3:
            continue
        count += 1
        if _inert_prefix_is(D, (q1, q2)):
            hits.append(D)
    return hits, count


def _chunk_lemma22_pos(args: tuple) -> tuple[list[int], int]:
    lo, hi, constrained = args
    hits, count = [], 0
    for D in range(lo, hi + 1):
        if not _valid_pos(D):
            continue
        count += 1
        q1 = _inert_prefix(D, 1)[0]
        if q1 > 13:
            continue
        if constrained and D >= q1**3:
            continue
        if _inert_count_below_gap(D, 3):  # q3 > d - q1
            hits.append(D)
    return hits, count


def _run_sharded(
    worker,
    lo: int,
    hi: int,
    extra: tuple,
    threads: int = 1,
    shards: int | None = None,
) -> tuple[list[int], int, int]:
    if shards is None:
        shards = max(threads, 1)
    shards = max(1, min(shards, hi - lo + 1))
    step = (hi - lo + 1 + shards - 1) // shards
    tasks = []
    a = lo
    while a <= hi:
        b = min(a + step - 1, hi)
        tasks.append((a, b) + extra)
        a = b + 1
    if threads > 1 and len(tasks) > 1:
        with multiprocessing.get_context("fork").Pool(threads) as pool:
            parts = pool.map(worker, tasks)
    else:
        parts = [worker(t) for t in tasks]
    hits: list[int] = []
    count = 0
    for h, c in parts:
        hits.extend(h)
        count += c
    return sorted(hits), count, len(tasks)


def scan_q4_large(
    lo: int, hi: int, threads: int = 1, shards: int | None = None
) -> ScanResult:
    """Negative discriminants with lo <= d <= hi and q_4 > d - q_1."""
    if not 3 <= lo <= hi:
        raise PreconditionError(f"need 3 <= lo <= hi, got ({lo}, {hi})")
    start = time.perf_counter()
    hits, count, nshards = _run_sharded(
        _chunk_q4_neg, lo, hi, (), threads, shards
    )
    return ScanResult(
        lo, hi, "q4_gt_d_minus_q1_neg", tuple(hits), count,
        time.perf_counter() - start, nshards,
    )


def scan_q1_window(
    lo: int,
    hi: int,
    q1_required: int,
    threads: int = 1,
    shards: int | None = None,
    include_positive: bool = False,
) -> ScanResult:
    """Discriminants with lo < d < hi, first inert prime q1_required,
    and q_4 > d - q_1. Negative discriminants by default."""
    if lo > hi:
        raise PreconditionError(f"need lo <= hi, got ({lo}, {hi})")
    start = time.perf_counter()
    hits, count, nshards = _run_sharded(
        _chunk_q1_window,
        lo + 1,
        hi - 1,
        (q1_required, include_positive),
        threads,
        shards,
    )
    return ScanResult(
        lo, hi, f"q1_eq_{q1_required}_and_q4_gap", tuple(hits), count,
        time.perf_counter() - start, nshards,
    )


def scan_small_pairs(
    lo: int,
    hi: int,
    q1: int,
    q2: int,
    threads: int = 1,
    shards: int | None = None,
) -> ScanResult:
    """Discriminants in the open interval (lo, hi) whose inert sequence
    starts exactly with (q1, q2)."""
    if lo >= hi:
        raise PreconditionError(f"need lo < hi, got ({lo}, {hi})")
    start = time.perf_counter()
    hits, count, nshards = _run_sharded(
        _chunk_small_pairs, lo + 1, hi - 1, (q1, q2), threads, shards
    )
    return ScanResult(
        lo, hi, f"starts_with_{q1}_{q2}", tuple(hits), count,
        time.perf_counter() - start, nshards,
    )


def scan_lemma22_case2(
    lo: int,
    hi: int,
    constrained: bool = True,
    threads: int = 1,
    shards: int | None = None,
) -> ScanResult:
    """Positive discriminants with q_1 <= 13 and q_3 > d - q_1.

    The constrained variant additionally imposes the proof-narrowed
    bound d < q_1**3; the raw variant checks the bare predicate so the
    reproduced hit list is not an artifact of over-constraining.
    """
    if lo > hi:
        raise PreconditionError(f"need lo <= hi, got ({lo}, {hi})")
    start = time.perf_counter()
    hits, count, nshards = _run_sharded(
        _chunk_lemma22_pos, lo, hi, (constrained,), threads, shards
    )
    name = "pos_q3_gap_constrained" if constrained else "pos_q3_gap_raw"
    return ScanResult(
        lo, hi, name, tuple(hits), count, time.perf_counter() - start, nshards
    )
