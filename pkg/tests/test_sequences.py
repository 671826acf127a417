import math

import pytest

from inertlab.arith import kronecker
from inertlab.sequences import (
    DiscriminantError,
    InertSequence,
    PreconditionError,
    SequenceCapError,
    find_inert_divisor,
    make_discriminant,
    omega_minus,
    theorem1_setup,
    turning_index,
)


def terms(D, k):
    return InertSequence(make_discriminant(D)).extend_to_count(k).terms[:k]


def test_make_discriminant():
    assert make_discriminant(-4).d == 4
    assert make_discriminant(5).d == 5
    for bad in (16, 0, 1, 4, 9, 100):
        with pytest.raises(DiscriminantError):
            make_discriminant(bad)
    for bad in (-1, -2, 2, 3, 6, 7):
        with pytest.raises(DiscriminantError):
            make_discriminant(bad)


def test_sequence_goldens():
    assert terms(-4, 6) == [3, 7, 11, 19, 23, 31]
    assert terms(-12, 3) == [5, 11, 17]
    assert terms(5, 8) == [2, 3, 7, 13, 17, 23, 37, 43]
    assert terms(-3, 7) == [2, 5, 11, 17, 23, 29, 41]


def test_sequence_products_and_invariants():
    seq = InertSequence(make_discriminant(-4)).extend_to_count(6)
    assert seq.product(0).value == 1
    assert seq.product(-3).value == 1
    assert seq.product(3).value == 3 * 7 * 11
    d = seq.disc.d
    assert 2 <= seq.terms[0] < d
    for q in seq.terms:
        assert kronecker(-4, q) == -1
    assert seq.terms == sorted(seq.terms)


def test_sequence_first_term_bounds():
    # q1 exists with 2 <= q1 < d for every small valid discriminant,
    # and q1 >= 3 forces d >= 4 whenever 2 is not inert.
    for D in range(-500, 501):
        try:
            disc = make_discriminant(D)
        except DiscriminantError:
            continue
        q1 = InertSequence(disc).term(1)
        assert 2 <= q1 < disc.d
        if kronecker(D, 2) != -1:
            assert q1 >= 3 and disc.d >= 4


def test_sequence_determinism():
    a = terms(-84, 20)
    b = terms(-84, 20)
    assert a == b


def test_sequence_cap():
    seq = InertSequence(make_discriminant(-4), prime_cap=10)
    with pytest.raises(SequenceCapError):
        seq.extend_to_count(5)
    # A raised cap on a fresh sequence succeeds where the low one failed.
    assert InertSequence(make_discriminant(-4)).term(5) == 23


def test_omega_minus():
    assert omega_minus(make_discriminant(-3), 22) == 2
    assert omega_minus(make_discriminant(5), 22) == 1  # (5/11) = +1
    assert omega_minus(make_discriminant(-3), 1) == 0
    assert omega_minus(make_discriminant(-4), 1) == 0


def test_omega_minus_additivity():
    disc = make_discriminant(-7)
    for m, n in [(4, 9), (6, 10), (12, 35), (49, 2), (18, 18)]:
        assert omega_minus(disc, m * n) == omega_minus(disc, m) + omega_minus(
            disc, n
        )


def test_find_inert_divisor_worked_examples():
    cases = [
        (-3, 2, 29, "difference", 23, 23),
        (-3, 17, 22, "difference", 29, 29),
        (-3, 3, 41, "sum", 50, 5),
        (5, 7, 78, "difference", 43, 43),
        (5, 8, 17, "difference", 23, 23),
        (5, 3, 22, "sum", 37, 37),
    ]
    for D, s1, s2, variant, M, q in cases:
        result = find_inert_divisor(make_discriminant(D), s1, s2, variant)
        assert result.M == M and result.q == q, (D, s1, s2, variant)


def test_find_inert_divisor_postcondition():
    disc = make_discriminant(-3)
    result = find_inert_divisor(disc, 2, 29)
    assert result.M % result.q == 0
    assert kronecker(disc.D, result.q) == -1
    assert math.gcd(result.q, 2 * 29) == 1
    assert result.q <= result.M


def test_find_inert_divisor_preconditions():
    disc = make_discriminant(-3)
    with pytest.raises(PreconditionError):
        find_inert_divisor(disc, 3, 6)  # gcd(d*s1, s2) > 1
    with pytest.raises(PreconditionError):
        find_inert_divisor(disc, 1, 10, "sum")  # omega(10) = 2 even
    with pytest.raises(PreconditionError):
        # D > 0 with even omega has no difference case.
        find_inert_divisor(make_discriminant(5), 100, 11)
    with pytest.raises(PreconditionError):
        find_inert_divisor(disc, 1, 2, "diagonal")


def test_turning_index():
    report = turning_index(make_discriminant(5), 5)
    assert report.index == 1
    assert report.Q_n.value == 2 and report.Q_n1.value == 6
    assert turning_index(make_discriminant(-4), 4).index == 1
    assert turning_index(make_discriminant(-12), 12).index == 1
    with pytest.raises(PreconditionError):
        turning_index(make_discriminant(-4), 3)


def test_turning_index_uniqueness():
    for D, M in [(-4, 100), (5, 7), (-84, 84), (-3, 1000), (40, 40)]:
        disc = make_discriminant(D)
        report = turning_index(disc, M)
        seq = InertSequence(disc)
        assert seq.product(report.index).value < M
        assert seq.product(report.index + 1).value >= M
        if not report.boundary_equal:
            # No other index satisfies the strict bracket.
            for n in range(1, report.index + 3):
                both = (
                    seq.product(n).value < M
                    and seq.product(n + 1).value > M
                )
                assert both == (n == report.index)


def test_turning_index_boundary_flag():
    # D = -4: Q_2 = 21, so M = 21 makes the upper product exactly M.
    report = turning_index(make_discriminant(-4), 21)
    assert report.index == 1 and report.boundary_equal


def test_theorem1_setup():
    s = theorem1_setup(make_discriminant(-4))
    assert s.H == 11 and s.i0 == 3
    s = theorem1_setup(make_discriminant(-12))
    assert s.H == 12 and s.i0 == 2
    s = theorem1_setup(make_discriminant(-7))
    assert s.H == 7 and s.i0 == 2
    assert theorem1_setup(make_discriminant(-3)).H == 11
    assert theorem1_setup(make_discriminant(5)).H == 11
