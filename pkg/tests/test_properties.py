import math

from hypothesis import given, settings, strategies as st

from inertlab.arith import (
    SATURATION_THRESHOLD,
    SatProduct,
    factorize,
    is_prime,
    kronecker,
)
from inertlab.sequences import (
    DiscriminantError,
    make_discriminant,
    omega_minus,
)


def valid_discriminants(lo=-300, hi=300):
    out = []
    for D in range(lo, hi + 1):
        try:
            out.append(make_discriminant(D))
        except DiscriminantError:
            continue
    return out


DISCS = valid_discriminants()
disc_st = st.sampled_from(DISCS)


@settings(deadline=None)
@given(
    a=st.integers(-10**6, 10**6),
    m=st.integers(1, 10**4),
    n=st.integers(1, 10**4),
)
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@settings(deadline=None)
@given(
    a=st.integers(-10**4, 10**4),
    b=st.integers(-10**4, 10**4),
    n=st.integers(1, 10**5),
)
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@settings(deadline=None)
@given(disc=disc_st, n=st.integers(1, 10**5))
def test_kronecker_discriminant_periodicity(disc, n):
    assert kronecker(disc.D, n) == kronecker(disc.D, n + disc.d)


@settings(deadline=None)
@given(disc=disc_st, m=st.integers(1, 10**4), n=st.integers(1, 10**4))
def test_omega_minus_additive(disc, m, n):
    assert omega_minus(disc, m * n) == omega_minus(disc, m) + omega_minus(
        disc, n
    )


@settings(deadline=None)
@given(disc=disc_st, n=st.integers(1, 10**6))
def test_symbol_omega_parity_identity(disc, n):
    # For n coprime to 2D the symbol is determined by the parity of
    # the inert-prime divisor count.
    if math.gcd(n, 2 * disc.D) != 1:
        return
    assert kronecker(disc.D, n) == (-1) ** omega_minus(disc, n)


@settings(deadline=None)
@given(n=st.integers(1, 2**48))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.product() == n
    primes = [p for p, e in f.factors]
    assert primes == sorted(set(primes))
    assert all(is_prime(p) and e >= 1 for p, e in f.factors)


@settings(deadline=None)
@given(st.lists(st.integers(2, 2**40), min_size=0, max_size=12))
def test_sat_product_tracks_exact_product(xs):
    acc = SatProduct.one()
    exact = 1
    for x in xs:
        acc = acc.times(x)
        exact *= x
    assert acc.value == exact
    assert acc.saturated == (exact > SATURATION_THRESHOLD)
    if not acc.saturated:
        assert acc.exceeds(exact - 1) and not acc.exceeds(exact)
        assert acc.at_least(exact) and not acc.at_least(exact + 1)
    else:
        assert acc.exceeds(2**126)
