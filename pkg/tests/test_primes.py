import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dickman_lab as dl

# --- independent oracles -------------------------------------------------


def trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def bytearray_sieve(limit):
    """Plain one-shot sieve, independent of the segmented implementation."""
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [n for n, f in enumerate(flags) if f]


# --- sieve ---------------------------------------------------------------


def test_sieve_small_example():
    assert dl.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]


def test_sieve_matches_trial_division_to_1e4():
    assert dl.sieve_primes(10**4).primes.tolist() == trial_division_primes(10**4)


def test_prime_counts():
    assert dl.sieve_primes(100).primes.size == 25
    table = dl.sieve_primes(10**6)
    assert table.primes.size == 78498
    assert table.primes.size == len(bytearray_sieve(10**6))


def test_sieve_segment_boundaries():
    # limits straddling the segment size must agree with the oracle
    seg = 1 << 20
    for limit in (seg - 1, seg, seg + 1):
        got = dl.sieve_primes(limit).primes
        assert got[-1] == max(bytearray_sieve(limit))
        assert got.size == len(bytearray_sieve(limit))


def test_sieve_rejects_tiny_limit():
    with pytest.raises(ValueError):
        dl.sieve_primes(1)


# --- subsets -------------------------------------------------------------


def test_build_subset_examples():
    t30 = dl.sieve_primes(30)
    assert dl.build_subset(t30, dl.Residue(4, 1)).primes.tolist() == [5, 13, 17, 29]
    assert dl.build_subset(t30, dl.All()).primes.tolist() == t30.primes.tolist()
    t20 = dl.sieve_primes(20)
    assert dl.build_subset(t20, dl.Residue(3, 2)).primes.tolist() == [2, 5, 11, 17]


def test_residue_oracle_agreement():
    t = dl.sieve_primes(2000)
    for l, j in ((4, 1), (4, 3), (3, 2), (5, 2), (10, 7)):
        got = dl.build_subset(t, dl.Residue(l, j)).primes.tolist()
        want = [p for p in trial_division_primes(2000) if p % l == j]
        assert got == want


def test_residue_theta_is_reciprocal_totient():
    t = dl.sieve_primes(100)
    assert dl.build_subset(t, dl.Residue(4, 1)).theta == 0.5
    assert dl.build_subset(t, dl.Residue(10, 3)).theta == 0.25


def test_residue_rejects_shared_factor():
    t = dl.sieve_primes(100)
    with pytest.raises(ValueError):
        dl.build_subset(t, dl.Residue(4, 2))
    with pytest.raises(ValueError):
        dl.build_subset(t, dl.Residue(6, 3))


def test_explicit_requires_theta_and_primality():
    t = dl.sieve_primes(100)
    with pytest.raises(ValueError):
        dl.build_subset(t, dl.Explicit((2, 3)))
    with pytest.raises(ValueError):
        dl.build_subset(t, dl.Explicit((2, 4)), theta=0.5)
    sub = dl.build_subset(t, dl.Explicit((3, 2, 7)), theta=0.3)
    assert sub.primes.tolist() == [2, 3, 7]
    assert sub.theta == 0.3


@given(
    l=st.integers(min_value=2, max_value=12),
    data=st.data(),
)
@settings(max_examples=40, deadline=None)
def test_residue_subset_invariants(l, data):
    coprime = [j for j in range(1, l) if math.gcd(j, l) == 1]
    j = data.draw(st.sampled_from(coprime))
    t = dl.sieve_primes(3000)
    sub = dl.build_subset(t, dl.Residue(l, j))
    assert np.all(np.diff(sub.primes) > 0)
    assert np.all(sub.primes % l == j)
    assert np.all(np.isin(sub.primes, t.primes))


# --- density -------------------------------------------------------------


def test_density_all_is_one(table_1e6):
    sub = dl.build_subset(table_1e6, dl.All())
    assert dl.empirical_density(sub, 10**4) == 1.0


@pytest.mark.parametrize("j", [1, 3])
def test_density_mod4_near_half(table_1e6, j):
    sub = dl.build_subset(table_1e6, dl.Residue(4, j))
    d = dl.empirical_density(sub, 10**6)
    oracle = bytearray_sieve(10**6)
    d_oracle = sum(1 for p in oracle if p % 4 == j) / len(oracle)
    assert d == pytest.approx(d_oracle, abs=1e-12)
    assert abs(d - 0.5) <= 0.01


def test_density_gap_decreasing(subset_41):
    gaps = [abs(dl.empirical_density(subset_41, n) - 0.5) for n in (10**4, 10**5, 10**6)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_density_domain_errors(table_1e6):
    sub = dl.build_subset(table_1e6, dl.All())
    with pytest.raises(ValueError):
        dl.empirical_density(sub, 10**7)
    with pytest.raises(ValueError):
        dl.empirical_density(sub, 1)


# --- indexed access ------------------------------------------------------


def test_nth_prime_examples(table_1e6, subset_41):
    sub_all = dl.build_subset(table_1e6, dl.All())
    assert dl.nth_prime(sub_all, 4) == 7
    assert dl.nth_prime(sub_all, 25) == 97
    assert dl.nth_prime(subset_41, 2) == 13


def test_nth_prime_range_error(subset_41):
    with pytest.raises(IndexError):
        dl.nth_prime(subset_41, 10**7)
    with pytest.raises(IndexError):
        dl.nth_prime(subset_41, 0)


def test_nth_prime_growth_band(subset_all, subset_41):
    # p_{j;A} * theta / (j log j) approaches 1; logarithmically slowly
    for sub in (subset_all, subset_41):
        j = 10**4
        ratio = dl.nth_prime(sub, j) * sub.theta / (j * math.log(j))
        assert abs(ratio - 1.0) < 0.35
