import math
from fractions import Fraction

import pytest

import dickman_lab as dl
from dickman_lab import arith

# --- independent oracles -------------------------------------------------


def brute_is_k_free(n, k):
    d = 2
    while d**k <= n:
        if n % d**k == 0:
            return False
        d += 1
    return True


def brute_totient(n):
    return sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)


def brute_smooth(prime_set, bound, k=None):
    out = []
    for n in range(1, bound + 1):
        m = n
        for p in prime_set:
            while m % p == 0:
                m //= p
        if m == 1 and (k is None or brute_is_k_free(n, k)):
            out.append(n)
    return out


def integer_kth_root(n, k):
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


# --- k-free and decomposition ---------------------------------------------


def test_is_k_free_examples():
    assert dl.is_k_free(8, 2) is False
    assert dl.is_k_free(6, 2) is True
    assert dl.is_k_free(8, 4) is True


def test_is_k_free_rejects_k_below_2():
    with pytest.raises(ValueError):
        dl.is_k_free(10, 1)


def test_is_k_free_matches_brute_force():
    for n in range(1, 500):
        for k in (2, 3, 4):
            assert dl.is_k_free(n, k) == brute_is_k_free(n, k), (n, k)


def test_k_decompose_examples():
    d = dl.k_decompose(72, 2)
    assert (d.free_part, d.power_part) == (2, 36)
    assert dl.k_decompose(5, 3).free_part == 5
    assert dl.k_decompose(5, 3).power_part == 1
    for n in (1, 7, 360):
        d = dl.k_decompose(n, 1)
        assert (d.free_part, d.power_part) == (1, n)


def test_k_decompose_invariants_sweep():
    for n in range(1, 10**4 + 1):
        for k in (1, 2, 3, 4):
            d = dl.k_decompose(n, k)
            assert d.free_part * d.power_part == n
            if k >= 2:
                assert dl.is_k_free(d.free_part, k)
            assert integer_kth_root(d.power_part, k) is not None


def test_k_decompose_domain_errors():
    with pytest.raises(ValueError):
        dl.k_decompose(0, 2)
    with pytest.raises(ValueError):
        dl.k_decompose(10, 0)


# --- totient ---------------------------------------------------------------


def test_totient_examples():
    assert dl.totient(1) == 1
    for p in (2, 3, 5, 7, 97):
        assert dl.totient(p) == p - 1
    assert dl.totient(12) == 4


def test_totient_matches_coprime_count():
    for n in range(1, 300):
        assert dl.totient(n) == brute_totient(n)


def test_totient_sieve_matches_pointwise():
    phi = arith.totient_sieve(3000)
    for n in range(1, 3001):
        assert int(phi[n]) == dl.totient(n)


# --- smooth enumeration -----------------------------------------------------


def test_enumerate_smooth_examples():
    assert list(dl.enumerate_smooth([2, 3], 10)) == [1, 2, 3, 4, 6, 8, 9]
    assert list(dl.enumerate_smooth([2, 3], 10, k_restrict=2)) == [1, 2, 3, 6]
    assert list(dl.enumerate_smooth([2, 3, 5], 1)) == [1]


def test_enumerate_smooth_against_filter_oracle():
    for prime_set in ((2, 3), (2, 5, 7), (3, 11), (5,)):
        for k in (None, 2, 3):
            got = list(dl.enumerate_smooth(prime_set, 200, k_restrict=k))
            assert got == brute_smooth(prime_set, 200, k)


def test_enumerate_smooth_domain_errors():
    with pytest.raises(ValueError):
        list(dl.enumerate_smooth([2, 3], 0))
    with pytest.raises(ValueError):
        list(dl.enumerate_smooth([2, 3], 10, k_restrict=1))


# --- Euler products ---------------------------------------------------------


def test_euler_product_full_examples():
    assert dl.euler_product_full([2]) == 2
    assert dl.euler_product_full([2, 3]) == 3
    assert dl.euler_product_full([2, 3, 5]) == Fraction(15, 4)


def test_euler_product_kfree_examples():
    assert dl.euler_product_kfree([2], 2) == Fraction(3, 2)
    assert dl.euler_product_kfree([2, 3], 2) == 2
    assert dl.euler_product_kfree([2], 3) == Fraction(7, 4)


def test_euler_product_rejects_bad_lists():
    with pytest.raises(ValueError):
        dl.euler_product_full([])
    with pytest.raises(ValueError):
        dl.euler_product_full([2, 2])
    with pytest.raises(ValueError):
        dl.euler_product_full([2, 4])
    with pytest.raises(ValueError):
        dl.euler_product_kfree([2, 3], 1)


def test_euler_product_kfree_increases_toward_full():
    vals = [dl.euler_product_kfree([2, 3], k) for k in (2, 4, 8)]
    assert vals[0] < vals[1] < vals[2] < dl.euler_product_full([2, 3])


# --- harmonic sums -----------------------------------------------------------


def _explicit(table_1e6, primes, theta=1.0):
    return dl.build_subset(table_1e6, dl.Explicit(tuple(primes)), theta=theta)


def test_harmonic_sum_hand_examples(table_1e6):
    sub = _explicit(table_1e6, (2, 3))
    assert dl.harmonic_sum_smooth(sub, 6, "plain") == Fraction(9, 4)
    assert dl.harmonic_sum_smooth(sub, 6, "kfree", 2) == 2
    assert dl.harmonic_sum_smooth(sub, 6, "totient", 2) == 3


def test_harmonic_sum_totient_against_direct_route(table_1e6):
    # independent route: enumerate values, then is_k_free/k_decompose/totient
    sub = _explicit(table_1e6, (2, 3, 5))
    for k in (2, 3):
        want = Fraction(0)
        for n in dl.enumerate_smooth([2, 3, 5], 400):
            if not dl.is_k_free(n, k):
                continue
            d = dl.k_decompose(n, k - 1) if k > 1 else None
            want += Fraction(1, d.free_part * dl.totient(d.power_part))
        got = dl.harmonic_sum_smooth(sub, 400, "totient", k)
        assert got == want


def test_harmonic_sum_float_mode_matches_exact(table_1e6):
    sub = _explicit(table_1e6, (2, 3, 5, 7))
    for variant, k in (("plain", None), ("kfree", 2), ("totient", 3)):
        exact = dl.harmonic_sum_smooth(sub, 5000, variant, k, exact=True)
        approx = dl.harmonic_sum_smooth(sub, 5000, variant, k, exact=False)
        assert approx == pytest.approx(float(exact), rel=1e-12)


def test_harmonic_sum_auto_mode_switches(table_1e6, subset_all):
    sub = _explicit(table_1e6, (2, 3))
    assert isinstance(dl.harmonic_sum_smooth(sub, 100, "plain", exact=None), Fraction)
    big = dl.harmonic_sum_smooth(subset_all, arith.EXACT_TERM_LIMIT + 10, "plain", exact=None)
    assert isinstance(big, float)


def test_harmonic_plain_equals_harmonic_series(subset_all):
    want = sum((Fraction(1, n) for n in range(1, 101)), Fraction(0))
    assert dl.harmonic_sum_smooth(subset_all, 100, "plain") == want


def test_partial_sums_approach_euler_product(table_1e6):
    sub = _explicit(table_1e6, (2, 3, 5))
    limit = float(dl.euler_product_full([2, 3, 5]))
    vals = [dl.harmonic_sum_smooth(sub, b, "plain", exact=False) for b in (10**2, 10**4, 10**6)]
    assert vals[0] < vals[1] < vals[2] < limit
    # exact-rational tail at 1e6 is 1.1026e-4 (just above 1e-4); it crosses
    # below 1e-4 before 2e6
    assert limit - vals[2] == pytest.approx(1.1026140409073e-4, rel=1e-9)
    assert limit - dl.harmonic_sum_smooth(sub, 2 * 10**6, "plain", exact=False) < 1e-4


def test_harmonic_sum_domain_errors(table_1e6):
    sub = _explicit(table_1e6, (2, 3))
    with pytest.raises(ValueError):
        dl.harmonic_sum_smooth(sub, 0, "plain")
    with pytest.raises(ValueError):
        dl.harmonic_sum_smooth(sub, 10, "kfree")
    with pytest.raises(ValueError):
        dl.harmonic_sum_smooth(sub, 10, "totient", 1)
