"""Exact integer and rational primitives.

k-free tests, the k-free / k-power split, Euler's totient, depth-first
enumeration of smooth numbers over a fixed prime set, and the exact Euler
products and harmonic sums built on top of them.  All exact values are
``fractions.Fraction``; the harmonic sums also offer a compensated floating
mode for bounds where rational denominators become impractical.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Exact sums stay pleasant up to about this many terms; above it the running
# denominator (an lcm of all summands) dominates the cost.
EXACT_TERM_LIMIT = 100_000

_MR_BASES_SMALL = (2, 3, 5, 7)  # deterministic below 3_215_031_751
_MR_BASES_WIDE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class KDecomposition:
    n: int
    k: int
    free_part: int
    power_part: int


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the magnitudes used here (< 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES_SMALL if n < 3_215_031_751 else _MR_BASES_WIDE
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_k_free(n: int, k: int) -> bool:
    """True iff no prime power p^k divides n."""
    if k < 2:
        raise ValueError("k-freeness needs k >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    return all(e < k for _, e in factorize(n))


def k_decompose(n: int, k: int) -> KDecomposition:
    """Split n = free * power with free k-free and power a perfect k-th power.

    Exponent-residue rule: each prime exponent c contributes c mod k to the
    free part and k*(c // k) to the power part.  For k = 1 this leaves
    free = 1, power = n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    free = power = 1
    for p, e in factorize(n):
        r = e % k
        free *= p**r
        power *= p ** (e - r)
    return KDecomposition(n=n, k=k, free_part=free, power_part=power)


def totient(n: int) -> int:
    """Euler's phi."""
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def totient_sieve(limit: int) -> np.ndarray:
    """phi(n) for all n <= limit as an int64 array (index = n)."""
    if limit < 1:
        raise ValueError("limit must be positive")
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p untouched so far, hence prime
            phi[p::p] -= phi[p::p] // p
    return phi


def _smooth_factored(primes, bound: int, k_restrict: int | None = None):
    """DFS over exponent vectors: yields (n, ((p, e), ...)) for every n <= bound
    supported on ``primes``, in no particular order.  1 comes with an empty
    factorization.  Exponents are capped at k_restrict - 1 when given."""
    plist = sorted({int(p) for p in primes if int(p) <= bound})
    cap = None if k_restrict is None else k_restrict - 1

    def rec(start, n, fac):
        yield n, fac
        for idx in range(start, len(plist)):
            p = plist[idx]
            m = n * p
            if m > bound:
                break  # plist ascending: later primes overflow too
            e = 1
            while m <= bound and (cap is None or e <= cap):
                yield from rec(idx + 1, m, fac + ((p, e),))
                m *= p
                e += 1

    yield from rec(0, 1, ())


def enumerate_smooth(primes, bound: int, k_restrict: int | None = None):
    """Every n <= bound whose prime factors all lie in ``primes``, ascending.

    With k_restrict, only k-free such n.  1 is always included.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if k_restrict is not None and k_restrict < 2:
        raise ValueError("k_restrict must be >= 2")
    values = [n for n, _ in _smooth_factored(primes, bound, k_restrict)]
    values.sort()
    yield from values


def _validated_primes(prime_list) -> list[int]:
    ps = [int(p) for p in prime_list]
    if not ps:
        raise ValueError("prime list is empty")
    if len(set(ps)) != len(ps):
        raise ValueError("prime list has duplicates")
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return ps


def euler_product_full(A_N) -> Fraction:
    """Exact prod (1 - 1/p)^-1 over the given primes.

    By the Euler product formula this equals sum 1/n over every integer
    supported on the list, with no truncation.
    """
    result = Fraction(1)
    for p in _validated_primes(A_N):
        result *= Fraction(p, p - 1)
    return result


def euler_product_kfree(A_N, k: int) -> Fraction:
    """Exact prod (1 + 1/p + ... + 1/p^(k-1)); the k-free analogue of the
    full product, i.e. sum 1/n over k-free integers supported on the list."""
    if k < 2:
        raise ValueError("k must be >= 2")
    result = Fraction(1)
    for p in _validated_primes(A_N):
        result *= Fraction(p**k - 1, p ** (k - 1) * (p - 1))
    return result


def _totient_weight_denom(fac, km1: int) -> int:
    # denominator free * phi(power) for the (km1)-free / (km1)-power split,
    # straight from the exponent vector
    d = 1
    for p, e in fac:
        r = e % km1
        s = e - r
        d *= p**r
        if s:
            d *= p ** (s - 1) * (p - 1)
    return d


def _term_denominators(primes, bound, variant, k):
    if variant == "plain":
        return [n for n, _ in _smooth_factored(primes, bound)]
    if variant == "kfree":
        return [n for n, _ in _smooth_factored(primes, bound, k)]
    if variant == "totient":
        km1 = k - 1
        return [
            _totient_weight_denom(fac, km1)
            for _, fac in _smooth_factored(primes, bound, k)
        ]
    raise ValueError(f"unknown variant {variant!r}")


def harmonic_sum_smooth(subset, bound: int, variant: str = "plain",
                        k: int | None = None, exact: bool | None = True):
    """Weighted harmonic sum over subset-smooth integers <= bound.

    variant "plain":   sum 1/n
    variant "kfree":   sum 1/n over k-free n only
    variant "totient": sum 1/(n_free * phi(n_power)) over k-free n, where the
                       split is the (k-1)-free / (k-1)-power decomposition

    exact=True returns a Fraction, exact=False a compensated float, and
    exact=None picks exact only below EXACT_TERM_LIMIT terms.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if variant in ("kfree", "totient"):
        if k is None or k < 2:
            raise ValueError(f"variant {variant!r} needs k >= 2")
    denoms = _term_denominators(subset.primes, bound, variant, k)
    if exact is None:
        exact = len(denoms) < EXACT_TERM_LIMIT
    if exact:
        return sum((Fraction(1, d) for d in denoms), Fraction(0))
    return math.fsum(1.0 / d for d in denoms)
