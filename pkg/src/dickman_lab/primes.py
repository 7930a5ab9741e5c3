"""Prime generation and prime subsets with a declared density among all primes.

A ``PrimeTable`` holds every prime up to a limit.  A ``PrimeSubset`` is an
ordered selection of those primes (all of them, a residue class, or an
explicit list) together with its natural density ``theta`` relative to the
full sequence of primes.  Everything is immutable after construction.
"""

import math
from dataclasses import dataclass

import numpy as np

_SEGMENT = 1 << 20


@dataclass(frozen=True, eq=False)
class PrimeTable:
    limit: int
    primes: np.ndarray  # all primes <= limit, strictly increasing

    def count_upto(self, n: int) -> int:
        return int(np.searchsorted(self.primes, n, side="right"))


@dataclass(frozen=True)
class All:
    """Every prime of the backing table."""


@dataclass(frozen=True)
class Residue:
    """Primes congruent to ``residue`` modulo ``modulus``."""

    modulus: int
    residue: int


@dataclass(frozen=True)
class Explicit:
    """A caller-supplied list of primes."""

    primes: tuple


@dataclass(frozen=True, eq=False)
class PrimeSubset:
    spec: object
    primes: np.ndarray  # ordered, 1-based indexing via nth_prime
    theta: float
    table: PrimeTable


def _simple_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_primes(limit: int) -> PrimeTable:
    """All primes <= limit, by a segmented Eratosthenes sieve.

    Segments of 2^20 flags keep the working set small, so limits up to 1e8
    are fine; only the output array grows with the prime count.
    """
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    base = _simple_sieve(math.isqrt(limit))
    chunks = []
    for lo in range(0, limit + 1, _SEGMENT):
        hi = min(lo + _SEGMENT, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            seg[:2] = False
        for p in base:
            p = int(p)
            start = max(p * p, lo + (-lo) % p)
            if start < hi:
                seg[start - lo :: p] = False
        chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
    return PrimeTable(limit=limit, primes=np.concatenate(chunks))


def _phi_small(n: int) -> int:
    # totient by trial division; only used for residue moduli, which are tiny
    result = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def build_subset(table: PrimeTable, spec, theta: float | None = None) -> PrimeSubset:
    """Materialize the ordered subsequence selected by ``spec``.

    ``theta`` is fixed by the spec for All (1) and Residue (1/phi(l), by
    Dirichlet's theorem); for Explicit subsets no finite computation can
    determine the density, so the caller must declare it.
    """
    if isinstance(spec, All):
        if theta is not None:
            raise ValueError("theta is fixed at 1 for the full prime set")
        return PrimeSubset(spec=spec, primes=table.primes, theta=1.0, table=table)
    if isinstance(spec, Residue):
        l, j = spec.modulus, spec.residue
        if l < 2 or not 1 <= j < l:
            raise ValueError(f"residue spec requires 1 <= j < l, got j={j}, l={l}")
        if math.gcd(j, l) != 1:
            raise ValueError(f"gcd({j}, {l}) != 1: the class holds at most one prime")
        if theta is not None:
            raise ValueError("theta is fixed at 1/phi(l) for residue subsets")
        sel = table.primes[table.primes % l == j]
        return PrimeSubset(spec=spec, primes=sel, theta=1.0 / _phi_small(l), table=table)
    if isinstance(spec, Explicit):
        if theta is None or not 0 < theta <= 1:
            raise ValueError("explicit subsets need a declared theta in (0, 1]")
        wanted = sorted(set(int(p) for p in spec.primes))
        sel = np.array(wanted, dtype=np.int64)
        if sel.size == 0:
            raise ValueError("explicit subset is empty")
        if sel[-1] > table.limit or not np.all(np.isin(sel, table.primes)):
            raise ValueError("explicit subset contains non-primes or exceeds the table")
        return PrimeSubset(spec=spec, primes=sel, theta=float(theta), table=table)
    raise ValueError(f"unknown subset spec: {spec!r}")


def empirical_density(subset: PrimeSubset, N: int) -> float:
    """|A intersect [N]| / |P intersect [N]| against the backing table."""
    if N > subset.table.limit:
        raise ValueError(f"N={N} exceeds the table limit {subset.table.limit}")
    denom = subset.table.count_upto(N)
    if denom == 0:
        raise ValueError(f"no primes <= {N}")
    num = int(np.searchsorted(subset.primes, N, side="right"))
    return num / denom


def nth_prime(subset: PrimeSubset, j: int) -> int:
    """p_{j;A} with 1-based j."""
    if j < 1:
        raise IndexError("prime index is 1-based")
    if j > subset.primes.size:
        raise IndexError(f"subset holds only {subset.primes.size} primes, asked for {j}")
    return int(subset.primes[j - 1])
