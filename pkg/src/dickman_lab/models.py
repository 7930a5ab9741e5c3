"""The three random-integer models over a prime subset.

Model 1 draws each prime exponent from a geometric law, model 2 conditions
that law on being below k, and model 3 truncates it at k - 1.  Integers are
kept as exponent vectors over the first N subset primes; only log values are
ever needed, so the (astronomically large) integers are never multiplied out
except on explicit request.

Sampling is counter-based: exponent (i, j) of draw i is a pure function of
(seed, i, j), so single draws, vectorized blocks, and parallel generation
all agree exactly.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import rng
from .primes import PrimeSubset

GEOMETRIC = "geometric"
CONDITIONED = "conditioned"
TRUNCATED = "truncated"

_LAW_BY_MODEL = {1: GEOMETRIC, 2: CONDITIONED, 3: TRUNCATED}

_LOG_CHUNK = 128  # draws per vectorized block


@dataclass(frozen=True)
class ExponentLaw:
    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in (GEOMETRIC, CONDITIONED, TRUNCATED):
            raise ValueError(f"unknown law kind {self.kind!r}")
        if self.kind == GEOMETRIC:
            if self.k is not None:
                raise ValueError("the geometric law takes no k")
        elif self.k is None or self.k < 2:
            raise ValueError(f"{self.kind} law needs k >= 2")

    @classmethod
    def geometric(cls):
        return cls(GEOMETRIC)

    @classmethod
    def conditioned_below(cls, k: int):
        return cls(CONDITIONED, k)

    @classmethod
    def truncated_at(cls, k: int):
        """Truncated at k - 1, i.e. min(T, k - 1)."""
        return cls(TRUNCATED, k)

    @property
    def bounded(self) -> bool:
        return self.kind != GEOMETRIC


@dataclass(frozen=True, eq=False)
class RandomIntegerModel:
    subset: PrimeSubset
    N: int
    law: ExponentLaw
    model_id: int

    def __post_init__(self):
        if self.model_id not in _LAW_BY_MODEL:
            raise ValueError(f"model_id must be 1, 2 or 3, got {self.model_id}")
        if _LAW_BY_MODEL[self.model_id] != self.law.kind:
            raise ValueError(f"model {self.model_id} does not use a {self.law.kind} law")
        if not 1 <= self.N <= self.subset.primes.size:
            raise ValueError(
                f"N={self.N} outside the materialized subset ({self.subset.primes.size})"
            )

    @cached_property
    def primes_used(self) -> np.ndarray:
        return self.subset.primes[: self.N]

    @cached_property
    def log_primes(self) -> np.ndarray:
        return np.log(self.primes_used.astype(np.float64))


@dataclass(frozen=True, eq=False)
class FactoredInteger:
    exponents: np.ndarray  # c_1..c_N aligned with the model's primes


def make_model(subset: PrimeSubset, N: int, model_id: int, k: int | None = None) -> RandomIntegerModel:
    """Model 1 (geometric), 2 (conditioned below k) or 3 (truncated at k-1)."""
    if model_id == 1:
        law = ExponentLaw.geometric()
    elif model_id == 2:
        law = ExponentLaw.conditioned_below(k)
    elif model_id == 3:
        law = ExponentLaw.truncated_at(k)
    else:
        raise ValueError(f"model_id must be 1, 2 or 3, got {model_id}")
    return RandomIntegerModel(subset=subset, N=N, law=law, model_id=model_id)


def exponent_pmf(law: ExponentLaw, p: int, m: int) -> Fraction:
    """Exact P(exponent = m) at prime p."""
    if m < 0:
        raise ValueError("exponents are nonnegative")
    if law.kind == GEOMETRIC:
        return Fraction(p - 1, p ** (m + 1))
    k = law.k
    if m >= k:
        raise ValueError(f"m={m} outside the support of the {law.kind} law (k={k})")
    if law.kind == CONDITIONED:
        return Fraction((p - 1) * p ** (k - 1 - m), p**k - 1)
    if m == k - 1:
        return Fraction(1, p ** (k - 1))
    return Fraction(p - 1, p ** (m + 1))


def exponent_mean(law: ExponentLaw, p: int) -> Fraction:
    """Exact expected exponent at prime p."""
    if law.kind == GEOMETRIC:
        return Fraction(1, p - 1)
    return sum(
        (m * exponent_pmf(law, p, m) for m in range(1, law.k)), Fraction(0)
    )


def _as_exponents(model: RandomIntegerModel, n) -> np.ndarray:
    exps = n.exponents if isinstance(n, FactoredInteger) else np.asarray(n)
    exps = np.asarray(exps, dtype=np.int64)
    if exps.shape != (model.N,):
        raise ValueError(f"expected {model.N} exponents, got shape {exps.shape}")
    if np.any(exps < 0):
        raise ValueError("exponents must be nonnegative")
    if model.law.bounded and np.any(exps >= model.law.k):
        raise ValueError(f"exponent >= k={model.law.k} outside the model support")
    return exps


def model_pmf(model: RandomIntegerModel, n) -> Fraction:
    """Exact closed-form P(I = n) for an exponent vector in the support.

    Model 1: (1/n) prod (1 - 1/p).
    Model 2: (1/n) prod (1 + 1/p + ... + 1/p^(k-1))^(-1).
    Model 3: prod (1 - 1/p) / (n_free * phi(n_power)) with the (k-1)-split.
    """
    exps = _as_exponents(model, n)
    ps = [int(p) for p in model.primes_used]
    if model.model_id == 1:
        result = Fraction(1)
        for p, c in zip(ps, exps):
            result *= Fraction(p - 1, p ** (int(c) + 1))
        return result
    if model.model_id == 2:
        k = model.law.k
        result = Fraction(1)
        for p, c in zip(ps, exps):
            result *= Fraction(p ** (k - 1) * (p - 1), (p**k - 1) * p ** int(c))
        return result
    km1 = model.law.k - 1
    result = Fraction(1)
    denom = 1
    for p, c in zip(ps, exps):
        result *= Fraction(p - 1, p)
        c = int(c)
        r = c % km1
        s = c - r
        denom *= p**r
        if s:
            denom *= p ** (s - 1) * (p - 1)  # phi of the p-part of n_power
    return result / denom


def expected_log(model: RandomIntegerModel) -> float:
    """E log I = sum of expected exponent times log p over the first N primes."""
    means = [float(exponent_mean(model.law, int(p))) for p in model.primes_used]
    return math.fsum(m * lp for m, lp in zip(means, model.log_primes))


def _bounded_cum_table(law: ExponentLaw, primes: np.ndarray) -> np.ndarray:
    """Per-prime cumulative exponent probabilities, shape (N, k)."""
    q = 1.0 / primes.astype(np.float64)
    k = law.k
    pmf = np.empty((primes.size, k))
    if law.kind == CONDITIONED:
        scale = (1.0 - q) / (1.0 - q**k)
        for m in range(k):
            pmf[:, m] = scale * q**m
    else:
        for m in range(k - 1):
            pmf[:, m] = (1.0 - q) * q**m
        pmf[:, k - 1] = q ** (k - 1)
    cum = np.cumsum(pmf, axis=1)
    cum[:, -1] = 1.0
    return cum


def _exponents_from_uniforms(model: RandomIntegerModel, u: np.ndarray,
                             cum: np.ndarray | None) -> np.ndarray:
    """Inverse-CDF map from uniforms (last axis = coordinates) to exponents."""
    if model.law.kind == GEOMETRIC:
        lnq = -model.log_primes
        return np.floor(np.log(u) / lnq).astype(np.int64)
    if u.ndim == 1:
        return (u[:, None] >= cum).sum(axis=1).astype(np.int64)
    return (u[:, :, None] >= cum[None, :, :]).sum(axis=2).astype(np.int64)


def sample(model: RandomIntegerModel, seed: int, count: int):
    """Yield ``count`` independent draws as FactoredInteger exponent vectors."""
    if count < 1:
        raise ValueError("count must be positive")
    coords = np.arange(model.N)
    cum = None if not model.law.bounded else _bounded_cum_table(model.law, model.primes_used)
    for i in range(count):
        u = rng.uniform_block(seed, np.array([i]), coords)[0]
        yield FactoredInteger(exponents=_exponents_from_uniforms(model, u, cum))


def sample_logs(model: RandomIntegerModel, seed: int, count: int) -> np.ndarray:
    """log I for ``count`` draws, vectorized; draw i matches sample() exactly."""
    if count < 1:
        raise ValueError("count must be positive")
    coords = np.arange(model.N)
    cum = None if not model.law.bounded else _bounded_cum_table(model.law, model.primes_used)
    out = np.empty(count)
    for lo in range(0, count, _LOG_CHUNK):
        hi = min(lo + _LOG_CHUNK, count)
        u = rng.uniform_block(seed, np.arange(lo, hi), coords)
        exps = _exponents_from_uniforms(model, u, cum)
        out[lo:hi] = exps.astype(np.float64) @ model.log_primes
    return out


def normalized_log(model: RandomIntegerModel, sample_value) -> float:
    """log I / E log I for one draw."""
    elog = expected_log(model)
    if elog <= 0.0:
        raise ValueError("expected log must be positive")
    exps = _as_exponents(model, sample_value)
    return float(exps.astype(np.float64) @ model.log_primes) / elog


def integer_value(model: RandomIntegerModel, sample_value, max_bits: int = 4096) -> int:
    """Multiply the exponent vector out; only for display-sized results."""
    exps = _as_exponents(model, sample_value)
    bits = sum(int(c) * int(p).bit_length() for p, c in zip(model.primes_used, exps))
    if bits > max_bits:
        raise ValueError(f"value would need about {bits} bits")
    n = 1
    for p, c in zip(model.primes_used, exps):
        n *= int(p) ** int(c)
    return n


class BXDecomposition:
    """Bernoulli-times-jump view of one coordinate: exponent law of B * X.

    B ~ Ber(q) marks whether the prime appears at all; X is the exponent
    conditioned on appearing (times log p when read in log scale).  For every
    law, the law of B*X coincides exactly with the exponent law itself.
    """

    def __init__(self, law: ExponentLaw):
        self.law = law

    def q(self, p: int) -> Fraction:
        if self.law.kind == CONDITIONED:
            k = self.law.k
            qp = Fraction(1, p)
            return (qp - qp**k) / (1 - qp**k)
        return Fraction(1, p)

    def x_pmf(self, p: int, m: int) -> Fraction:
        """P(X = m log p), m >= 1."""
        if m < 1:
            raise ValueError("X is supported on m >= 1")
        qp = Fraction(1, p)
        if self.law.kind == GEOMETRIC:
            return (1 - qp) * qp ** (m - 1)
        k = self.law.k
        if m > k - 1:
            raise ValueError(f"m={m} outside the support (k={k})")
        if self.law.kind == CONDITIONED:
            return (1 - qp) / (1 - qp ** (k - 1)) * qp ** (m - 1)
        if m == k - 1:
            return qp ** (k - 2)
        return (1 - qp) * qp ** (m - 1)

    def bx_pmf(self, p: int, m: int) -> Fraction:
        """P(B * X = m log p), m >= 0; equals exponent_pmf(law, p, m)."""
        if m == 0:
            return 1 - self.q(p)
        return self.q(p) * self.x_pmf(p, m)

    def mu(self, p: int) -> float:
        """E X in log scale; for the geometric law p/(p-1) * log p."""
        if self.law.kind == GEOMETRIC:
            return p / (p - 1) * math.log(p)
        total = sum(
            (m * self.x_pmf(p, m) for m in range(1, self.law.k)), Fraction(0)
        )
        return float(total) * math.log(p)


def _x_cum_table(decomp: BXDecomposition, primes: np.ndarray) -> np.ndarray:
    """Cumulative table of the X law (support m = 1..k-1), shape (N, k-1)."""
    k = decomp.law.k
    pmf = np.empty((primes.size, k - 1))
    for j, p in enumerate(primes):
        for m in range(1, k):
            pmf[j, m - 1] = float(decomp.x_pmf(int(p), m))
    cum = np.cumsum(pmf, axis=1)
    cum[:, -1] = 1.0
    return cum


def sample_log_bx(model: RandomIntegerModel, seed: int, count: int) -> np.ndarray:
    """Draw sum_j B_j X_j, the decomposed form of log I, for ``count`` draws.

    Uses coordinates 2j (for B) and 2j+1 (for X), so the stream is
    independent of, but as reproducible as, sample().
    """
    if count < 1:
        raise ValueError("count must be positive")
    decomp = BXDecomposition(model.law)
    primes = model.primes_used
    qs = np.array([float(decomp.q(int(p))) for p in primes])
    b_coords = 2 * np.arange(model.N)
    x_coords = b_coords + 1
    cum = None if model.law.kind == GEOMETRIC else _x_cum_table(decomp, primes)
    lnq = -model.log_primes
    out = np.empty(count)
    for lo in range(0, count, _LOG_CHUNK):
        hi = min(lo + _LOG_CHUNK, count)
        draws = np.arange(lo, hi)
        ub = rng.uniform_block(seed, draws, b_coords)
        ux = rng.uniform_block(seed, draws, x_coords)
        hit = ub < qs
        if model.law.kind == GEOMETRIC:
            m = 1 + np.floor(np.log(ux) / lnq).astype(np.int64)
        else:
            m = 1 + (ux[:, :, None] >= cum[None, :, :]).sum(axis=2).astype(np.int64)
        out[lo:hi] = (hit * m).astype(np.float64) @ model.log_primes
    return out
