"""dickman-lab: random-integer models, generalized Dickman distributions,
and Mertens-type ratio experiments."""

from .arith import (
    KDecomposition,
    enumerate_smooth,
    euler_product_full,
    euler_product_kfree,
    harmonic_sum_smooth,
    is_k_free,
    k_decompose,
    totient,
)
from .dickman import (
    DickmanSolution,
    EULER_GAMMA,
    gd_cdf,
    gd_density,
    gd_mean,
    mertens_constant,
    solve_rho,
)
from .experiments import (
    ConvergenceRow,
    KSReport,
    WilliamsFit,
    corollary_fixedN_check,
    identity_check,
    ks_test,
    mertens_ratio_table,
    totient_harmonic_ratio,
    williams_slope,
)
from .models import (
    BXDecomposition,
    ExponentLaw,
    FactoredInteger,
    RandomIntegerModel,
    expected_log,
    exponent_mean,
    exponent_pmf,
    make_model,
    model_pmf,
    normalized_log,
    sample,
    sample_log_bx,
    sample_logs,
)
from .primes import (
    All,
    Explicit,
    PrimeSubset,
    PrimeTable,
    Residue,
    build_subset,
    empirical_density,
    nth_prime,
    sieve_primes,
)

__version__ = "0.1.0"
