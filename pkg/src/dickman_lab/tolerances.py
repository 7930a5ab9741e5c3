"""Pass/fail bands for the banded experiments, in one place.

These are engineering tolerances for finite-N runs of limits that converge
like 1/log N; a failing check should be read against the band it used, not
as a statement about the limit itself.
"""

# Relative gap between ratio and target at the largest N of a ratio table.
CLASSIC_MERTENS_REL = 0.05      # full prime set, N around 1e5
SUBSET_RATIO_REL = 0.15         # density < 1 subsets, N around 1e6

# Relative gap for the totient harmonic ratios at N around 1e6.
PHI_RATIO_REL = 0.10

# Absolute gap between fitted slope and 1/phi(l), N up to 1e6.
WILLIAMS_SLOPE_ABS = 0.10

# KS distance of 1e4 normalized-log samples at N = 1e4 primes.
KS_BAND = {1: 0.05, 2: 0.07, 3: 0.07}

# Default RNG seed for every CLI subcommand (env DICKMAN_LAB_SEED overrides).
DEFAULT_SEED = 271828
