import pytest

import dickman_lab as dl


@pytest.fixture(scope="session")
def table_1e6():
    return dl.sieve_primes(10**6)


@pytest.fixture(scope="session")
def subset_all(table_1e6):
    return dl.build_subset(table_1e6, dl.All())


@pytest.fixture(scope="session")
def subset_41(table_1e6):
    return dl.build_subset(table_1e6, dl.Residue(4, 1))


@pytest.fixture(scope="session")
def solutions():
    """Default-resolution solutions keyed by theta."""
    return {theta: dl.solve_rho(theta, 20.0, 1e-3) for theta in (0.25, 0.5, 0.75, 1.0)}
