import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from dickman_lab import rng


def test_uniform_is_pure():
    assert rng.uniform(7, 3, 11) == rng.uniform(7, 3, 11)
    assert rng.uniform(7, 3, 11) != rng.uniform(7, 3, 12)
    assert rng.uniform(7, 3, 11) != rng.uniform(7, 4, 11)
    assert rng.uniform(7, 3, 11) != rng.uniform(8, 3, 11)


def test_uniform_open_interval():
    vals = [rng.uniform(1, i, j) for i in range(50) for j in range(50)]
    assert all(0.0 < v < 1.0 for v in vals)


@given(
    seed=st.integers(min_value=0, max_value=2**64 - 1),
    draw=st.integers(min_value=0, max_value=10**6),
    coord=st.integers(min_value=0, max_value=10**6),
)
@settings(max_examples=200, deadline=None)
def test_block_matches_scalar(seed, draw, coord):
    block = rng.uniform_block(seed, np.array([draw]), np.array([coord]))
    assert block[0, 0] == rng.uniform(seed, draw, coord)


def test_block_shape_and_layout():
    draws = np.arange(5, 9)
    coords = np.arange(3)
    block = rng.uniform_block(123, draws, coords)
    assert block.shape == (4, 3)
    for i, d in enumerate(draws):
        for j, c in enumerate(coords):
            assert block[i, j] == rng.uniform(123, int(d), int(c))


def test_rough_uniformity():
    block = rng.uniform_block(99, np.arange(200), np.arange(100))
    mean = float(np.mean(block))
    assert abs(mean - 0.5) < 0.01
