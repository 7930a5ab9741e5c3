"""Counter-based uniform random numbers.

Every variate is a pure function of (seed, draw index, coordinate index), so
samples can be generated draw by draw, in vectorized blocks, or in parallel,
and always reproduce bit for bit.  The construction is two rounds of the
SplitMix64 finalizer: one to derive a per-draw subkey, one to produce the
per-coordinate output word.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# (bits >> 11) yields 53 random bits; the +0.5 keeps the result inside (0, 1)
# so log(u) is always finite.
_TO_UNIT = 2.0**-53


def _mix(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * _MIX1) & _MASK
    z ^= z >> 27
    z = (z * _MIX2) & _MASK
    z ^= z >> 31
    return z


def draw_key(seed: int, draw: int) -> int:
    """64-bit subkey for one draw."""
    return _mix((seed + (draw + 1) * _GOLDEN) & _MASK)


def uniform(seed: int, draw: int, coord: int) -> float:
    """Uniform variate in (0, 1) for one (seed, draw, coordinate) triple."""
    bits = _mix((draw_key(seed, draw) + (coord + 1) * _GOLDEN) & _MASK)
    return ((bits >> 11) + 0.5) * _TO_UNIT


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = z.copy()
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def uniform_block(seed: int, draws: np.ndarray, coords: np.ndarray) -> np.ndarray:
    """Matrix of uniforms, rows = draws, columns = coordinates.

    Cell (i, j) equals uniform(seed, draws[i], coords[j]) exactly.
    """
    draws = np.asarray(draws, dtype=np.uint64)
    coords = np.asarray(coords, dtype=np.uint64)
    golden = np.uint64(_GOLDEN)
    keys = _mix_array(np.uint64(seed & _MASK) + (draws + np.uint64(1)) * golden)
    bits = _mix_array(keys[:, None] + (coords + np.uint64(1)) * golden)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * _TO_UNIT
