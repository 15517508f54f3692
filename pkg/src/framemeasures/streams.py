"""Counter-based random streams (Philox) for reproducible Monte Carlo.

Every variate is a pure function of (seed, stream, position): draw i of a
stream is the i-th output of a Philox-4x64 generator keyed by (seed, stream),
so results never depend on execution order, chunking, or thread count.
Consumers assign disjoint position ranges to logical units (path index,
draw index, sample index) to get splittable per-unit substreams.

Normal variates use the inverse-CDF transform on open-interval uniforms
rather than Box-Muller, which consumes variates in pairs and would couple
adjacent positions.
"""
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import ndtri

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1

# stream ids, one per consumer, so a shared seed never aliases streams
STREAM_MARKOV = 1
STREAM_DPP = 2
STREAM_WHITENOISE = 3
STREAM_PROBES = 9

# Rows per generation block for large normal matrices. Fixed so that the
# value at row i depends only on (seed, stream, i) and never on the total
# row count: generating M rows and then truncating equals generating m < M
# rows directly.
BLOCK_ROWS = 1 << 16


def _philox(seed: int, stream: int, block: int = 0) -> np.random.Philox:
    key = ((seed & _MASK64) << 64) | ((stream & _MASK32) << 32) | (block & _MASK32)
    return np.random.Philox(key=key)


def _to_open_unit(raw: np.ndarray) -> np.ndarray:
    # uint64 -> float64 in the open interval (0, 1); 53-bit resolution
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def uniforms(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """`count` uniforms in (0, 1) from the (seed, stream) Philox stream."""
    if count == 0:
        return np.empty(0)
    return _to_open_unit(_philox(seed, stream).random_raw(count))


def uniform_matrix(seed: int, rows: int, cols: int, stream: int = 0) -> np.ndarray:
    """(rows, cols) uniforms; row i occupies positions [i*cols, (i+1)*cols)."""
    return uniforms(seed, rows * cols, stream=stream).reshape(rows, cols)


def uniforms_at(seed: int, start: int, count: int, stream: int = 0) -> np.ndarray:
    """`count` uniforms at positions [start, start + count) of the stream.

    Philox counter steps emit 4 raw outputs, so the generator is advanced
    by start // 4 and the remainder discarded; any chunking of a range
    yields the same values.
    """
    if count == 0:
        return np.empty(0)
    bg = _philox(seed, stream)
    bg.advance(start // 4)
    drop = start % 4
    return _to_open_unit(bg.random_raw(count + drop)[drop:])


def worker_count() -> int:
    """Worker cap from FRAMES_THREADS (defaults to the CPU count).

    Results are identical for any value: workers fill disjoint,
    position-keyed blocks.
    """
    cap = os.cpu_count() or 1
    env = os.environ.get("FRAMES_THREADS")
    if env:
        try:
            cap = min(cap, max(1, int(env)))
        except ValueError:
            pass
    return cap


def normal_matrix(
    seed: int,
    rows: int,
    cols: int,
    stream: int = 0,
    workers: int | None = None,
) -> np.ndarray:
    """(rows, cols) i.i.d. standard normals, blocked by row ranges.

    Entry (i, j) is a pure function of (seed, stream, i, j): block
    b = i // BLOCK_ROWS draws from the (seed, stream, b) Philox stream at
    position (i - b*BLOCK_ROWS)*cols + j. Blocks may be filled by any
    number of threads in any order.
    """
    if workers is None:
        workers = worker_count()
    out = np.empty((rows, cols))
    n_blocks = -(-rows // BLOCK_ROWS) if rows else 0

    def fill(b: int) -> None:
        lo = b * BLOCK_ROWS
        hi = min(rows, lo + BLOCK_ROWS)
        raw = _philox(seed, stream, block=b).random_raw((hi - lo) * cols)
        out[lo:hi] = ndtri(_to_open_unit(raw)).reshape(hi - lo, cols)

    if workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(n_blocks)))
    else:
        for b in range(n_blocks):
            fill(b)
    return out


def inverse_cdf_index(cumulative: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Indices j = min{ j : cumulative[j] >= u } for each uniform u.

    Ties at floating-point boundaries (u == cumulative[j]) resolve to the
    lower index. Uniforms beyond the last partial sum clamp to the final
    index.
    """
    idx = np.searchsorted(cumulative, u, side="left")
    return np.minimum(idx, len(cumulative) - 1)
