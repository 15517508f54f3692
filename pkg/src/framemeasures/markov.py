"""Markov chains induced by a frame.

A frame {phi_n} turns inner products into transition weights:

    p(x, y) = <x, y>^2 / c(x),     c(x) = sum_n <x, phi_n>^2.

Summed against the frame family itself the weights are a stochastic row
(sum_n p(x, phi_n) = 1), the chain on frame indices is reversible with
respect to c, and p(x, y) <= ||y||^2 / alpha. Against an arbitrary y the
weight is a density-like quantity, not a row entry, which is why the API
separates `transition_prob` from the index chain in `FrameChain`.

Path probabilities multiply transition weights exactly as sampled, so a
sampled path's probability can be recomputed bit-for-bit.
"""
from dataclasses import dataclass

import numpy as np

from . import streams
from .errors import IndexOutOfRange, NotAFrame, ZeroFrameVector, ZeroVector
from .frames import Frame, analysis, as_vector

ROW_SUM_TOL = 1e-12
REVERSIBILITY_RTOL = 1e-12
BOUND_TOL = 1e-12


def normalizer(frame: Frame, x) -> float:
    """c(x) = sum_n <x, phi_n>^2; lies in [alpha, beta] * ||x||^2."""
    x = as_vector(x, dim=frame.dim)
    if not np.any(x):
        raise ZeroVector("c(0) = 0 would make the transition weights undefined")
    coeffs = analysis(frame, x)
    return float(coeffs @ coeffs)


def transition_prob(frame: Frame, x, y) -> float:
    """p(x, y) = <x, y>^2 / c(x) for nonzero x."""
    y = as_vector(y, dim=frame.dim)
    c = normalizer(frame, x)  # validates x
    x = as_vector(x, dim=frame.dim)
    return float((x @ y) ** 2 / c)


@dataclass(frozen=True)
class FrameChain:
    """Index chain of a frame: P[j, k] = p(phi_j, phi_k), c[j] = c(phi_j).

    Construction verifies row-stochasticity, reversibility
    c_j P_jk = c_k P_kj, and the normalization bound
    P_jk <= ||phi_k||^2 / alpha.
    """

    frame: Frame
    normalizers: np.ndarray
    transition_matrix: np.ndarray

    def __post_init__(self):
        p = self.transition_matrix
        c = self.normalizers
        if np.abs(p.sum(axis=1) - 1.0).max() > ROW_SUM_TOL:
            raise ValueError("transition rows do not sum to 1")
        if p.min() < 0.0:
            raise ValueError("negative transition probability")
        flux = c[:, None] * p
        scale = np.maximum(np.abs(flux), np.abs(flux.T))
        if np.abs(flux - flux.T).max() > REVERSIBILITY_RTOL * max(scale.max(), 1e-300):
            raise ValueError("detailed balance violated")
        if self.frame.lower_bound <= 0.0:
            raise NotAFrame("chain requires a positive lower frame bound")
        norms_sq = (self.frame.vectors**2).sum(axis=1)
        if (p - norms_sq[None, :] / self.frame.lower_bound).max() > BOUND_TOL:
            raise ValueError("normalization bound violated")

    @property
    def n_states(self) -> int:
        return self.transition_matrix.shape[0]


def build_chain(frame: Frame) -> FrameChain:
    """Chain over frame indices; needs alpha > 0 and no zero frame vector."""
    if not frame.is_frame():
        raise NotAFrame("chain construction needs a positive lower frame bound")
    g = frame.vectors @ frame.vectors.T
    sq = g * g
    c = sq.sum(axis=1)
    if np.any(c == 0.0):
        raise ZeroFrameVector("a zero frame vector has no outgoing transitions")
    p = sq / c[:, None]
    c.setflags(write=False)
    p.setflags(write=False)
    return FrameChain(frame=frame, normalizers=c, transition_matrix=p)


def start_distribution(chain: FrameChain, x) -> np.ndarray:
    """Row p(x, phi_j) over frame indices; sums to 1 for any nonzero x."""
    frame = chain.frame
    c = normalizer(frame, x)
    coeffs = analysis(frame, as_vector(x, dim=frame.dim))
    return coeffs * coeffs / c


def path_probability(chain: FrameChain, x, indices) -> float:
    """Probability of the index path (n_1, ..., n_k) started at x:

        p(x, phi_{n_1}) * p(phi_{n_1}, phi_{n_2}) * ... (0-based indices)

    x is always treated as an external initial state, even when it equals
    some frame vector.
    """
    idx = [int(i) for i in indices]
    if len(idx) < 1:
        raise IndexOutOfRange("a path needs at least one step")
    n = chain.n_states
    for i in idx:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
    start = start_distribution(chain, x)
    prob = float(start[idx[0]])
    p = chain.transition_matrix
    for prev, nxt in zip(idx, idx[1:]):
        prob *= p[prev, nxt]
    return prob


@dataclass(frozen=True)
class PathSample:
    start: np.ndarray
    indices: tuple
    probability: float


def sample_path_indices(chain: FrameChain, x, k: int, m: int, seed: int):
    """m length-k index paths from start x, plus their exact probabilities.

    Path i consumes uniforms at positions [i*k, (i+1)*k) of the Philox
    stream keyed by seed, so each path depends only on (seed, path index)
    and the output is reproducible for any execution order. Steps invert
    the precomputed row CDFs; boundary ties resolve to the lower index.

    Returns (indices, probabilities) with shapes (m, k) and (m,); the
    probabilities multiply the same factors in the same order as
    `path_probability`, hence match it exactly.
    """
    if k < 1:
        raise ValueError("horizon k must be >= 1")
    if m < 1:
        raise ValueError("path count m must be >= 1")
    start = start_distribution(chain, x)
    p = chain.transition_matrix
    n = chain.n_states

    u = streams.uniform_matrix(seed, m, k, stream=streams.STREAM_MARKOV)
    cum_start = np.cumsum(start)
    cum_rows = np.cumsum(p, axis=1)

    idx = np.empty((m, k), dtype=np.int64)
    idx[:, 0] = streams.inverse_cdf_index(cum_start, u[:, 0])
    prob = start[idx[:, 0]].copy()
    for step in range(1, k):
        rows = cum_rows[idx[:, step - 1]]
        nxt = np.minimum((rows < u[:, step, None]).sum(axis=1), n - 1)
        idx[:, step] = nxt
        prob *= p[idx[:, step - 1], nxt]
    return idx, prob


def sample_paths(chain: FrameChain, x, k: int, m: int, seed: int):
    """m independent PathSample draws (see sample_path_indices)."""
    x = as_vector(x, dim=chain.frame.dim)
    idx, prob = sample_path_indices(chain, x, k, m, seed)
    x.setflags(write=False)
    return [
        PathSample(start=x, indices=tuple(int(j) for j in idx[i]), probability=float(prob[i]))
        for i in range(m)
    ]
