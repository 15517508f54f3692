"""Truncated Gaussian white-noise measure and its closed-form identities.

The standard Gaussian measure with characteristic functional
E[exp(i<x, .>)] = exp(-||x||^2 / 2) lives on a space strictly larger than
the Hilbert space. Its pushforward onto the first D coordinates of a fixed
orthonormal basis is the i.i.d. N(0,1) product on R^D, and every identity
checked here (Ito isometry, characteristic functional, moments, Gramian
covariance, synthesis/reconstruction, projection) holds *exactly* at any
truncation D >= dim(x), so Monte-Carlo verification at desk scale is
unbiased.

A WhiteNoiseEnsemble is a seeded (M, D) matrix of coordinates; sample i is
a pure function of (seed, i), so prefixes of a larger ensemble coincide
with smaller ensembles and all estimates are bitwise reproducible.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import factorial2

from . import streams
from .errors import (
    DimensionExceedsTruncation,
    KTooLarge,
    LengthMismatch,
    SingularGramian,
)
from .frames import Frame, GramMatrix, as_vector

DEFAULT_TRUNCATION = 64  # suggested desk-scale D; identities are exact at any D >= dim(x)
MAX_MOMENT_ORDER = 9     # 2k and 2k+1 for k <= 4
MEAN_BAND = 5.0       # generator sanity: |coord mean| <= 5/sqrt(M)
VAR_BAND = 5.0        # and |coord var - 1| <= 5*sqrt(2/M)


@dataclass(frozen=True)
class WhiteNoiseEnsemble:
    """Seeded i.i.d. standard-normal coordinate vectors in R^D."""

    truncation_dim: int
    sample_count: int
    seed: int
    samples: np.ndarray

    @classmethod
    def generate(
        cls,
        truncation_dim: int,
        sample_count: int,
        seed: int,
        workers: int | None = None,
    ) -> "WhiteNoiseEnsemble":
        """Generate deterministically from (D, M, seed).

        Coordinates come from a counter-based stream, inverse-CDF
        transformed; see `streams.normal_matrix`. A per-coordinate
        mean/variance sanity band (5 sigma) guards against generator
        defects.
        """
        if truncation_dim < 1 or sample_count < 1:
            raise ValueError("truncation_dim and sample_count must be positive")
        z = streams.normal_matrix(
            seed, sample_count, truncation_dim,
            stream=streams.STREAM_WHITENOISE, workers=workers,
        )
        m = sample_count
        mean_err = np.abs(z.mean(axis=0)).max()
        if mean_err > MEAN_BAND / math.sqrt(m):
            raise RuntimeError(f"coordinate mean off by {mean_err:.3g}")
        if m > 1:
            var_err = np.abs(z.var(axis=0, ddof=1) - 1.0).max()
            if var_err > VAR_BAND * math.sqrt(2.0 / m):
                raise RuntimeError(f"coordinate variance off by {var_err:.3g}")
        z.setflags(write=False)
        return cls(
            truncation_dim=truncation_dim,
            sample_count=sample_count,
            seed=seed,
            samples=z,
        )

    def restrict(self, sample_count: int) -> "WhiteNoiseEnsemble":
        """First `sample_count` samples; identical to generating with
        the smaller M directly (samples depend only on (seed, index))."""
        if not 1 <= sample_count <= self.sample_count:
            raise ValueError("restricted count must be in 1..sample_count")
        return WhiteNoiseEnsemble(
            truncation_dim=self.truncation_dim,
            sample_count=sample_count,
            seed=self.seed,
            samples=self.samples[:sample_count],
        )


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo verification record for one closed-form identity."""

    value: float
    std_error: float
    sample_count: int
    target: float
    z_score: float

    def within(self, z_max: float = 4.0) -> bool:
        return abs(self.z_score) <= z_max


def mc_estimate(values: np.ndarray, target: float) -> McEstimate:
    """Sample mean, standard error, and z-score against a target."""
    values = np.asarray(values, dtype=float)
    m = values.size
    value = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(m)) if m > 1 else 0.0
    if std_error > 0.0:
        z = (value - target) / std_error
    else:
        z = 0.0 if value == target else math.inf
    return McEstimate(
        value=value, std_error=std_error, sample_count=m, target=float(target), z_score=z
    )


def _padded(x, truncation_dim: int) -> np.ndarray:
    x = as_vector(x)
    if x.size > truncation_dim:
        raise DimensionExceedsTruncation(
            f"vector dimension {x.size} exceeds truncation {truncation_dim}"
        )
    return x


def pairing(x, omega) -> float:
    """Extended pairing <x, omega> with x zero-padded to len(omega)."""
    omega = np.asarray(omega, dtype=float)
    x = _padded(x, omega.size)
    return float(x @ omega[: x.size])


def pairings(x, ens: WhiteNoiseEnsemble) -> np.ndarray:
    """<x, omega_m> for every ensemble sample; the function T x in L^2."""
    x = _padded(x, ens.truncation_dim)
    return ens.samples[:, : x.size] @ x


def ito_isometry_check(x, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Mean of <x, omega>^2 against ||x||^2 (isometry into L^2)."""
    vals = pairings(x, ens) ** 2
    x = as_vector(x)
    return mc_estimate(vals, float(x @ x))


def char_functional_check(x, ens: WhiteNoiseEnsemble):
    """Mean of exp(i <x, omega>) against exp(-||x||^2 / 2).

    Returns (real, imaginary) McEstimates; the imaginary target is 0.
    """
    t = pairings(x, ens)
    x = as_vector(x)
    target = math.exp(-0.5 * float(x @ x))
    return mc_estimate(np.cos(t), target), mc_estimate(np.sin(t), 0.0)


def moment_check(x, order: int, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Mean of <x, omega>^order against the Gaussian moment.

    Even order 2k targets (2k-1)!! * ||x||^(2k); odd orders target 0.
    Orders above 9 are refused: the single-sample variance grows like
    (4k-1)!! and drowns the estimate at desk-scale M.
    """
    if not 1 <= order <= MAX_MOMENT_ORDER:
        raise KTooLarge(f"moment order must be in 1..{MAX_MOMENT_ORDER}, got {order}")
    vals = pairings(x, ens) ** order
    x = as_vector(x)
    if order % 2 == 0:
        target = float(factorial2(order - 1)) * float(x @ x) ** (order // 2)
    else:
        target = 0.0
    return mc_estimate(vals, target)


def gaussian_process_from_frame(frame: Frame, ens: WhiteNoiseEnsemble) -> np.ndarray:
    """(M, n_frame) matrix with entry (m, k) = <phi_k, omega_m>.

    The columns form a centered Gaussian process whose covariance matrix
    is the Gramian of the frame.
    """
    if frame.dim > ens.truncation_dim:
        raise DimensionExceedsTruncation(
            f"frame dimension {frame.dim} exceeds truncation {ens.truncation_dim}"
        )
    return ens.samples[:, : frame.dim] @ frame.vectors.T


def empirical_covariance(process: np.ndarray) -> np.ndarray:
    """Uncentered second-moment matrix of process columns (targets G)."""
    m = process.shape[0]
    return process.T @ process / m


def joint_density(gram_matrix: GramMatrix, x) -> float:
    """Joint density of (T phi_1, ..., T phi_n) at the point x:

        (2 pi)^(-n/2) det(G)^(-1/2) exp(-x^T G^{-1} x / 2)

    G must be strictly positive definite; overcomplete frames have
    singular full Gramians and callers must pass an invertible
    sub-Gramian.
    """
    g = gram_matrix.entries
    n = g.shape[0]
    x = as_vector(x, dim=n)
    eigs = np.linalg.eigvalsh(g)
    if eigs[0] <= 1e-12 * max(eigs[-1], 1e-300):
        raise SingularGramian(
            f"smallest Gramian eigenvalue {eigs[0]:.3g} is numerically zero"
        )
    quad = float(x @ np.linalg.solve(g, x))
    log_det = float(np.log(eigs).sum())
    return math.exp(-0.5 * quad - 0.5 * log_det - 0.5 * n * math.log(2.0 * math.pi))


def synthesis_mc(f_values, ens: WhiteNoiseEnsemble) -> np.ndarray:
    """Monte-Carlo synthesis integral (1/M) sum_m f(omega_m) omega_m.

    The population version maps L^2 functions back into the Hilbert
    space; here it is a plain average of weighted samples, a vector in
    R^D.
    """
    f = np.asarray(f_values, dtype=float)
    if f.shape != (ens.sample_count,):
        raise LengthMismatch(
            f"expected {ens.sample_count} per-sample values, got shape {f.shape}"
        )
    return f @ ens.samples / ens.sample_count


def reconstruct_mc(x, ens: WhiteNoiseEnsemble):
    """Frame decomposition x = integral <x, omega> omega dmu via MC.

    Returns (x_hat, err) with x_hat = synthesis_mc of f(omega) = <x, omega>
    and err = ||x_hat - x||. The per-sample integrand has covariance trace
    (D+1) ||x||^2, so E[err^2] = (D+1) ||x||^2 / M.
    """
    f = pairings(x, ens)
    x_hat = synthesis_mc(f, ens)
    x = _padded(x, ens.truncation_dim)
    full = np.zeros(ens.truncation_dim)
    full[: x.size] = x
    err = float(np.linalg.norm(x_hat - full))
    return x_hat, err


def projection_check(y, x_probe, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Idempotence of Q = T T* on range elements, contracted against a probe.

    For f = <y, .>, compares <synthesis_mc(f), x_probe> (sample mean of
    <y, omega><x_probe, omega>) with the exact value <y, x_probe>.
    """
    fy = pairings(y, ens)
    fx = pairings(x_probe, ens)
    y = as_vector(y)
    x_probe = as_vector(x_probe)
    d = min(y.size, x_probe.size)
    target = float(y[:d] @ x_probe[:d])
    return mc_estimate(fy * fx, target)
