"""Translated Gaussian measures, exponential densities, Karhunen-Loeve.

Shifting the white-noise measure by a Hilbert-space vector x keeps it
equivalent, with Radon-Nikodym density

    E(x)(omega) = exp(<x, omega> - ||x||^2 / 2),

the exponential functional. Pointwise algebra gives the cocycle

    E(x1) E(x2) = exp(<x1, x2>) E(x1 + x2),

and integrating against the density turns in closed-form moments, e.g.
integral E(x) <y, omega>^2 dmu = <x, y>^2 + ||y||^2. For a Parseval frame
the analysis function expands as (T x)(omega) = sum_n <x, phi_n> Z_n with
i.i.d. N(0,1) coordinates Z_n, the Gaussian Karhunen-Loeve expansion; at
truncation the white-noise coordinates themselves furnish the Z_n.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionExceedsTruncation, NotParseval, NotTight, Overflow
from .frames import Frame, analysis, as_vector, build_frame
from .whitenoise import McEstimate, WhiteNoiseEnsemble, mc_estimate, pairing, pairings

PARSEVAL_TOL = 1e-10
EXP_LIMIT = 700.0  # exp overflows past ~709.8


def rn_density(x, omega) -> float:
    """Radon-Nikodym density of the x-translated measure at omega."""
    t = pairing(x, omega)
    x = as_vector(x)
    exponent = t - 0.5 * float(x @ x)
    if abs(exponent) > EXP_LIMIT:
        raise Overflow(f"density exponent {exponent:.3g} outside double range")
    return float(np.exp(exponent))


@dataclass(frozen=True)
class ExpFunctional:
    """Per-sample values of E(x) over an ensemble; all strictly positive."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if np.any(self.values <= 0.0):
            raise ValueError("exponential functional must be strictly positive")


def exp_functional(x, ens: WhiteNoiseEnsemble) -> ExpFunctional:
    """E(x)(omega_m) = exp(<x, omega_m> - ||x||^2 / 2) for every sample."""
    t = pairings(x, ens)
    x = as_vector(x)
    exponents = t - 0.5 * float(x @ x)
    peak = float(np.abs(exponents).max()) if exponents.size else 0.0
    if peak > EXP_LIMIT:
        raise Overflow(f"density exponent {peak:.3g} outside double range")
    x = x.copy()
    x.setflags(write=False)
    return ExpFunctional(x=x, values=np.exp(exponents))


def cocycle_check(x1, x2, omega):
    """Both sides of the exponential cocycle at a single omega:

        lhs = E(x1)(omega) E(x2)(omega)
        rhs = exp(<x1, x2>) E(x1 + x2)(omega)

    The identity is exact pointwise algebra; no sampling enters. (Note
    the sign: expanding the definitions forces exp(+<x1, x2>).)
    """
    lhs = rn_density(x1, omega) * rn_density(x2, omega)
    x1 = as_vector(x1)
    x2 = as_vector(x2)
    if x1.size != x2.size:
        d = max(x1.size, x2.size)
        x1 = np.pad(x1, (0, d - x1.size))
        x2 = np.pad(x2, (0, d - x2.size))
    rhs = float(np.exp(x1 @ x2)) * rn_density(x1 + x2, omega)
    return lhs, rhs


def rn_mean_check(x, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Ensemble mean of E(x) against 1 (the density integrates to 1).

    Single-sample variance is exp(||x||^2) - 1: bands degrade quickly,
    keep ||x||^2 modest.
    """
    return mc_estimate(exp_functional(x, ens).values, 1.0)


def translated_second_moment(x, y, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Mean of E(x) <y, omega>^2 against <x, y>^2 + ||y||^2."""
    e = exp_functional(x, ens).values
    t = pairings(y, ens)
    x = as_vector(x)
    y = as_vector(y)
    d = min(x.size, y.size)
    target = float(x[:d] @ y[:d]) ** 2 + float(y @ y)
    return mc_estimate(e * t * t, target)


def translation_consistency_check(x, y, ens: WhiteNoiseEnsemble, power: int = 1) -> McEstimate:
    """Change of variables: mean of E(x) g - mean of g(. + x) against 0,
    for g(omega) = <y, omega>^power. Per-sample differences share omega_m,
    so the standard error reflects the coupled estimator."""
    e = exp_functional(x, ens).values
    t = pairings(y, ens)
    x = as_vector(x)
    y = as_vector(y)
    d = min(x.size, y.size)
    shifted = t + float(y[:d] @ x[:d])
    return mc_estimate(e * t**power - shifted**power, 0.0)


def parseval_rescale(frame: Frame) -> Frame:
    """Divide a tight frame by sqrt(beta), making it Parseval."""
    if not frame.is_tight():
        raise NotTight(
            f"bounds [{frame.lower_bound:g}, {frame.upper_bound:g}] are not equal; "
            "rescaling by sqrt(beta) would not give a Parseval frame"
        )
    return build_frame(frame.vectors / np.sqrt(frame.upper_bound))


def _require_parseval(frame: Frame) -> None:
    if (
        abs(frame.lower_bound - 1.0) > PARSEVAL_TOL
        or abs(frame.upper_bound - 1.0) > PARSEVAL_TOL
    ):
        raise NotParseval(
            f"frame bounds [{frame.lower_bound!r}, {frame.upper_bound!r}] "
            "are not 1 within 1e-10"
        )


def kl_expand(frame: Frame, x, ens: WhiteNoiseEnsemble) -> np.ndarray:
    """Per-sample Karhunen-Loeve values (T x)(omega_m) for a Parseval frame:

        sum_n <x, phi_n> omega_{m, n}

    with the white-noise coordinates standing in for the i.i.d. N(0,1)
    system Z_n. Requires n_frame <= D.
    """
    _require_parseval(frame)
    if frame.n_frame > ens.truncation_dim:
        raise DimensionExceedsTruncation(
            f"frame count {frame.n_frame} exceeds truncation {ens.truncation_dim}"
        )
    coeffs = analysis(frame, x)
    return ens.samples[:, : frame.n_frame] @ coeffs


def kl_variance_check(frame: Frame, x, ens: WhiteNoiseEnsemble) -> McEstimate:
    """Empirical E[(T x)^2] against sum_n <x, phi_n>^2.

    For a Parseval frame the target equals ||x||^2; stating it as the
    coefficient energy keeps the check valid for near-Parseval frames.
    """
    vals = kl_expand(frame, x, ens) ** 2
    coeffs = analysis(frame, x)
    return mc_estimate(vals, float(coeffs @ coeffs))
