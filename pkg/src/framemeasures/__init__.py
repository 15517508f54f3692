"""Frames and the probability measures they induce, at desk scale.

Deterministic frame algebra (operators, Gramians, bounds, duals),
discrete probabilistic frames with an exact 2-Wasserstein metric,
frame-induced Markov chains with exact path probabilities, determinantal
measures from normalized Gramians with an exact sampler, and a truncated
Gaussian white-noise measure whose closed-form identities (Ito isometry,
characteristic functional, moments, Gramian covariance, reconstruction,
translation densities, Karhunen-Loeve) are verified by seeded Monte
Carlo. Every random quantity is a pure function of (seed, index):
reruns are bitwise identical for any thread count.
"""
from .dpp import (
    DppKernel,
    PointConfiguration,
    dpp_sample,
    empirical_subset_distribution,
    empty_probability,
    inclusion_probability,
    kernel_from_frame,
    kernel_from_gram,
    kernel_from_matrix,
    sample_masks,
    subset_distribution_bruteforce,
    total_variation,
)
from .frames import (
    Frame,
    GramMatrix,
    analysis,
    build_frame,
    dual_frame,
    frame_from_dict,
    frame_to_dict,
    gram,
    load_frame,
    mercedes_benz_frame,
    orthonormal_basis_frame,
    save_frame,
    synthesis,
    verify_riesz_upper,
)
from .markov import (
    FrameChain,
    PathSample,
    build_chain,
    normalizer,
    path_probability,
    sample_path_indices,
    sample_paths,
    start_distribution,
    transition_prob,
)
from .measures import (
    DiscreteMeasure,
    MeasureFrameBounds,
    TransportPlan,
    load_measure,
    lower_bound_decay,
    measure_frame_bounds,
    measure_from_dict,
    measure_to_dict,
    prob_analysis,
    prob_frame_operator,
    prob_gramian_apply,
    prob_synthesis,
    second_moment,
    wasserstein2,
)
from .translation import (
    ExpFunctional,
    cocycle_check,
    exp_functional,
    kl_expand,
    kl_variance_check,
    parseval_rescale,
    rn_density,
    rn_mean_check,
    translated_second_moment,
    translation_consistency_check,
)
from .whitenoise import (
    McEstimate,
    WhiteNoiseEnsemble,
    char_functional_check,
    empirical_covariance,
    gaussian_process_from_frame,
    ito_isometry_check,
    joint_density,
    mc_estimate,
    moment_check,
    pairing,
    pairings,
    projection_check,
    reconstruct_mc,
    synthesis_mc,
)

__version__ = "0.1.0"
