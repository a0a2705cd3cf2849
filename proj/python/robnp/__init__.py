"""Robust nonparametric regression under epsilon-contamination.

Local binning medians remove adversarial outliers; kernel smoothing or
local polynomial regression on the per-bin medians recovers higher
smoothness. Naive kernel/truncated-kernel/LPR baselines and a Monte Carlo
risk harness are included for comparison experiments.
"""

from robnp._core import (
    Adversary,
    BinningSpec,
    ContaminationModel,
    GridSpec,
    HolderSpec,
    LbmFit,
    Observations,
    PolyBasis,
    TestFunction,
    TruncationSpec,
    bin_index,
    choose_m_holder,
    choose_postprocess_params,
    count_adversaries_per_bin,
    derive_seed,
    direct_kernel_predict,
    direct_lpr_predict,
    fit_rate,
    holder_seminorm_estimate,
    kernel_weight,
    ks_predict,
    l2_risk,
    lbm_fit,
    lbm_predict,
    lpr_predict,
    lpr_weight_l1_norm,
    make_grid,
    median,
    poly_features,
    run_experiment_file,
    run_selftests,
    sample_observations,
    truncated_kernel_predict,
    worst_case_median_bounds,
)

__all__ = [
    "Adversary",
    "BinningSpec",
    "ContaminationModel",
    "GridSpec",
    "HolderSpec",
    "LbmFit",
    "Observations",
    "PolyBasis",
    "TestFunction",
    "TruncationSpec",
    "bin_index",
    "choose_m_holder",
    "choose_postprocess_params",
    "count_adversaries_per_bin",
    "derive_seed",
    "direct_kernel_predict",
    "direct_lpr_predict",
    "fit_rate",
    "holder_seminorm_estimate",
    "kernel_weight",
    "ks_predict",
    "l2_risk",
    "lbm_fit",
    "lbm_predict",
    "lpr_predict",
    "lpr_weight_l1_norm",
    "make_grid",
    "median",
    "poly_features",
    "run_experiment_file",
    "run_selftests",
    "sample_observations",
    "truncated_kernel_predict",
    "worst_case_median_bounds",
]

__version__ = "0.1.0"
