#pragma once

#include "robnp/baselines.hpp"
#include "robnp/contamination.hpp"
#include "robnp/kernel_smoother.hpp"
#include "robnp/lbm.hpp"
#include "robnp/local_poly.hpp"
#include "robnp/risk.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace robnp {

/// One estimator entry of a sweep. Unset hyperparameters resolve to the
/// asymptotic formulas ("auto") using the config's smoothness (beta, L).
/// Keys: lbm, lbm_ks, lbm_lpr, kernel, t_kernel, lpr.
struct EstimatorSpec {
    std::string key;
    std::optional<std::int64_t> m;
    std::optional<double> h;
    std::optional<int> ell;
    std::string kernel = "box";
    std::optional<double> trunc_L;
    double trunc_c = 3.0;
};

/// Declarative sweep description; see the config-file schema in config.hpp.
struct ExperimentConfig {
    TestFunction f = TestFunction::constant(0.0, 1);
    int d = 1;
    double beta = 1.0; // smoothness assumed by the auto formulas
    double L = 1.0;
    std::vector<std::int64_t> ns;
    double epsilon = 0.0;
    Adversary adversary = Adversary::point_mass(0.0);
    double benign_sd = 1.0;
    std::vector<EstimatorSpec> estimators;
    int replicates = 1;
    std::uint64_t root_seed = 1;
    std::optional<double> interior_margin; // unset: widest kernel margin, else 0
    int risk_grid_points = 2000;

    void validate() const;
};

/// Hyperparameters actually used for one (estimator, n) pair, with the
/// interior margin the estimator needs for evaluation.
struct ResolvedEstimator {
    std::string key;
    std::int64_t m = 1;
    double h = 0.1;
    int ell = 0;
    std::string kernel = "box";
    double trunc_L = 1.0;
    double trunc_c = 3.0;
    double required_margin = 0.0;
};

ResolvedEstimator resolve_estimator(const EstimatorSpec& spec, const ExperimentConfig& cfg,
                                    std::int64_t n);

/// Prediction function for one estimator on one data set.
Predictor build_predictor(const ResolvedEstimator& est, const Observations& obs);

struct RiskCell {
    std::string estimator;
    std::int64_t n = 0;
    int replicate = 0;
    double risk = 0.0;
    bool ok = false;
    std::string error;
    std::uint64_t data_checksum = 0;
};

struct RiskSummary {
    std::string estimator;
    std::int64_t n = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
    int count = 0;
};

struct RateFit {
    std::string estimator;
    double slope = 0.0;
    double stderr_slope = 0.0;
    bool valid = false;
    std::string note;
};

struct RiskReport {
    std::vector<RiskCell> cells;
    std::vector<RiskSummary> summary;
    std::vector<RateFit> rates;
    double interior_margin = 0.0;
    bool complete = true; // false when any cell failed
};

/// Runs the sweep: per (n, replicate) one data set is sampled from the
/// child seed derive_seed(root, n, replicate) and every estimator is
/// evaluated on it (paired design). Estimator failures are recorded per
/// cell and the run continues.
RiskReport run_experiment(const ExperimentConfig& cfg);

/// OLS of log(risk) on log(n); needs >= 3 pairs with positive risks.
/// Returns (slope, standard error of the slope).
std::pair<double, double> fit_rate(const std::vector<std::pair<std::int64_t, double>>& mean_risks);

} // namespace robnp
