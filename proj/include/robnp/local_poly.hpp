#pragma once

#include "robnp/lbm.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace robnp {

/// Too few points fell inside the bandwidth window; callers widen h.
struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normal matrix numerically singular beyond the redundancy inherent in
/// the tensor feature map (degenerate window geometry).
struct conditioning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tensor polynomial basis of degree `degree` in dimension d. The feature
/// map is the full tensor construction, so D = 1 + d + d^2 + ... + d^degree
/// and mixed monomials appear once per index tuple; the solver tolerates
/// the resulting rank deficiency.
struct PolyBasis {
    int degree = 0;
    int d = 1;
    std::int64_t D = 1;

    PolyBasis(int degree_, int d_);

    /// Number of distinct monomials of degree <= degree in d variables,
    /// C(d + degree, degree): the rank a healthy window must reach.
    std::int64_t distinct_monomials() const;
};

/// psi_{x,h}(z) = (1, psi^1, ..., psi^degree): block j lists, in
/// lexicographic tuple order, the products of (z_i - x_i)/h over all index
/// tuples in {1..d}^j. psi_{x,h}(x) = (1, 0, ..., 0).
std::vector<double> poly_features(const PolyBasis& basis, std::span<const double> x, double h,
                                  std::span<const double> z);

/// Local polynomial regression over explicit sample points: least squares
/// of values on psi features over the points inside B_h^inf(x0); returns
/// the fitted intercept, which is the prediction at x0.
double lpr_fit_at(std::span<const std::vector<double>> points, std::span<const double> values,
                  const PolyBasis& basis, double h, std::span<const double> x0);

/// LPR over bin medians (second stage of the two-step estimator).
double lpr_predict(const LbmFit& fit, double h, const PolyBasis& basis,
                   std::span<const double> x0);
double lpr_predict(const LbmFit& fit, double h, const PolyBasis& basis, double x0);

/// Effective prediction weights w with prediction = sum_j w_j z_j, over the
/// window bins of the given geometry (flat indices in `window`).
struct LprWeights {
    std::vector<std::int64_t> window;
    std::vector<double> weights;
};
LprWeights lpr_effective_weights(const BinningSpec& binning, double h, const PolyBasis& basis,
                                 std::span<const double> x0);

/// l1 norm of the effective prediction weights; the quantity that controls
/// how much per-bin bias can transfer into the prediction.
double lpr_weight_l1_norm(const BinningSpec& binning, double h, const PolyBasis& basis,
                          std::span<const double> x0);

/// Post-processing hyperparameters: m = round(sqrt(n)/(log n)^{1/4}) and
/// h = (n L^2)^{-1/(2 beta + d)}, clamped so that m <= p and h lies in
/// (1/m, 1/2).
struct PostprocessParams {
    std::int64_t m = 1;
    double h = 0.25;
};
PostprocessParams choose_postprocess_params(std::int64_t n, double beta, double L, int d);

namespace detail {

/// Solves the D x D normal system A theta = b by diagonally pivoted
/// Cholesky with a relative pivot threshold; pivots below
/// rel_tol * max diagonal are dropped (rank-deficient tensor features).
/// Returns the detected rank; theta receives a particular solution with
/// dropped coordinates zeroed.
int pivoted_cholesky_solve(std::vector<double>& a_rowmajor, int D, std::vector<double>& b,
                           std::vector<double>& theta, double rel_tol = 1e-10);

} // namespace detail

} // namespace robnp
