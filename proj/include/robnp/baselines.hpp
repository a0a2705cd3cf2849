#pragma once

#include "robnp/contamination.hpp"
#include "robnp/kernels.hpp"
#include "robnp/local_poly.hpp"

namespace robnp {

/// Truncation policy for the clamped kernel baseline: responses are
/// clamped to [-T, T] with T = L_bound + c_margin, where L_bound is a
/// known sup-norm bound on f and c_margin > 1 keeps almost all benign
/// Gaussian noise untouched.
struct TruncationSpec {
    double L_bound = 1.0;
    double c_margin = 3.0;

    TruncationSpec(double L_bound_, double c_margin_);

    double level() const { return L_bound + c_margin; }
    double clamp(double y) const;
};

/// Direct kernel smoothing on the raw responses (1D): each observation
/// owns one of n cells and contributes its integrated weight. Linear in y,
/// hence propagates whatever the adversary emits.
double direct_kernel_predict(const DesignResponses& data, double h, const KernelSpec& k,
                             double x0);

/// Kernel smoothing after clamping every response to [-T, T]. Equals
/// direct_kernel_predict on the clamped responses exactly.
double truncated_kernel_predict(const DesignResponses& data, double h, const KernelSpec& k,
                                const TruncationSpec& trunc, double x0);

/// Local polynomial regression fitted on the raw (x_i, y_i) pairs; same
/// contract as the median-based lpr_predict but without the median stage.
double direct_lpr_predict(const DesignResponses& data, double h, const PolyBasis& basis,
                          std::span<const double> x0);
double direct_lpr_predict(const DesignResponses& data, double h, const PolyBasis& basis,
                          double x0);

} // namespace robnp
