#pragma once

#include "robnp/kernels.hpp"
#include "robnp/lbm.hpp"

namespace robnp {

/// Bandwidth and evaluation-domain choices for kernel post-processing.
/// interior_margin c restricts queries to [c, 1-c]; it must be at least h
/// so every admissible query keeps the kernel support inside [0,1].
struct BandwidthPlan {
    double h = 0.1;
    std::int64_t m = 1;
    double interior_margin = 0.1;

    BandwidthPlan(double h_, std::int64_t m_, double interior_margin_);
};

/// Kernel smoothing over bin medians (second stage of the two-step
/// estimator, 1D): sum over j of K_j^h(x0) * z_j.
double ks_predict(const LbmFit& fit, const BandwidthPlan& plan, const KernelSpec& k, double x0);

} // namespace robnp
