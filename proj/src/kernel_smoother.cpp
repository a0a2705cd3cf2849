#include "robnp/kernel_smoother.hpp"

#include <stdexcept>

namespace robnp {

BandwidthPlan::BandwidthPlan(double h_, std::int64_t m_, double interior_margin_)
    : h(h_), m(m_), interior_margin(interior_margin_) {
    if (!(h > 0.0 && h < 0.5)) throw std::invalid_argument("BandwidthPlan: h must be in (0, 1/2)");
    if (m < 1) throw std::invalid_argument("BandwidthPlan: m must be >= 1");
    if (!(interior_margin >= 0.0 && interior_margin < 0.5))
        throw std::invalid_argument("BandwidthPlan: interior margin must be in [0, 1/2)");
}

double ks_predict(const LbmFit& fit, const BandwidthPlan& plan, const KernelSpec& k, double x0) {
    if (fit.binning.d != 1)
        throw std::invalid_argument("ks_predict: kernel post-processing is 1D only");
    if (fit.binning.m != plan.m)
        throw std::invalid_argument("ks_predict: plan bin count does not match the fit");
    if (!(x0 >= plan.interior_margin && x0 <= 1.0 - plan.interior_margin))
        throw std::domain_error("ks_predict: query outside [c, 1-c]");
    if (!(x0 > plan.h && x0 < 1.0 - plan.h))
        throw std::domain_error("ks_predict: query outside the interior (h, 1-h)");

    std::int64_t lo = 1, hi = plan.m;
    detail::support_bin_range(plan.m, plan.h, x0, lo, hi);
    double acc = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j)
        acc += detail::kernel_weight_unchecked(j, plan.m, plan.h, x0, k) *
               fit.z[static_cast<std::size_t>(j - 1)];
    return acc;
}

} // namespace robnp
