#pragma once

#include "robnp/binning.hpp"
#include "robnp/contamination.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace robnp {

/// Per-bin lower medians z_j of the responses, with the bin geometry and
/// true per-bin counts. Immutable after construction; every post-processor
/// consumes exactly this.
struct LbmFit {
    BinningSpec binning;
    std::vector<double> z;
    std::vector<std::int64_t> s_counts;
};

/// Diagnostic decomposition z_j = f(j/m) + delta_j + eta_j. Requires the
/// true f, so it is test-only; eta_j is the median of the noise residuals
/// in bin j and delta_j is defined by exact reconstruction.
struct BinDecomposition {
    std::vector<double> f_center;
    std::vector<double> delta;
    std::vector<double> eta;
};

/// Fits per-bin medians, m bins per axis. Cost O(n) expected. Throws
/// std::invalid_argument naming the first empty bin when m exceeds the
/// design resolution.
LbmFit lbm_fit(const DesignResponses& data, std::int64_t m);

/// z at the query's bin; piecewise constant on bins.
double lbm_predict(const LbmFit& fit, std::span<const double> x0);
double lbm_predict(const LbmFit& fit, double x0);

/// Bin count from the Holder-class error bound: round(n^{1/(2b'+d)} *
/// L^{2/(2b'+d)}) with b' = min(beta, 1); at least 1. Callers clamp to p.
std::int64_t choose_m_holder(std::int64_t n, double beta, double L, int d);

BinDecomposition decompose(const LbmFit& fit, const DesignResponses& data,
                           const TestFunction& f);

/// Extremes of the lower median of s values when s' of them are chosen
/// adversarially and the rest are `fixed`: upper is achieved with all
/// adversaries at +inf, lower with all at -inf, which reduces both to
/// order statistics of `fixed` (ranks ceil(s/2) and ceil(s/2) - s').
/// Requires 0 <= s' < s/4.
std::pair<double, double> worst_case_median_bounds(std::span<const double> fixed,
                                                   std::int64_t s_prime);

/// CSV: bin multi-index columns, z, s_count.
void write_lbm_fit_csv(const LbmFit& fit, std::ostream& out);

} // namespace robnp
