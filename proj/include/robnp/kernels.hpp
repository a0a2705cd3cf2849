#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace robnp {

/// A smoothing kernel together with its antiderivative, so integrated bin
/// weights come out in closed form. Contract: support in [-1,1] with
/// antideriv(-1) = 0 and antideriv(1) = 1; moments u^k integrate to zero
/// for k = 1..moment_order; energy = integral of K^2.
struct KernelSpec {
    enum class Kind { box, triangular, epanechnikov, custom };

    Kind kind = Kind::box;
    std::function<double(double)> eval;
    std::function<double(double)> antideriv;
    int moment_order = 1;
    double energy = 0.0;

    static KernelSpec box();
    static KernelSpec triangular();
    static KernelSpec epanechnikov();
    static KernelSpec by_name(const std::string& name);

    std::string name() const;
};

/// Integrated weight of bin j for a query x:
///   K_j^h(x) = (1/h) * integral over [(j-1)/m, j/m] of K((x-u)/h) du,
/// evaluated exactly through the antiderivative. The weights over j = 1..m
/// telescope, so they sum to one for any interior x. Throws
/// std::domain_error when x leaves the open interval (h, 1-h).
double kernel_weight(std::int64_t j, std::int64_t m, double h, double x, const KernelSpec& k);

namespace detail {

/// Bin range [lo, hi] (1-based, clamped) whose cells can intersect the
/// support window [x-h, x+h]; weights vanish outside it.
void support_bin_range(std::int64_t m, double h, double x, std::int64_t& lo, std::int64_t& hi);

/// Weight without the boundary check, for callers that validated x once.
double kernel_weight_unchecked(std::int64_t j, std::int64_t m, double h, double x,
                               const KernelSpec& k);

} // namespace detail

} // namespace robnp
