#include "robnp/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace robnp {

TruncationSpec::TruncationSpec(double L_bound_, double c_margin_)
    : L_bound(L_bound_), c_margin(c_margin_) {
    if (L_bound < 0.0) throw std::invalid_argument("TruncationSpec: L_bound must be >= 0");
    if (!(c_margin > 1.0)) throw std::invalid_argument("TruncationSpec: c_margin must be > 1");
}

double TruncationSpec::clamp(double y) const {
    const double T = level();
    return y > T ? T : (y < -T ? -T : y);
}

namespace {

// Per-observation integrated weights: m = n cells, observation i owns cell
// [(i-1)/n, i/n). The support window keeps the scan O(n*h) per query.
template <typename ValueAt>
double cellwise_kernel_sum(std::int64_t n, double h, const KernelSpec& k, double x0,
                           ValueAt&& value_at) {
    if (!(h > 0.0 && h < 0.5))
        throw std::invalid_argument("kernel baseline: h must be in (0, 1/2)");
    if (!(x0 > h && x0 < 1.0 - h))
        throw std::domain_error("kernel baseline: query outside the interior (h, 1-h)");
    std::int64_t lo = 1, hi = n;
    detail::support_bin_range(n, h, x0, lo, hi);
    double acc = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i)
        acc += detail::kernel_weight_unchecked(i, n, h, x0, k) * value_at(i - 1);
    return acc;
}

} // namespace

double direct_kernel_predict(const DesignResponses& data, double h, const KernelSpec& k,
                             double x0) {
    if (data.grid.d != 1)
        throw std::invalid_argument("direct_kernel_predict: 1D only");
    return cellwise_kernel_sum(data.grid.n, h, k, x0,
                               [&](std::int64_t i) { return data.y[static_cast<std::size_t>(i)]; });
}

double truncated_kernel_predict(const DesignResponses& data, double h, const KernelSpec& k,
                                const TruncationSpec& trunc, double x0) {
    if (data.grid.d != 1)
        throw std::invalid_argument("truncated_kernel_predict: 1D only");
    return cellwise_kernel_sum(data.grid.n, h, k, x0, [&](std::int64_t i) {
        return trunc.clamp(data.y[static_cast<std::size_t>(i)]);
    });
}

double direct_lpr_predict(const DesignResponses& data, double h, const PolyBasis& basis,
                          std::span<const double> x0) {
    if (basis.d != data.grid.d)
        throw std::invalid_argument("direct_lpr_predict: dimension mismatch");
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    for (std::int64_t r = 0; r < data.grid.n; ++r) {
        std::vector<double> x = data.grid.point(r);
        bool inside = true;
        for (int k = 0; k < data.grid.d && inside; ++k)
            inside = std::abs(x[static_cast<std::size_t>(k)] - x0[static_cast<std::size_t>(k)]) <= h;
        if (!inside) continue;
        pts.push_back(std::move(x));
        vals.push_back(data.y[static_cast<std::size_t>(r)]);
    }
    return lpr_fit_at(pts, vals, basis, h, x0);
}

double direct_lpr_predict(const DesignResponses& data, double h, const PolyBasis& basis,
                          double x0) {
    return direct_lpr_predict(data, h, basis, std::span<const double>(&x0, 1));
}

} // namespace robnp
