#include "robnp/lbm.hpp"

#include "robnp/median.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robnp {

namespace {

// Responses grouped by flat bin, using the design-point assignment.
std::vector<std::vector<double>> partition_by_bin(const DesignResponses& data, std::int64_t m,
                                                  std::int64_t bins) {
    std::vector<std::vector<double>> groups(static_cast<std::size_t>(bins));
    const std::int64_t expected = std::max<std::int64_t>(1, data.grid.n / bins);
    for (auto& g : groups) g.reserve(static_cast<std::size_t>(expected));
    for (std::int64_t r = 0; r < data.grid.n; ++r) {
        groups[static_cast<std::size_t>(design_flat_bin(data.grid, r, m))]
            .push_back(data.y[static_cast<std::size_t>(r)]);
    }
    return groups;
}

} // namespace

LbmFit lbm_fit(const DesignResponses& data, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("lbm_fit: m must be >= 1");
    BinningSpec spec;
    spec.m = m;
    spec.d = data.grid.d;
    const std::int64_t bins = spec.bin_count();

    auto groups = partition_by_bin(data, m, bins);
    LbmFit fit;
    fit.binning = spec;
    fit.z.resize(static_cast<std::size_t>(bins));
    fit.s_counts.resize(static_cast<std::size_t>(bins));
    std::int64_t min_count = data.grid.n;
    for (std::int64_t b = 0; b < bins; ++b) {
        const auto& g = groups[static_cast<std::size_t>(b)];
        if (g.empty()) {
            std::ostringstream os;
            os << "lbm_fit: bin (";
            const auto j = spec.multi_index(b);
            for (std::size_t k = 0; k < j.size(); ++k) os << (k ? "," : "") << j[k];
            os << ") is empty; m=" << m << " exceeds the design resolution p=" << data.grid.p;
            throw std::invalid_argument(os.str());
        }
        fit.z[static_cast<std::size_t>(b)] = median(std::span<const double>(g));
        fit.s_counts[static_cast<std::size_t>(b)] = static_cast<std::int64_t>(g.size());
        min_count = std::min(min_count, static_cast<std::int64_t>(g.size()));
    }
    fit.binning.s = min_count;
    return fit;
}

double lbm_predict(const LbmFit& fit, std::span<const double> x0) {
    const std::int64_t b = flat_bin_index(x0, fit.binning.m, fit.binning.d);
    return fit.z[static_cast<std::size_t>(b)];
}

double lbm_predict(const LbmFit& fit, double x0) {
    return lbm_predict(fit, std::span<const double>(&x0, 1));
}

std::int64_t choose_m_holder(std::int64_t n, double beta, double L, int d) {
    if (n < 1) throw std::invalid_argument("choose_m_holder: n must be >= 1");
    if (beta <= 0.0 || L <= 0.0)
        throw std::invalid_argument("choose_m_holder: beta and L must be positive");
    const double b = std::min(beta, 1.0);
    const double expo = 1.0 / (2.0 * b + d);
    const double m = std::pow(static_cast<double>(n), expo) * std::pow(L, 2.0 * expo);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(m)));
}

BinDecomposition decompose(const LbmFit& fit, const DesignResponses& data,
                           const TestFunction& f) {
    const std::int64_t m = fit.binning.m;
    const std::int64_t bins = fit.binning.bin_count();

    std::vector<std::vector<double>> residuals(static_cast<std::size_t>(bins));
    std::vector<double> max_gap(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> centers(static_cast<std::size_t>(bins));
    for (std::int64_t b = 0; b < bins; ++b)
        centers[static_cast<std::size_t>(b)] = f(fit.binning.representative(b));

    for (std::int64_t r = 0; r < data.grid.n; ++r) {
        const std::vector<double> x = data.grid.point(r);
        const std::int64_t b = design_flat_bin(data.grid, r, m);
        const double fx = f(x);
        residuals[static_cast<std::size_t>(b)].push_back(data.y[static_cast<std::size_t>(r)] - fx);
        max_gap[static_cast<std::size_t>(b)] =
            std::max(max_gap[static_cast<std::size_t>(b)],
                     std::abs(fx - centers[static_cast<std::size_t>(b)]));
    }

    BinDecomposition dec;
    dec.f_center = centers;
    dec.eta.resize(static_cast<std::size_t>(bins));
    dec.delta.resize(static_cast<std::size_t>(bins));
    for (std::int64_t b = 0; b < bins; ++b) {
        const auto& res = residuals[static_cast<std::size_t>(b)];
        if (res.empty()) throw std::invalid_argument("decompose: empty bin");
        const double eta = median(std::span<const double>(res));
        const double delta = fit.z[static_cast<std::size_t>(b)] - eta - centers[static_cast<std::size_t>(b)];
        // Sandwich bound: the binning bias never exceeds the largest
        // in-bin deviation of f from its representative value.
        if (std::abs(delta) > max_gap[static_cast<std::size_t>(b)] + 1e-9)
            throw std::logic_error("decompose: sandwich bound violated");
        dec.eta[static_cast<std::size_t>(b)] = eta;
        dec.delta[static_cast<std::size_t>(b)] = delta;
    }
    return dec;
}

std::pair<double, double> worst_case_median_bounds(std::span<const double> fixed,
                                                   std::int64_t s_prime) {
    if (s_prime < 0) throw std::invalid_argument("worst_case_median_bounds: s' must be >= 0");
    const std::int64_t s = static_cast<std::int64_t>(fixed.size()) + s_prime;
    if (s < 1) throw std::invalid_argument("worst_case_median_bounds: empty instance");
    if (4 * s_prime >= s)
        throw std::invalid_argument("worst_case_median_bounds: requires s' < s/4");
    const std::int64_t upper_rank = (s + 1) / 2; // ceil(s/2), 1-based from below
    const std::int64_t lower_rank = upper_rank - s_prime;
    const double upper = kth_smallest(fixed, static_cast<std::size_t>(upper_rank));
    const double lower = kth_smallest(fixed, static_cast<std::size_t>(lower_rank));
    return {lower, upper};
}

void write_lbm_fit_csv(const LbmFit& fit, std::ostream& out) {
    for (int k = 1; k <= fit.binning.d; ++k) out << (k > 1 ? "," : "") << "j_" << k;
    out << ",z,s_count\n";
    char buf[64];
    const std::int64_t bins = fit.binning.bin_count();
    for (std::int64_t b = 0; b < bins; ++b) {
        const auto j = fit.binning.multi_index(b);
        for (std::size_t k = 0; k < j.size(); ++k) out << (k ? "," : "") << j[k];
        const auto res = std::to_chars(buf, buf + sizeof(buf), fit.z[static_cast<std::size_t>(b)]);
        out << ',';
        out.write(buf, res.ptr - buf);
        out << ',' << fit.s_counts[static_cast<std::size_t>(b)] << "\n";
    }
}

} // namespace robnp
