#include "robnp/local_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robnp {

PolyBasis::PolyBasis(int degree_, int d_) : degree(degree_), d(d_) {
    if (degree < 0) throw std::invalid_argument("PolyBasis: degree must be >= 0");
    if (d < 1) throw std::invalid_argument("PolyBasis: dimension must be >= 1");
    D = 1;
    std::int64_t power = 1;
    for (int j = 1; j <= degree; ++j) {
        power *= d;
        D += power;
    }
}

std::int64_t PolyBasis::distinct_monomials() const {
    // C(d + degree, degree)
    std::int64_t num = 1;
    for (int i = 1; i <= degree; ++i) num = num * (d + i) / i;
    return num;
}

std::vector<double> poly_features(const PolyBasis& basis, std::span<const double> x, double h,
                                  std::span<const double> z) {
    if (static_cast<int>(x.size()) != basis.d || static_cast<int>(z.size()) != basis.d)
        throw std::invalid_argument("poly_features: dimension mismatch");
    std::vector<double> u(static_cast<std::size_t>(basis.d));
    for (int k = 0; k < basis.d; ++k)
        u[static_cast<std::size_t>(k)] = (z[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)]) / h;

    std::vector<double> feat;
    feat.reserve(static_cast<std::size_t>(basis.D));
    feat.push_back(1.0);
    std::vector<double> block{1.0};
    for (int j = 1; j <= basis.degree; ++j) {
        std::vector<double> next;
        next.reserve(block.size() * u.size());
        for (double b : block)
            for (double uk : u) next.push_back(b * uk);
        feat.insert(feat.end(), next.begin(), next.end());
        block = std::move(next);
    }
    return feat;
}

namespace detail {

int pivoted_cholesky_solve(std::vector<double>& a, int D, std::vector<double>& b,
                           std::vector<double>& theta, double rel_tol) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * D + j)]; };

    double max_diag = 0.0;
    for (int i = 0; i < D; ++i) max_diag = std::max(max_diag, at(i, i));
    const double tol = rel_tol * std::max(max_diag, std::numeric_limits<double>::min());

    std::vector<int> perm(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) perm[static_cast<std::size_t>(i)] = i;

    int rank = 0;
    for (int k = 0; k < D; ++k) {
        int q = k;
        for (int i = k + 1; i < D; ++i)
            if (at(i, i) > at(q, q)) q = i;
        if (q != k) {
            for (int j = 0; j < D; ++j) std::swap(at(k, j), at(q, j));
            for (int i = 0; i < D; ++i) std::swap(at(i, k), at(i, q));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(q)]);
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(q)]);
        }
        const double piv = at(k, k);
        if (!(piv > tol)) break;
        rank = k + 1;
        const double lkk = std::sqrt(piv);
        at(k, k) = lkk;
        for (int i = k + 1; i < D; ++i) at(i, k) /= lkk;
        // Update the full trailing block so it stays symmetric; later
        // pivot swaps move whole rows/columns and read both triangles.
        for (int i = k + 1; i < D; ++i)
            for (int j = k + 1; j < D; ++j) at(i, j) -= at(i, k) * at(j, k);
    }

    // Particular solution: dropped (pivot-deficient) coordinates pinned to
    // zero; for consistent systems the selected columns span the range.
    std::vector<double> y(static_cast<std::size_t>(rank), 0.0);
    for (int i = 0; i < rank; ++i) {
        double acc = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) acc -= at(i, j) * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc / at(i, i);
    }
    std::vector<double> t(static_cast<std::size_t>(rank), 0.0);
    for (int i = rank - 1; i >= 0; --i) {
        double acc = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < rank; ++j) acc -= at(j, i) * t[static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(i)] = acc / at(i, i);
    }

    theta.assign(static_cast<std::size_t>(D), 0.0);
    for (int i = 0; i < rank; ++i) theta[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        t[static_cast<std::size_t>(i)];
    return rank;
}

namespace {

struct NormalSystem {
    std::vector<double> a; // D x D, row-major
    std::vector<double> b;
    std::vector<std::vector<double>> features; // per window point
    int D = 0;
};

// Accumulates Psi^T Psi and Psi^T v over the window points.
template <typename PointAt, typename ValueAt>
NormalSystem build_normal_system(const PolyBasis& basis, double h, std::span<const double> x0,
                                 std::int64_t count, PointAt&& point_at, ValueAt&& value_at,
                                 bool keep_features) {
    NormalSystem sys;
    sys.D = static_cast<int>(basis.D);
    sys.a.assign(static_cast<std::size_t>(sys.D) * static_cast<std::size_t>(sys.D), 0.0);
    sys.b.assign(static_cast<std::size_t>(sys.D), 0.0);
    for (std::int64_t i = 0; i < count; ++i) {
        const std::vector<double> pt = point_at(i);
        std::vector<double> f = poly_features(basis, x0, h, pt);
        const double v = value_at(i);
        for (int r = 0; r < sys.D; ++r) {
            const double fr = f[static_cast<std::size_t>(r)];
            sys.b[static_cast<std::size_t>(r)] += fr * v;
            for (int c = 0; c <= r; ++c)
                sys.a[static_cast<std::size_t>(r * sys.D + c)] += fr * f[static_cast<std::size_t>(c)];
        }
        if (keep_features) sys.features.push_back(std::move(f));
    }
    for (int r = 0; r < sys.D; ++r)
        for (int c = r + 1; c < sys.D; ++c)
            sys.a[static_cast<std::size_t>(r * sys.D + c)] = sys.a[static_cast<std::size_t>(c * sys.D + r)];
    return sys;
}

void check_rank(int rank, const PolyBasis& basis) {
    if (rank < basis.distinct_monomials())
        throw conditioning_error("lpr: normal matrix rank below the distinct-monomial count; "
                                 "window geometry is degenerate");
}

// Flat indices of bins whose representative point j/m lies in B_h^inf(x0).
// Ranges are located analytically with one bin of slack, then filtered by
// the exact closed-ball test so membership is bit-reproducible.
std::vector<std::int64_t> window_bins(const BinningSpec& binning, double h,
                                      std::span<const double> x0) {
    const std::int64_t m = binning.m;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    ranges.reserve(static_cast<std::size_t>(binning.d));
    for (int k = 0; k < binning.d; ++k) {
        const double c = x0[static_cast<std::size_t>(k)];
        std::int64_t lo = static_cast<std::int64_t>(std::ceil((c - h) * static_cast<double>(m))) - 1;
        std::int64_t hi = static_cast<std::int64_t>(std::floor((c + h) * static_cast<double>(m))) + 1;
        while (lo <= hi &&
               std::abs(static_cast<double>(lo) / static_cast<double>(m) - c) > h)
            ++lo;
        while (hi >= lo &&
               std::abs(static_cast<double>(hi) / static_cast<double>(m) - c) > h)
            --hi;
        lo = std::max<std::int64_t>(lo, 1);
        hi = std::min<std::int64_t>(hi, m);
        if (lo > hi) return {};
        ranges.emplace_back(lo, hi);
    }
    std::vector<std::int64_t> flats;
    std::vector<std::int64_t> j(static_cast<std::size_t>(binning.d));
    for (int k = 0; k < binning.d; ++k) j[static_cast<std::size_t>(k)] = ranges[static_cast<std::size_t>(k)].first;
    while (true) {
        flats.push_back(binning.flatten(j));
        int k = binning.d - 1;
        while (k >= 0) {
            if (++j[static_cast<std::size_t>(k)] <= ranges[static_cast<std::size_t>(k)].second) break;
            j[static_cast<std::size_t>(k)] = ranges[static_cast<std::size_t>(k)].first;
            --k;
        }
        if (k < 0) break;
    }
    return flats;
}

} // namespace

} // namespace detail

double lpr_fit_at(std::span<const std::vector<double>> points, std::span<const double> values,
                  const PolyBasis& basis, double h, std::span<const double> x0) {
    if (points.size() != values.size())
        throw std::invalid_argument("lpr_fit_at: points/values size mismatch");
    std::vector<std::int64_t> window;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool inside = true;
        for (int k = 0; k < basis.d && inside; ++k)
            inside = std::abs(points[i][static_cast<std::size_t>(k)] - x0[static_cast<std::size_t>(k)]) <= h;
        if (inside) window.push_back(static_cast<std::int64_t>(i));
    }
    if (static_cast<std::int64_t>(window.size()) < basis.D)
        throw window_error("lpr: window holds fewer points than the feature dimension");

    auto sys = detail::build_normal_system(
        basis, h, x0, static_cast<std::int64_t>(window.size()),
        [&](std::int64_t i) { return points[static_cast<std::size_t>(window[static_cast<std::size_t>(i)])]; },
        [&](std::int64_t i) { return values[static_cast<std::size_t>(window[static_cast<std::size_t>(i)])]; },
        false);
    std::vector<double> theta;
    const int rank = detail::pivoted_cholesky_solve(sys.a, sys.D, sys.b, theta);
    detail::check_rank(rank, basis);
    return theta[0];
}

double lpr_predict(const LbmFit& fit, double h, const PolyBasis& basis,
                   std::span<const double> x0) {
    if (basis.d != fit.binning.d) throw std::invalid_argument("lpr_predict: dimension mismatch");
    const auto window = detail::window_bins(fit.binning, h, x0);
    if (static_cast<std::int64_t>(window.size()) < basis.D)
        throw window_error("lpr: window holds fewer bins than the feature dimension");

    auto sys = detail::build_normal_system(
        basis, h, x0, static_cast<std::int64_t>(window.size()),
        [&](std::int64_t i) { return fit.binning.representative(window[static_cast<std::size_t>(i)]); },
        [&](std::int64_t i) { return fit.z[static_cast<std::size_t>(window[static_cast<std::size_t>(i)])]; },
        false);
    std::vector<double> theta;
    const int rank = detail::pivoted_cholesky_solve(sys.a, sys.D, sys.b, theta);
    detail::check_rank(rank, basis);
    return theta[0];
}

double lpr_predict(const LbmFit& fit, double h, const PolyBasis& basis, double x0) {
    return lpr_predict(fit, h, basis, std::span<const double>(&x0, 1));
}

LprWeights lpr_effective_weights(const BinningSpec& binning, double h, const PolyBasis& basis,
                                 std::span<const double> x0) {
    if (basis.d != binning.d)
        throw std::invalid_argument("lpr_effective_weights: dimension mismatch");
    const auto window = detail::window_bins(binning, h, x0);
    if (static_cast<std::int64_t>(window.size()) < basis.D)
        throw window_error("lpr: window holds fewer bins than the feature dimension");

    auto sys = detail::build_normal_system(
        basis, h, x0, static_cast<std::int64_t>(window.size()),
        [&](std::int64_t i) { return binning.representative(window[static_cast<std::size_t>(i)]); },
        [&](std::int64_t) { return 0.0; }, true);

    // w_i = psi_i^T u where (Psi^T Psi) u = psi_{x0}(x0) = e_1; then
    // prediction = sum_i w_i z_i = theta_0 for any consistent solve.
    std::vector<double> e1(static_cast<std::size_t>(sys.D), 0.0);
    e1[0] = 1.0;
    std::vector<double> u;
    const int rank = detail::pivoted_cholesky_solve(sys.a, sys.D, e1, u);
    detail::check_rank(rank, basis);

    LprWeights out;
    out.window = window;
    out.weights.resize(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        double acc = 0.0;
        for (int r = 0; r < sys.D; ++r)
            acc += sys.features[i][static_cast<std::size_t>(r)] * u[static_cast<std::size_t>(r)];
        out.weights[i] = acc;
    }
    return out;
}

double lpr_weight_l1_norm(const BinningSpec& binning, double h, const PolyBasis& basis,
                          std::span<const double> x0) {
    const auto w = lpr_effective_weights(binning, h, basis, x0);
    double acc = 0.0;
    for (double v : w.weights) acc += std::abs(v);
    return acc;
}

PostprocessParams choose_postprocess_params(std::int64_t n, double beta, double L, int d) {
    if (n < 1) throw std::invalid_argument("choose_postprocess_params: n must be >= 1");
    if (beta <= 0.0 || L <= 0.0)
        throw std::invalid_argument("choose_postprocess_params: beta and L must be positive");
    const double p = std::round(std::pow(static_cast<double>(n), 1.0 / d));
    double m_raw = std::sqrt(static_cast<double>(n)) /
                   std::pow(std::log(static_cast<double>(n)), 0.25);
    if (!std::isfinite(m_raw) || m_raw < 1.0) m_raw = 1.0;
    std::int64_t m = static_cast<std::int64_t>(std::llround(m_raw));
    m = std::clamp<std::int64_t>(m, 1, static_cast<std::int64_t>(p));

    double h = std::pow(static_cast<double>(n) * L * L, -1.0 / (2.0 * beta + d));
    const double h_lo = 1.0 / static_cast<double>(m);
    if (h_lo >= 0.5) {
        h = 0.25; // degenerate tiny-n case: no admissible (1/m, 1/2) range
    } else {
        h = std::clamp(h, std::nextafter(h_lo, 1.0), std::nextafter(0.5, 0.0));
    }
    return {m, h};
}

} // namespace robnp
