#include "robnp/binning.hpp"

#include <cmath>
#include <stdexcept>

namespace robnp {

std::int64_t BinningSpec::bin_count() const {
    std::int64_t c = 1;
    for (int k = 0; k < d; ++k) c *= m;
    return c;
}

std::vector<double> BinningSpec::representative(std::int64_t flat) const {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
        x[static_cast<std::size_t>(k)] = static_cast<double>(flat % m + 1) / static_cast<double>(m);
        flat /= m;
    }
    return x;
}

std::vector<std::int64_t> BinningSpec::multi_index(std::int64_t flat) const {
    std::vector<std::int64_t> j(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
        j[static_cast<std::size_t>(k)] = flat % m + 1;
        flat /= m;
    }
    return j;
}

std::int64_t BinningSpec::flatten(std::span<const std::int64_t> j) const {
    std::int64_t flat = 0;
    for (int k = 0; k < d; ++k) flat = flat * m + (j[static_cast<std::size_t>(k)] - 1);
    return flat;
}

std::vector<std::int64_t> bin_index(std::span<const double> x, std::int64_t m) {
    std::vector<std::int64_t> j(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xk = x[k];
        if (!(xk >= 0.0 && xk <= 1.0))
            throw std::domain_error("bin_index: coordinate outside [0,1]");
        const std::int64_t jk = static_cast<std::int64_t>(std::floor(xk * static_cast<double>(m))) + 1;
        j[k] = jk > m ? m : jk;
    }
    return j;
}

std::int64_t flat_bin_index(std::span<const double> x, std::int64_t m, int d) {
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("flat_bin_index: dimension mismatch");
    std::int64_t flat = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xk = x[k];
        if (!(xk >= 0.0 && xk <= 1.0))
            throw std::domain_error("bin_index: coordinate outside [0,1]");
        std::int64_t jk = static_cast<std::int64_t>(std::floor(xk * static_cast<double>(m))) + 1;
        if (jk > m) jk = m;
        flat = flat * m + (jk - 1);
    }
    return flat;
}

std::int64_t design_axis_bin(std::int64_t i, std::int64_t p, std::int64_t m) {
    return (i * m + p - 1) / p;
}

std::int64_t design_flat_bin(const GridSpec& grid, std::int64_t r, std::int64_t m) {
    // Walk the multi-index from the last (fastest) axis.
    std::int64_t flat = 0;
    std::int64_t stride = 1;
    for (int k = grid.d - 1; k >= 0; --k) {
        const std::int64_t ik = r % grid.p + 1;
        r /= grid.p;
        flat += (design_axis_bin(ik, grid.p, m) - 1) * stride;
        stride *= m;
    }
    return flat;
}

} // namespace robnp
