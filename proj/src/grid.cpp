#include "robnp/grid.hpp"

#include <limits>
#include <stdexcept>

namespace robnp {

std::vector<double> GridSpec::point(std::int64_t r) const {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
        const std::int64_t ik = r % p + 1;
        r /= p;
        x[static_cast<std::size_t>(k)] = static_cast<double>(ik) / static_cast<double>(p);
    }
    return x;
}

std::vector<std::int64_t> GridSpec::multi_index(std::int64_t r) const {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = r % p + 1;
        r /= p;
    }
    return idx;
}

GridSpec make_grid(std::int64_t p, int d) {
    if (p < 1) throw std::invalid_argument("make_grid: p must be >= 1");
    if (d < 1) throw std::invalid_argument("make_grid: d must be >= 1");
    std::int64_t n = 1;
    for (int k = 0; k < d; ++k) {
        if (n > std::numeric_limits<std::int64_t>::max() / p)
            throw std::overflow_error("make_grid: p^d exceeds 64-bit capacity");
        n *= p;
    }
    return GridSpec{p, d, n};
}

} // namespace robnp
