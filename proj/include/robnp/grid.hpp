#pragma once

#include <cstdint>
#include <vector>

namespace robnp {

/// Evenly spaced fixed design on [0,1]^d: p points per axis, n = p^d total.
/// The point for multi-index (i_1,...,i_d), i_k in {1,...,p}, is
/// (i_1/p,...,i_d/p); every coordinate lies in (0, 1].
struct GridSpec {
    std::int64_t p = 0;
    int d = 0;
    std::int64_t n = 0;

    /// Design point for flat index r in row-major multi-index order
    /// (last axis fastest).
    std::vector<double> point(std::int64_t r) const;

    /// 1-based multi-index for flat index r.
    std::vector<std::int64_t> multi_index(std::int64_t r) const;
};

/// Builds the design grid spec. Throws std::invalid_argument on p < 1 or
/// d < 1 and std::overflow_error when p^d does not fit in a 64-bit count.
GridSpec make_grid(std::int64_t p, int d);

} // namespace robnp
