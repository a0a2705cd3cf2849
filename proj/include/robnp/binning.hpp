#pragma once

#include "robnp/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace robnp {

/// Bin geometry for the local binning median estimator: m^d equal boxes on
/// [0,1]^d, s = n/m^d design points per bin (the recorded s is the minimum
/// per-bin count when m does not divide p evenly).
///
/// Two boundary conventions coexist and are both needed to match the grid:
///   - query points map through bin_index(): box [(j-1)/m, j/m) per axis,
///     with the final bin absorbing x = 1;
///   - design points i/p (which live in (0, 1]) are assigned right-closed,
///     j = ceil(i*m/p), computed in exact integer arithmetic, so every bin
///     holds exactly p/m points per axis whenever m divides p.
struct BinningSpec {
    std::int64_t m = 1;
    int d = 1;
    std::int64_t s = 0;

    std::int64_t bin_count() const;

    /// Bin center used as the representative point: (j_1/m,...,j_d/m), the
    /// right-closed corner of bin j.
    std::vector<double> representative(std::int64_t flat) const;

    std::vector<std::int64_t> multi_index(std::int64_t flat) const;
    std::int64_t flatten(std::span<const std::int64_t> j) const;
};

/// 1-based bin multi-index of a query point: j_k = min(floor(x_k*m)+1, m).
/// Throws std::domain_error when a coordinate leaves [0,1].
std::vector<std::int64_t> bin_index(std::span<const double> x, std::int64_t m);

/// Flat (row-major) bin index of a query point.
std::int64_t flat_bin_index(std::span<const double> x, std::int64_t m, int d);

/// Right-closed assignment of design axis index i in {1..p}: ceil(i*m/p).
std::int64_t design_axis_bin(std::int64_t i, std::int64_t p, std::int64_t m);

/// Flat bin index of the design point with flat grid index r.
std::int64_t design_flat_bin(const GridSpec& grid, std::int64_t r, std::int64_t m);

} // namespace robnp
