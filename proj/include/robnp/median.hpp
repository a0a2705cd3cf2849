#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robnp {

/// 0-based rank of the lower median in a sequence of length s: the
/// ceil(s/2)-th smallest element. All order-statistic reasoning in this
/// library (adversarial bounds, sandwich property) uses this convention;
/// the median of an even-length sequence is an element, never an average.
inline std::size_t lower_median_rank(std::size_t s) { return (s - 1) / 2; }

/// Lower median as an order statistic. +/-inf sentinels are fine; the
/// input is not modified. Throws std::invalid_argument on empty input.
double median(std::span<const double> values);

/// k-th smallest element, k 1-based. Throws on k out of range.
double kth_smallest(std::span<const double> values, std::size_t k);

inline double median(const std::vector<double>& values) {
    return median(std::span<const double>(values));
}

} // namespace robnp
