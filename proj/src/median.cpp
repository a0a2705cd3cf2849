#include "robnp/median.hpp"

#include <algorithm>
#include <stdexcept>

namespace robnp {

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::vector<double> buf(values.begin(), values.end());
    const std::size_t k = lower_median_rank(buf.size());
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    return buf[k];
}

double kth_smallest(std::span<const double> values, std::size_t k) {
    if (k < 1 || k > values.size()) throw std::invalid_argument("kth_smallest: rank out of range");
    std::vector<double> buf(values.begin(), values.end());
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k - 1), buf.end());
    return buf[k - 1];
}

} // namespace robnp
