#pragma once

#include "robnp/test_functions.hpp"

#include <functional>
#include <span>

namespace robnp {

using Predictor = std::function<double(std::span<const double>)>;

/// Squared L2 distance between a predictor and the target over the
/// interior box [c, 1-c]^d, by the midpoint rule on a regular grid of
/// grid_points cells per axis. Midpoints never touch the box boundary, so
/// interior-only predictors are safe at c equal to their margin.
double l2_risk(const Predictor& predictor, const TestFunction& f, int d, double c,
               int grid_points);

} // namespace robnp
