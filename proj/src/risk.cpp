#include "robnp/risk.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace robnp {

double l2_risk(const Predictor& predictor, const TestFunction& f, int d, double c,
               int grid_points) {
    if (d < 1) throw std::invalid_argument("l2_risk: dimension must be >= 1");
    if (grid_points < 1) throw std::invalid_argument("l2_risk: grid_points must be >= 1");
    if (!(c >= 0.0 && c < 0.5)) throw std::invalid_argument("l2_risk: margin must be in [0, 1/2)");

    const double len = 1.0 - 2.0 * c;
    const double w = len / grid_points;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    double acc = 0.0;
    while (true) {
        for (int k = 0; k < d; ++k)
            x[static_cast<std::size_t>(k)] =
                c + (static_cast<double>(idx[static_cast<std::size_t>(k)]) + 0.5) * w;
        const double diff = predictor(x) - f(x);
        acc += diff * diff;
        int k = d - 1;
        while (k >= 0) {
            if (++idx[static_cast<std::size_t>(k)] < grid_points) break;
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    double cell = 1.0;
    for (int k = 0; k < d; ++k) cell *= w;
    return acc * cell;
}

} // namespace robnp
