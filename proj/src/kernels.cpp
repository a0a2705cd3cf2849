#include "robnp/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace robnp {

namespace {

double clamp_unit(double u) { return u < -1.0 ? -1.0 : (u > 1.0 ? 1.0 : u); }

} // namespace

KernelSpec KernelSpec::box() {
    KernelSpec k;
    k.kind = Kind::box;
    k.eval = [](double u) { return std::abs(u) <= 1.0 ? 0.5 : 0.0; };
    k.antideriv = [](double u) { return (clamp_unit(u) + 1.0) * 0.5; };
    k.moment_order = 1;
    k.energy = 0.5;
    return k;
}

KernelSpec KernelSpec::triangular() {
    KernelSpec k;
    k.kind = Kind::triangular;
    k.eval = [](double u) {
        const double a = std::abs(u);
        return a <= 1.0 ? 1.0 - a : 0.0;
    };
    k.antideriv = [](double u) {
        u = clamp_unit(u);
        if (u <= 0.0) return 0.5 * (u + 1.0) * (u + 1.0);
        return 0.5 + u - 0.5 * u * u;
    };
    k.moment_order = 1;
    k.energy = 2.0 / 3.0;
    return k;
}

KernelSpec KernelSpec::epanechnikov() {
    KernelSpec k;
    k.kind = Kind::epanechnikov;
    k.eval = [](double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; };
    k.antideriv = [](double u) {
        u = clamp_unit(u);
        return 0.25 * (3.0 * u - u * u * u + 2.0);
    };
    k.moment_order = 1;
    k.energy = 0.6;
    return k;
}

KernelSpec KernelSpec::by_name(const std::string& name) {
    if (name == "box") return box();
    if (name == "triangular") return triangular();
    if (name == "epanechnikov") return epanechnikov();
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::string KernelSpec::name() const {
    switch (kind) {
    case Kind::box: return "box";
    case Kind::triangular: return "triangular";
    case Kind::epanechnikov: return "epanechnikov";
    case Kind::custom: return "custom";
    }
    return "?";
}

namespace detail {

void support_bin_range(std::int64_t m, double h, double x, std::int64_t& lo, std::int64_t& hi) {
    lo = static_cast<std::int64_t>(std::floor((x - h) * static_cast<double>(m)));
    hi = static_cast<std::int64_t>(std::ceil((x + h) * static_cast<double>(m))) + 1;
    if (lo < 1) lo = 1;
    if (hi > m) hi = m;
}

double kernel_weight_unchecked(std::int64_t j, std::int64_t m, double h, double x,
                               const KernelSpec& k) {
    // Substituting v = (x-u)/h turns the bin integral into
    // A((x-(j-1)/m)/h) - A((x-j/m)/h) with A the clamped antiderivative.
    const double hi = (x - static_cast<double>(j - 1) / static_cast<double>(m)) / h;
    const double lo = (x - static_cast<double>(j) / static_cast<double>(m)) / h;
    return k.antideriv(hi) - k.antideriv(lo);
}

} // namespace detail

double kernel_weight(std::int64_t j, std::int64_t m, double h, double x, const KernelSpec& k) {
    if (!(h > 0.0 && h < 0.5)) throw std::invalid_argument("kernel_weight: h must be in (0, 1/2)");
    if (j < 1 || j > m) throw std::invalid_argument("kernel_weight: bin index out of range");
    if (!(x > h && x < 1.0 - h))
        throw std::domain_error("kernel_weight: query outside the interior (h, 1-h)");
    return detail::kernel_weight_unchecked(j, m, h, x, k);
}

} // namespace robnp
