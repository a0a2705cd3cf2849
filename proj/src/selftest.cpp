#include "robnp/selftest.hpp"

#include "robnp/contamination.hpp"
#include "robnp/kernels.hpp"
#include "robnp/lbm.hpp"
#include "robnp/median.hpp"
#include "robnp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace robnp {

CheckResult check_median_sandwich(int trials, std::uint64_t seed) {
    Rng rng(seed);
    int violations = 0;
    // Entries are random multiples of 1/64, so sums and differences are
    // exact in double arithmetic and the inequality can be required with
    // zero slack.
    auto draw = [&rng]() { return static_cast<double>(rng.uniform_int(-1000000, 1000000)) / 64.0; };
    for (int t = 0; t < trials; ++t) {
        const std::int64_t len = rng.uniform_int(1, 200);
        std::vector<double> a(static_cast<std::size_t>(len)), b(static_cast<std::size_t>(len)),
            sum(static_cast<std::size_t>(len));
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::int64_t i = 0; i < len; ++i) {
            a[static_cast<std::size_t>(i)] = draw();
            b[static_cast<std::size_t>(i)] = draw();
            sum[static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            lo = std::min(lo, a[static_cast<std::size_t>(i)]);
            hi = std::max(hi, a[static_cast<std::size_t>(i)]);
        }
        const double gap = median(sum) - median(b);
        if (!(gap >= lo && gap <= hi)) ++violations;
    }
    CheckResult res;
    res.name = "median sandwich inequality";
    res.pass = violations == 0;
    std::ostringstream os;
    os << violations << "/" << trials << " violations";
    res.detail = os.str();
    return res;
}

CheckResult check_worst_case_median_oracle(int trials, std::uint64_t seed) {
    Rng rng(seed);
    int mismatches = 0;
    const double inf = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const std::int64_t s = rng.uniform_int(5, 60);
        const std::int64_t max_sprime = (s - 1) / 4; // s' < s/4
        const std::int64_t s_prime = rng.uniform_int(0, max_sprime);
        std::vector<double> fixed(static_cast<std::size_t>(s - s_prime));
        for (auto& v : fixed) v = rng.normal(0.0, 10.0);

        const auto [lower, upper] = worst_case_median_bounds(fixed, s_prime);

        // Oracle: complete with s' copies of +inf / -inf and take the
        // lower median of the full sequence.
        std::vector<double> completed(fixed);
        completed.insert(completed.end(), static_cast<std::size_t>(s_prime), inf);
        const double max_median = median(completed);
        std::fill(completed.end() - s_prime, completed.end(), -inf);
        const double min_median = median(completed);

        if (max_median != upper || min_median != lower) ++mismatches;
    }
    CheckResult res;
    res.name = "adversarial median bounds vs +/-inf completion oracle";
    res.pass = mismatches == 0;
    std::ostringstream os;
    os << mismatches << "/" << trials << " mismatches";
    res.detail = os.str();
    return res;
}

CheckResult check_kernel_normalization() {
    const KernelSpec kernels[] = {KernelSpec::box(), KernelSpec::triangular(),
                                  KernelSpec::epanechnikov()};
    const std::int64_t ms[] = {10, 57, 200};
    const double hs[] = {0.05, 0.1, 0.3};
    double worst = 0.0;
    for (const auto& k : kernels) {
        for (std::int64_t m : ms) {
            for (double h : hs) {
                for (int i = 0; i < 1000; ++i) {
                    const double x = h + (i + 0.5) / 1000.0 * (1.0 - 2.0 * h);
                    double sum = 0.0;
                    for (std::int64_t j = 1; j <= m; ++j) sum += kernel_weight(j, m, h, x, k);
                    worst = std::max(worst, std::abs(sum - 1.0));
                }
            }
        }
    }
    CheckResult res;
    res.name = "integrated kernel weights sum to one";
    res.pass = worst <= 1e-10;
    std::ostringstream os;
    os << "max |sum - 1| = " << worst;
    res.detail = os.str();
    return res;
}

CheckResult check_adversary_concentration(int seeds, std::uint64_t seed) {
    const double eps = 0.1;
    const std::int64_t s = 100, m = 100;
    const GridSpec grid = make_grid(s * m, 1);
    const ContaminationModel model(eps, Adversary::point_mass(100.0), 1.0);
    const TestFunction f = TestFunction::constant(0.0, 1);
    const double bound = 4.0 * (static_cast<double>(s) * eps + std::log(static_cast<double>(m)));
    int ok = 0;
    for (int t = 0; t < seeds; ++t) {
        const Observations obs = sample_observations(f, grid, model, derive_seed(seed, 0, static_cast<std::uint64_t>(t)));
        const auto counts = count_adversaries_per_bin(obs, m);
        const std::int64_t worst = *std::max_element(counts.begin(), counts.end());
        if (static_cast<double>(worst) <= bound) ++ok;
    }
    CheckResult res;
    res.name = "per-bin adversary count concentration";
    res.pass = ok >= (seeds * 99) / 100;
    std::ostringstream os;
    os << ok << "/" << seeds << " seeds within 4(s*eps + log m) = " << bound;
    res.detail = os.str();
    return res;
}

std::vector<CheckResult> run_selftests() {
    return {check_median_sandwich(), check_worst_case_median_oracle(),
            check_kernel_normalization(), check_adversary_concentration()};
}

} // namespace robnp
