#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace robnp {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// min(a) <= median(a+b) - median(b) <= max(a) over random equal-length
/// pairs; zero violations expected.
CheckResult check_median_sandwich(int trials = 10000, std::uint64_t seed = 0x5eed0001);

/// Adversarial-median bounds equal the +/-inf completion brute force on
/// every random instance (s <= 60, s' < s/4).
CheckResult check_worst_case_median_oracle(int trials = 1000, std::uint64_t seed = 0x5eed0002);

/// max |sum_j K_j^h(x) - 1| <= 1e-10 over box/triangular/epanechnikov,
/// m in {10, 57, 200}, h in {0.05, 0.1, 0.3}, 1000 interior points each.
CheckResult check_kernel_normalization();

/// max_j s_j <= 4 (s*eps + log m) in at least 99% of seeds, with eps=0.1,
/// s=100, m=100.
CheckResult check_adversary_concentration(int seeds = 1000, std::uint64_t seed = 0x5eed0003);

std::vector<CheckResult> run_selftests();

} // namespace robnp
