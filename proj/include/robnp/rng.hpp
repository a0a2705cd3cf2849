#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace robnp {

/// splitmix64 finalizer; used to whiten seeds and derive child streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for one (n, replicate) cell of a sweep. Counter-based so
/// replicates can run in any order (or in parallel) without a shared
/// generator; distinct (a, b) give distinct streams for any fixed root.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(root ^ mix64(a)) ^ mix64(b ^ 0x5bf0363546290f21ULL));
}

/// Deterministic random source. The engine is std::mt19937_64, whose raw
/// output sequence is fixed by the standard; the variate transforms below
/// are ours, so identical seeds give bit-identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform01_open() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (cosine branch only, stateless).
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Uniform integer in [lo, hi] by rejection-free scaling (bias is
    /// negligible for the ranges used here, hi - lo << 2^53).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform01() * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace robnp
