#pragma once

#include "robnp/grid.hpp"
#include "robnp/rng.hpp"
#include "robnp/test_functions.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace robnp {

/// The adversarial response distribution Q. Custom samplers see the design
/// point, so location-dependent adversaries are expressible; the shipped
/// experiments all use location-independent Q.
class Adversary {
public:
    enum class Kind { point_mass, symmetric_bernoulli, shifted_gaussian, custom };

    using Sampler = std::function<double(std::span<const double> x, Rng& rng)>;

    static Adversary point_mass(double value);
    static Adversary symmetric_bernoulli(double magnitude);
    static Adversary shifted_gaussian(double mean, double sd);
    static Adversary custom(std::string id, Sampler sampler);

    double sample(std::span<const double> x, Rng& rng) const;

    Kind kind() const { return kind_; }
    double value() const { return value_; }
    double magnitude() const { return magnitude_; }
    double mean() const { return mean_; }
    double sd() const { return sd_; }
    std::string describe() const;

private:
    Adversary() = default;

    Kind kind_ = Kind::point_mass;
    double value_ = 0.0;
    double magnitude_ = 0.0;
    double mean_ = 0.0, sd_ = 1.0;
    std::string id_;
    Sampler sampler_;
};

/// Huber mixture (1-eps) N(f(x), benign_sd^2) + eps Q(x).
struct ContaminationModel {
    double epsilon = 0.0;
    Adversary adversary = Adversary::point_mass(0.0);
    double benign_sd = 1.0;

    ContaminationModel(double epsilon_, Adversary adversary_, double benign_sd_ = 1.0);
};

/// One sampled data set on a fixed design. The mask records which draws
/// came from Q; it exists for diagnostics and tests only, estimators never
/// see it (their entry points take a DesignResponses view of grid + y).
struct Observations {
    GridSpec grid;
    std::vector<double> y;
    std::vector<bool> adversary_mask;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    double benign_sd = 1.0;
    std::string adversary_desc;

    /// FNV-1a over the bit patterns of y; used by the harness to verify
    /// that paired estimators consumed identical data.
    std::uint64_t checksum() const;
};

/// Non-owning view of what estimators are allowed to read: the design and
/// the responses. Keeping the adversary mask out of this type is what
/// guarantees estimators cannot branch on it.
struct DesignResponses {
    GridSpec grid;
    std::span<const double> y;

    DesignResponses(const Observations& obs) : grid(obs.grid), y(obs.y) {}
    DesignResponses(const GridSpec& grid_, std::span<const double> y_) : grid(grid_), y(y_) {}
};

/// Draws y_i ~ (1-eps) N(f(x_i), sd^2) + eps Q(x_i), independently per
/// design point. Identical seeds give bit-identical output.
Observations sample_observations(const TestFunction& f, const GridSpec& grid,
                                 const ContaminationModel& model, std::uint64_t seed);

/// Number of mask-true observations per bin (s_j), bins in row-major
/// multi-index order; uses the same design-point assignment as lbm_fit.
std::vector<std::int64_t> count_adversaries_per_bin(const Observations& obs, std::int64_t m);

/// CSV round trip: columns index, x_1..x_d, y, adversary, preceded by a
/// one-line '#' comment carrying seed and model parameters.
void write_observations_csv(const Observations& obs, std::ostream& out);
Observations read_observations_csv(std::istream& in);

} // namespace robnp
