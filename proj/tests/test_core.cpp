#include <doctest.h>

#include "robnp/grid.hpp"
#include "robnp/median.hpp"
#include "robnp/rng.hpp"
#include "robnp/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace robnp;

TEST_SUITE_BEGIN("core");

TEST_CASE("make_grid enumerates i/p points in row-major order") {
    const GridSpec g1 = make_grid(2, 1);
    CHECK(g1.n == 2);
    CHECK(g1.point(0)[0] == doctest::Approx(0.5));
    CHECK(g1.point(1)[0] == doctest::Approx(1.0));

    const GridSpec g2 = make_grid(2, 2);
    CHECK(g2.n == 4);
    CHECK(g2.point(0) == std::vector<double>{0.5, 0.5});
    CHECK(g2.point(1) == std::vector<double>{0.5, 1.0});
    CHECK(g2.point(2) == std::vector<double>{1.0, 0.5});
    CHECK(g2.point(3) == std::vector<double>{1.0, 1.0});

    const GridSpec g3 = make_grid(100, 1);
    CHECK(g3.n == 100);
    CHECK(g3.point(0)[0] == doctest::Approx(0.01));
    CHECK(g3.point(99)[0] == doctest::Approx(1.0));
}

TEST_CASE("make_grid rejects bad sizes and overflow") {
    CHECK_THROWS_AS(make_grid(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1 << 20, 4), std::overflow_error);
}

TEST_CASE("make_grid emits p^d distinct points, coordinates multiples of 1/p") {
    const GridSpec g = make_grid(7, 2);
    std::set<std::vector<double>> seen;
    for (std::int64_t r = 0; r < g.n; ++r) {
        const auto x = g.point(r);
        for (double c : x) {
            CHECK(c > 0.0);
            CHECK(c <= 1.0);
            CHECK(std::abs(c * 7.0 - std::round(c * 7.0)) < 1e-12);
        }
        seen.insert(x);
    }
    CHECK(seen.size() == 49);
}

TEST_CASE("median is the lower order statistic") {
    CHECK(median(std::vector<double>{3.0}) == 3.0);
    CHECK(median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == 2.0);
    CHECK_THROWS_AS(median(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("median matches the sort-then-index oracle") {
    Rng rng(101);
    for (int t = 0; t < 1000; ++t) {
        const std::int64_t len = rng.uniform_int(1, t < 900 ? 200 : 10000);
        std::vector<double> v(static_cast<std::size_t>(len));
        for (auto& x : v) x = rng.normal(0.0, 50.0);
        std::vector<double> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        CHECK(median(v) == sorted[(sorted.size() - 1) / 2]);
    }
}

TEST_CASE("median is permutation invariant and translation equivariant") {
    Rng rng(102);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t len = rng.uniform_int(1, 50);
        std::vector<double> v(static_cast<std::size_t>(len));
        for (auto& x : v) x = rng.normal(0.0, 1.0);
        const double m = median(v);

        std::vector<double> shuffled = v;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1],
                      shuffled[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
        CHECK(median(shuffled) == m);

        const double c = rng.normal(0.0, 10.0);
        std::vector<double> shifted = v;
        for (auto& x : shifted) x += c;
        CHECK(median(shifted) == m + c);
    }
}

TEST_CASE("median handles infinite sentinels") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(median(std::vector<double>{1.0, 2.0, inf}) == 2.0);
    CHECK(median(std::vector<double>{-inf, 1.0, 2.0}) == 1.0);
}

TEST_CASE("smoothness specs validate their parameters") {
    CHECK_THROWS_AS(HolderSpec(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HolderSpec(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SobolevSpec(0, 2, 1.0), std::invalid_argument);
    CHECK(SobolevSpec(2, 2, 1.0).embeds_for_lpr(2));       // (2-1)/2 = 1/2 >= 1/2
    CHECK_FALSE(SobolevSpec(2, 1, 1.0).embeds_for_lpr(3)); // 1/3 < 1
}

TEST_CASE("ramp evaluates L(rho - x)^beta below the knee and 0 above") {
    const TestFunction f = TestFunction::ramp(0.2, 0.5, 10.0);
    CHECK(f(0.0) == doctest::Approx(10.0 * std::sqrt(0.2)));
    CHECK(f(0.2) == doctest::Approx(0.0));
    CHECK(f(0.5) == 0.0);
    CHECK(f(1.0) == 0.0);
}

TEST_CASE("polynomial evaluation uses ascending coefficients") {
    const TestFunction f = TestFunction::polynomial({1.0, -2.0, 3.0}); // 1 - 2x + 3x^2
    CHECK(f(0.0) == doctest::Approx(1.0));
    CHECK(f(0.5) == doctest::Approx(1.0 - 1.0 + 0.75));
    CHECK(f(1.0) == doctest::Approx(2.0));
}

TEST_CASE("peak2d is a bounded 2D surface") {
    const TestFunction f = TestFunction::peak2d(1.0);
    CHECK(f.dim() == 2);
    const std::vector<double> c{0.5, 0.5};
    CHECK(std::isfinite(f(c)));
    std::vector<double> corner{0.0, 0.0};
    CHECK(std::abs(f(corner)) < 1.0); // peaks decays at the domain edge
    CHECK_THROWS_AS(f(0.5), std::invalid_argument);
}

TEST_CASE("holder seminorm estimate certifies the fixtures") {
    const HolderSpec half(0.5, 10.0);
    CHECK(holder_seminorm_estimate(TestFunction::constant(5.0, 1), half, 1000, 7) == 0.0);

    // The ramp construction targets seminorm exactly L.
    const double ramp_norm =
        holder_seminorm_estimate(TestFunction::ramp(0.2, 0.5, 10.0), half, 10000, 7);
    CHECK(ramp_norm <= 10.0 + 1e-9);
    CHECK(ramp_norm > 5.0);

    const HolderSpec lip(1.0, 1.0);
    const double id_norm =
        holder_seminorm_estimate(TestFunction::polynomial({0.0, 1.0}), lip, 10000, 7);
    CHECK(id_norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_SUITE_END();
