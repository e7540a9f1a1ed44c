#include <doctest.h>

#include <random>

#include "packedness/exact.hpp"
#include "packedness/oracle.hpp"
#include "packedness/sweep.hpp"

using namespace packedness;

namespace {

PolyCurve random_curve(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> u(0, 32);
    std::vector<Point> v;
    while (static_cast<int>(v.size()) < n) {
        const Point p{static_cast<double>(u(rng)), static_cast<double>(u(rng))};
        if (!v.empty() && v.back() == p) continue;
        v.push_back(p);
    }
    return PolyCurve(v);
}

// Dense arc-length sampling of centers along every edge.
double dense_center_oracle(const PolyCurve& c, double r, int samples) {
    double best = 0;
    for (const auto& e : c.edges()) {
        for (int i = 0; i <= samples; ++i) best = std::max(best, oracle::gamma({e.at(static_cast<double>(i) / samples), r}, c));
    }
    return best;
}

}  // namespace

TEST_CASE("radius_ladder: closed-form examples") {
    const auto a = radius_ladder({8.0, 1.0}, 1.0);
    REQUIRE(a.radii.size() == 4);
    CHECK(a.radii[0] == 1.0);
    CHECK(a.radii[1] == 2.0);
    CHECK(a.radii[2] == 4.0);
    CHECK(a.radii[3] == 8.0);
    CHECK(radius_ladder({3.0, 3.0}, 0.5).radii.size() == 1);
    const auto c = radius_ladder({10.0, 1.0}, 0.1);
    CHECK(c.radii.size() == 26);
    CHECK(c.radii.front() <= 1.1);
    CHECK(c.radii.back() >= 10.0);
    for (std::size_t i = 1; i < c.radii.size(); ++i) CHECK(c.radii[i] > c.radii[i - 1]);
    CHECK_THROWS_AS(radius_ladder({10.0, std::nullopt}, 0.1), PreconditionError);
    CHECK_THROWS_AS(radius_ladder({10.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("sweep_fixed_radius: single edge and X") {
    const auto e = sweep_fixed_radius(PolyCurve({{0, 0}, {10, 0}}), 1.0);
    CHECK(e.gamma_max == doctest::Approx(2.0));
    CHECK(e.center.x >= 1.0 - 1e-9);
    CHECK(e.center.x <= 9.0 + 1e-9);
    const auto x = PolyCurve::from_parts({{{-2, 0}, {2, 0}}, {{0, -2}, {0, 2}}});
    CHECK(sweep_fixed_radius(x, 0.5).gamma_max == doctest::Approx(4.0));
}

TEST_CASE("sweep_fixed_radius: matches dense center sampling and direction reversal") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> ur(0.5, 12);
    for (int trial = 0; trial < 8; ++trial) {
        const auto c = random_curve(rng, 3 + trial % 6);
        const double r = ur(rng);
        const auto res = sweep_fixed_radius(c, r);
        const double dense = dense_center_oracle(c, r, 100000 / static_cast<int>(c.num_edges()));
        CHECK(res.gamma_max >= dense - 1e-9);
        CHECK(res.gamma_max - dense <= 1e-4);
        CHECK(oracle::gamma({res.center, r}, c) == doctest::Approx(res.gamma_max).epsilon(1e-12));
        std::vector<Point> rev(c.vertices().begin(), c.vertices().end());
        std::reverse(rev.begin(), rev.end());
        CHECK(sweep_fixed_radius(PolyCurve(rev), r).gamma_max == doctest::Approx(res.gamma_max).epsilon(1e-9));
    }
}

TEST_CASE("sweep_fixed_radius: continuous in r") {
    std::mt19937_64 rng(97);
    const auto c = random_curve(rng, 7);
    for (double r : {1.0, 3.0, 7.5}) {
        const double a = sweep_fixed_radius(c, r).gamma_max;
        const double b = sweep_fixed_radius(c, r * (1 + 1e-6)).gamma_max;
        CHECK(std::abs(a - b) < 1e-3);
    }
}

TEST_CASE("min_c_sweep: single edge uses the fallback ladder") {
    const PolyCurve c({{0, 0}, {10, 0}});
    CHECK_THROWS_AS(min_c_sweep(c, 0.1), PreconditionError);
    const auto rep = min_c_sweep(c, 0.1, {true});
    CHECK(rep.c_estimate == doctest::Approx(2.0));
    CHECK(rep.certified_hi == doctest::Approx(4.4));
    CHECK(rep.certified().contains(2.0, 1e-9));
}

TEST_CASE("min_c_sweep: exact value within [c, 2(1 + eps) c]") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_curve(rng, 4 + trial % 6);
        const double exact = min_c_exact(c).c_estimate;
        for (double eps : {0.1, 1.0}) {
            const auto rep = min_c_sweep(c, eps, {true});
            CHECK(rep.c_estimate <= exact + 1e-9);
            CHECK(exact <= 2 * (1 + eps) * rep.c_estimate + 1e-9);
        }
    }
}
