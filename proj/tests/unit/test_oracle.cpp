#include <doctest.h>

#include <random>

#include "packedness/oracle.hpp"

using namespace packedness;

namespace {

PolyCurve crossing_x() { return PolyCurve::from_parts({{{-2, 0}, {2, 0}}, {{0, -2}, {0, 2}}}); }

PolyCurve random_curve(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0, 8);
    std::vector<Point> v(static_cast<std::size_t>(n));
    for (auto& p : v) p = {u(rng), u(rng)};
    return PolyCurve(v);
}

}  // namespace

TEST_CASE("gamma: disk centered on an edge") {
    const PolyCurve c({{0, 0}, {10, 0}});
    CHECK(oracle::gamma({{5, 0}, 1}, c) == doctest::Approx(2.0));
    CHECK(oracle::gamma({{50, 50}, 1}, c) == 0.0);
    CHECK_THROWS_AS(oracle::gamma({{5, 0}, 0}, c), std::invalid_argument);
}

TEST_CASE("gamma: rigid motion invariance") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_curve(rng, 7);
        const Disk d{{u(rng), u(rng)}, 0.5 + u(rng)};
        const double angle = u(rng);
        const Point shift{u(rng) - 4, u(rng) - 4};
        const auto moved = transformed(c, 1.0, angle, shift);
        const Point rc{std::cos(angle) * d.center.x - std::sin(angle) * d.center.y + shift.x,
                       std::sin(angle) * d.center.x + std::cos(angle) * d.center.y + shift.y};
        CHECK(std::abs(oracle::gamma({rc, d.radius}, moved) - oracle::gamma(d, c)) < 1e-9);
    }
}

TEST_CASE("limit_candidates") {
    const auto lc = oracle::limit_candidates(crossing_x());
    double best = 0;
    for (const auto& c : lc) best = std::max(best, c.value);
    CHECK(best == 4.0);
    const auto path = oracle::limit_candidates(PolyCurve({{0, 0}, {1, 0}, {1, 1}}));
    REQUIRE(path.size() == 3);
    CHECK(path[0].value + path[1].value + path[2].value == 4.0);
}

TEST_CASE("brute_min_c: rejects low resolution") {
    CHECK_THROWS_AS(oracle::brute_min_c(crossing_x(), {7, 64, true}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::brute_min_c(crossing_x(), {64, 4, true}), std::invalid_argument);
}

TEST_CASE("brute_min_c: single edge") {
    const auto r = oracle::brute_min_c(PolyCurve({{0, 0}, {10, 0}}), {32, 32, true});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("brute_min_c: X plateaus at 4") {
    for (int g : {50, 100, 200, 400}) {
        const auto r = oracle::brute_min_c(crossing_x(), {g, 200, true});
        CHECK(r.value == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("brute_min_c: monotone under nested refinement") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_curve(rng, 6);
        double prev = 0;
        for (int k : {8, 16, 32, 64}) {
            const auto r = oracle::brute_min_c(c, {k, k, true});
            CHECK(r.value >= prev - 1e-12);
            prev = r.value;
        }
        double prev_r = 0;
        for (int m : {9, 17, 33}) {
            const auto r = oracle::brute_min_c(c, {32, m, true});
            CHECK(r.value >= prev_r - 1e-12);
            prev_r = r.value;
        }
    }
}

TEST_CASE("brute_min_c: at least 2 and at least every limit value; witness reproduces the value") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_curve(rng, 6);
        const auto r = oracle::brute_min_c(c, {32, 32, true});
        CHECK(r.value >= 2.0 - 1e-12);
        for (const auto& lc : oracle::limit_candidates(c)) CHECK(r.value >= lc.value);
        if (r.witness.radius > 0) CHECK(oracle::gamma(r.witness, c) == doctest::Approx(r.value).epsilon(1e-12));
    }
}
