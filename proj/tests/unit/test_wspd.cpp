#include <doctest.h>

#include <map>
#include <random>

#include "packedness/relative.hpp"
#include "packedness/wspd.hpp"

using namespace packedness;

namespace {

std::vector<Point> random_points(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 100);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

// Every unordered pair of indices must be covered exactly once.
void check_coverage(std::span<const Point> pts, const std::vector<WspdPair>& pairs) {
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    for (const auto& wp : pairs) {
        for (const auto a : wp.A) {
            CHECK(std::find(wp.B.begin(), wp.B.end(), a) == wp.B.end());
            for (const auto b : wp.B) ++seen[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(seen[{i, j}] == 1);
    }
    CHECK(seen.size() == pts.size() * (pts.size() - 1) / 2);
}

}  // namespace

TEST_CASE("two points give one pair") {
    const std::vector<Point> pts{{0, 0}, {3, 4}};
    const auto pairs = build_wspd(pts, 2.0);
    REQUIRE(pairs.size() == 1);
    const auto disks = candidate_disks(pairs, pts);
    REQUIRE(disks.size() == 2);
    CHECK(disks[0].radius == doctest::Approx(5.0));
    CHECK(disks[1].radius == doctest::Approx(5.0));
}

TEST_CASE("8x8 grid, s = 2: exact pair coverage") {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
    }
    check_coverage(pts, build_wspd(pts, 2.0));
}

TEST_CASE("random points: coverage and separation") {
    for (double s : {1.0, 4.0, 16.0}) {
        const auto pts = random_points(3, 64);
        const auto pairs = build_wspd(pts, s);
        check_coverage(pts, pairs);
        for (const auto& wp : pairs) {
            CHECK(std::find(wp.A.begin(), wp.A.end(), wp.rep_a) != wp.A.end());
            CHECK(wp.rep_a == *std::min_element(wp.A.begin(), wp.A.end()));
            CHECK(wp.rep_b == *std::min_element(wp.B.begin(), wp.B.end()));
            // Any two points across the pair are farther apart than s * rho.
            for (const auto a : wp.A) {
                for (const auto b : wp.B) CHECK(distance(pts[a], pts[b]) >= s * wp.rho - 1e-9);
            }
        }
    }
}

TEST_CASE("pair count scales like s^2 n") {
    const auto pts = random_points(5, 500);
    const auto p16 = build_wspd(pts, 16.0);
    const double ratio = static_cast<double>(p16.size()) / (16.0 * 16.0 * 500.0);
    MESSAGE("pairs / (s^2 n) = " << ratio);
    CHECK(ratio < 2.0);
    const auto p8 = build_wspd(pts, 8.0);
    const auto p4 = build_wspd(pts, 4.0);
    CHECK(p4.size() < p8.size());
    CHECK(p8.size() < p16.size());
}

TEST_CASE("halving epsilon roughly quadruples the candidate count") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 100);
    std::vector<Point> v(2000);
    for (auto& p : v) p = {u(rng), u(rng)};
    const PolyCurve c(v);
    const double a = static_cast<double>(build_wspd(c.vertices(), 8.0 / 2.0).size());
    const double b = static_cast<double>(build_wspd(c.vertices(), 8.0 / 1.0).size());
    MESSAGE("count ratio for halved epsilon: " << b / a);
    CHECK(b / a > 2.0);
    CHECK(b / a <= 4.5);
}

TEST_CASE("candidate disks contain their pair and are counted twice per pair") {
    const auto pts = random_points(7, 100);
    const auto pairs = build_wspd(pts, 4.0);
    const auto disks = candidate_disks(pairs, pts);
    CHECK(disks.size() == 2 * pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        for (const auto& d : {disks[2 * k], disks[2 * k + 1]}) {
            for (const auto i : pairs[k].A) CHECK(d.contains(pts[i], 1e-9));
            for (const auto i : pairs[k].B) CHECK(d.contains(pts[i], 1e-9));
        }
        CHECK(disks[2 * k].center == pts[pairs[k].rep_a]);
        CHECK(disks[2 * k + 1].center == pts[pairs[k].rep_b]);
        // Each candidate covers every vertex-centered disk D(p, |pq|) with p on its side.
        const auto& wp = pairs[k];
        for (const auto a : wp.A) {
            for (const auto b : wp.B) CHECK(distance(disks[2 * k].center, pts[a]) + distance(pts[a], pts[b]) <= disks[2 * k].radius + 1e-9);
        }
    }
}

TEST_CASE("coincident points") {
    const std::vector<Point> pts{{1, 1}, {1, 1}, {1, 1}};
    CHECK(build_wspd(pts, 2.0).empty());
    CHECK_THROWS_AS(build_wspd(pts, 0.0), std::invalid_argument);
}

TEST_CASE("min_c_wspd: single edge") {
    const PolyCurve c({{0, 0}, {10, 0}});
    const auto rep = min_c_wspd(c, 0.5);
    CHECK(rep.c_estimate >= 0.8);
    CHECK(rep.c_estimate <= 1.0 + 1e-12);
    CHECK(rep.certified().contains(2.0));
    CHECK_THROWS_AS(min_c_wspd(c, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_c_wspd(c, 2.5), std::invalid_argument);
}

TEST_CASE("min_c_wspd: below the vertex-relative value and within (2 + eps)") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> u(0, 32);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point> v;
        while (v.size() < 8) {
            const Point p{static_cast<double>(u(rng)), static_cast<double>(u(rng))};
            if (!v.empty() && v.back() == p) continue;
            v.push_back(p);
        }
        const PolyCurve c(v);
        const double w = min_c_wspd(c, 0.5).c_estimate;
        const double vr = vertex_relative(c).c_estimate;
        CHECK(w <= vr + 1e-9);
        CHECK(vr <= 2.5 * w + 1e-9);
    }
}
