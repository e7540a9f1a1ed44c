#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "packedness/curve.hpp"

using namespace packedness;

namespace {

PolyCurve from_csv(const std::string& text) {
    std::istringstream in(text);
    return load_curve(in, CurveFormat::csv);
}

PolyCurve from_json(const std::string& text) {
    std::istringstream in(text);
    return load_curve(in, CurveFormat::json);
}

// Independent all-pairs reference: vertex/vertex, vertex/edge over disjoint edge pairs.
std::optional<double> reference_delta(const PolyCurve& c) {
    std::optional<double> best;
    const auto edges = c.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (c.adjacent(i, j)) continue;
            Point tmp;
            if (segment_intersection(edges[i], edges[j], tmp)) continue;
            const double d = std::min({point_segment_distance(edges[i].a, edges[j]), point_segment_distance(edges[i].b, edges[j]),
                                       point_segment_distance(edges[j].a, edges[i]), point_segment_distance(edges[j].b, edges[i])});
            if (!best || d < *best) best = d;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("load_curve: csv two vertices") {
    const auto c = from_csv("0,0\n1,0\n");
    CHECK(c.num_vertices() == 2);
    CHECK(c.num_edges() == 1);
    CHECK(c.length() == 1.0);
}

TEST_CASE("load_curve: comments and whitespace") {
    const auto c = from_csv("# header\n0, 0\n  1,0  # trailing\n2,1\n");
    CHECK(c.num_vertices() == 3);
    CHECK(c.vertices()[2] == Point{2, 1});
}

TEST_CASE("load_curve: duplicate consecutive vertex reports its line") {
    try {
        from_csv("0,0\n1,0\n1,0\n");
        FAIL("expected CurveError");
    } catch (const CurveError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(from_csv("1,0\n1,0\n"), CurveError);
}

TEST_CASE("load_curve: malformed rows") {
    try {
        from_csv("0,0\n1;0\n");
        FAIL("expected CurveError");
    } catch (const CurveError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(from_csv("0,0\n"), CurveError);
    CHECK_THROWS_AS(from_csv("0,0\nnan,1\n"), CurveError);
    CHECK_THROWS_AS(from_csv("0,0\n1,2,3\n"), CurveError);
}

TEST_CASE("load_curve: json 3-4-5") {
    const auto c = from_json(R"({"vertices":[[0,0],[3,4]]})");
    CHECK(c.num_edges() == 1);
    CHECK(c.edges()[0].length() == doctest::Approx(5.0));
    CHECK_FALSE(c.closed());
}

TEST_CASE("load_curve: json closed and parts") {
    const auto sq = from_json(R"({"vertices":[[0,0],[1,0],[1,1],[0,1]],"closed":true})");
    CHECK(sq.num_edges() == 4);
    CHECK(sq.length() == doctest::Approx(4.0));
    const auto x = from_json(R"({"parts":[[[-2,0],[2,0]],[[0,-2],[0,2]]]})");
    CHECK(x.num_parts() == 2);
    CHECK(x.num_edges() == 2);
    CHECK_THROWS_AS(from_json(R"({"vertices":[[0,0],[1,0]],"closed":"yes"})"), CurveError);
    CHECK_THROWS_AS(from_json(R"({"vertices":[[0,0]]})"), CurveError);
    CHECK_THROWS_AS(from_json("{not json"), CurveError);
}

TEST_CASE("load_curve: csv blank line separates parts") {
    const auto x = from_csv("-2,0\n2,0\n\n0,-2\n0,2\n");
    CHECK(x.num_parts() == 2);
    CHECK(x.num_edges() == 2);
    CHECK_FALSE(x.adjacent(0, 1));
}

TEST_CASE("write_csv round trip") {
    const auto x = PolyCurve::from_parts({{{-2, 0}, {2, 0.1}, {3, 1}}, {{0.3, -2}, {0, 2}}});
    std::ostringstream out;
    write_csv(out, x);
    const auto back = from_csv(out.str());
    CHECK(back.parts() == x.parts());
}

TEST_CASE("write_csv of a closed curve repeats the first vertex") {
    const PolyCurve tri({{0, 0}, {1, 0}, {0, 1}}, true);
    std::ostringstream out;
    write_csv(out, tri);
    const auto back = from_csv(out.str());
    CHECK(back.num_edges() == 3);
    CHECK(back.length() == doctest::Approx(tri.length()));
}

TEST_CASE("load_points: CSV and JSON") {
    std::istringstream csv("# anchors\n1,2\n\n3.5,-4\n");
    const auto a = load_points(csv, CurveFormat::csv);
    REQUIRE(a.size() == 2);
    CHECK(a[1] == Point{3.5, -4});
    std::istringstream js(R"({"points": [[0,0],[1,1],[1,1]]})");
    CHECK(load_points(js, CurveFormat::json).size() == 3);
    std::istringstream bare("[[2,3]]");
    CHECK(load_points(bare, CurveFormat::json).size() == 1);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(load_points(empty, CurveFormat::csv), CurveError);
    std::istringstream bad("1;2\n");
    CHECK_THROWS_AS(load_points(bad, CurveFormat::csv), CurveError);
}

TEST_CASE("extent: single edge") {
    const auto e = extent(PolyCurve({{0, 0}, {3, 4}}));
    CHECK(e.diameter == doctest::Approx(5.0));
    CHECK_FALSE(e.min_separation.has_value());
}

TEST_CASE("extent: U shape") {
    const auto e = extent(PolyCurve({{0, 0}, {4, 0}, {4, 3}, {0, 3}}));
    CHECK(e.diameter == doctest::Approx(5.0));
    REQUIRE(e.min_separation.has_value());
    CHECK(*e.min_separation == doctest::Approx(3.0));
}

TEST_CASE("extent: square spiral") {
    const PolyCurve c({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 1}, {9, 1}});
    const auto e = extent(c);
    CHECK(e.diameter == doctest::Approx(10 * std::sqrt(2.0)));
    REQUIRE(e.min_separation.has_value());
    CHECK(*e.min_separation == doctest::Approx(1.0));
    CHECK(*e.min_separation == doctest::Approx(*reference_delta(c)));
}

TEST_CASE("extent: crossing pairs are excluded") {
    const auto x = PolyCurve::from_parts({{{-2, 0}, {2, 0}}, {{0, -2}, {0, 2}}});
    CHECK_FALSE(extent(x).min_separation.has_value());
}

TEST_CASE("extent: delta <= L and matches the all-pairs reference on random curves") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 10);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point> v(8);
        for (auto& p : v) p = {u(rng), u(rng)};
        const PolyCurve c(v);
        const auto e = extent(c);
        const auto ref = reference_delta(c);
        CHECK(e.min_separation.has_value() == ref.has_value());
        if (ref) {
            CHECK(*e.min_separation == doctest::Approx(*ref).epsilon(1e-12));
            CHECK(*e.min_separation <= e.diameter);
        }
    }
}

TEST_CASE("extent: scales linearly") {
    const PolyCurve c({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 1}, {9, 1}});
    const auto s = transformed(c, 3.5, 0.7, {4, -2});
    const auto e0 = extent(c), e1 = extent(s);
    CHECK(e1.diameter == doctest::Approx(3.5 * e0.diameter));
    CHECK(*e1.min_separation == doctest::Approx(3.5 * *e0.min_separation));
}

TEST_CASE("self_intersections: X") {
    const auto x = PolyCurve::from_parts({{{-2, 0}, {2, 0}}, {{0, -2}, {0, 2}}});
    const auto inc = self_intersections(x);
    CHECK(inc.size() == 5);
    int fours = 0, ones = 0;
    for (const auto& i : inc) {
        if (i.half_edges == 4) {
            ++fours;
            CHECK(i.point.x == doctest::Approx(0.0));
            CHECK(i.point.y == doctest::Approx(0.0));
        }
        if (i.half_edges == 1) ++ones;
    }
    CHECK(fours == 1);
    CHECK(ones == 4);
}

TEST_CASE("self_intersections: L") {
    const auto inc = self_intersections(PolyCurve({{0, 0}, {2, 0}, {2, 2}}));
    REQUIRE(inc.size() == 3);
    for (const auto& i : inc) CHECK(i.half_edges == (i.point == Point{2, 0} ? 2 : 1));
}

TEST_CASE("self_intersections: star polyline against pairwise oracle") {
    std::vector<Point> star;
    for (int k = 0; k < 6; ++k) {
        const double a = std::numbers::pi / 2 + k * 4 * std::numbers::pi / 5;
        star.push_back({std::cos(a), std::sin(a)});
    }
    // Six points closes the pentagram except for the final repeated vertex, which is dropped.
    star.pop_back();
    const PolyCurve c(star);
    const auto edges = c.edges();
    int expected_crossings = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            Point p;
            if (!c.adjacent(i, j) && segment_intersection(edges[i], edges[j], p)) ++expected_crossings;
        }
    }
    CHECK(expected_crossings == 3);
    const auto inc = self_intersections(c);
    int crossings = 0, total = 0;
    for (const auto& i : inc) {
        total += i.half_edges;
        if (i.half_edges == 4) ++crossings;
    }
    CHECK(crossings == expected_crossings);
    CHECK(inc.size() == c.num_vertices() + expected_crossings);
    CHECK(total == 2 * static_cast<int>(c.num_edges()) + 4 * expected_crossings);
}

TEST_CASE("PolyCurve validation") {
    CHECK_THROWS_AS(PolyCurve({{0, 0}}), CurveError);
    CHECK_THROWS_AS(PolyCurve({{0, 0}, {0, 0}}), CurveError);
    CHECK_THROWS_AS(PolyCurve({{0, 0}, {1, 0}}, true), CurveError);
    CHECK_THROWS_AS(PolyCurve({{0, 0}, {INFINITY, 0}}), CurveError);
    const PolyCurve tri({{0, 0}, {1, 0}, {0, 1}}, true);
    CHECK(tri.num_edges() == 3);
    CHECK(tri.degree(0) == 2);
    CHECK(tri.adjacent(0, 2));
}
