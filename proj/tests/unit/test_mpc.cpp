#include <doctest.h>

#include <algorithm>
#include <random>

#include "packedness/generate.hpp"
#include "packedness/mpc.hpp"
#include "packedness/relative.hpp"

using namespace packedness;

namespace {

MpcConfig config(std::size_t n, double eta, double c_mem = 4.0) {
    MpcConfig c;
    c.n = n;
    c.eta = eta;
    c.c_mem = c_mem;
    return c;
}

}  // namespace

TEST_CASE("config derived sizes") {
    const auto c = config(1000, 0.5);
    CHECK(c.machine_memory() == 32);
    CHECK(c.machine_count() == 33);
    CHECK(c.machine_memory() * c.machine_count() >= c.n);
    CHECK(c.round_bound() == 8);
    CHECK(config(1000, 1.0).machine_memory() == 1000);
    CHECK(config(1000, 1.0).machine_count() == 2);
    CHECK(config(512, 1.0 / 3).round_bound() == 12);
    for (double eta : {0.2, 0.25, 0.3, 0.5, 0.7, 1.0}) {
        for (std::size_t n : {10u, 64u, 999u, 4096u}) {
            const auto k = config(n, eta);
            CHECK(k.machine_memory() * k.machine_count() >= n);
        }
    }
    CHECK_THROWS_AS(config(10, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(10, 1.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(0, 0.5).validate(), std::invalid_argument);
}

TEST_CASE("dist_sort: already sorted input is unchanged") {
    MpcSim sim(config(100, 0.5));
    std::vector<int> v(100);
    for (int i = 0; i < 100; ++i) v[i] = i;
    auto d = distribute(sim, v);
    dist_sort(sim, d, std::less<int>());
    CHECK(gather(d) == v);
}

TEST_CASE("dist_sort: reverse-sorted 1000 items at eta 1/2") {
    MpcSim sim(config(1000, 0.5));
    std::vector<int> v(1000);
    for (int i = 0; i < 1000; ++i) v[i] = 999 - i;
    auto d = distribute(sim, v);
    dist_sort(sim, d, std::less<int>());
    const auto out = gather(d);
    CHECK(std::is_sorted(out.begin(), out.end()));
    CHECK(out.size() == 1000);
    CHECK(sim.log().peak_memory <= 32 * 4);
    for (const auto& m : d) CHECK(m.size() <= sim.memory());
    CHECK(sim.log().rounds == 3);
    CHECK(sim.log().messages > 0);
}

TEST_CASE("dist_sort: a single machine takes one round") {
    MpcSim sim(config(500, 1.0));
    std::mt19937_64 rng(3);
    std::vector<double> v(500);
    for (auto& x : v) x = std::uniform_real_distribution<double>(0, 1)(rng);
    auto d = distribute(sim, v);
    REQUIRE(d.size() == 1);
    dist_sort(sim, d, std::less<double>());
    CHECK(std::is_sorted(d[0].begin(), d[0].end()));
    CHECK(sim.log().rounds == 1);
}

TEST_CASE("memory cap violation faults with the offending round") {
    MpcSim sim(config(100, 0.5, 1.0));
    std::vector<std::size_t> ok(5, 10), bad(5, 10);
    sim.round("a", ok, 0);
    bad[3] = 11;
    try {
        sim.round("b", bad, 0);
        FAIL("expected a fault");
    } catch (const MpcMemoryFault& f) {
        CHECK(f.round() == 2);
        CHECK(f.machine() == 3);
    }
}

TEST_CASE("parallel_prefix: all ones give 1..n") {
    for (double eta : {1.0, 0.5, 0.25}) {
        MpcSim sim(config(1000, eta));
        auto d = distribute(sim, std::vector<long>(1000, 1));
        const auto pre = gather(parallel_prefix(sim, d, std::plus<long>()));
        for (std::size_t i = 0; i < pre.size(); ++i) CHECK(pre[i] == static_cast<long>(i + 1));
        CHECK(sim.log().rounds == 2 * sim.tree_depth(d.size()));
        CHECK(sim.log().rounds <= 2 * static_cast<std::uint64_t>(std::ceil(1 / eta)));
    }
}

TEST_CASE("semigroup_max equals the sequential maximum") {
    std::mt19937_64 rng(9);
    std::vector<double> v(5000);
    for (auto& x : v) x = std::normal_distribution<double>(0, 10)(rng);
    for (double eta : {1.0, 0.5, 1.0 / 3, 0.25}) {
        MpcSim sim(config(v.size(), eta));
        const auto d = distribute(sim, v);
        CHECK(semigroup_max(sim, d) == *std::max_element(v.begin(), v.end()));
        CHECK(sim.log().rounds == sim.tree_depth(d.size()));
    }
}

TEST_CASE("prefix of completed-edge increments reproduces the running inside length") {
    // One anchor: each edge adds its full length once its last event radius passes.
    const auto c = gen_walk(120, 13);
    const Point anchor = c.vertices()[40];
    std::vector<std::pair<double, double>> inc;  // (radius, length increment)
    for (const auto& e : c.edges()) {
        const auto f = detail::anchor_frame(anchor, e);
        inc.push_back({std::max({f.dseg, f.da, f.db}), f.len});
    }
    std::sort(inc.begin(), inc.end());
    MpcSim sim(config(inc.size(), 0.5));
    std::vector<double> lens;
    for (const auto& [r, l] : inc) lens.push_back(l);
    const auto pre = gather(parallel_prefix(sim, distribute(sim, lens), std::plus<double>()));
    for (std::size_t i = 0; i < inc.size(); ++i) {
        if (i + 1 < inc.size() && inc[i + 1].first == inc[i].first) continue;
        const double r = inc[i].first;
        double inside = 0;
        for (const auto& e : c.edges()) {
            const auto f = detail::anchor_frame(anchor, e);
            if (std::max(f.da, f.db) <= r) inside += f.len;
        }
        CHECK(pre[i] == doctest::Approx(inside).epsilon(1e-12));
    }
}

TEST_CASE("mpc vertex-relative equals the event-only sequential value") {
    struct Case {
        PolyCurve curve;
        std::vector<double> etas;
    };
    const std::vector<Case> cases{{gen_walk(64, 1), {1.0, 0.5, 1.0 / 3, 0.25}},
                                  {gen_integer(40, 2), {1.0, 0.5, 0.25}},
                                  {gen_spiral(50), {0.5, 1.0 / 3}},
                                  {gen_star(9), {1.0, 0.5}},
                                  {gen_grid(36), {0.5, 0.25}}};
    for (const auto& cs : cases) {
        const double seq = vertex_relative(cs.curve, {false, 1}).c_estimate;
        for (const double eta : cs.etas) {
            const auto r = mpc_vertex_relative(cs.curve, eta);
            CHECK(r.report.c_estimate == doctest::Approx(seq).epsilon(1e-9));
            CHECK(r.log.rounds <= r.config.round_bound());
            CHECK(r.log.peak_memory <= r.config.memory_cap());
            for (const auto p : r.log.round_peak) CHECK(p <= r.config.memory_cap());
            CHECK(r.log.labels.size() == r.log.rounds);
            // The witness reproduces the value by direct clipping.
            double len = 0;
            for (const auto& e : cs.curve.edges()) len += clip_length(e, r.report.witness);
            CHECK(len / r.report.witness.radius == doctest::Approx(r.report.c_estimate).epsilon(1e-9));
        }
    }
}

TEST_CASE("n=512, eta=1/3: equals sequential within 12 rounds") {
    const auto c = gen_walk(512, 21);
    const auto r = mpc_vertex_relative(c, 1.0 / 3);
    CHECK(r.report.c_estimate == doctest::Approx(vertex_relative(c, {false, 1}).c_estimate).epsilon(1e-9));
    CHECK(r.log.rounds <= 12);
}

TEST_CASE("deterministic; value independent of eta") {
    const auto c = gen_walk(80, 5);
    const auto a = mpc_vertex_relative(c, 0.5);
    const auto b = mpc_vertex_relative(c, 0.5);
    CHECK(to_json(a.log) == to_json(b.log));
    CHECK(a.report.c_estimate == b.report.c_estimate);
    const auto q = mpc_vertex_relative(c, 0.25);
    CHECK(q.report.c_estimate == doctest::Approx(a.report.c_estimate).epsilon(1e-12));
    CHECK(to_json(q.log) != to_json(a.log));
}

TEST_CASE("vertex-pair radii only never exceed the extended value") {
    const auto c = gen_integer(30, 8);
    const auto ext = mpc_vertex_relative(c, 0.5, 16.0, true);
    const auto pairs = mpc_vertex_relative(c, 0.5, 16.0, false);
    CHECK(pairs.report.c_estimate <= ext.report.c_estimate + 1e-12);
    CHECK(pairs.report.disks_evaluated <= ext.report.disks_evaluated);
}

TEST_CASE("preconditions") {
    const PolyCurve edge({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(mpc_vertex_relative(edge, 0.5), PreconditionError);
    CHECK_THROWS_AS(mpc_vertex_relative(gen_walk(10, 1), 0.0), std::invalid_argument);
    const auto small_cap = [] { return mpc_vertex_relative(gen_walk(200, 3), 0.25, 1.0); };
    CHECK_THROWS_AS(small_cap(), MpcMemoryFault);
}
