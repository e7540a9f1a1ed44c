#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness {

struct MpcConfig {
    double eta = 0.5;          ///< memory exponent in (0, 1]
    std::size_t n = 0;         ///< instance size (items distributed across machines)
    double c_mem = 16.0;       ///< memory cap = c_mem * machine_memory
    unsigned round_factor = 4; ///< K in the bound rounds <= K * ceil(1/eta)
    bool extended = true;      ///< also evaluate perpendicular-foot radii

    std::size_t machine_memory() const;  ///< ceil(n^eta)
    std::size_t machine_count() const;   ///< ceil(n^(1-eta)) + 1
    std::size_t memory_cap() const;      ///< ceil(c_mem * machine_memory)
    std::size_t round_bound() const;     ///< round_factor * ceil(1/eta)

    /// Throws std::invalid_argument for eta outside (0, 1], c_mem < 1 or n == 0.
    void validate() const;
};

struct RoundLog {
    std::uint64_t rounds = 0;
    std::size_t peak_memory = 0;
    std::uint64_t messages = 0;
    std::vector<std::string> labels;      ///< one per round
    std::vector<std::size_t> round_peak;  ///< max resident items per round
};

nlohmann::json to_json(const RoundLog& log);

class MpcMemoryFault : public std::runtime_error {
public:
    MpcMemoryFault(std::uint64_t round, std::size_t machine, std::size_t load, std::size_t cap);
    std::uint64_t round() const { return round_; }
    std::size_t machine() const { return machine_; }

private:
    std::uint64_t round_;
    std::size_t machine_;
};

/// Round and memory bookkeeping for a set of simulated machines.
class MpcSim {
public:
    explicit MpcSim(const MpcConfig& cfg);

    const MpcConfig& config() const { return cfg_; }
    const RoundLog& log() const { return log_; }
    std::size_t memory() const { return mem_; }
    std::size_t cap() const { return cap_; }
    std::size_t machines() const { return machines_; }

    /// Closes a round: loads[i] is the peak number of items resident on machine i.
    void round(const std::string& label, const std::vector<std::size_t>& loads, std::uint64_t messages);

    /// Depth of a fan-in tree with `memory()` children per node over `count` leaves.
    std::size_t tree_depth(std::size_t count) const;

private:
    MpcConfig cfg_;
    RoundLog log_;
    std::size_t mem_, cap_, machines_;
};

template <typename T>
using Distributed = std::vector<std::vector<T>>;

/// Block distribution of items over machines, machine_memory items each.
template <typename T>
Distributed<T> distribute(const MpcSim& sim, std::vector<T> items) {
    Distributed<T> out(std::max<std::size_t>(1, (items.size() + sim.memory() - 1) / sim.memory()));
    for (std::size_t i = 0; i < items.size(); ++i) out[i / sim.memory()].push_back(std::move(items[i]));
    return out;
}

template <typename T>
std::vector<T> gather(const Distributed<T>& d) {
    std::vector<T> out;
    for (const auto& m : d) out.insert(out.end(), m.begin(), m.end());
    return out;
}

template <typename T>
std::vector<std::size_t> loads_of(const Distributed<T>& d) {
    std::vector<std::size_t> l;
    for (const auto& m : d) l.push_back(m.size());
    return l;
}

/// Sample sort. A single machine sorts locally in one round; otherwise three
/// rounds are charged (samples, splitters, routing) and items land balanced,
/// machine_memory per machine, at their global ranks. extra, when set, gives
/// per-machine items that ride along in the routing round.
template <typename T, typename Less>
void dist_sort(MpcSim& sim, Distributed<T>& data, Less less,
               const std::function<std::vector<std::size_t>(const Distributed<T>&)>& extra = {}) {
    std::size_t total = 0;
    for (const auto& m : data) total += m.size();
    if (total > sim.machines() * sim.cap()) throw std::invalid_argument("dist_sort: items exceed total memory");
    if (data.size() <= 1) {
        if (!data.empty()) std::stable_sort(data[0].begin(), data[0].end(), less);
        auto loads = loads_of(data);
        if (extra) {
            const auto add = extra(data);
            for (std::size_t m = 0; m < loads.size() && m < add.size(); ++m) loads[m] += add[m];
        }
        sim.round("sort:local", loads, 0);
        return;
    }
    std::vector<T> all;
    all.reserve(total);
    for (std::size_t m = 0; m < data.size(); ++m) {
        std::stable_sort(data[m].begin(), data[m].end(), less);
        for (auto& x : data[m]) all.push_back(x);
    }
    const std::size_t p = data.size();
    // At most machine_memory regular samples reach machine 0.
    const std::size_t samples = std::min(p, sim.memory());
    std::vector<std::size_t> sample_loads = loads_of(data);
    sample_loads[0] += samples;
    sim.round("sort:samples", sample_loads, samples);
    std::vector<std::size_t> split_loads = loads_of(data);
    for (std::size_t m = 0; m < p; ++m) split_loads[m] += std::min(p - 1, sim.memory());
    sim.round("sort:splitters", split_loads, (p - 1) * std::min(p - 1, sim.memory()));

    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return less(all[a], all[b]); });
    Distributed<T> out(p);
    std::uint64_t moved = 0;
    std::vector<std::size_t> src_machine(all.size());
    {
        std::size_t i = 0;
        for (std::size_t m = 0; m < p; ++m) {
            for (std::size_t k = 0; k < data[m].size(); ++k) src_machine[i++] = m;
        }
    }
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t dest = std::min(p - 1, rank / sim.memory());
        if (src_machine[order[rank]] != dest) ++moved;
        out[dest].push_back(std::move(all[order[rank]]));
    }
    std::vector<std::size_t> route_loads(p);
    std::vector<std::size_t> add(p, 0);
    if (extra) add = extra(out);
    for (std::size_t m = 0; m < p; ++m) {
        route_loads[m] = std::max(data[m].size(), out[m].size() + add[m]);
        moved += add[m];
    }
    data = std::move(out);
    sim.round("sort:route", route_loads, moved);
}

/// Exclusive prefix over machines of per-machine summaries, by an up-sweep and
/// a down-sweep of a fan-in tree (2 rounds per level). size(s) is the number of
/// items a summary occupies; base[i] is machine i's resident load.
template <typename S, typename Compose, typename Size>
std::vector<S> tree_exclusive_scan(MpcSim& sim, const std::string& label, const std::vector<S>& leaves, const S& identity,
                                   Compose compose, Size size, const std::vector<std::size_t>& base) {
    const std::size_t p = leaves.size();
    std::vector<S> prefix(p, identity);
    if (p <= 1) return prefix;
    const std::size_t fan = std::max<std::size_t>(2, sim.memory());
    // levels[k][j]: aggregate of group j at level k (group size fan^k leaves).
    std::vector<std::vector<S>> levels{leaves};
    while (levels.back().size() > 1) {
        const auto& cur = levels.back();
        std::vector<S> next;
        std::vector<std::size_t> loads = base;
        std::uint64_t msgs = 0;
        const std::size_t group = [&] {
            std::size_t g = 1;
            for (std::size_t k = 0; k < levels.size(); ++k) g *= fan;
            return g;
        }();
        for (std::size_t j = 0; j < cur.size(); j += fan) {
            S agg = cur[j];
            std::size_t held = size(cur[j]);
            for (std::size_t c = j + 1; c < std::min(cur.size(), j + fan); ++c) {
                held += size(cur[c]);
                msgs += size(cur[c]);
                agg = compose(agg, cur[c]);
            }
            const std::size_t host = (j / fan) * group;
            loads[host] += held;
            next.push_back(std::move(agg));
        }
        sim.round(label + ":up", loads, msgs);
        levels.push_back(std::move(next));
    }
    // Down-sweep: each level hands every child the aggregate of everything to its left.
    std::vector<S> incoming{identity};
    for (std::size_t k = levels.size() - 1; k-- > 0;) {
        const auto& cur = levels[k];
        std::vector<S> child_prefix(cur.size(), identity);
        std::vector<std::size_t> loads = base;
        std::uint64_t msgs = 0;
        std::size_t span = 1;
        for (std::size_t t = 0; t < k; ++t) span *= fan;
        for (std::size_t j = 0; j < cur.size(); j += fan) {
            S run = incoming[j / fan];
            std::size_t held = 0;
            for (std::size_t c = j; c < std::min(cur.size(), j + fan); ++c) {
                child_prefix[c] = run;
                held += size(run);
                msgs += size(run);
                run = compose(run, cur[c]);
            }
            loads[(j / fan) * span * fan] += held;
            for (std::size_t c = j; c < std::min(cur.size(), j + fan); ++c) loads[c * span] += size(child_prefix[c]);
        }
        sim.round(label + ":down", loads, msgs);
        incoming = std::move(child_prefix);
    }
    return incoming;
}

/// Inclusive prefix of op over the distributed sequence.
template <typename T, typename Op>
Distributed<T> parallel_prefix(MpcSim& sim, const Distributed<T>& data, Op op) {
    std::vector<T> sums;
    std::vector<char> nonempty;
    for (const auto& m : data) {
        nonempty.push_back(!m.empty());
        if (m.empty()) {
            sums.push_back(T{});
            continue;
        }
        T s = m[0];
        for (std::size_t i = 1; i < m.size(); ++i) s = op(s, m[i]);
        sums.push_back(s);
    }
    // Optional-like summaries so that empty machines act as identities.
    using Opt = std::pair<bool, T>;
    std::vector<Opt> leaves;
    for (std::size_t i = 0; i < sums.size(); ++i) leaves.push_back({nonempty[i] != 0, sums[i]});
    auto compose = [&](const Opt& a, const Opt& b) -> Opt {
        if (!a.first) return b;
        if (!b.first) return a;
        return {true, op(a.second, b.second)};
    };
    const auto pre = tree_exclusive_scan(sim, "prefix", leaves, Opt{false, T{}}, compose,
                                         [](const Opt& o) { return o.first ? std::size_t{1} : std::size_t{0}; },
                                         loads_of(data));
    Distributed<T> out(data.size());
    for (std::size_t m = 0; m < data.size(); ++m) {
        bool have = pre[m].first;
        T run = pre[m].second;
        for (const auto& x : data[m]) {
            run = have ? op(run, x) : x;
            have = true;
            out[m].push_back(run);
        }
    }
    return out;
}

/// Global maximum, gathered up a fan-in tree to machine 0.
template <typename T, typename Less = std::less<T>>
T semigroup_max(MpcSim& sim, const Distributed<T>& data, Less less = Less{}) {
    std::vector<std::pair<bool, T>> vals;
    for (const auto& m : data) {
        if (m.empty()) {
            vals.push_back({false, T{}});
            continue;
        }
        vals.push_back({true, *std::max_element(m.begin(), m.end(), less)});
    }
    const std::size_t fan = std::max<std::size_t>(2, sim.memory());
    std::size_t span = 1;
    while (vals.size() > 1) {
        std::vector<std::pair<bool, T>> next;
        std::vector<std::size_t> loads = loads_of(data);
        std::uint64_t msgs = 0;
        for (std::size_t j = 0; j < vals.size(); j += fan) {
            auto best = vals[j];
            for (std::size_t c = j + 1; c < std::min(vals.size(), j + fan); ++c) {
                if (!vals[c].first) continue;
                ++msgs;
                if (!best.first || less(best.second, vals[c].second)) best = vals[c];
            }
            loads[(j / fan) * span * fan] += std::min(vals.size(), j + fan) - j;
            next.push_back(best);
        }
        span *= fan;
        sim.round("max:up", loads, msgs);
        vals = std::move(next);
    }
    if (vals.empty() || !vals[0].first) throw std::invalid_argument("semigroup_max: no items");
    return vals[0].second;
}

struct MpcResult {
    PackednessReport report;
    RoundLog log;
    MpcConfig config;
};

/// Parallel vertex-relative packedness at event radii. The instance size is
/// the number of anchor-edge event items, 3 |V| |E|. Throws PreconditionError
/// when ceil(size^eta) < 8 and MpcMemoryFault when a machine overflows.
MpcResult mpc_vertex_relative(const PolyCurve& curve, double eta, double c_mem = 16.0, bool extended = true);

}  // namespace packedness
