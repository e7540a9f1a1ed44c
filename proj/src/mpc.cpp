#include "packedness/mpc.hpp"

#include <limits>
#include <unordered_map>

#include "packedness/relative.hpp"

namespace packedness {

std::size_t MpcConfig::machine_memory() const {
    return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), eta) * (1.0 - 1e-12)));
}

std::size_t MpcConfig::machine_count() const {
    return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 - eta) * (1.0 - 1e-12))) + 1;
}

std::size_t MpcConfig::memory_cap() const {
    return static_cast<std::size_t>(std::ceil(c_mem * static_cast<double>(machine_memory())));
}

std::size_t MpcConfig::round_bound() const {
    return round_factor * static_cast<std::size_t>(std::ceil(1.0 / eta - 1e-12));
}

void MpcConfig::validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("mpc: eta must lie in (0, 1]");
    if (!(c_mem >= 1.0)) throw std::invalid_argument("mpc: c_mem must be at least 1");
    if (n == 0) throw std::invalid_argument("mpc: instance size must be positive");
}

nlohmann::json to_json(const RoundLog& log) {
    return {{"rounds", log.rounds},
            {"peak_memory", log.peak_memory},
            {"messages", log.messages},
            {"labels", log.labels},
            {"round_peak", log.round_peak}};
}

MpcMemoryFault::MpcMemoryFault(std::uint64_t round, std::size_t machine, std::size_t load, std::size_t cap)
    : std::runtime_error("mpc: machine " + std::to_string(machine) + " holds " + std::to_string(load) +
                         " items in round " + std::to_string(round) + " (cap " + std::to_string(cap) + ")"),
      round_(round),
      machine_(machine) {}

MpcSim::MpcSim(const MpcConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    mem_ = std::max<std::size_t>(1, cfg_.machine_memory());
    cap_ = cfg_.memory_cap();
    machines_ = cfg_.machine_count();
}

void MpcSim::round(const std::string& label, const std::vector<std::size_t>& loads, std::uint64_t messages) {
    ++log_.rounds;
    std::size_t peak = 0;
    for (std::size_t m = 0; m < loads.size(); ++m) {
        if (loads[m] > cap_) throw MpcMemoryFault(log_.rounds, m, loads[m], cap_);
        peak = std::max(peak, loads[m]);
    }
    log_.peak_memory = std::max(log_.peak_memory, peak);
    log_.messages += messages;
    log_.labels.push_back(label);
    log_.round_peak.push_back(peak);
}

std::size_t MpcSim::tree_depth(std::size_t count) const {
    const std::size_t fan = std::max<std::size_t>(2, mem_);
    std::size_t depth = 0, reach = 1;
    while (reach < count) {
        reach *= fan;
        ++depth;
    }
    return depth;
}

namespace {

struct EventItem {
    std::uint32_t anchor = 0;
    std::uint32_t code = 0;  // 3 * edge + {0: segment reached, 1: a inside, 2: b inside}
    double r = 0.0;
    double t0 = 0.0, h = 0.0, len = 0.0;
};

bool event_less(const EventItem& a, const EventItem& b) {
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    if (a.r != b.r) return a.r < b.r;
    return a.code < b.code;
}

struct OpenEdge {
    std::uint32_t edge = 0;
    std::uint8_t bits = 0;
    double t0 = 0.0, h = 0.0, len = 0.0;
};

// Completed length of the last anchor in a run of sorted events.
struct Completed {
    bool empty = true;
    bool fresh = false;
    std::uint32_t anchor = 0;
    double full = 0.0;
};

Completed compose(const Completed& l, const Completed& r) {
    if (r.empty) return l;
    if (l.empty || r.fresh || l.anchor != r.anchor) return r;
    return {false, l.fresh, l.anchor, l.full + r.full};
}

// Running state of one anchor while a machine walks its events.
class LocalState {
public:
    void reset() {
        full_ = 0.0;
        open_.clear();
        slot_.clear();
    }

    void load(double full, const std::vector<OpenEdge>& open) {
        reset();
        full_ = full;
        for (const auto& e : open) put(e);
    }

    void apply(const EventItem& it) {
        const std::uint32_t edge = it.code / 3;
        const auto bit = static_cast<std::uint8_t>(1u << (it.code % 3));
        const auto found = slot_.find(edge);
        if (found == slot_.end()) {
            put({edge, bit, it.t0, it.h, it.len});
            return;
        }
        OpenEdge& e = open_[found->second];
        e.bits |= bit;
        if (e.bits == 7) {
            full_ += e.len;
            const std::size_t pos = found->second;
            slot_.erase(found);
            if (pos + 1 != open_.size()) {
                open_[pos] = open_.back();
                slot_[open_[pos].edge] = pos;
            }
            open_.pop_back();
        }
    }

    double length(double r) const {
        double total = full_;
        for (const auto& e : open_) {
            if (!(e.bits & 1)) continue;
            const bool a_in = e.bits & 2, b_in = e.bits & 4;
            total += (b_in ? e.len : e.t0) - (a_in ? 0.0 : e.t0);
            const int m = (a_in ? 0 : 1) + (b_in ? 0 : 1);
            if (m > 0) total += m * std::sqrt(std::max(0.0, (r - e.h) * (r + e.h)));
        }
        return total;
    }

    std::size_t size() const { return open_.size() + 1; }
    double length_of_completed() const { return full_; }
    const std::vector<OpenEdge>& open() const { return open_; }

private:
    void put(const OpenEdge& e) {
        slot_[e.edge] = open_.size();
        open_.push_back(e);
    }

    double full_ = 0.0;
    std::vector<OpenEdge> open_;
    std::unordered_map<std::uint32_t, std::size_t> slot_;
};

struct Candidate {
    double value = 0.0;
    std::uint32_t anchor = 0;
    double r = 0.0;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.anchor != b.anchor) return a.anchor > b.anchor;
    return a.r > b.r;
}

}  // namespace

MpcResult mpc_vertex_relative(const PolyCurve& curve, double eta, double c_mem, bool extended) {
    Stopwatch clock;
    const auto verts = curve.vertices();
    const auto edges = curve.edges();
    MpcConfig cfg;
    cfg.eta = eta;
    cfg.c_mem = c_mem;
    cfg.extended = extended;
    cfg.n = 3 * verts.size() * edges.size();
    cfg.validate();
    if (cfg.machine_memory() < 8) {
        throw PreconditionError("mpc: machine memory ceil(n^eta) = " + std::to_string(cfg.machine_memory()) +
                                " is below the minimum of 8");
    }
    MpcSim sim(cfg);
    double total = 0.0;
    for (const auto& e : edges) total += e.length();
    const double min_r = 1e-12 * total;

    // Input: one item per (anchor, edge, kind); each machine derives its radii locally.
    std::vector<EventItem> items;
    items.reserve(cfg.n);
    for (std::size_t a = 0; a < verts.size(); ++a) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto f = detail::anchor_frame(verts[a], edges[e]);
            const double radii[3] = {f.dseg, f.da, f.db};
            for (std::uint32_t k = 0; k < 3; ++k) {
                items.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(3 * e + k), radii[k], f.t0, f.h, f.len});
            }
        }
    }
    auto data = distribute(sim, std::move(items));

    // Once destinations are fixed, the machine holding an edge's events also
    // sends the edge to every machine whose block starts while it is partly inside.
    std::vector<std::vector<OpenEdge>> carry;
    std::vector<std::uint32_t> carry_anchor;
    auto carries = [&](const Distributed<EventItem>& placed) {
        carry.assign(placed.size(), {});
        carry_anchor.assign(placed.size(), 0);
        LocalState run;
        bool started = false;
        std::uint32_t anchor = 0;
        std::vector<std::size_t> add(placed.size(), 0);
        for (std::size_t m = 0; m < placed.size(); ++m) {
            if (placed[m].empty()) continue;
            if (started && placed[m].front().anchor == anchor) {
                carry[m] = run.open();
                add[m] = carry[m].size();
            }
            carry_anchor[m] = placed[m].front().anchor;
            for (const auto& it : placed[m]) {
                if (!started || it.anchor != anchor) {
                    run.reset();
                    anchor = it.anchor;
                    started = true;
                }
                run.apply(it);
            }
        }
        return add;
    };
    dist_sort<EventItem>(sim, data, event_less, carries);
    const std::size_t p = data.size();

    // Neighbor exchange: successor's first key and whether the predecessor's
    // trailing tie group contains a vertex-distance event.
    std::vector<const EventItem*> next_first(p, nullptr);
    std::vector<char> carried_vertex_event(p, 0);
    if (p > 1) {
        for (std::size_t m = 0; m + 1 < p; ++m) {
            if (!data[m + 1].empty()) next_first[m] = &data[m + 1].front();
        }
        for (std::size_t m = 1; m < p; ++m) {
            const auto& prev = data[m - 1];
            if (prev.empty() || data[m].empty()) continue;
            const auto& head = data[m].front();
            bool flag = false;
            for (std::size_t i = prev.size(); i-- > 0;) {
                if (prev[i].anchor != head.anchor || prev[i].r != head.r) break;
                flag = flag || prev[i].code % 3 != 0;
            }
            carried_vertex_event[m] = flag;
        }
        std::vector<std::size_t> loads = loads_of(data);
        for (std::size_t m = 0; m < p; ++m) loads[m] += carry[m].size() + 2;
        sim.round("neighbors", loads, 2 * (p - 1));
    }

    // Segmented prefix of completed edge length.
    std::vector<Completed> leaves(p);
    for (std::size_t m = 0; m < p; ++m) {
        const auto& b = data[m];
        if (b.empty()) continue;
        auto& c = leaves[m];
        c.empty = false;
        c.anchor = b.back().anchor;
        std::size_t start = b.size();
        while (start > 0 && b[start - 1].anchor == c.anchor) --start;
        c.fresh = start > 0;
        LocalState local;
        if (!c.fresh && !carry[m].empty() && carry_anchor[m] == c.anchor) local.load(0.0, carry[m]);
        for (std::size_t i = start; i < b.size(); ++i) local.apply(b[i]);
        c.full = local.length_of_completed();
    }
    std::vector<std::size_t> base = loads_of(data);
    for (std::size_t m = 0; m < p; ++m) base[m] += carry[m].size();
    const auto prefix = tree_exclusive_scan(
        sim, "prefix", leaves, Completed{}, compose, [](const Completed& c) { return c.empty ? std::size_t{0} : std::size_t{1}; },
        base);

    std::vector<std::vector<Candidate>> best(p);
    std::vector<std::size_t> eval_loads(p);
    std::uint64_t evaluations = 0;
    LocalState state;
    for (std::size_t m = 0; m < p; ++m) {
        const auto& blk = data[m];
        eval_loads[m] = blk.size() + carry[m].size() + 1;
        if (blk.empty()) continue;
        const bool continues = !prefix[m].empty && prefix[m].anchor == blk.front().anchor;
        state.load(continues ? prefix[m].full : 0.0, continues ? carry[m] : std::vector<OpenEdge>{});
        Candidate local;
        bool have = false;
        bool group_vertex = carried_vertex_event[m] != 0;
        for (std::size_t i = 0; i < blk.size(); ++i) {
            const auto& it = blk[i];
            if (i > 0 && it.anchor != blk[i - 1].anchor) state.reset();
            if (i > 0 && (it.anchor != blk[i - 1].anchor || it.r != blk[i - 1].r)) group_vertex = false;
            state.apply(it);
            group_vertex = group_vertex || it.code % 3 != 0;
            eval_loads[m] = std::max(eval_loads[m], blk.size() + state.size());
            const EventItem* nxt = i + 1 < blk.size() ? &blk[i + 1] : next_first[m];
            if (nxt && nxt->anchor == it.anchor && nxt->r == it.r) continue;
            if (!(it.r > min_r) || (!extended && !group_vertex)) continue;
            ++evaluations;
            const Candidate c{state.length(it.r) / it.r, it.anchor, it.r};
            if (!have || candidate_less(local, c)) local = c;
            have = true;
        }
        if (have) best[m].push_back(local);
    }
    sim.round("evaluate", eval_loads, 0);
    Candidate top;
    bool any = false;
    for (const auto& b : best) any = any || !b.empty();
    if (any) top = semigroup_max(sim, best, candidate_less);

    MpcResult res;
    res.config = cfg;
    res.log = sim.log();
    auto& rep = res.report;
    rep.algorithm = extended ? "mpc-vertex-relative" : "mpc-vertex-relative-vertex-radii";
    rep.c_estimate = top.value;
    rep.certified_lo = top.value;
    rep.certified_hi = top.value;
    rep.witness = any ? Disk{verts[top.anchor], top.r} : Disk{};
    rep.events = cfg.n;
    rep.disks_evaluated = evaluations;
    rep.rounds = res.log.rounds;
    rep.wall_time_ms = clock.elapsed_ms();
    return res;
}

}  // namespace packedness
