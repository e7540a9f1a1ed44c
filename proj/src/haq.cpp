#include "packedness/haq.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "packedness/exact.hpp"

namespace packedness {

namespace {

constexpr std::size_t kLeafSize = 4;

std::vector<double> merge_levels(std::vector<double> radii) {
    radii.erase(std::remove_if(radii.begin(), radii.end(), [](double r) { return !(r > 0.0) || !std::isfinite(r); }), radii.end());
    std::sort(radii.begin(), radii.end());
    std::vector<double> out;
    for (const double r : radii) {
        if (!out.empty() && r - out.back() <= tolerance(out.back())) {
            out.back() = r;
        } else {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace

EdgeBvh::EdgeBvh(std::span<const Segment> edges) : edges_(edges.begin(), edges.end()), order_(edges.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!edges_.empty()) build(0, edges_.size());
}

std::size_t EdgeBvh::build(std::size_t lo, std::size_t hi) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({});
    Node n{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), lo, hi - lo, 0};
    for (std::size_t i = lo; i < hi; ++i) {
        const Segment& e = edges_[order_[i]];
        n.min_x = std::min({n.min_x, e.a.x, e.b.x});
        n.min_y = std::min({n.min_y, e.a.y, e.b.y});
        n.max_x = std::max({n.max_x, e.a.x, e.b.x});
        n.max_y = std::max({n.max_y, e.a.y, e.b.y});
    }
    if (hi - lo > kLeafSize) {
        const bool by_x = n.max_x - n.min_x >= n.max_y - n.min_y;
        const std::size_t mid = lo + (hi - lo) / 2;
        auto key = [&](std::size_t e) {
            const Point c = midpoint(edges_[e].a, edges_[e].b);
            return by_x ? c.x : c.y;
        };
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t a, std::size_t b) {
                             const double ka = key(a), kb = key(b);
                             return ka != kb ? ka < kb : a < b;
                         });
        n.first = build(lo, mid);
        n.right = build(mid, hi);
        n.count = 0;
    }
    nodes_[id] = n;
    return id;
}

void EdgeBvh::within(Point q, double r, std::vector<std::size_t>& out) const {
    if (nodes_.empty()) return;
    const std::size_t start = out.size();
    const double slack = tolerance(r);
    const double reach = r + slack;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        stack.pop_back();
        const double dx = std::max({n.min_x - q.x, 0.0, q.x - n.max_x});
        const double dy = std::max({n.min_y - q.y, 0.0, q.y - n.max_y});
        if (dx * dx + dy * dy > reach * reach) continue;
        if (n.count > 0) {
            for (std::size_t i = n.first; i < n.first + n.count; ++i) {
                if (point_segment_distance(q, edges_[order_[i]]) <= reach) out.push_back(order_[i]);
            }
        } else {
            stack.push_back(n.right);
            stack.push_back(n.first);
        }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

HaqIndex build_haq(const PolyCurve& curve, std::vector<double> radii) {
    HaqIndex index{curve, merge_levels(std::move(radii)), EdgeBvh(curve.edges()), 0};
    return index;
}

HaqIndex build_haq(const PolyCurve& curve) {
    std::vector<double> radii;
    for_each_event_circle(curve, [&](const ContactSet&, const Disk& d) { radii.push_back(d.radius); });
    const std::size_t events = radii.size();
    HaqIndex index = build_haq(curve, std::move(radii));
    index.source_events = events;
    return index;
}

std::vector<std::size_t> haq_candidates(const HaqIndex& index, const Disk& q) {
    std::vector<std::size_t> out;
    const auto it = std::lower_bound(index.radii.begin(), index.radii.end(), q.radius);
    if (it == index.radii.end()) return out;
    index.bvh.within(q.center, *it, out);
    return out;
}

HaqAnswer length_query(const HaqIndex& index, const Disk& q) {
    if (!(q.radius > 0.0)) throw std::invalid_argument("length_query: radius must be positive");
    HaqAnswer ans;
    const auto it = std::lower_bound(index.radii.begin(), index.radii.end(), q.radius);
    if (it == index.radii.end()) {
        ans.fallback = true;
        ans.length = length_query_scan(index.curve, q);
        ans.candidates = index.curve.num_edges();
        return ans;
    }
    ans.level = *it;
    std::vector<std::size_t> cand;
    index.bvh.within(q.center, ans.level, cand);
    const auto edges = index.curve.edges();
    for (const auto e : cand) ans.length += clip_length(edges[e], q);
    ans.candidates = cand.size();
    return ans;
}

double length_query_scan(const PolyCurve& curve, const Disk& q) {
    if (!(q.radius >= 0.0)) throw std::invalid_argument("length_query_scan: radius must be non-negative");
    double total = 0.0;
    for (const auto& e : curve.edges()) total += clip_length(e, q);
    return total;
}

}  // namespace packedness
