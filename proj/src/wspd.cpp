#include "packedness/wspd.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace packedness {

namespace {

struct Node {
    std::size_t lo = 0;
    std::size_t hi = 0;
    Point center;
    double radius = 0.0;
    std::size_t rep = 0;
    int left = -1;
    int right = -1;
};

class FairSplitTree {
public:
    FairSplitTree(std::span<const Point> points) : points_(points), order_(points.size()) {
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        build(0, order_.size());
    }

    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    std::size_t size() const { return nodes_.size(); }
    std::vector<std::size_t> members(const Node& n) const {
        std::vector<std::size_t> out(order_.begin() + static_cast<std::ptrdiff_t>(n.lo), order_.begin() + static_cast<std::ptrdiff_t>(n.hi));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int build(std::size_t lo, std::size_t hi) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
        double max_x = -min_x, max_y = -min_x;
        std::size_t rep = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = lo; i < hi; ++i) {
            const Point p = points_[order_[i]];
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
            rep = std::min(rep, order_[i]);
        }
        Node n;
        n.lo = lo;
        n.hi = hi;
        n.center = {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
        n.radius = 0.5 * std::hypot(max_x - min_x, max_y - min_y);
        n.rep = rep;
        if (hi - lo > 1 && n.radius > 0.0) {
            const bool split_x = max_x - min_x >= max_y - min_y;
            const double cut = split_x ? n.center.x : n.center.y;
            auto first = order_.begin() + static_cast<std::ptrdiff_t>(lo);
            auto last = order_.begin() + static_cast<std::ptrdiff_t>(hi);
            auto mid = std::partition(first, last, [&](std::size_t i) {
                return (split_x ? points_[i].x : points_[i].y) < cut;
            });
            const auto m = static_cast<std::size_t>(mid - order_.begin());
            n.left = build(lo, m);
            n.right = build(m, hi);
        }
        nodes_[static_cast<std::size_t>(id)] = n;
        return id;
    }

    std::span<const Point> points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace

std::vector<WspdPair> build_wspd(std::span<const Point> points, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("build_wspd: separation must be positive");
    std::vector<WspdPair> out;
    if (points.size() < 2) return out;
    const FairSplitTree tree(points);
    if (tree.node(0).radius == 0.0) {
        std::cerr << "warning: all points coincide; the decomposition is empty\n";
        return out;
    }
    auto separated = [&](const Node& u, const Node& v) {
        const double rho = std::max(u.radius, v.radius);
        return distance(u.center, v.center) - 2.0 * rho >= s * rho;
    };
    std::vector<std::pair<int, int>> stack;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Node& n = tree.node(static_cast<int>(i));
        if (n.left >= 0) stack.push_back({n.left, n.right});
    }
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        const Node& u = tree.node(a);
        const Node& v = tree.node(b);
        if (separated(u, v)) {
            out.push_back({tree.members(u), tree.members(v), std::max(u.radius, v.radius), u.rep, v.rep});
            continue;
        }
        if (u.radius >= v.radius && u.left >= 0) {
            stack.push_back({u.right, b});
            stack.push_back({u.left, b});
        } else {
            stack.push_back({a, v.right});
            stack.push_back({a, v.left});
        }
    }
    return out;
}

std::vector<Disk> candidate_disks(std::span<const WspdPair> pairs, std::span<const Point> points) {
    std::vector<Disk> out;
    out.reserve(2 * pairs.size());
    auto orient = [&](std::size_t rep, const std::vector<std::size_t>& own, const std::vector<std::size_t>& other) {
        const Point c = points[rep];
        double spread = 0.0, reach = 0.0;
        for (const auto i : own) spread = std::max(spread, distance(c, points[i]));
        reach = spread;
        for (const auto i : other) reach = std::max(reach, distance(c, points[i]));
        out.push_back({c, reach + 2.0 * spread});
    };
    for (const auto& p : pairs) {
        orient(p.rep_a, p.A, p.B);
        orient(p.rep_b, p.B, p.A);
    }
    return out;
}

namespace {

// first diameter pair goes to (0,0) and (1,0)
std::vector<Point> canonical_frame(std::span<const Point> pts) {
    std::size_t bi = 0, bj = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = distance(pts[i], pts[j]);
            if (d > best * (1.0 + 1e-12)) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    std::vector<Point> out(pts.begin(), pts.end());
    if (!(best > 0.0)) return out;
    const Point u = (1.0 / best) * (pts[bj] - pts[bi]);
    for (auto& p : out) {
        const Point rel = (1.0 / best) * (p - pts[bi]);
        p = {dot(rel, u), cross(u, rel)};
    }
    return out;
}

}  // namespace

PackednessReport min_c_wspd(const PolyCurve& curve, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 2.0)) throw std::invalid_argument("min_c_wspd: epsilon must lie in (0, 2]");
    Stopwatch clock;
    const double s = 8.0 / epsilon;
    const auto verts = curve.vertices();
    const auto pairs = build_wspd(canonical_frame(verts), s);
    const auto disks = candidate_disks(pairs, verts);
    const auto edges = curve.edges();
    PackednessReport rep;
    rep.algorithm = "wspd";
    double best = 0.0;
    for (const auto& d : disks) {
        if (!(d.radius > 0.0)) continue;
        double total = 0.0;
        for (const auto& e : edges) total += clip_length(e, d);
        const double g = total / d.radius;
        ++rep.disks_evaluated;
        if (g > best) {
            best = g;
            rep.witness = d;
        }
    }
    rep.events = pairs.size();
    rep.c_estimate = best;
    rep.certified_lo = best;
    rep.certified_hi = (4.0 + 2.0 * epsilon) * best;
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
}

}  // namespace packedness
