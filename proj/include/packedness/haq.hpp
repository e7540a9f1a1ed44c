#pragma once

#include <cstddef>
#include <vector>

#include "packedness/curve.hpp"

namespace packedness {

/// Bounding volume hierarchy over curve edges answering "edges within
/// distance r of q" for any r.
class EdgeBvh {
public:
    explicit EdgeBvh(std::span<const Segment> edges);

    /// Appends to out the ids of edges at distance <= r from q, ascending.
    void within(Point q, double r, std::vector<std::size_t>& out) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        double min_x, min_y, max_x, max_y;
        std::size_t first;  ///< leaf: offset into order_; inner: left child
        std::size_t count;  ///< leaf: number of edges; inner: 0
        std::size_t right;
    };
    std::size_t build(std::size_t lo, std::size_t hi);

    std::vector<Segment> edges_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

struct HaqIndex {
    PolyCurve curve;
    std::vector<double> radii;  ///< strictly increasing stored levels
    EdgeBvh bvh;
    std::size_t source_events = 0;
};

struct HaqAnswer {
    double length = 0.0;
    double level = 0.0;          ///< stored radius used, 0 on fallback
    bool fallback = false;       ///< radius above the top level: answered by scan
    std::size_t candidates = 0;  ///< edges whose clipped length was summed
};

/// Levels are the event radii of the exact algorithm, merged within tolerance.
HaqIndex build_haq(const PolyCurve& curve);

/// Builds an index with explicit levels (sorted and merged within tolerance).
HaqIndex build_haq(const PolyCurve& curve, std::vector<double> radii);

/// Throws std::invalid_argument for radius <= 0.
HaqAnswer length_query(const HaqIndex& index, const Disk& q);

/// Candidate edge set at q's center for the level that answers q.
std::vector<std::size_t> haq_candidates(const HaqIndex& index, const Disk& q);

double length_query_scan(const PolyCurve& curve, const Disk& q);

}  // namespace packedness
