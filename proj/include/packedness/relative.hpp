#pragma once

#include <span>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness {

/// Supremum of gamma over disks centered at the points of S. Each anchor's
/// radius axis is split at the distances to edge endpoints and perpendicular
/// feet and every piece is maximized; evaluation is by direct clipping.
PackednessReport s_relative_exact(const PolyCurve& curve, std::span<const Point> S);

struct VertexRelativeOptions {
    bool refine = true;  ///< false: evaluate at event radii only
    unsigned threads = 1;
};

/// Vertex-relative packedness by an incremental radius sweep around each vertex.
PackednessReport vertex_relative(const PolyCurve& curve, const VertexRelativeOptions& options = {});

/// [c_vr, 2 c_vr], which contains the minimum packedness constant.
Interval packedness_bounds_from_vr(double c_vr);

namespace detail {

/// Per-anchor geometry of one edge.
struct AnchorFrame {
    double t0 = 0.0;    ///< foot parameter (arc length from a)
    double h = 0.0;     ///< distance to the carrier line
    double len = 0.0;
    double da = 0.0;    ///< distance to a
    double db = 0.0;    ///< distance to b
    double dseg = 0.0;  ///< distance to the segment
};

AnchorFrame anchor_frame(Point p, const Segment& e);

/// Length of e inside the radius-r disk around the anchor, with the edge in
/// the regime given by which endpoints are already inside.
inline double frame_clip(const AnchorFrame& f, double r) {
    if (r < f.dseg || !(r > 0.0)) return 0.0;
    const double w = std::sqrt(std::max(0.0, (r - f.h) * (r + f.h)));
    const double lo = std::max(0.0, f.t0 - w);
    const double hi = std::min(f.len, f.t0 + w);
    return hi > lo ? hi - lo : 0.0;
}

}  // namespace detail

}  // namespace packedness
