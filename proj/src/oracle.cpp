#include "packedness/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace packedness::oracle {

double gamma(const Disk& d, const PolyCurve& curve) {
    if (!(d.radius > 0.0)) throw std::invalid_argument("gamma: disk radius must be positive");
    double total = 0.0;
    for (const auto& e : curve.edges()) total += clip_length(e, d);
    return total / d.radius;
}

std::vector<LimitCandidate> limit_candidates(const PolyCurve& curve) {
    std::vector<LimitCandidate> out;
    for (const auto& inc : self_intersections(curve)) out.push_back({inc.point, static_cast<double>(inc.half_edges)});
    return out;
}

namespace {

// Per-center edge frame: foot parameter, distance to the carrier line, length.
struct EdgeFrame {
    double t0;
    double h;
    double len;
};

class Prober {
public:
    explicit Prober(const PolyCurve& curve) : curve_(curve), frames_(curve.num_edges()) {
        for (const auto& e : curve.edges()) {
            const double len = e.length();
            lengths_.push_back(len);
            total_length_ += len;
            dirs_.push_back(len > 0 ? (1.0 / len) * (e.b - e.a) : Point{1.0, 0.0});
        }
    }

    // Probes every radius in `radii` (ascending) plus `extra` at center c.
    void probe(Point c, const std::vector<double>& radii, const std::vector<double>& extra, OracleResult& best) {
        const auto edges = curve_.edges();
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Point rel = c - edges[i].a;
            const double t0 = dot(rel, dirs_[i]);
            const double h = std::abs(cross(dirs_[i], rel));
            frames_[i] = {t0, h, lengths_[i]};
            nearest = std::min(nearest, point_segment_distance(c, edges[i]));
        }
        auto try_radius = [&](double r) {
            if (!(r > 0.0) || r < nearest) return;
            ++best.probes;
            double total = 0.0;
            for (const auto& f : frames_) {
                if (f.h >= r) continue;
                const double w = std::sqrt((r - f.h) * (r + f.h));
                const double lo = std::max(0.0, f.t0 - w);
                const double hi = std::min(f.len, f.t0 + w);
                if (hi > lo) total += hi - lo;
            }
            const double g = total / r;
            if (g > best.value) {
                best.value = g;
                best.witness = {c, r};
            }
        };
        for (double r : radii) {
            if (total_length_ / r <= best.value) break;
            try_radius(r);
        }
        for (double r : extra) {
            if (r > 0.0 && total_length_ / r > best.value) try_radius(r);
        }
    }

private:
    const PolyCurve& curve_;
    std::vector<EdgeFrame> frames_;
    std::vector<double> lengths_;
    std::vector<Point> dirs_;
    double total_length_ = 0.0;
};

std::vector<Point> feature_points(const PolyCurve& curve) {
    std::vector<Point> pts(curve.vertices().begin(), curve.vertices().end());
    const auto edges = curve.edges();
    for (const auto& e : edges) pts.push_back(midpoint(e.a, e.b));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (curve.adjacent(i, j)) continue;
            const auto cp = closest_points(edges[i], edges[j]);
            pts.push_back(cp.on_first);
            if (cp.distance > 0.0) {
                pts.push_back(cp.on_second);
                pts.push_back(midpoint(cp.on_first, cp.on_second));
            }
        }
    }
    for (const auto& inc : self_intersections(curve)) pts.push_back(inc.point);
    return pts;
}

}  // namespace

OracleResult brute_min_c(const PolyCurve& curve, const OracleConfig& cfg) {
    if (cfg.grid_cells_per_axis < 8 || cfg.radii_count < 8) {
        throw std::invalid_argument("brute_min_c: grid and radii resolution must be at least 8");
    }
    OracleResult best;
    for (const auto& lc : limit_candidates(curve)) {
        if (lc.value > best.value) {
            best.value = lc.value;
            best.witness = {lc.point, 0.0};
        }
    }

    const CurveExtent ext = extent(curve);
    const double L = ext.diameter;
    const double r_min = ext.min_separation ? 0.5 * *ext.min_separation : 1e-3 * L;
    const double r_max = 2.0 * L;
    std::vector<double> radii(static_cast<std::size_t>(cfg.radii_count));
    for (int k = 0; k < cfg.radii_count; ++k) {
        const double f = static_cast<double>(k) / (cfg.radii_count - 1);
        radii[static_cast<std::size_t>(k)] = r_min * std::pow(r_max / r_min, f);
    }

    Prober prober(curve);
    const auto verts = curve.vertices();
    std::vector<double> extra(verts.size());
    auto vertex_distances = [&](Point c) {
        extra.resize(verts.size());
        for (std::size_t v = 0; v < verts.size(); ++v) extra[v] = distance(c, verts[v]);
    };

    if (cfg.include_feature_centers) {
        const auto features = feature_points(curve);
        for (const auto& c : features) {
            vertex_distances(c);
            for (const auto& f : features) extra.push_back(distance(c, f));
            prober.probe(c, radii, extra, best);
        }
    }

    double min_x = verts[0].x, max_x = verts[0].x, min_y = verts[0].y, max_y = verts[0].y;
    for (const auto& v : verts) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    min_x -= L;
    max_x += L;
    min_y -= L;
    max_y += L;
    const int g = cfg.grid_cells_per_axis;
    for (int i = 0; i <= g; ++i) {
        const double x = min_x + (max_x - min_x) * i / g;
        for (int j = 0; j <= g; ++j) {
            const Point c{x, min_y + (max_y - min_y) * j / g};
            vertex_distances(c);
            prober.probe(c, radii, extra, best);
        }
    }
    return best;
}

}  // namespace packedness::oracle
