#include "packedness/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "packedness/oracle.hpp"

namespace packedness {

namespace {

RadiusLadder ladder_from(double delta, double L, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("radius_ladder: epsilon must be positive");
    if (!(delta > 0.0)) throw PreconditionError("radius_ladder: delta must be positive");
    RadiusLadder out;
    double steps = std::log(L / delta) / std::log1p(epsilon);
    if (std::abs(steps - std::round(steps)) < 1e-9) steps = std::round(steps);
    const auto count = static_cast<long>(std::max(0.0, std::ceil(steps)));
    for (long i = 0; i <= count; ++i) out.radii.push_back(delta * std::pow(1.0 + epsilon, static_cast<double>(i)));
    return out;
}

double length_inside(std::span<const Segment> edges, Point c, double r) {
    double total = 0.0;
    for (const auto& e : edges) total += clip_length(e, {c, r});
    return total;
}

}  // namespace

RadiusLadder radius_ladder(const CurveExtent& extent, double epsilon) {
    if (!extent.min_separation) {
        throw PreconditionError("radius_ladder: delta is undefined (no pair of disjoint edges); use the exact algorithm");
    }
    return ladder_from(*extent.min_separation, extent.diameter, epsilon);
}

SweepResult sweep_fixed_radius(const PolyCurve& curve, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("sweep_fixed_radius: radius must be positive");
    const auto edges = curve.edges();
    const auto verts = curve.vertices();
    SweepResult out;
    auto eval = [&](Point c) {
        ++out.evaluations;
        const double g = length_inside(edges, c, r) / r;
        if (g > out.gamma_max) {
            out.gamma_max = g;
            out.center = c;
        }
        return g;
    };

    std::vector<double> cuts;
    for (const auto& path : edges) {
        const double len = path.length();
        if (!(len > 0.0)) continue;
        const Point u = (1.0 / len) * (path.b - path.a);
        cuts.assign({0.0, len});
        auto add = [&](double s) {
            if (s > 0.0 && s < len) cuts.push_back(s);
        };
        for (const Point q : verts) {
            const Point rel = q - path.a;
            const double b = dot(u, rel);
            const double disc = b * b - (dot(rel, rel) - r * r);
            if (disc < 0.0) continue;
            const double root = std::sqrt(disc);
            add(b - root);
            add(b + root);
        }
        for (const auto& e : edges) {
            const double el = e.length();
            if (!(el > 0.0)) continue;
            const Point ue = (1.0 / el) * (e.b - e.a);
            const double k = cross(ue, u);
            if (std::abs(k) < 1e-15) continue;
            const double h0 = cross(ue, path.a - e.a);
            for (const double side : {r, -r}) {
                const double s = (side - h0) / k;
                const double foot = dot(ue, path.at(s / len) - e.a);
                if (foot > 0.0 && foot < el) add(s);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        out.events += cuts.size();

        constexpr int kProbes = 32;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double s0 = cuts[k], s1 = cuts[k + 1];
            const double step = (s1 - s0) / kProbes;
            int best_i = 0;
            double best_g = -1.0;
            for (int i = 0; i <= kProbes; ++i) {
                const double g = eval(path.at((s0 + i * step) / len));
                if (g > best_g) {
                    best_g = g;
                    best_i = i;
                }
            }
            double lo = std::max(s0, s0 + (best_i - 1) * step);
            double hi = std::min(s1, s0 + (best_i + 1) * step);
            while (hi - lo > 1e-8 * len) {
                const double mid = 0.5 * (lo + hi);
                const double eta = 1e-3 * (hi - lo);
                const double up = length_inside(edges, path.at((mid + eta) / len), r);
                const double down = length_inside(edges, path.at((mid - eta) / len), r);
                out.evaluations += 2;
                if (up > down) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            eval(path.at(0.5 * (lo + hi) / len));
        }
    }
    return out;
}

double fallback_ladder_start(const PolyCurve& curve) {
    const auto edges = curve.edges();
    const auto verts = curve.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        best = std::min(best, edges[e].length());
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (curve.edge_start(e) == v || curve.edge_end(e) == v) continue;
            const double d = point_segment_distance(verts[v], edges[e]);
            if (d > tolerance(best)) best = std::min(best, d);
        }
    }
    return 0.5 * best;
}

PackednessReport min_c_sweep(const PolyCurve& curve, double epsilon, const SweepOptions& options) {
    Stopwatch clock;
    const CurveExtent ext = extent(curve);
    RadiusLadder ladder;
    if (ext.min_separation || !options.fallback_scale) {
        ladder = radius_ladder(ext, epsilon);
    } else {
        ladder = ladder_from(std::min(fallback_ladder_start(curve), ext.diameter), ext.diameter, epsilon);
    }
    PackednessReport rep;
    rep.algorithm = "sweep";
    double best = 0.0;
    for (const auto& lc : oracle::limit_candidates(curve)) {
        if (lc.value > best) {
            best = lc.value;
            rep.witness = {lc.point, 0.0};
        }
    }
    for (const double r : ladder.radii) {
        const auto res = sweep_fixed_radius(curve, r);
        rep.events += res.events;
        rep.disks_evaluated += res.evaluations;
        if (res.gamma_max > best) {
            best = res.gamma_max;
            rep.witness = {res.center, r};
        }
    }
    rep.c_estimate = best;
    rep.certified_lo = best;
    rep.certified_hi = 2.0 * (1.0 + epsilon) * best;
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
}

}  // namespace packedness
