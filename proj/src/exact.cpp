#include "packedness/exact.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "packedness/oracle.hpp"
#include "packedness/parallel.hpp"

namespace packedness {

std::vector<Point> ContactSet::points() const {
    std::vector<Point> out;
    out.reserve(features.size());
    for (const auto& f : features) out.push_back(f.point);
    return out;
}

std::vector<std::size_t> intersected_edges(const PolyCurve& curve, const Disk& d) {
    std::vector<std::size_t> out;
    const auto edges = curve.edges();
    const double slack = tolerance(d.radius);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (point_segment_distance(d.center, edges[e]) <= d.radius + slack) out.push_back(e);
    }
    return out;
}

namespace {

double gamma_at(std::span<const Segment> edges, Point c, double r) {
    if (!(r > 0.0)) return -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const auto& e : edges) total += clip_length(e, {c, r});
    return total / r;
}

bool strictly_inside(const Disk& d, Point p) {
    const double reach = d.radius - tolerance(d.radius);
    const Point rel = p - d.center;
    return reach > 0.0 && dot(rel, rel) < reach * reach;
}

Event make_event(const PolyCurve& curve, ContactSet F) {
    const auto pts = F.points();
    const Disk first = smallest_enclosing_disk(pts);
    std::vector<std::size_t> E = intersected_edges(curve, first);
    for (const auto& f : F.features) E.push_back(f.edge);
    std::sort(E.begin(), E.end());
    E.erase(std::unique(E.begin(), E.end()), E.end());
    Event ev;
    ev.disk = maximal_disk(E, F, curve).value_or(first);
    ev.edges = intersected_edges(curve, ev.disk);
    ev.contacts = std::move(F);
    ev.value = gamma_at(curve.edges(), ev.disk.center, ev.disk.radius);
    return ev;
}

// Dominance recurrence for one base pair (u on edge i, v on edge j).
void run_base_pair(const PolyCurve& curve, ContactFeature u, ContactFeature v, const CircleVisitor& visit) {
    const auto edges = curve.edges();
    const double scale = tolerance(distance(u.point, v.point));
    if (distance(u.point, v.point) <= scale) return;
    std::vector<Disk> circles{diametral_disk(u.point, v.point)};
    visit({{u, v}}, circles.back());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const bool covered = std::any_of(circles.begin(), circles.end(), [&](const Disk& c) {
            return strictly_inside(c, edges[k].a) && strictly_inside(c, edges[k].b);
        });
        if (covered) continue;
        const std::array<Point, 3> zs{min_circle_point_on_segment(u.point, v.point, edges[k]), edges[k].a, edges[k].b};
        for (const Point z : zs) {
            if (distance(z, u.point) <= scale || distance(z, v.point) <= scale) continue;
            bool dominated = false;
            for (const auto& c : circles) {
                if (strictly_inside(c, z)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            circles.push_back(min_circle_through(u.point, v.point, z));
            visit({{u, v, {k, z}}}, circles.back());
        }
    }
}

std::vector<std::pair<ContactFeature, ContactFeature>> base_pairs(const PolyCurve& curve, std::size_t i, std::size_t j) {
    const auto edges = curve.edges();
    std::vector<std::pair<ContactFeature, ContactFeature>> out;
    if (i == j) {
        out.push_back({{i, edges[i].a}, {i, edges[i].b}});
        return out;
    }
    const auto cp = closest_points(edges[i], edges[j]);
    if (cp.distance > 0.0) out.push_back({{i, cp.on_first}, {j, cp.on_second}});
    for (const Point p : {edges[i].a, edges[i].b}) {
        for (const Point q : {edges[j].a, edges[j].b}) {
            if (p == q || (p == cp.on_first && q == cp.on_second)) continue;
            out.push_back({{i, p}, {j, q}});
        }
    }
    return out;
}

}  // namespace

void for_each_event_circle(const PolyCurve& curve, const CircleVisitor& visit) {
    const std::size_t m = curve.num_edges();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            for (const auto& [u, v] : base_pairs(curve, i, j)) run_base_pair(curve, u, v, visit);
        }
    }
}

void for_each_event(const PolyCurve& curve, const std::function<void(const Event&)>& visit) {
    for_each_event_circle(curve, [&](const ContactSet& F, const Disk&) { visit(make_event(curve, F)); });
}

std::vector<Event> enumerate_events(const PolyCurve& curve) {
    std::vector<Event> out;
    for_each_event(curve, [&](const Event& e) { out.push_back(e); });
    return out;
}

std::optional<Disk> maximal_disk(std::span<const std::size_t> E, const ContactSet& F, const PolyCurve& curve) {
    const auto edges = curve.edges();
    const auto pts = F.points();
    if (pts.empty()) return std::nullopt;
    auto meets_all = [&](const Disk& d) {
        for (const auto e : E) {
            if (point_segment_distance(d.center, edges[e]) > d.radius + tolerance(d.radius)) return false;
        }
        return true;
    };
    const Disk base = smallest_enclosing_disk(pts);
    if (meets_all(base)) return base;

    std::vector<Point> ends;
    for (const auto& f : F.features) {
        for (const Point p : {edges[f.edge].a, edges[f.edge].b}) {
            if (std::find(ends.begin(), ends.end(), p) == ends.end()) ends.push_back(p);
        }
    }
    std::optional<Disk> ds;
    auto consider = [&](const Disk& d) {
        if (meets_all(d) && (!ds || d.radius < ds->radius)) ds = d;
    };
    for (std::size_t a = 0; a < ends.size(); ++a) {
        for (std::size_t b = a + 1; b < ends.size(); ++b) {
            consider(min_circle_through(ends[a], ends[b]));
            for (std::size_t c = b + 1; c < ends.size(); ++c) consider(min_circle_through(ends[a], ends[b], ends[c]));
        }
    }
    if (!ds) return std::nullopt;
    std::vector<Point> support = pts;
    for (const auto e : E) support.push_back(closest_point_on_segment(edges[e], ds->center));
    return smallest_enclosing_disk(support);
}

Disk polish_disk(const PolyCurve& curve, Disk start, double* value, std::uint64_t* evaluations) {
    const auto edges = curve.edges();
    const auto verts = curve.vertices();
    std::uint64_t evals = 0;
    Point c = start.center;
    double r = start.radius;
    double cur = gamma_at(edges, c, r);
    ++evals;
    double step = 0.25 * r;

    Point best_c{};
    double best_r = 0.0, best_val = 0.0;
    bool moved = false;
    auto attempt = [&](Point nc, double nr) {
        if (!(nr > 0.0) || !is_finite(nc)) return;
        ++evals;
        const double g = gamma_at(edges, nc, nr);
        if (g > best_val + 1e-15 * std::abs(best_val)) {
            best_val = g;
            best_c = nc;
            best_r = nr;
            moved = true;
        }
    };

    constexpr int kDirections = 8;
    std::array<Point, kDirections> dirs;
    for (int k = 0; k < kDirections; ++k) {
        const double a = 2.0 * std::numbers::pi * k / kDirections;
        dirs[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }

    std::vector<std::pair<double, std::size_t>> near;
    for (int iter = 0; iter < 20000 && step > 1e-12 * r; ++iter) {
        best_val = cur;
        moved = false;
        for (const auto d : dirs) attempt(c + step * d, r);
        attempt(c, r + step);
        attempt(c, r - step);

        near.clear();
        for (std::size_t v = 0; v < verts.size(); ++v) {
            const double gap = std::abs(distance(c, verts[v]) - r);
            if (gap <= step) near.push_back({gap, v});
        }
        std::sort(near.begin(), near.end());
        if (near.size() > 6) near.resize(6);
        for (const auto& [gap, v] : near) {
            const Point p = verts[v];
            attempt(c, distance(c, p));
            for (const auto d : dirs) {
                const Point nc = c + step * d;
                attempt(nc, distance(nc, p));
            }
        }
        for (std::size_t a = 0; a < near.size(); ++a) {
            for (std::size_t b = a + 1; b < near.size(); ++b) {
                const Point p = verts[near[a].second], q = verts[near[b].second];
                const Point m = midpoint(p, q);
                const double len = distance(p, q);
                if (len <= 0.0) continue;
                const Point t{-(q.y - p.y) / len, (q.x - p.x) / len};
                const Point foot = m + dot(c - m, t) * t;
                attempt(foot, distance(foot, p));
                for (const double s : {step, -step}) {
                    const Point nc = foot + s * t;
                    attempt(nc, distance(nc, p));
                }
                for (std::size_t e = b + 1; e < near.size(); ++e) {
                    const Disk cc = circumcircle(p, q, verts[near[e].second]);
                    if (cc.radius > 0.0) attempt(cc.center, cc.radius);
                }
            }
        }
        if (moved) {
            c = best_c;
            r = best_r;
            cur = best_val;
        } else {
            step *= 0.5;
        }
    }
    if (value) *value = cur;
    if (evaluations) *evaluations += evals;
    return {c, r};
}

PackednessReport min_c_exact(const PolyCurve& curve, const ExactOptions& options) {
    Stopwatch clock;
    PackednessReport rep;
    rep.algorithm = "exact";
    const auto edges = curve.edges();
    const auto verts = curve.vertices();

    double best = 0.0;
    Disk witness;
    for (const auto& lc : oracle::limit_candidates(curve)) {
        if (lc.value > best) {
            best = lc.value;
            witness = {lc.point, 0.0};
        }
    }

    struct Candidate {
        double value;
        Disk disk;
    };
    const std::size_t m = edges.size();
    std::vector<std::vector<Candidate>> per_edge(m);
    std::vector<std::uint64_t> per_edge_events(m, 0);
    parallel_chunks(m, options.threads, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                for (const auto& [u, v] : base_pairs(curve, i, j)) {
                    run_base_pair(curve, u, v, [&](const ContactSet& F, const Disk&) {
                        const Event e = make_event(curve, F);
                        ++per_edge_events[i];
                        per_edge[i].push_back({e.value, e.disk});
                    });
                }
            }
        }
    });
    std::vector<Candidate> pool;
    for (std::size_t i = 0; i < m; ++i) {
        rep.events += per_edge_events[i];
        pool.insert(pool.end(), per_edge[i].begin(), per_edge[i].end());
    }
    rep.disks_evaluated += rep.events;

    for (std::size_t a = 0; a < verts.size(); ++a) {
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
            if (verts[a] == verts[b]) continue;
            const Disk d = diametral_disk(verts[a], verts[b]);
            pool.push_back({gamma_at(edges, d.center, d.radius), d});
            for (std::size_t c = b + 1; c < verts.size(); ++c) {
                const Disk cc = circumcircle(verts[a], verts[b], verts[c]);
                if (cc.radius > 0.0) pool.push_back({gamma_at(edges, cc.center, cc.radius), cc});
            }
        }
    }
    rep.disks_evaluated = pool.size();

    std::sort(pool.begin(), pool.end(), [](const Candidate& x, const Candidate& y) {
        if (x.value != y.value) return x.value > y.value;
        if (x.disk.radius != y.disk.radius) return x.disk.radius < y.disk.radius;
        if (x.disk.center.x != y.disk.center.x) return x.disk.center.x < y.disk.center.x;
        return x.disk.center.y < y.disk.center.y;
    });
    std::vector<Candidate> seeds;
    for (const auto& cand : pool) {
        if (seeds.size() >= options.polish_count) break;
        if (!(cand.disk.radius > 0.0)) continue;
        const bool duplicate = std::any_of(seeds.begin(), seeds.end(), [&](const Candidate& s) {
            const double tol = 1e-6 * std::max(s.disk.radius, cand.disk.radius);
            return std::abs(s.disk.radius - cand.disk.radius) <= tol && distance(s.disk.center, cand.disk.center) <= tol;
        });
        if (!duplicate) seeds.push_back(cand);
    }

    for (const auto& s : seeds) {
        if (s.value > best) {
            best = s.value;
            witness = s.disk;
        }
        double v = 0.0;
        const Disk d = polish_disk(curve, s.disk, &v, &rep.disks_evaluated);
        if (v > best) {
            best = v;
            witness = d;
        }
    }

    rep.c_estimate = best;
    rep.certified_lo = best;
    rep.certified_hi = best;
    rep.witness = witness;
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
}

Interval fat_bounds(double c_circle, double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("fat_bounds: alpha must be at least 1");
    if (!(c_circle >= 0.0)) throw std::invalid_argument("fat_bounds: c must be non-negative");
    return {c_circle / alpha, c_circle * alpha};
}

}  // namespace packedness
