#include "packedness/geometry.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace packedness {

double clip_length(const Segment& s, const Disk& d) {
    const Point dir = s.b - s.a;
    const double len = norm(dir);
    if (len == 0.0 || d.radius <= 0.0) return 0.0;
    const Point u = (1.0 / len) * dir;
    const Point rel = d.center - s.a;
    const double t0 = dot(rel, u);
    const double h = std::abs(cross(u, rel));
    if (h >= d.radius) return 0.0;
    const double w = std::sqrt((d.radius - h) * (d.radius + h));
    const double lo = std::max(0.0, t0 - w);
    const double hi = std::min(len, t0 + w);
    return std::max(0.0, hi - lo);
}

Point closest_point_on_segment(const Segment& s, Point p) {
    const Point dir = s.b - s.a;
    const double len2 = dot(dir, dir);
    if (len2 == 0.0) return s.a;
    const double t = std::clamp(dot(p - s.a, dir) / len2, 0.0, 1.0);
    if (t == 0.0) return s.a;
    if (t == 1.0) return s.b;
    return s.at(t);
}

double point_segment_distance(Point p, const Segment& s) {
    return distance(p, closest_point_on_segment(s, p));
}

namespace {

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), std::abs(c.x - a.x),
                                   std::abs(c.y - a.y)});
    if (std::abs(v) <= 1e-14 * scale * scale) return 0;
    return v > 0 ? 1 : -1;
}

bool on_segment(Point p, const Segment& s) {
    return std::min(s.a.x, s.b.x) - 1e-14 * (1 + std::abs(p.x)) <= p.x &&
           p.x <= std::max(s.a.x, s.b.x) + 1e-14 * (1 + std::abs(p.x)) &&
           std::min(s.a.y, s.b.y) - 1e-14 * (1 + std::abs(p.y)) <= p.y &&
           p.y <= std::max(s.a.y, s.b.y) + 1e-14 * (1 + std::abs(p.y));
}

}  // namespace

bool segment_intersection(const Segment& s1, const Segment& s2, Point& out) {
    const int o1 = orientation(s1.a, s1.b, s2.a);
    const int o2 = orientation(s1.a, s1.b, s2.b);
    const int o3 = orientation(s2.a, s2.b, s1.a);
    const int o4 = orientation(s2.a, s2.b, s1.b);
    const bool degenerate1 = s1.a == s1.b;
    const bool degenerate2 = s2.a == s2.b;

    if (degenerate1 || degenerate2) {
        const Point p = degenerate1 ? s1.a : s2.a;
        const Segment& other = degenerate1 ? s2 : s1;
        if (orientation(other.a, other.b, p) == 0 && on_segment(p, other)) {
            out = p;
            return true;
        }
        return false;
    }

    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && !(o1 == 0 && o2 == 0)) {
        // Proper crossing or touching at an endpoint.
        if (o1 == 0) { out = s2.a; return true; }
        if (o2 == 0) { out = s2.b; return true; }
        if (o3 == 0) { out = s1.a; return true; }
        if (o4 == 0) { out = s1.b; return true; }
        const Point d1 = s1.b - s1.a;
        const Point d2 = s2.b - s2.a;
        const double t = cross(s2.a - s1.a, d2) / cross(d1, d2);
        out = s1.at(std::clamp(t, 0.0, 1.0));
        return true;
    }

    if (o1 == 0 && o2 == 0) {
        // Collinear: intersect the parameter intervals along s1.
        const Point d1 = s1.b - s1.a;
        const double len2 = dot(d1, d1);
        double ta = dot(s2.a - s1.a, d1) / len2;
        double tb = dot(s2.b - s1.a, d1) / len2;
        if (ta > tb) std::swap(ta, tb);
        const double lo = std::max(0.0, ta);
        const double hi = std::min(1.0, tb);
        if (lo > hi) return false;
        out = s1.at(0.5 * (lo + hi));
        return true;
    }
    return false;
}

ClosestPair closest_points(const Segment& s1, const Segment& s2) {
    Point hit;
    if (segment_intersection(s1, s2, hit)) return {hit, hit, 0.0};

    ClosestPair best{s1.a, closest_point_on_segment(s2, s1.a), 0.0};
    best.distance = distance(best.on_first, best.on_second);
    auto consider = [&best](Point p1, Point p2) {
        const double d = distance(p1, p2);
        if (d < best.distance) best = {p1, p2, d};
    };
    consider(s1.b, closest_point_on_segment(s2, s1.b));
    consider(closest_point_on_segment(s1, s2.a), s2.a);
    consider(closest_point_on_segment(s1, s2.b), s2.b);
    return best;
}

Disk diametral_disk(Point p, Point q) { return {midpoint(p, q), 0.5 * distance(p, q)}; }

Disk circumcircle(Point p, Point q, Point r) {
    const Point b = q - p;
    const Point c = r - p;
    const double d = 2.0 * cross(b, c);
    const double bb = dot(b, b);
    const double cc = dot(c, c);
    if (std::abs(d) <= 1e-14 * std::sqrt(bb * cc) || d == 0.0) return {p, -1.0};
    const Point u{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
    return {p + u, norm(u)};
}

Disk min_circle_through(Point p, Point q) { return diametral_disk(p, q); }

Disk min_circle_through(Point p, Point q, Point r) {
    const std::array<Disk, 3> diam{diametral_disk(p, q), diametral_disk(p, r), diametral_disk(q, r)};
    const std::array<Point, 3> third{r, q, p};
    Disk best{p, -1.0};
    for (std::size_t i = 0; i < 3; ++i) {
        if (diam[i].contains(third[i], tolerance(diam[i].radius)) &&
            (best.radius < 0 || diam[i].radius < best.radius)) {
            best = diam[i];
        }
    }
    if (best.radius >= 0) return best;
    const Disk cc = circumcircle(p, q, r);
    if (cc.radius >= 0) return cc;
    // Collinear triple: diametral disk of the extreme pair.
    return *std::max_element(diam.begin(), diam.end(),
                             [](const Disk& a, const Disk& b) { return a.radius < b.radius; });
}

namespace {

bool encloses(const Disk& d, Point p) { return d.contains(p, tolerance(d.radius)); }

Disk enclosing_with_two(const std::vector<Point>& pts, std::size_t end, Point p, Point q) {
    const Disk base = diametral_disk(p, q);
    Disk left{p, -1.0};
    Disk right{p, -1.0};
    const Point pq = q - p;
    for (std::size_t i = 0; i < end; ++i) {
        const Point r = pts[i];
        if (encloses(base, r)) continue;
        const double side = cross(pq, r - p);
        const Disk c = circumcircle(p, q, r);
        if (c.radius < 0) continue;
        const double center_side = cross(pq, c.center - p);
        if (side > 0 && (left.radius < 0 || center_side > cross(pq, left.center - p))) {
            left = c;
        } else if (side < 0 && (right.radius < 0 || center_side < cross(pq, right.center - p))) {
            right = c;
        }
    }
    if (left.radius < 0 && right.radius < 0) return base;
    if (left.radius < 0) return right;
    if (right.radius < 0) return left;
    return left.radius <= right.radius ? left : right;
}

Disk enclosing_with_one(const std::vector<Point>& pts, std::size_t end, Point p) {
    Disk d{p, 0.0};
    for (std::size_t i = 0; i < end; ++i) {
        const Point q = pts[i];
        if (encloses(d, q)) continue;
        d = d.radius == 0.0 ? diametral_disk(p, q) : enclosing_with_two(pts, i + 1, p, q);
    }
    return d;
}

}  // namespace

Disk smallest_enclosing_disk(std::span<const Point> points) {
    if (points.empty()) return {{0.0, 0.0}, 0.0};
    std::vector<Point> pts(points.begin(), points.end());
    std::mt19937 rng(0x5eedu);
    std::shuffle(pts.begin(), pts.end(), rng);
    Disk d{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!encloses(d, pts[i])) d = enclosing_with_one(pts, i, pts[i]);
    }
    return d;
}

Point min_circle_point_on_segment(Point p, Point q, const Segment& s) {
    const Disk diam = diametral_disk(p, q);
    const Point nearest = closest_point_on_segment(s, diam.center);
    if (diam.contains(nearest, tolerance(diam.radius))) return nearest;
    if (s.a == s.b) return s.a;

    auto radius_at = [&](double t) { return min_circle_through(p, q, s.at(t)).radius; };
    // The sublevel sets of the enclosing radius are convex, so the radius is
    // unimodal along s and golden-section search applies.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = 1.0;
    double m1 = hi - inv_phi * (hi - lo);
    double m2 = lo + inv_phi * (hi - lo);
    double f1 = radius_at(m1);
    double f2 = radius_at(m2);
    while (hi - lo > 1e-12) {
        if (f1 <= f2) {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - inv_phi * (hi - lo);
            f1 = radius_at(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + inv_phi * (hi - lo);
            f2 = radius_at(m2);
        }
    }
    double best_t = 0.5 * (lo + hi);
    double best_r = radius_at(best_t);
    for (double t : {0.0, 1.0}) {
        const double r = radius_at(t);
        if (r <= best_r) {
            best_r = r;
            best_t = t;
        }
    }
    if (best_t == 0.0) return s.a;
    if (best_t == 1.0) return s.b;
    return s.at(best_t);
}

}  // namespace packedness
