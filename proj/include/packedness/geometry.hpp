#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace packedness {

/// Relative-plus-absolute tolerance used by every comparison in the library.
inline constexpr double kTolerance = 1e-9;

inline double tolerance(double magnitude) { return kTolerance * (1.0 + std::abs(magnitude)); }

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
    Point a;
    Point b;

    double length() const { return distance(a, b); }
    Point at(double t) const { return a + t * (b - a); }
};

/// Radius 0 is allowed and denotes the limit (point) disk.
struct Disk {
    Point center;
    double radius = 0.0;

    bool contains(Point p, double slack = 0.0) const {
        return distance(center, p) <= radius + slack;
    }
};

/// Length of s inside the closed disk d. Zero-length segments contribute 0.
double clip_length(const Segment& s, const Disk& d);

struct ClosestPair {
    Point on_first;
    Point on_second;
    double distance = 0.0;
};

/// Closest points between two segments; distance 0 iff they intersect.
ClosestPair closest_points(const Segment& s1, const Segment& s2);

/// Closest point of s to p.
Point closest_point_on_segment(const Segment& s, Point p);
double point_segment_distance(Point p, const Segment& s);

/// Intersection point of two segments, if they meet in a single point.
/// Collinear overlaps report one representative point of the overlap.
bool segment_intersection(const Segment& s1, const Segment& s2, Point& out);

Disk diametral_disk(Point p, Point q);

/// Circle through three points; returns radius < 0 for (near) collinear input.
Disk circumcircle(Point p, Point q, Point r);

/// Smallest disk containing two points.
Disk min_circle_through(Point p, Point q);
/// Smallest disk containing three points: diametral for obtuse/right/collinear
/// triples, circumcircle otherwise.
Disk min_circle_through(Point p, Point q, Point r);

/// Minimal enclosing disk, randomized incremental construction with a fixed
/// shuffle seed so results are reproducible.
Disk smallest_enclosing_disk(std::span<const Point> points);

/// Point z on s minimizing the radius of min_circle_through(p, q, z).
Point min_circle_point_on_segment(Point p, Point q, const Segment& s);

}  // namespace packedness
