#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "packedness/geometry.hpp"

namespace packedness {

/// Raised for malformed or invalid curve input. line() is 1-based, 0 when
/// the error is not tied to a particular input line.
class CurveError : public std::runtime_error {
public:
    explicit CurveError(const std::string& what, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A polygonal curve: one or more polylines ("parts"); edges never join
/// consecutive parts. A single part may be closed, in which case an extra
/// edge joins its last vertex back to its first.
class PolyCurve {
public:
    PolyCurve(std::vector<Point> vertices, bool closed = false);
    static PolyCurve from_parts(std::vector<std::vector<Point>> parts);

    std::span<const Point> vertices() const { return vertices_; }
    std::span<const Segment> edges() const { return edges_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_parts() const { return part_offsets_.size() - 1; }
    bool closed() const { return closed_; }

    /// Vertex indices of the endpoints of edge e.
    std::size_t edge_start(std::size_t e) const { return edge_ends_[e].first; }
    std::size_t edge_end(std::size_t e) const { return edge_ends_[e].second; }

    /// True when the two edges share a vertex (the same edge counts as adjacent).
    bool adjacent(std::size_t e1, std::size_t e2) const;

    /// Number of edges incident to vertex v (1 at path ends, 2 elsewhere).
    int degree(std::size_t v) const { return degree_[v]; }

    double length() const;

    /// Vertices of each part, in order.
    std::vector<std::vector<Point>> parts() const;

private:
    PolyCurve() = default;
    void build(std::vector<std::vector<Point>> parts, bool closed);

    std::vector<Point> vertices_;
    std::vector<Segment> edges_;
    std::vector<std::pair<std::size_t, std::size_t>> edge_ends_;
    std::vector<int> degree_;
    std::vector<std::size_t> part_offsets_;
    bool closed_ = false;
};

enum class CurveFormat { csv, json };

/// CSV: one "x,y" pair per line, '#' starts a comment, a blank line separates
/// parts. JSON: {"vertices": [[x,y],...], "closed": false} or
/// {"parts": [[[x,y],...], ...]}.
PolyCurve load_curve(std::istream& in, CurveFormat format);
PolyCurve load_curve_file(const std::string& path);
CurveFormat format_from_path(const std::string& path);

/// A point set in the curve formats (blank lines ignored) or as JSON
/// {"points": [[x,y],...]} or a bare [[x,y],...] array.
std::vector<Point> load_points(std::istream& in, CurveFormat format);
std::vector<Point> load_points_file(const std::string& path);

/// A closed curve is written with its first vertex repeated at the end.
void write_csv(std::ostream& out, const PolyCurve& curve);

struct CurveExtent {
    double diameter = 0.0;                 ///< L: max vertex-to-vertex distance
    std::optional<double> min_separation;  ///< delta: absent when no disjoint edge pair exists
};

CurveExtent extent(const PolyCurve& curve);

/// A vertex or crossing point together with the number of edge half-chords
/// incident to it (a segment passing straight through contributes 2).
struct Incidence {
    Point point;
    int half_edges = 0;
};

std::vector<Incidence> self_intersections(const PolyCurve& curve);

PolyCurve transformed(const PolyCurve& curve, double scale, double angle, Point shift);

}  // namespace packedness
