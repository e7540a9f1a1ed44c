#include "packedness/curve.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace packedness {

CurveError::CurveError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

PolyCurve::PolyCurve(std::vector<Point> vertices, bool closed) {
    std::vector<std::vector<Point>> parts;
    parts.push_back(std::move(vertices));
    build(std::move(parts), closed);
}

PolyCurve PolyCurve::from_parts(std::vector<std::vector<Point>> parts) {
    PolyCurve c;
    c.build(std::move(parts), false);
    return c;
}

void PolyCurve::build(std::vector<std::vector<Point>> parts, bool closed) {
    if (parts.empty()) throw CurveError("curve has no vertices");
    if (closed && parts.size() != 1) throw CurveError("only single-part curves can be closed");
    closed_ = closed;
    part_offsets_.assign(1, 0);
    for (const auto& part : parts) {
        if (part.size() < 2) throw CurveError("each part needs at least 2 vertices");
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (!is_finite(part[i])) throw CurveError("non-finite coordinate");
            if (i > 0 && part[i] == part[i - 1]) throw CurveError("duplicate consecutive vertex");
        }
        const std::size_t base = vertices_.size();
        vertices_.insert(vertices_.end(), part.begin(), part.end());
        for (std::size_t i = 0; i + 1 < part.size(); ++i) edge_ends_.emplace_back(base + i, base + i + 1);
        part_offsets_.push_back(vertices_.size());
    }
    if (closed_) {
        if (vertices_.size() < 3) throw CurveError("closed curve needs at least 3 vertices");
        if (vertices_.back() == vertices_.front()) throw CurveError("duplicate consecutive vertex");
        edge_ends_.emplace_back(vertices_.size() - 1, 0);
    }
    degree_.assign(vertices_.size(), 0);
    edges_.reserve(edge_ends_.size());
    for (const auto& [u, v] : edge_ends_) {
        edges_.push_back({vertices_[u], vertices_[v]});
        ++degree_[u];
        ++degree_[v];
    }
}

bool PolyCurve::adjacent(std::size_t e1, std::size_t e2) const {
    const auto& [a1, b1] = edge_ends_[e1];
    const auto& [a2, b2] = edge_ends_[e2];
    return a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
}

double PolyCurve::length() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.length();
    return total;
}

std::vector<std::vector<Point>> PolyCurve::parts() const {
    std::vector<std::vector<Point>> out;
    for (std::size_t p = 0; p + 1 < part_offsets_.size(); ++p) {
        out.emplace_back(vertices_.begin() + static_cast<std::ptrdiff_t>(part_offsets_[p]),
                         vertices_.begin() + static_cast<std::ptrdiff_t>(part_offsets_[p + 1]));
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, std::size_t line) {
    const std::string t = trim(token);
    if (t.empty()) throw CurveError("missing coordinate", line);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) throw CurveError("invalid number '" + t + "'", line);
    if (!std::isfinite(v)) throw CurveError("non-finite coordinate", line);
    return v;
}

PolyCurve load_csv(std::istream& in) {
    std::vector<std::vector<Point>> parts(1);
    std::vector<std::size_t> part_first_line(1, 0);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (raw.find_first_not_of(" \t\r") == std::string::npos) {
            if (!parts.back().empty()) {
                parts.emplace_back();
                part_first_line.push_back(0);
            }
            continue;
        }
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto comma = body.find(',');
        if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos) {
            throw CurveError("expected 'x,y'", line);
        }
        const Point p{parse_number(body.substr(0, comma), line), parse_number(body.substr(comma + 1), line)};
        auto& part = parts.back();
        if (!part.empty() && part.back() == p) throw CurveError("duplicate consecutive vertex", line);
        if (part.empty()) part_first_line.back() = line;
        part.push_back(p);
    }
    if (parts.back().empty()) {
        parts.pop_back();
        part_first_line.pop_back();
    }
    if (parts.empty()) throw CurveError("fewer than 2 vertices");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].size() < 2) throw CurveError("part has fewer than 2 vertices", part_first_line[i]);
    }
    return PolyCurve::from_parts(std::move(parts));
}

std::vector<Point> json_points(const nlohmann::json& arr) {
    if (!arr.is_array()) throw CurveError("expected an array of [x,y] pairs");
    std::vector<Point> pts;
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw CurveError("vertex " + std::to_string(pts.size()) + " is not an [x,y] pair");
        }
        pts.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return pts;
}

PolyCurve load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CurveError(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw CurveError("expected a JSON object");
    if (doc.contains("closed") && !doc["closed"].is_boolean()) throw CurveError("\"closed\" must be a boolean");
    const bool closed = doc.contains("closed") && doc["closed"].get<bool>();
    if (doc.contains("parts")) {
        if (closed) throw CurveError("only single-part curves can be closed");
        if (!doc["parts"].is_array()) throw CurveError("\"parts\" must be an array");
        std::vector<std::vector<Point>> parts;
        for (const auto& p : doc["parts"]) parts.push_back(json_points(p));
        if (parts.empty()) throw CurveError("fewer than 2 vertices");
        return PolyCurve::from_parts(std::move(parts));
    }
    if (!doc.contains("vertices")) throw CurveError("missing \"vertices\"");
    auto pts = json_points(doc["vertices"]);
    if (pts.size() < 2) throw CurveError("fewer than 2 vertices");
    return PolyCurve(std::move(pts), closed);
}

}  // namespace

std::vector<Point> load_points(std::istream& in, CurveFormat format) {
    std::vector<Point> pts;
    if (format == CurveFormat::json) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw CurveError(std::string("JSON parse error: ") + e.what());
        }
        if (doc.is_object() && doc.contains("points")) {
            pts = json_points(doc["points"]);
        } else {
            pts = json_points(doc);
        }
    } else {
        std::string raw;
        std::size_t line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (body.empty()) continue;
            const auto comma = body.find(',');
            if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos) {
                throw CurveError("expected 'x,y'", line);
            }
            pts.push_back({parse_number(body.substr(0, comma), line), parse_number(body.substr(comma + 1), line)});
        }
    }
    for (const auto& p : pts) {
        if (!is_finite(p)) throw CurveError("non-finite coordinate");
    }
    if (pts.empty()) throw CurveError("no points");
    return pts;
}

std::vector<Point> load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CurveError("cannot open " + path);
    return load_points(in, format_from_path(path));
}

PolyCurve load_curve(std::istream& in, CurveFormat format) {
    return format == CurveFormat::csv ? load_csv(in) : load_json(in);
}

CurveFormat format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == "json") return CurveFormat::json;
    }
    return CurveFormat::csv;
}

PolyCurve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CurveError("cannot open " + path);
    return load_curve(in, format_from_path(path));
}

void write_csv(std::ostream& out, const PolyCurve& curve) {
    const auto old = out.precision(17);
    bool first = true;
    for (const auto& part : curve.parts()) {
        if (!first) out << '\n';
        first = false;
        for (const auto& p : part) out << p.x << ',' << p.y << '\n';
        if (curve.closed()) out << part.front().x << ',' << part.front().y << '\n';
    }
    out.precision(old);
}

CurveExtent extent(const PolyCurve& curve) {
    CurveExtent ext;
    const auto verts = curve.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            ext.diameter = std::max(ext.diameter, distance(verts[i], verts[j]));
        }
    }
    const auto edges = curve.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (curve.adjacent(i, j)) continue;
            const double d = closest_points(edges[i], edges[j]).distance;
            if (d <= 0.0) continue;
            if (!ext.min_separation || d < *ext.min_separation) ext.min_separation = d;
        }
    }
    return ext;
}

std::vector<Incidence> self_intersections(const PolyCurve& curve) {
    const auto verts = curve.vertices();
    const auto edges = curve.edges();
    double scale = 0.0;
    for (const auto& v : verts) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    const double eps = tolerance(scale);

    struct Entry {
        Point point;
        std::set<std::size_t> vertex_ids;
        std::set<std::size_t> through_edges;
    };
    std::vector<Entry> entries;
    auto locate = [&](Point p) -> Entry& {
        for (auto& e : entries) {
            if (distance(e.point, p) <= eps) return e;
        }
        entries.push_back({p, {}, {}});
        return entries.back();
    };

    for (std::size_t v = 0; v < verts.size(); ++v) locate(verts[v]).vertex_ids.insert(v);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (curve.adjacent(i, j)) continue;
            Point x;
            if (!segment_intersection(edges[i], edges[j], x)) continue;
            Entry& entry = locate(x);
            for (std::size_t e : {i, j}) {
                const bool at_end = distance(x, edges[e].a) <= eps || distance(x, edges[e].b) <= eps;
                if (!at_end) entry.through_edges.insert(e);
            }
        }
    }

    std::vector<Incidence> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        int count = 2 * static_cast<int>(e.through_edges.size());
        for (std::size_t v : e.vertex_ids) count += curve.degree(v);
        out.push_back({e.point, count});
    }
    return out;
}

PolyCurve transformed(const PolyCurve& curve, double scale, double angle, Point shift) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto parts = curve.parts();
    for (auto& part : parts) {
        for (auto& p : part) p = Point{scale * (c * p.x - s * p.y), scale * (s * p.x + c * p.y)} + shift;
    }
    if (curve.closed()) return PolyCurve(std::move(parts.front()), true);
    return PolyCurve::from_parts(std::move(parts));
}

}  // namespace packedness
