#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness {

struct ContactFeature {
    std::size_t edge = 0;
    Point point;
};

/// Two or three contact features defining a circle.
struct ContactSet {
    std::vector<ContactFeature> features;

    std::vector<Point> points() const;
};

struct Event {
    std::vector<std::size_t> edges;  ///< edges intersecting disk
    ContactSet contacts;
    Disk disk;
    double value = 0.0;
};

/// Edges whose closed distance to d's center is at most its radius.
std::vector<std::size_t> intersected_edges(const PolyCurve& curve, const Disk& d);

using CircleVisitor = std::function<void(const ContactSet&, const Disk&)>;

/// Contact sets of the dominance recurrence with their minimal circles, in
/// the same order as for_each_event and without building events.
void for_each_event_circle(const PolyCurve& curve, const CircleVisitor& visit);

/// Calls visit(event) for every event of the pairwise dominance recurrence.
/// Events are produced in a deterministic order.
void for_each_event(const PolyCurve& curve, const std::function<void(const Event&)>& visit);

std::vector<Event> enumerate_events(const PolyCurve& curve);

/// Largest disk realizing the combinatorial pair (E, F), or nullopt when no
/// candidate meets every edge of E.
std::optional<Disk> maximal_disk(std::span<const std::size_t> E, const ContactSet& F, const PolyCurve& curve);

struct ExactOptions {
    std::size_t polish_count = 32;
    unsigned threads = 1;
};

/// Local ascent of gamma from a starting disk, keeping vertices that sit on
/// the boundary there while steps shrink to a relative 1e-12.
Disk polish_disk(const PolyCurve& curve, Disk start, double* value = nullptr, std::uint64_t* evaluations = nullptr);

PackednessReport min_c_exact(const PolyCurve& curve, const ExactOptions& options = {});

/// Packedness range of an alpha-fat shape given the value for its inner disk.
Interval fat_bounds(double c_circle, double alpha);

}  // namespace packedness
