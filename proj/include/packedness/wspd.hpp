#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness {

struct WspdPair {
    std::vector<std::size_t> A;
    std::vector<std::size_t> B;
    double rho = 0.0;  ///< common radius of the two containing disks
    std::size_t rep_a = 0;
    std::size_t rep_b = 0;
};

/// s-well-separated pair decomposition over a fair-split tree. Every pair of
/// points at distinct locations is covered by exactly one WspdPair.
/// Representatives are the lowest index of each set.
std::vector<WspdPair> build_wspd(std::span<const Point> points, double s);

/// Two disks per pair, one centered at each representative. The radius is
/// the farthest pair point from the representative plus twice the spread of
/// the representative's own set.
std::vector<Disk> candidate_disks(std::span<const WspdPair> pairs, std::span<const Point> points);

PackednessReport min_c_wspd(const PolyCurve& curve, double epsilon);

}  // namespace packedness
