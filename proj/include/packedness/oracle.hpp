#pragma once

#include <cstdint>
#include <vector>

#include "packedness/curve.hpp"

namespace packedness::oracle {

/// Packedness of a single disk: curve length inside d divided by its radius.
/// Throws std::invalid_argument for radius <= 0.
double gamma(const Disk& d, const PolyCurve& curve);

struct LimitCandidate {
    Point point;
    double value = 0.0;  ///< number of incident half-chords
};

/// Zero-radius limit packedness at every vertex and self-intersection.
std::vector<LimitCandidate> limit_candidates(const PolyCurve& curve);

struct OracleConfig {
    int grid_cells_per_axis = 64;
    int radii_count = 64;
    bool include_feature_centers = true;
};

struct OracleResult {
    double value = 0.0;
    Disk witness;
    std::uint64_t probes = 0;
};

/// Brute-force lower bound on the minimum packedness constant: the best
/// probe over a center grid spanning the bounding box inflated by L, feature
/// centers, geometric radii in [delta/2, 2L] plus per-center vertex
/// distances, and the zero-radius limit values.
/// Throws std::invalid_argument when a resolution is below 8.
OracleResult brute_min_c(const PolyCurve& curve, const OracleConfig& cfg);

}  // namespace packedness::oracle
