#pragma once

#include <cstdint>
#include <vector>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness {

struct RadiusLadder {
    std::vector<double> radii;
};

/// delta (1 + eps)^i for i = 0 .. ceil(log_{1+eps}(L / delta)).
/// Throws PreconditionError when delta is absent.
RadiusLadder radius_ladder(const CurveExtent& extent, double epsilon);

struct SweepResult {
    double gamma_max = 0.0;
    Point center;
    std::uint64_t events = 0;
    std::uint64_t evaluations = 0;
};

/// Best radius-r disk centered on the curve.
SweepResult sweep_fixed_radius(const PolyCurve& curve, double r);

struct SweepOptions {
    /// When delta is absent, start the ladder at fallback_ladder_start
    /// instead of failing.
    bool fallback_scale = false;
};

/// Half the smallest edge length or positive vertex-to-non-incident-edge distance.
double fallback_ladder_start(const PolyCurve& curve);

PackednessReport min_c_sweep(const PolyCurve& curve, double epsilon, const SweepOptions& options = {});

}  // namespace packedness
