#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "packedness/curve.hpp"
#include "packedness/report.hpp"

namespace packedness::cli {

enum ExitCode { kOk = 0, kUsage = 2, kPrecondition = 3 };

struct AlgoParams {
    std::string algo;
    std::optional<double> epsilon;
    std::optional<double> eta;
    std::vector<Point> anchors;
    bool have_anchors = false;
    unsigned threads = 1;
    bool fallback_scale = false;
    double c_mem = 16.0;
    bool vertex_radii_only = false;
};

/// Throws std::invalid_argument when a required parameter is missing or a
/// parameter does not apply to the algorithm.
void validate(const AlgoParams& p);

/// Runs one algorithm and returns the report as JSON (certified_hi is null
/// when no finite upper bound is certified).
nlohmann::json run_algorithm(const PolyCurve& curve, const AlgoParams& p);

/// Full command line without the program name; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace packedness::cli
