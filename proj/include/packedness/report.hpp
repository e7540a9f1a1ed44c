#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "packedness/geometry.hpp"

namespace packedness {

/// An algorithm's input requirement is not met (distinct from malformed input).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v, double slack = 0.0) const { return lo - slack <= v && v <= hi + slack; }
    double width() const { return hi - lo; }
};

/// Output of every packedness algorithm. The witness disk realizes
/// c_estimate; a radius-0 witness marks a zero-radius limit value.
struct PackednessReport {
    std::string algorithm;
    double c_estimate = 0.0;
    double certified_lo = 0.0;
    double certified_hi = 0.0;
    Disk witness;
    std::uint64_t events = 0;
    std::uint64_t disks_evaluated = 0;
    std::uint64_t rounds = 0;
    double wall_time_ms = 0.0;

    Interval certified() const { return {certified_lo, certified_hi}; }
};

nlohmann::json to_json(const PackednessReport& r);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace packedness
