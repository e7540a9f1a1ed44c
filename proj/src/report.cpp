#include "packedness/report.hpp"

namespace packedness {

nlohmann::json to_json(const PackednessReport& r) {
    return {
        {"algorithm", r.algorithm},
        {"c_estimate", r.c_estimate},
        {"certified_lo", r.certified_lo},
        {"certified_hi", r.certified_hi},
        {"witness", {{"cx", r.witness.center.x}, {"cy", r.witness.center.y}, {"r", r.witness.radius}}},
        {"counters", {{"events", r.events}, {"disks_evaluated", r.disks_evaluated}, {"rounds", r.rounds}}},
        {"wall_time_ms", r.wall_time_ms},
    };
}

}  // namespace packedness
