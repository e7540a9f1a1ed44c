#pragma once

#include <cstdint>
#include <string>

#include "packedness/curve.hpp"

namespace packedness {

/// Unit-step random walk starting at the origin, n vertices.
PolyCurve gen_walk(std::size_t n, std::uint64_t seed);

/// Archimedean spiral with n vertices.
PolyCurve gen_spiral(std::size_t n);

/// Closed star polygon over n points on the unit circle.
PolyCurve gen_star(std::size_t n);

/// Serpentine path through the first n points of a square lattice.
PolyCurve gen_grid(std::size_t n);

/// n vertices with integer coordinates in [0, span]^2, no repeated consecutive vertex.
PolyCurve gen_integer(std::size_t n, std::uint64_t seed, int span = 32);

/// Dispatch by name: walk, spiral, star, grid, integer. Throws std::invalid_argument
/// for an unknown kind or n < 2 (n < 3 for star).
PolyCurve generate(const std::string& kind, std::size_t n, std::uint64_t seed);

}  // namespace packedness
