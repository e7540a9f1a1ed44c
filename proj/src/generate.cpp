#include "packedness/generate.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace packedness {

PolyCurve gen_walk(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    std::vector<Point> v{{0, 0}};
    while (v.size() < n) {
        const double a = angle(rng);
        v.push_back(v.back() + Point{std::cos(a), std::sin(a)});
    }
    return PolyCurve(std::move(v));
}

PolyCurve gen_spiral(std::size_t n) {
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 0.5 * static_cast<double>(i);
        v.push_back({(1 + t) * std::cos(t), (1 + t) * std::sin(t)});
    }
    return PolyCurve(std::move(v));
}

PolyCurve gen_star(std::size_t n) {
    std::size_t step = 1;
    for (std::size_t k = (n - 1) / 2; k > 1; --k) {
        if (std::gcd(n, k) == 1) {
            step = k;
            break;
        }
    }
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>((i * step) % n) / static_cast<double>(n);
        v.push_back({std::cos(a), std::sin(a)});
    }
    return PolyCurve(std::move(v), true);
}

PolyCurve gen_grid(std::size_t n) {
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = i / side;
        const std::size_t col = row % 2 == 0 ? i % side : side - 1 - i % side;
        v.push_back({static_cast<double>(col), static_cast<double>(row)});
    }
    return PolyCurve(std::move(v));
}

PolyCurve gen_integer(std::size_t n, std::uint64_t seed, int span) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, span);
    std::vector<Point> v;
    while (v.size() < n) {
        const Point p{static_cast<double>(u(rng)), static_cast<double>(u(rng))};
        if (!v.empty() && v.back() == p) continue;
        v.push_back(p);
    }
    return PolyCurve(std::move(v));
}

PolyCurve generate(const std::string& kind, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    if (kind == "walk") return gen_walk(n, seed);
    if (kind == "spiral") return gen_spiral(n);
    if (kind == "grid") return gen_grid(n);
    if (kind == "integer") return gen_integer(n, seed);
    if (kind == "star") {
        if (n < 3) throw std::invalid_argument("generate: star needs n >= 3");
        return gen_star(n);
    }
    throw std::invalid_argument("generate: unknown kind '" + kind + "'");
}

}  // namespace packedness
