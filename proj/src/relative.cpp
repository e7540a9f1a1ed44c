#include "packedness/relative.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "packedness/parallel.hpp"

namespace packedness {

namespace detail {

AnchorFrame anchor_frame(Point p, const Segment& e) {
    AnchorFrame f;
    f.len = e.length();
    const Point ra = p - e.a, rb = p - e.b;
    f.da = std::sqrt(dot(ra, ra));
    f.db = std::sqrt(dot(rb, rb));
    if (f.len > 0.0) {
        const Point dir = (1.0 / f.len) * (e.b - e.a);
        const Point rel = p - e.a;
        f.t0 = dot(rel, dir);
        f.h = std::abs(cross(dir, rel));
        if (f.h <= 1e-12 * (f.len + std::abs(f.t0))) f.h = 0.0;
    } else {
        f.h = f.da;
    }
    if (f.t0 <= 0.0) {
        f.dseg = f.da;
    } else if (f.t0 >= f.len) {
        f.dseg = f.db;
    } else {
        f.dseg = std::min({f.h, f.da, f.db});
    }
    return f;
}

}  // namespace detail

namespace {

using detail::AnchorFrame;

struct Best {
    double value = 0.0;
    Disk disk;
    std::uint64_t events = 0;
    std::uint64_t evaluations = 0;

    void offer(double v, Point c, double r) {
        if (v > value) {
            value = v;
            disk = {c, r};
        }
    }
};

// Incremental sweep of one anchor. Between consecutive event radii each
// entered edge contributes c_e + m_e * sqrt(r^2 - h_e^2).
class AnchorSweep {
public:
    AnchorSweep(std::span<const Segment> edges, bool refine) : edges_(edges), refine_(refine) {
        frames_.resize(edges.size());
        state_.resize(edges.size());
        total_ = 0.0;
        for (const auto& e : edges) {
            const double len = e.length();
            total_ += len;
            lengths_.push_back(len);
            dirs_.push_back(len > 0.0 ? (1.0 / len) * (e.b - e.a) : Point{1.0, 0.0});
        }
        min_r_ = 1e-12 * total_;
    }

    void run(Point p, Best& best) {
        const std::size_t m = edges_.size();
        events_.clear();
        const double cutoff = best.value > 0.0 ? total_ / best.value : std::numeric_limits<double>::infinity();
        beyond_ = std::numeric_limits<double>::infinity();
        auto push = [&](double r, std::size_t code) {
            if (r <= cutoff) {
                events_.push_back({r, static_cast<std::uint32_t>(code)});
            } else {
                beyond_ = std::min(beyond_, r);
            }
        };
        const double cutoff_sq = cutoff * cutoff;
        for (std::size_t i = 0; i < m; ++i) {
            state_[i] = {};
            const Segment& e = edges_[i];
            const Point ra = p - e.a;
            const double t0 = dot(ra, dirs_[i]);
            const double len = lengths_[i];
            double near_sq;
            if (t0 <= 0.0) {
                near_sq = dot(ra, ra);
            } else if (t0 >= len) {
                const Point rb = p - e.b;
                near_sq = dot(rb, rb);
            } else {
                const double h = cross(dirs_[i], ra);
                near_sq = h * h;
            }
            if (near_sq > cutoff_sq) {
                beyond_ = std::min(beyond_, std::sqrt(near_sq));
                continue;
            }
            frames_[i] = detail::anchor_frame(p, e);
            const auto& f = frames_[i];
            push(f.dseg, 3 * i);
            push(f.da, 3 * i + 1);
            push(f.db, 3 * i + 2);
        }
        cut_.clear();
        k_sum_ = 0.0;
        inside_len_ = 0.0;
        if (events_.empty()) return;

        // Events are bucketed by radius; a bucket is sorted only when its
        // length bound can beat the current best.
        double r_max = 0.0;
        for (const auto& ev : events_) r_max = std::max(r_max, ev.first);
        const std::size_t buckets = events_.size() / 4 + 1;
        const double width = r_max > 0.0 ? r_max / static_cast<double>(buckets) : 1.0;
        auto bucket_of = [&](double r) { return std::min(buckets - 1, static_cast<std::size_t>(r / width)); };
        offsets_.assign(buckets + 1, 0);
        for (const auto& ev : events_) ++offsets_[bucket_of(ev.first) + 1];
        for (std::size_t b = 0; b < buckets; ++b) offsets_[b + 1] += offsets_[b];
        sorted_.resize(events_.size());
        fill_ = offsets_;
        for (const auto& ev : events_) sorted_[fill_[bucket_of(ev.first)]++] = ev;

        auto next_radius = [&](std::size_t b) {
            for (; b < buckets; ++b) {
                if (offsets_[b] == offsets_[b + 1]) continue;
                double r = std::numeric_limits<double>::infinity();
                for (std::size_t i = offsets_[b]; i < offsets_[b + 1]; ++i) r = std::min(r, sorted_[i].first);
                return r;
            }
            return beyond_;
        };

        for (std::size_t b = 0; b < buckets; ++b) {
            const std::size_t first = offsets_[b], last = offsets_[b + 1];
            if (first == last) continue;
            const double floor_r = static_cast<double>(b) * width;
            if (floor_r > 0.0 && total_ / floor_r <= best.value) break;
            double bound_len = inside_len_;
            for (std::size_t i = first; i < last; ++i) {
                if (sorted_[i].second % 3 == 0) bound_len += frames_[sorted_[i].second / 3].len;
            }
            if (floor_r > 0.0 && bound_len / floor_r <= best.value) {
                for (std::size_t i = first; i < last; ++i) apply(sorted_[i].second);
                best.events += last - first;
                continue;
            }
            std::sort(sorted_.begin() + static_cast<std::ptrdiff_t>(first), sorted_.begin() + static_cast<std::ptrdiff_t>(last));
            std::size_t idx = first;
            while (idx < last) {
                const double r = sorted_[idx].first;
                while (idx < last && sorted_[idx].first == r) {
                    apply(sorted_[idx].second);
                    ++idx;
                    ++best.events;
                }
                if (r > min_r_ && inside_len_ / r <= best.value) continue;
                if (r > min_r_) {
                    ++best.evaluations;
                    best.offer(gamma(r), p, r);
                }
                if (!refine_ || cut_.empty()) continue;
                const double r_next = idx < last ? sorted_[idx].first : next_radius(b + 1);
                refine_interval(p, r, r_next, best);
            }
        }
    }

private:
    struct EdgeState {
        bool entered = false;
        bool a_in = false;
        bool b_in = false;
        double c = 0.0;
        int m = 0;
        std::size_t cut_pos = kNone;
    };
    struct Cut {
        double m;
        double h;
        std::size_t edge;
    };
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    void apply(std::uint32_t code) {
        const std::size_t e = code / 3;
        auto& s = state_[e];
        const auto& f = frames_[e];
        switch (code % 3) {
            case 0:
                s.entered = true;
                inside_len_ += f.len;
                break;
            case 1:
                s.a_in = true;
                break;
            default:
                s.b_in = true;
                break;
        }
        if (!s.entered) return;
        k_sum_ -= s.c;
        s.c = (s.b_in ? f.len : f.t0) - (s.a_in ? 0.0 : f.t0);
        s.m = (s.a_in ? 0 : 1) + (s.b_in ? 0 : 1);
        k_sum_ += s.c;
        if (s.m > 0) {
            if (s.cut_pos == kNone) {
                s.cut_pos = cut_.size();
                cut_.push_back({0.0, f.h, e});
            }
            cut_[s.cut_pos].m = s.m;
        } else if (s.cut_pos != kNone) {
            const std::size_t pos = s.cut_pos;
            cut_[pos] = cut_.back();
            state_[cut_[pos].edge].cut_pos = pos;
            cut_.pop_back();
            s.cut_pos = kNone;
        }
    }

    double length_at(double r) const {
        double total = k_sum_;
        for (const auto& c : cut_) total += c.m * std::sqrt(std::max(0.0, (r - c.h) * (r + c.h)));
        return total;
    }

    double gamma(double r) const { return length_at(r) / r; }

    // Sign-carrying numerator of d gamma / dr, decreasing in r.
    double slope(double r) const {
        double total = -k_sum_;
        for (const auto& c : cut_) {
            if (c.h == 0.0) continue;
            const double w = std::sqrt(std::max(0.0, (r - c.h) * (r + c.h)));
            total += w > 0.0 ? c.m * c.h * c.h / w : std::numeric_limits<double>::infinity();
        }
        return total;
    }

    void refine_interval(Point p, double lo, double hi, Best& best) {
        if (std::isfinite(hi)) {
            if (length_at(hi) / lo <= best.value) return;
            if (slope(hi) >= 0.0) return;
            if (slope(lo + 1e-9 * (hi - lo)) <= 0.0) return;
        } else {
            if (!(lo > 0.0) || slope(lo) <= 0.0) return;
            hi = 2.0 * lo;
            while (slope(hi) > 0.0) hi *= 2.0;
        }
        while (hi - lo > 1e-12 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (slope(mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double r = 0.5 * (lo + hi);
        if (r > min_r_) {
            ++best.evaluations;
            best.offer(gamma(r), p, r);
        }
    }

    std::span<const Segment> edges_;
    bool refine_;
    double total_ = 0.0;
    std::vector<double> lengths_;
    std::vector<Point> dirs_;
    std::vector<AnchorFrame> frames_;
    std::vector<EdgeState> state_;
    std::vector<std::pair<double, std::uint32_t>> events_;
    std::vector<std::pair<double, std::uint32_t>> sorted_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> fill_;
    std::vector<Cut> cut_;
    double k_sum_ = 0.0;
    double inside_len_ = 0.0;
    double beyond_ = 0.0;
    double min_r_ = 0.0;
};

// Maximum of (sum of frame_clip)/r on the open interval (lo, hi), where no
// edge changes regime; the slope numerator is decreasing there.
double direct_slope(std::span<const AnchorFrame> frames, double r) {
    double length = 0.0, rate = 0.0;
    for (const auto& f : frames) {
        if (r <= f.dseg) continue;
        length += detail::frame_clip(f, r);
        const double w = std::sqrt(std::max(0.0, (r - f.h) * (r + f.h)));
        if (w <= 0.0) continue;
        const int moving = (f.t0 - w > 0.0 ? 1 : 0) + (f.t0 + w < f.len ? 1 : 0);
        rate += moving * r / w;
    }
    return r * rate - length;
}

double direct_length(std::span<const AnchorFrame> frames, double r) {
    double total = 0.0;
    for (const auto& f : frames) total += detail::frame_clip(f, r);
    return total;
}

}  // namespace

PackednessReport s_relative_exact(const PolyCurve& curve, std::span<const Point> S) {
    if (S.empty()) throw std::invalid_argument("s_relative_exact: anchor set must be nonempty");
    Stopwatch clock;
    const auto edges = curve.edges();
    double total = 0.0;
    for (const auto& e : edges) total += e.length();
    Best best;
    std::vector<AnchorFrame> frames(edges.size());
    std::vector<double> radii;
    for (const Point p : S) {
        if (!is_finite(p)) throw std::invalid_argument("s_relative_exact: anchors must be finite");
        radii.clear();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            frames[i] = detail::anchor_frame(p, edges[i]);
            radii.insert(radii.end(), {frames[i].dseg, frames[i].da, frames[i].db});
        }
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        best.events += radii.size();
        for (std::size_t k = 0; k < radii.size(); ++k) {
            const double lo = radii[k] > 1e-12 * total ? radii[k] : 0.0;
            if (lo > 0.0 && total / lo <= best.value) break;
            if (lo > 0.0) {
                ++best.evaluations;
                best.offer(direct_length(frames, lo) / lo, p, lo);
            }
            double a = lo, b = k + 1 < radii.size() ? radii[k + 1] : std::max(2.0 * lo, 1.0);
            if (k + 1 == radii.size()) continue;
            if (lo > 0.0 && direct_length(frames, b) / lo <= best.value) continue;
            const double probe_lo = a + 1e-9 * (b - a);
            const double probe_hi = b - 1e-9 * (b - a);
            if (direct_slope(frames, probe_hi) >= 0.0 || direct_slope(frames, probe_lo) <= 0.0) continue;
            while (b - a > 1e-12 * b) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                if (direct_slope(frames, mid) > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            const double r = 0.5 * (a + b);
            ++best.evaluations;
            best.offer(direct_length(frames, r) / r, p, r);
        }
    }
    PackednessReport rep;
    rep.algorithm = "s-relative";
    rep.c_estimate = best.value;
    rep.certified_lo = best.value;
    rep.certified_hi = best.value;
    rep.witness = best.disk;
    rep.events = best.events;
    rep.disks_evaluated = best.evaluations;
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
}

PackednessReport vertex_relative(const PolyCurve& curve, const VertexRelativeOptions& options) {
    Stopwatch clock;
    const auto edges = curve.edges();
    const auto verts = curve.vertices();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, verts.size()));
    std::vector<Best> partial(workers);
    parallel_chunks(verts.size(), options.threads, [&](std::size_t lo, std::size_t hi, std::size_t w) {
        AnchorSweep sweep(edges, options.refine);
        for (std::size_t v = lo; v < hi; ++v) sweep.run(verts[v], partial[w]);
    });
    Best best;
    for (const auto& b : partial) {
        best.events += b.events;
        best.evaluations += b.evaluations;
        if (b.value > best.value) {
            best.value = b.value;
            best.disk = b.disk;
        }
    }
    PackednessReport rep;
    rep.algorithm = options.refine ? "vertex-relative" : "vertex-relative-events";
    rep.c_estimate = best.value;
    rep.certified_lo = best.value;
    rep.certified_hi = best.value;
    rep.witness = best.disk;
    rep.events = best.events;
    rep.disks_evaluated = best.evaluations;
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
}

Interval packedness_bounds_from_vr(double c_vr) {
    if (!(c_vr >= 0.0)) throw std::invalid_argument("packedness_bounds_from_vr: c_vr must be non-negative");
    return {c_vr, 2.0 * c_vr};
}

}  // namespace packedness
