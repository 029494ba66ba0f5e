#pragma once

#include <affdyn/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace affdyn {

/// Forward return-time window: the n in [0, window] whose orbit point
/// lies eps-close to the base point. Strictly increasing, deduplicated.
struct ReturnTimeSet {
    std::int64_t window = 0;
    std::vector<std::int64_t> times;

    friend bool operator==(const ReturnTimeSet& a, const ReturnTimeSet& b) {
        return a.window == b.window && a.times == b.times;
    }
    friend bool operator!=(const ReturnTimeSet& a, const ReturnTimeSet& b) { return !(a == b); }
};

inline void require_eps(const Rat& eps) {
    if (!(eps > 0) || !(eps < Rat(1, 2)))
        throw std::domain_error("eps must satisfy 0 < eps < 1/2");
}

/// max over coordinates of the circle distance; the common metric for
/// torus points and fundamental-domain representatives.
inline Rat max_circle_dist(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("point dimension mismatch");
    Rat m(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rat d = circle_dist(a[i], b[i]);
        if (d > m) m = d;
    }
    return m;
}

}  // namespace affdyn
