#pragma once

#include <affdyn/nil_affine.hpp>
#include <affdyn/return_times.hpp>
#include <affdyn/torus.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace affdyn {

using SystemVariant = std::variant<TorusAffineMap, NilAffineMap>;
using PointVariant = std::variant<TorusPoint, NilPoint>;

/// Factor map between adjacent tower levels. Matrix: integer-matrix-
/// induced map between tori. Project: coordinate selection on a torus.
/// Corner: the level-forgetting projection UT(k+1) -> UT(k'+1).
struct FactorMap {
    enum class Kind { Matrix, Project, Corner };
    Kind kind = Kind::Project;
    IntMatrix matrix;                 // Kind::Matrix
    std::vector<std::size_t> coords;  // Kind::Project, 0-based
    std::size_t corner_k = 1;         // Kind::Corner

    /// Equivalent integer matrix of a torus factor map.
    IntMatrix as_matrix(std::size_t upper_dim) const {
        if (kind == Kind::Matrix) return matrix;
        if (kind == Kind::Project) {
            IntMatrix p(coords.size(), upper_dim);
            for (std::size_t r = 0; r < coords.size(); ++r) {
                if (coords[r] >= upper_dim)
                    throw std::invalid_argument("projection coordinate out of range");
                p(r, coords[r]) = 1;
            }
            return p;
        }
        throw std::invalid_argument("corner factor map has no torus matrix");
    }

    /// Rows with at most one entry, equal to +-1: circle distances can
    /// only shrink, which is what the nested return-time scan needs.
    bool is_one_lipschitz(std::size_t upper_dim) const {
        if (kind != Kind::Matrix) return true;
        (void)upper_dim;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            int nonzero = 0;
            for (std::size_t c = 0; c < matrix.cols(); ++c) {
                if (matrix(r, c) == 0) continue;
                if (matrix(r, c) != 1 && matrix(r, c) != -1) return false;
                ++nonzero;
            }
            if (nonzero > 1) return false;
        }
        return true;
    }
};

inline TorusPoint apply_factor(const FactorMap& f, const TorusPoint& x) {
    IntMatrix p = f.as_matrix(x.dim());
    std::vector<Rat> out(p.rows(), Rat(0));
    for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t c = 0; c < p.cols(); ++c) out[r] += Rat(p(r, c)) * x.coords[c];
    return TorusPoint(std::move(out));
}

inline NilPoint apply_factor(const FactorMap& f, const NilPoint& x) {
    if (f.kind != FactorMap::Kind::Corner)
        throw std::invalid_argument("nil levels admit only corner factor maps");
    std::size_t kl = f.corner_k;
    if (kl >= x.k()) throw std::invalid_argument("corner must drop at least one level");
    UnipotentMatrix g(kl);
    for (std::size_t i = 1; i <= kl; ++i)
        for (std::size_t j = 1; j <= kl + 1 - i; ++j) g.set_entry(i, j, x.rep.entry(i, j));
    return NilPoint(g);
}

inline PointVariant apply_factor(const FactorMap& f, const PointVariant& x) {
    if (std::holds_alternative<TorusPoint>(x)) return apply_factor(f, std::get<TorusPoint>(x));
    return apply_factor(f, std::get<NilPoint>(x));
}

inline PointVariant apply_system(const SystemVariant& s, const PointVariant& x) {
    if (std::holds_alternative<TorusAffineMap>(s))
        return std::get<TorusAffineMap>(s)(std::get<TorusPoint>(x));
    return std::get<NilAffineMap>(s)(std::get<NilPoint>(x));
}

inline std::vector<Rat> point_coords(const PointVariant& x) {
    if (std::holds_alternative<TorusPoint>(x)) return std::get<TorusPoint>(x).coords;
    return nil_coords(std::get<NilPoint>(x));
}

/// Finite truncation of an inverse-limit tower: levels[0] is the
/// deepest factor, maps[i] carries level i+1 onto level i.
struct Tower {
    std::vector<SystemVariant> levels;
    std::vector<FactorMap> maps;

    std::size_t depth() const { return levels.size(); }
};

struct TowerValidation {
    bool ok = true;
    std::size_t failing_level = 0;  // index of the factor map that failed
    std::string reason;
};

namespace detail {

inline std::optional<std::string> check_torus_pair(const TorusAffineMap& low,
                                                   const TorusAffineMap& up, const FactorMap& f) {
    IntMatrix p = f.as_matrix(up.dim());
    if (p.rows() != low.dim() || p.cols() != up.dim()) return "factor matrix shape mismatch";
    // full row rank over Q = surjectivity of the induced torus map
    RatMatrix pr = to_rational(p);
    std::size_t rank = 0;
    {
        RatMatrix a = pr;
        std::size_t rows = a.rows(), cols = a.cols(), lead = 0;
        for (std::size_t r = 0; r < rows && lead < cols; ++r) {
            std::size_t piv = r;
            while (piv < rows && a(piv, lead) == 0) {
                ++piv;
                if (piv == rows) {
                    piv = r;
                    ++lead;
                    if (lead == cols) break;
                }
            }
            if (lead == cols) break;
            if (piv != r)
                for (std::size_t c = 0; c < cols; ++c) std::swap(a(piv, c), a(r, c));
            if (a(r, lead) == 0) continue;
            for (std::size_t rr = 0; rr < rows; ++rr) {
                if (rr == r || a(rr, lead) == 0) continue;
                Rat fct = a(rr, lead) / a(r, lead);
                for (std::size_t c = 0; c < cols; ++c) a(rr, c) -= fct * a(r, c);
            }
            ++rank;
            ++lead;
        }
    }
    if (rank != low.dim()) return "factor map is not surjective";
    // exact intertwining of the affine data
    if (p * up.A() != low.A() * p) return "linear parts do not intertwine";
    std::vector<Rat> pa(p.rows(), Rat(0));
    for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t c = 0; c < p.cols(); ++c) pa[r] += Rat(p(r, c)) * up.alpha()[c];
    for (std::size_t r = 0; r < p.rows(); ++r)
        if (rat_frac(pa[r]) != low.alpha()[r]) return "translations do not intertwine";
    return std::nullopt;
}

inline std::optional<std::string> check_nil_pair(const NilAffineMap& low, const NilAffineMap& up,
                                                 const FactorMap& f) {
    if (f.kind != FactorMap::Kind::Corner) return "nil levels need a corner factor map";
    std::size_t kl = f.corner_k;
    if (kl != low.k() || kl >= up.k()) return "corner size does not match the lower level";
    // translation descends
    for (std::size_t i = 1; i <= kl; ++i)
        for (std::size_t j = 1; j <= kl + 1 - i; ++j)
            if (up.g0().entry(i, j) != low.g0().entry(i, j)) return "g0 does not descend";
    // the automorphism descends: corner coordinates use corner variables
    // only and agree with the lower level symbolically
    for (std::size_t i = 1; i <= kl; ++i)
        for (std::size_t j = 1; j <= kl + 1 - i; ++j) {
            const MultiPoly& coord = up.phi().at(i, j);
            for (const Var& v : coord.support())
                if (v.pos > kl + 1 - v.level) return "automorphism does not descend to the corner";
            if (coord != low.phi().at(i, j)) return "automorphism corners disagree";
        }
    return std::nullopt;
}

}  // namespace detail

/// Exact intertwining check pi . tau_up = tau_low . pi on the affine
/// data of every adjacent pair, plus random-point spot checks.
inline TowerValidation validate_tower(const Tower& t, int spot_checks = 8) {
    TowerValidation out;
    if (t.levels.empty()) {
        out.ok = false;
        out.reason = "empty tower";
        return out;
    }
    if (t.maps.size() + 1 != t.levels.size()) {
        out.ok = false;
        out.reason = "need exactly one factor map per adjacent pair";
        return out;
    }
    for (std::size_t i = 0; i < t.maps.size(); ++i) {
        const SystemVariant& low = t.levels[i];
        const SystemVariant& up = t.levels[i + 1];
        std::optional<std::string> err;
        if (std::holds_alternative<TorusAffineMap>(low) &&
            std::holds_alternative<TorusAffineMap>(up)) {
            err = detail::check_torus_pair(std::get<TorusAffineMap>(low),
                                           std::get<TorusAffineMap>(up), t.maps[i]);
        } else if (std::holds_alternative<NilAffineMap>(low) &&
                   std::holds_alternative<NilAffineMap>(up)) {
            err = detail::check_nil_pair(std::get<NilAffineMap>(low), std::get<NilAffineMap>(up),
                                         t.maps[i]);
        } else {
            err = "mixed torus/nil levels are not supported";
        }
        if (!err) {
            // spot checks: the square commutes on random rational points
            std::mt19937_64 rng(0xabcdef00u + i);
            std::uniform_int_distribution<int> num(0, 30);
            for (int s = 0; s < spot_checks && !err; ++s) {
                PointVariant x;
                if (std::holds_alternative<TorusAffineMap>(up)) {
                    std::vector<Rat> c(std::get<TorusAffineMap>(up).dim());
                    for (auto& q : c) q = Rat(num(rng), 31);
                    x = TorusPoint(std::move(c));
                } else {
                    UnipotentMatrix g(std::get<NilAffineMap>(up).k());
                    for (std::size_t lv = 1; lv <= g.k(); ++lv)
                        for (std::size_t p = 1; p <= g.k() + 1 - lv; ++p)
                            g.set_entry(lv, p, Rat(num(rng), 31));
                    x = NilPoint(g);
                }
                PointVariant lhs = apply_factor(t.maps[i], apply_system(up, x));
                PointVariant rhs = apply_system(low, apply_factor(t.maps[i], x));
                if (point_coords(lhs) != point_coords(rhs)) err = "spot check failed";
            }
        }
        if (err) {
            out.ok = false;
            out.failing_level = i;
            out.reason = *err;
            return out;
        }
    }
    return out;
}

/// Compatible point of the finite tower: coords[i] lives in level i and
/// maps[i](coords[i+1]) = coords[i] exactly.
struct TowerPoint {
    std::vector<PointVariant> coords;

    /// Builds the compatible family under the top-level point.
    static TowerPoint from_top(const Tower& t, PointVariant top) {
        TowerPoint p;
        p.coords.resize(t.depth(), top);
        p.coords.back() = std::move(top);
        for (std::size_t i = t.depth() - 1; i-- > 0;)
            p.coords[i] = apply_factor(t.maps[i], p.coords[i + 1]);
        return p;
    }
};

inline bool compatible(const Tower& t, const TowerPoint& x) {
    if (x.coords.size() != t.depth()) return false;
    for (std::size_t i = 0; i < t.maps.size(); ++i)
        if (point_coords(apply_factor(t.maps[i], x.coords[i + 1])) != point_coords(x.coords[i]))
            return false;
    return true;
}

inline TowerPoint apply_tower(const Tower& t, const TowerPoint& x) {
    TowerPoint out;
    out.coords.reserve(t.depth());
    for (std::size_t i = 0; i < t.depth(); ++i)
        out.coords.push_back(apply_system(t.levels[i], x.coords[i]));
    return out;
}

/// Truncated inverse-limit metric sum_{i=1}^{depth} 2^{-i} rho_i; the
/// dropped tail is bounded by 2^{-depth} when level diameters are <= 1
/// (true for the circle metrics used here).
inline Rat tower_metric(const Tower& t, const TowerPoint& x, const TowerPoint& y,
                        std::size_t depth) {
    if (x.coords.size() != t.depth() || y.coords.size() != t.depth())
        throw std::invalid_argument("tower point depth mismatch");
    Rat acc(0);
    std::size_t limit = std::min(depth, t.depth());
    for (std::size_t i = 0; i < limit; ++i) {
        Rat weight(Int(1), int_pow(Int(2), i + 1));
        acc += weight * max_circle_dist(point_coords(x.coords[i]), point_coords(y.coords[i]));
    }
    return acc;
}

/// Per-level forward return-time sets at the same eps. Factor maps must
/// be 1-Lipschitz (guaranteed for projections and corners), which is
/// exactly what makes the sets nest: level i+1 returns project to level
/// i returns.
inline std::vector<ReturnTimeSet> return_times_nested(const Tower& t, const TowerPoint& x,
                                                      const Rat& eps, std::int64_t window) {
    require_eps(eps);
    if (!compatible(t, x)) throw std::invalid_argument("tower point is not compatible");
    for (std::size_t i = 0; i < t.maps.size(); ++i) {
        std::size_t updim = point_coords(x.coords[i + 1]).size();
        if (!t.maps[i].is_one_lipschitz(updim))
            throw std::domain_error("factor map at level " + std::to_string(i) +
                                    " is not 1-Lipschitz; nested scan rejected");
    }
    std::vector<ReturnTimeSet> out(t.depth());
    for (auto& s : out) s.window = window;
    std::vector<std::vector<Rat>> base;
    for (const auto& c : x.coords) base.push_back(point_coords(c));
    TowerPoint cur = x;
    for (std::int64_t n = 0; n <= window; ++n) {
        for (std::size_t i = 0; i < t.depth(); ++i)
            if (max_circle_dist(point_coords(cur.coords[i]), base[i]) < eps)
                out[i].times.push_back(n);
        if (n < window) cur = apply_tower(t, cur);
    }
    return out;
}

}  // namespace affdyn
