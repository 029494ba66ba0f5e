#pragma once

#include <affdyn/exact_algebra.hpp>
#include <affdyn/gp_expr.hpp>
#include <affdyn/nilgroup.hpp>
#include <affdyn/return_times.hpp>
#include <affdyn/unipoly.hpp>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace affdyn {

/// Canonical coset representative of g Gamma: all entries in [0, 1).
struct NilPoint {
    UnipotentMatrix rep;

    explicit NilPoint(const UnipotentMatrix& g) : rep(reduce_mod_lattice(g).q) {}
    static NilPoint origin(std::size_t k) { return NilPoint(UnipotentMatrix::identity(k)); }

    std::size_t k() const { return rep.k(); }
    friend bool operator==(const NilPoint& a, const NilPoint& b) { return a.rep == b.rep; }
    friend bool operator!=(const NilPoint& a, const NilPoint& b) { return !(a == b); }
};

/// Unipotent matrix whose superdiagonal entries are polynomials in one
/// integer variable; the symbolic carrier for automorphism powers and
/// prefix products.
struct UniPolyUnipotent {
    std::size_t k = 0;
    std::vector<std::vector<UniPoly>> levels;  // levels[i-1][j-1]

    static UniPolyUnipotent identity(std::size_t k) {
        UniPolyUnipotent m;
        m.k = k;
        m.levels.resize(k);
        for (std::size_t i = 1; i <= k; ++i) m.levels[i - 1].assign(k + 1 - i, UniPoly());
        return m;
    }

    static UniPolyUnipotent from_constant(const UnipotentMatrix& g) {
        UniPolyUnipotent m = identity(g.k());
        for (std::size_t i = 1; i <= g.k(); ++i)
            for (std::size_t j = 1; j <= g.k() + 1 - i; ++j)
                m.levels[i - 1][j - 1] = UniPoly(g.entry(i, j));
        return m;
    }

    const UniPoly& at(std::size_t i, std::size_t j) const { return levels[i - 1][j - 1]; }

    UnipotentMatrix eval(const Rat& n) const {
        UnipotentMatrix g(k);
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = 1; j <= k + 1 - i; ++j) g.set_entry(i, j, at(i, j)(n));
        return g;
    }

    /// substitute the variable by (variable + c)
    UniPolyUnipotent shift(const Rat& c) const {
        UniPolyUnipotent out = *this;
        for (auto& lv : out.levels)
            for (auto& p : lv) p = p.shift(c);
        return out;
    }

    friend UniPolyUnipotent operator*(const UniPolyUnipotent& a, const UniPolyUnipotent& b) {
        if (a.k != b.k) throw std::invalid_argument("unipotent step mismatch");
        UniPolyUnipotent out = identity(a.k);
        for (std::size_t i = 1; i <= a.k; ++i)
            for (std::size_t j = 1; j <= a.k + 1 - i; ++j) {
                UniPoly acc = a.at(i, j) + b.at(i, j);
                for (std::size_t s = 1; s < i; ++s) acc += a.at(s, j) * b.at(i - s, s + j);
                out.levels[i - 1][j - 1] = std::move(acc);
            }
        return out;
    }
};

/// Affine transformation g Gamma -> g0 Phi(g) Gamma of the nilmanifold
/// UT(k+1, R)/UT(k+1, Z). Construction validates everything the
/// symbolic engine relies on: Phi is a homomorphism (symbolically), it
/// maps the lattice into itself, and every level-wise linear part is an
/// integer matrix of zero entropy. b is the lcm of the per-level
/// unipotency orders, so the linear parts of Phi^b are unipotent.
class NilAffineMap {
public:
    NilAffineMap(UnipotentMatrix g0, CoordinateMap phi) : g0_(std::move(g0)), phi_(std::move(phi)) {
        if (phi_.k != g0_.k()) throw std::invalid_argument("nil map: step mismatch between g0 and phi");
        if (!verify_homomorphism(phi_))
            throw std::domain_error("nil map: coordinate map is not a homomorphism");
        for (const auto& gen : lattice_generators(k())) {
            if (!phi_(gen).is_integral())
                throw std::domain_error("nil map: automorphism does not preserve the lattice");
        }
        linear_ = linear_parts(phi_);  // throws when some level is singular
        b_ = 1;
        for (const auto& a : linear_) {
            IntMatrix ai(a.rows(), a.cols());
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t c = 0; c < a.cols(); ++c) {
                    if (!is_integer(a(r, c)))
                        throw std::domain_error("nil map: linear part is not integral");
                    ai(r, c) = rat_num(a(r, c));
                }
            if (!is_zero_entropy(ai))
                throw std::domain_error(
                    "positive entropy: the symbolic orbit form needs zero-entropy linear parts");
            std::uint64_t order = unipotency_order(ai);
            b_ = static_cast<std::uint64_t>(lcm_int(Int(b_), Int(order)));
        }
        psi_ = phi_.pow(b_);
        psi_linear_ = linear_parts(psi_);
    }

    std::size_t k() const { return g0_.k(); }
    const UnipotentMatrix& g0() const { return g0_; }
    const CoordinateMap& phi() const { return phi_; }
    const CoordinateMap& phi_power_b() const { return psi_; }
    std::uint64_t residue_period() const { return b_; }
    const std::vector<RatMatrix>& linear() const { return linear_; }

    NilPoint operator()(const NilPoint& x) const {
        return NilPoint(group_mul(g0_, phi_(x.rep)));
    }

private:
    UnipotentMatrix g0_;
    CoordinateMap phi_;
    std::uint64_t b_ = 1;
    std::vector<RatMatrix> linear_;
    CoordinateMap psi_;
    std::vector<RatMatrix> psi_linear_;

    friend UniPolyUnipotent symbolic_automorphism_power(const NilAffineMap&, std::uint64_t,
                                                        const UnipotentMatrix&);
};

/// Entries of Phi^{n b + r}(g) as exact polynomials in n. Writing
/// Psi = Phi^b (linear parts unipotent) and h = Phi^r(g), the level-i
/// coordinate vector of Psi^n(h) satisfies
///   v_i(n) = B_i^n h_i + sum_{j<n} B_i^{n-1-j} H_i(Psi^j h),
/// where H_i is the lower-level remainder of Psi at level i. Lower
/// levels are closed first; the inner sum closes with a Faulhaber step
/// after pulling B_i^{n-1} out. The resulting degrees depend only on
/// the group data, never on g.
inline UniPolyUnipotent symbolic_automorphism_power(const NilAffineMap& map, std::uint64_t r,
                                                    const UnipotentMatrix& g) {
    std::size_t k = map.k();
    if (g.k() != k) throw std::invalid_argument("symbolic power: step mismatch");

    UnipotentMatrix h = g;
    for (std::uint64_t s = 0; s < r; ++s) h = map.phi()(h);

    const CoordinateMap& psi = map.psi_;
    UniPolyUnipotent result = UniPolyUnipotent::identity(k);

    for (std::size_t i = 1; i <= k; ++i) {
        std::size_t m = k + 1 - i;
        const RatMatrix& B = map.psi_linear_[i - 1];
        PolyMatrix U = unipotent_power_symbolic(B);            // B^s, s symbolic
        PolyMatrix U_prev = U.map<UniPoly>([](const UniPoly& p) { return p.shift(Rat(-1)); });
        PolyMatrix U_neg(m, m);                                // B^{-s}
        {
            UniPoly minus_var{std::vector<Rat>{Rat(0), Rat(-1)}};
            U_neg = U.map<UniPoly>([&](const UniPoly& p) { return p.compose(minus_var); });
        }

        // remainder H_{i,j} = psi_{i,j} minus its level-i linear part;
        // involves only variables of levels < i
        std::vector<UniPoly> v(m);
        auto lower_values = [&](Var var) -> UniPoly {
            if (var.level >= i)
                throw std::logic_error("remainder polynomial touches its own level");
            return result.levels[var.level - 1][var.pos - 1];
        };
        for (std::size_t j = 1; j <= m; ++j) {
            MultiPoly rem = psi.at(i, j);
            for (std::size_t t = 1; t <= m; ++t) {
                Var var{0, std::uint8_t(i), std::uint8_t(t)};
                rem -= psi.at(i, j).linear_coeff(var) * MultiPoly::variable(var);
            }
            v[j - 1] = rem.eval<UniPoly>(lower_values);
        }

        std::vector<UniPoly> w = U_neg.apply(v);               // B^{-j} H_i(Psi^j h)
        for (auto& p : w) p = faulhaber_sum(p);                // sum over j < n

        std::vector<UniPoly> head(m);
        for (std::size_t j = 1; j <= m; ++j) head[j - 1] = UniPoly(h.entry(i, j));
        std::vector<UniPoly> out = U.apply(head);              // B^n h_i
        std::vector<UniPoly> tail = U_prev.apply(w);           // B^{n-1} (closed sum)
        for (std::size_t j = 1; j <= m; ++j)
            result.levels[i - 1][j - 1] = out[j - 1] + tail[j - 1];
    }
    return result;
}

/// P(n) = prod_{m=1}^{n} Q(m) for a symbolic unipotent factor Q. Level
/// by level, the telescoped increment P(m) - P(m-1) is a polynomial in
/// m built from already-closed lower levels, and each level closes with
/// one Faulhaber step. P(0) = I by construction.
inline UniPolyUnipotent symbolic_prefix_product(const UniPolyUnipotent& Q) {
    std::size_t k = Q.k;
    UniPolyUnipotent P = UniPolyUnipotent::identity(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            UniPoly increment = Q.at(i, j);  // as a polynomial of m
            for (std::size_t s = 1; s < i; ++s)
                increment += P.at(s, j).shift(Rat(-1)) * Q.at(i - s, s + j);
            P.levels[i - 1][j - 1] = faulhaber_sum(increment.shift(Rat(1)));
        }
    return P;
}

/// Generalized-polynomial form of an orbit: for m = n b + r the
/// fundamental-domain coordinates of the m-th iterate are the exact
/// values q[r][i-1][j-1](n). lifts[r] carries the polynomial matrix
/// the reduction was applied to.
struct GPOrbit {
    std::uint64_t b = 1;
    std::size_t k = 0;
    NilPoint base;
    std::vector<std::vector<std::vector<GPExpr>>> q;
    std::vector<UniPolyUnipotent> lifts;
};

/// Symbolic lattice reduction: floor/frac applied to the polynomial
/// lift, level by level, producing generalized-polynomial coordinates.
inline GPOrbit gp_orbit(const NilAffineMap& map, const NilPoint& x) {
    std::size_t k = map.k();
    std::uint64_t b = map.residue_period();

    // G0 = g0 Phi(g0) ... Phi^{b-1}(g0); factor(t) = Psi^{t-1}(G0)
    UnipotentMatrix G0 = map.g0();
    {
        UnipotentMatrix img = map.g0();
        for (std::uint64_t s = 1; s < b; ++s) {
            img = map.phi()(img);
            G0 = group_mul(G0, img);
        }
    }
    UniPolyUnipotent factor = symbolic_automorphism_power(map, 0, G0).shift(Rat(-1));
    UniPolyUnipotent prefix = symbolic_prefix_product(factor);

    GPOrbit orbit{b, k, x, {}, {}};
    UnipotentMatrix R0 = UnipotentMatrix::identity(k);  // prod_{s<r} Phi^s(g0)
    UnipotentMatrix phis_g0 = map.g0();                 // Phi^{r-1}(g0) while iterating
    for (std::uint64_t r = 0; r < b; ++r) {
        if (r > 0) {
            R0 = group_mul(R0, phis_g0);
            phis_g0 = map.phi()(phis_g0);
        }
        UnipotentMatrix tail_seed = R0;
        {
            UnipotentMatrix hr = x.rep;
            for (std::uint64_t s = 0; s < r; ++s) hr = map.phi()(hr);
            tail_seed = group_mul(R0, hr);
        }
        UniPolyUnipotent tail = symbolic_automorphism_power(map, 0, tail_seed);
        UniPolyUnipotent lift = prefix * tail;

        // inductive floor/frac reduction, symbolically
        std::vector<std::vector<GPExpr>> qr(k), yr(k);
        for (std::size_t i = 1; i <= k; ++i) {
            qr[i - 1].resize(k + 1 - i);
            yr[i - 1].resize(k + 1 - i);
            for (std::size_t j = 1; j <= k + 1 - i; ++j) {
                GPExpr rest = GPExpr::from_unipoly(lift.at(i, j));
                for (std::size_t s = 1; s < i; ++s)
                    rest = rest - qr[s - 1][j - 1] * yr[i - s - 1][s + j - 1];
                yr[i - 1][j - 1] = GPExpr::floor_of(rest);
                qr[i - 1][j - 1] = GPExpr::frac_of(rest);
            }
        }
        orbit.q.push_back(std::move(qr));
        orbit.lifts.push_back(std::move(lift));
    }
    return orbit;
}

inline NilPoint eval_orbit(const GPOrbit& orbit, std::int64_t m) {
    if (m < 0) throw std::domain_error("eval_orbit: n must be >= 0");
    std::uint64_t b = orbit.b;
    std::size_t r = static_cast<std::size_t>(m % static_cast<std::int64_t>(b));
    Rat n{Int(m / static_cast<std::int64_t>(b))};
    GPExpr::EvalCache cache;
    UnipotentMatrix g(orbit.k);
    for (std::size_t i = 1; i <= orbit.k; ++i)
        for (std::size_t j = 1; j <= orbit.k + 1 - i; ++j)
            g.set_entry(i, j, orbit.q[r][i - 1][j - 1].eval(n, cache));
    return NilPoint(g);
}

inline std::vector<Rat> nil_coords(const NilPoint& p) {
    std::vector<Rat> out;
    for (std::size_t i = 1; i <= p.k(); ++i)
        for (const Rat& q : p.rep.level(i)) out.push_back(q);
    return out;
}

inline ReturnTimeSet return_times_direct(const NilAffineMap& map, const NilPoint& x, const Rat& eps,
                                         std::int64_t window) {
    require_eps(eps);
    ReturnTimeSet out;
    out.window = window;
    std::vector<Rat> base = nil_coords(x);
    NilPoint cur = x;
    for (std::int64_t n = 0; n <= window; ++n) {
        if (max_circle_dist(nil_coords(cur), base) < eps) out.times.push_back(n);
        if (n < window) cur = map(cur);
    }
    return out;
}

inline ReturnTimeSet return_times_gp(const GPOrbit& orbit, const Rat& eps, std::int64_t window) {
    require_eps(eps);
    ReturnTimeSet out;
    out.window = window;
    std::vector<Rat> base = nil_coords(orbit.base);
    for (std::int64_t n = 0; n <= window; ++n) {
        NilPoint p = eval_orbit(orbit, n);
        if (max_circle_dist(nil_coords(p), base) < eps) out.times.push_back(n);
    }
    return out;
}

/// Splits the sampled orbit by residue class mod b: class r holds
/// tau^{r + m b}(x) for m = 0..samples-1, so the classes partition
/// {tau^n(x) : 1 <= n <= b*samples} and class r is the tau^b-orbit of
/// tau^r(x).
inline std::vector<std::vector<NilPoint>> residue_decomposition(const NilAffineMap& map,
                                                                const NilPoint& x,
                                                                std::size_t samples) {
    std::uint64_t b = map.residue_period();
    std::vector<std::vector<NilPoint>> classes(b);
    NilPoint cur = x;
    for (std::uint64_t n = 1; n <= b * samples; ++n) {
        cur = map(cur);
        classes[(n - 1) % b].push_back(cur);
    }
    return classes;
}

}  // namespace affdyn
