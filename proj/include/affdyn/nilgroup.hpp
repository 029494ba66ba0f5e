#pragma once

#include <affdyn/exact_algebra.hpp>
#include <affdyn/matrix.hpp>
#include <affdyn/multipoly.hpp>
#include <affdyn/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

/// Element of the upper unitriangular group UT(k+1) in superdiagonal
/// coordinates: x_{i,j} sits at matrix row j, column i+j; level i runs
/// over superdiagonals 1..k, position j over 1..k+1-i.
class UnipotentMatrix {
public:
    explicit UnipotentMatrix(std::size_t k) : k_(k), levels_(k) {
        if (k < 1) throw std::invalid_argument("unipotent group needs k >= 1");
        for (std::size_t i = 1; i <= k; ++i) levels_[i - 1].assign(k + 1 - i, Rat(0));
    }

    static UnipotentMatrix identity(std::size_t k) { return UnipotentMatrix(k); }

    std::size_t k() const { return k_; }

    const Rat& entry(std::size_t level, std::size_t pos) const {
        check_index(level, pos);
        return levels_[level - 1][pos - 1];
    }
    void set_entry(std::size_t level, std::size_t pos, Rat value) {
        check_index(level, pos);
        levels_[level - 1][pos - 1] = std::move(value);
    }
    const std::vector<Rat>& level(std::size_t i) const { return levels_[i - 1]; }

    bool is_identity() const {
        for (const auto& lv : levels_)
            for (const auto& q : lv)
                if (q != 0) return false;
        return true;
    }

    bool is_integral() const {
        for (const auto& lv : levels_)
            for (const auto& q : lv)
                if (!is_integer(q)) return false;
        return true;
    }

    bool is_fractional() const {
        for (const auto& lv : levels_)
            for (const auto& q : lv)
                if (q < 0 || q >= 1) return false;
        return true;
    }

    RatMatrix to_full() const {
        RatMatrix m = RatMatrix::identity(k_ + 1);
        for (std::size_t i = 1; i <= k_; ++i)
            for (std::size_t j = 1; j <= k_ + 1 - i; ++j) m(j - 1, i + j - 1) = entry(i, j);
        return m;
    }

    static UnipotentMatrix from_full(const RatMatrix& m) {
        if (!m.square() || m.rows() < 2) throw std::invalid_argument("matrix too small for UT(k+1)");
        std::size_t k = m.rows() - 1;
        for (std::size_t r = 0; r <= k; ++r) {
            if (m(r, r) != 1) throw std::invalid_argument("matrix is not unitriangular");
            for (std::size_t c = 0; c < r; ++c)
                if (m(r, c) != 0) throw std::invalid_argument("matrix is not upper triangular");
        }
        UnipotentMatrix g(k);
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = 1; j <= k + 1 - i; ++j) g.set_entry(i, j, m(j - 1, i + j - 1));
        return g;
    }

    friend bool operator==(const UnipotentMatrix& a, const UnipotentMatrix& b) {
        return a.k_ == b.k_ && a.levels_ == b.levels_;
    }
    friend bool operator!=(const UnipotentMatrix& a, const UnipotentMatrix& b) { return !(a == b); }

private:
    void check_index(std::size_t level, std::size_t pos) const {
        if (level < 1 || level > k_ || pos < 1 || pos > k_ + 1 - level)
            throw std::out_of_range("unipotent entry index (" + std::to_string(level) + "," +
                                    std::to_string(pos) + ") out of range");
    }

    std::size_t k_;
    std::vector<std::vector<Rat>> levels_;  // levels_[i-1][j-1] = x_{i,j}
};

inline void require_same_group(const UnipotentMatrix& a, const UnipotentMatrix& b) {
    if (a.k() != b.k()) throw std::invalid_argument("unipotent group step mismatch");
}

/// (g g')_{i,j} = sum_{s=0}^{i} g_{s,j} g'_{i-s,s+j} with the convention
/// g_{0,*} = 1: the superdiagonal convolution of matrix multiplication.
inline UnipotentMatrix group_mul(const UnipotentMatrix& g, const UnipotentMatrix& h) {
    require_same_group(g, h);
    std::size_t k = g.k();
    UnipotentMatrix out(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            Rat acc = g.entry(i, j) + h.entry(i, j);
            for (std::size_t s = 1; s < i; ++s) acc += g.entry(s, j) * h.entry(i - s, s + j);
            out.set_entry(i, j, std::move(acc));
        }
    return out;
}

/// Inverse by back substitution level by level; exact and finite.
inline UnipotentMatrix group_inv(const UnipotentMatrix& g) {
    std::size_t k = g.k();
    UnipotentMatrix inv(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            Rat acc = -g.entry(i, j);
            for (std::size_t s = 1; s < i; ++s) acc -= g.entry(s, j) * inv.entry(i - s, s + j);
            inv.set_entry(i, j, std::move(acc));
        }
    return inv;
}

inline UnipotentMatrix commutator(const UnipotentMatrix& g, const UnipotentMatrix& h) {
    return group_mul(group_mul(g, h), group_mul(group_inv(g), group_inv(h)));
}

inline UnipotentMatrix group_pow(const UnipotentMatrix& g, std::int64_t e) {
    UnipotentMatrix base = e < 0 ? group_inv(g) : g;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    UnipotentMatrix acc = UnipotentMatrix::identity(g.k());
    while (n) {
        if (n & 1) acc = group_mul(acc, base);
        base = group_mul(base, base);
        n >>= 1;
    }
    return acc;
}

/// Position of g in the UT filtration: the smallest i such that every
/// level below i vanishes. The identity reports k+1 as a sentinel.
inline std::size_t lower_central_series_level(const UnipotentMatrix& g) {
    for (std::size_t i = 1; i <= g.k(); ++i)
        for (const Rat& q : g.level(i))
            if (q != 0) return i;
    return g.k() + 1;
}

/// A self-map of UT(k+1) given by one coordinate polynomial per entry;
/// diagonal coordinates are identically 1 and are not stored.
struct CoordinateMap {
    std::size_t k = 0;
    std::vector<std::vector<MultiPoly>> phi;  // phi[i-1][j-1] in copy-0 variables

    static CoordinateMap identity(std::size_t k) {
        CoordinateMap m;
        m.k = k;
        m.phi.resize(k);
        for (std::size_t i = 1; i <= k; ++i) {
            m.phi[i - 1].resize(k + 1 - i);
            for (std::size_t j = 1; j <= k + 1 - i; ++j)
                m.phi[i - 1][j - 1] =
                    MultiPoly::variable(Var{0, std::uint8_t(i), std::uint8_t(j)});
        }
        return m;
    }

    const MultiPoly& at(std::size_t i, std::size_t j) const { return phi[i - 1][j - 1]; }

    UnipotentMatrix operator()(const UnipotentMatrix& g) const {
        if (g.k() != k) throw std::invalid_argument("coordinate map step mismatch");
        UnipotentMatrix out(k);
        auto values = [&](Var v) -> Rat { return g.entry(v.level, v.pos); };
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = 1; j <= k + 1 - i; ++j)
                out.set_entry(i, j, at(i, j).eval<Rat>(values));
        return out;
    }

    /// this after inner: g -> this(inner(g)), by polynomial substitution.
    CoordinateMap compose(const CoordinateMap& inner) const {
        if (inner.k != k) throw std::invalid_argument("coordinate map step mismatch");
        CoordinateMap out;
        out.k = k;
        out.phi.resize(k);
        auto values = [&](Var v) -> MultiPoly { return inner.at(v.level, v.pos); };
        for (std::size_t i = 1; i <= k; ++i) {
            out.phi[i - 1].resize(k + 1 - i);
            for (std::size_t j = 1; j <= k + 1 - i; ++j)
                out.phi[i - 1][j - 1] = at(i, j).eval<MultiPoly>(values);
        }
        return out;
    }

    CoordinateMap pow(std::uint64_t e) const {
        CoordinateMap acc = identity(k);
        CoordinateMap base = *this;
        while (e) {
            if (e & 1) acc = acc.compose(base);
            base = base.compose(base);
            e >>= 1;
        }
        return acc;
    }
};

/// Exact inverse of an invertible upper-triangular rational matrix.
inline RatMatrix upper_triangular_inverse(const RatMatrix& u) {
    std::size_t n = u.rows();
    RatMatrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (u(c, c) == 0) throw std::domain_error("upper-triangular matrix is singular");
        inv(c, c) = Rat(1) / u(c, c);
        for (std::size_t r = c; r-- > 0;) {
            Rat acc(0);
            for (std::size_t m = r + 1; m <= c; ++m) acc += u(r, m) * inv(m, c);
            inv(r, c) = -acc / u(r, r);
        }
    }
    return inv;
}

/// Lattice generators E_{j, i+j}(1), one per coordinate.
inline std::vector<UnipotentMatrix> lattice_generators(std::size_t k) {
    std::vector<UnipotentMatrix> gens;
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            UnipotentMatrix e(k);
            e.set_entry(i, j, Rat(1));
            gens.push_back(std::move(e));
        }
    return gens;
}

/// Conjugation g -> u g u^{-1} as a coordinate map. u must be an
/// invertible upper-triangular rational matrix whose conjugation maps
/// the integer lattice into itself (checked on the generators).
inline CoordinateMap inner_automorphism(const RatMatrix& u, std::size_t k) {
    if (!u.square() || u.rows() != k + 1)
        throw std::invalid_argument("inner_automorphism: u must be (k+1) x (k+1)");
    for (std::size_t r = 0; r < u.rows(); ++r)
        for (std::size_t c = 0; c < r; ++c)
            if (u(r, c) != 0) throw std::invalid_argument("inner_automorphism: u not upper triangular");
    RatMatrix uinv = upper_triangular_inverse(u);

    // lattice preservation on generators
    for (const auto& gen : lattice_generators(k)) {
        RatMatrix image = u * gen.to_full() * uinv;
        UnipotentMatrix img = UnipotentMatrix::from_full(image);
        if (!img.is_integral())
            throw std::domain_error("inner_automorphism: u does not normalize the lattice");
    }

    // symbolic conjugation over MultiPoly entries
    std::size_t n = k + 1;
    Matrix<MultiPoly> sym(n, n);
    for (std::size_t r = 0; r < n; ++r) sym(r, r) = MultiPoly(Rat(1));
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j)
            sym(j - 1, i + j - 1) = MultiPoly::variable(Var{0, std::uint8_t(i), std::uint8_t(j)});
    auto lift = [&](const RatMatrix& m) {
        return m.map<MultiPoly>([](const Rat& q) { return MultiPoly(q); });
    };
    Matrix<MultiPoly> conj = lift(u) * sym * lift(uinv);

    CoordinateMap out;
    out.k = k;
    out.phi.resize(k);
    for (std::size_t i = 1; i <= k; ++i) {
        out.phi[i - 1].resize(k + 1 - i);
        for (std::size_t j = 1; j <= k + 1 - i; ++j) out.phi[i - 1][j - 1] = conj(j - 1, i + j - 1);
    }
    return out;
}

inline CoordinateMap inner_automorphism(const UnipotentMatrix& u) {
    return inner_automorphism(u.to_full(), u.k());
}

/// Symbolic coordinates of the product g g' in two-copy variables.
inline MultiPoly product_coordinate(std::size_t k, std::size_t i, std::size_t j) {
    auto gv = [](std::size_t i2, std::size_t j2) {
        return MultiPoly::variable(Var{0, std::uint8_t(i2), std::uint8_t(j2)});
    };
    auto hv = [](std::size_t i2, std::size_t j2) {
        return MultiPoly::variable(Var{1, std::uint8_t(i2), std::uint8_t(j2)});
    };
    (void)k;
    MultiPoly acc = gv(i, j) + hv(i, j);
    for (std::size_t s = 1; s < i; ++s) acc += gv(s, j) * hv(i - s, s + j);
    return acc;
}

/// Symbolic check of the homomorphism identity
///   phi_{i,j}(g g') = sum_{s=0}^{i} phi_{s,j}(g) phi_{i-s,s+j}(g')
/// as an exact identity of polynomials in both arguments. Nothing is
/// sampled; a true result certifies the identity.
inline bool verify_homomorphism(const CoordinateMap& map) {
    std::size_t k = map.k;
    auto product_values = [&](Var v) -> MultiPoly { return product_coordinate(k, v.level, v.pos); };
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            MultiPoly lhs = map.at(i, j).eval<MultiPoly>(product_values);
            // s = 0 and s = i contribute with the implicit phi_{0,*} = 1
            MultiPoly rhs = map.at(i, j).with_copy(1) + map.at(i, j).with_copy(0);
            for (std::size_t s = 1; s < i; ++s)
                rhs += map.at(s, j).with_copy(0) * map.at(i - s, s + j).with_copy(1);
            if (lhs != rhs) return false;
        }
    return true;
}

/// Level-wise linear parts A_1..A_k: A_i[j][t] is the coefficient of
/// x_{i,t} in phi_{i,j}. Throws if some A_i is singular (the map is
/// then not an automorphism).
inline std::vector<RatMatrix> linear_parts(const CoordinateMap& map) {
    std::vector<RatMatrix> parts;
    for (std::size_t i = 1; i <= map.k; ++i) {
        std::size_t n = map.k + 1 - i;
        RatMatrix a(n, n);
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t t = 1; t <= n; ++t)
                a(j - 1, t - 1) = map.at(i, j).linear_coeff(Var{0, std::uint8_t(i), std::uint8_t(t)});
        if (det(a) == 0)
            throw std::domain_error("linear part at level " + std::to_string(i) +
                                    " is singular: not an automorphism");
        parts.push_back(std::move(a));
    }
    return parts;
}

/// One row of the structure report for a coordinate map: the remainder
/// f_{i,j} = phi_{i,j} - (linear level-i part) must involve only
/// variables of levels < i and obey the weighted degree bound 2^{i-1}.
struct CoordinateStructureEntry {
    std::size_t i = 0, j = 0;
    std::uint64_t l_bound = 0;
    std::uint64_t l_actual = 0;
    bool lower_levels_only = true;
    bool degree_ok = true;
    bool tight = false;
};

struct CoordinateStructureReport {
    std::vector<CoordinateStructureEntry> entries;
    bool all_hold = true;
};

inline CoordinateStructureReport verify_structure_bounds(const CoordinateMap& map) {
    CoordinateStructureReport report;
    for (std::size_t i = 1; i <= map.k; ++i) {
        std::size_t n = map.k + 1 - i;
        for (std::size_t j = 1; j <= n; ++j) {
            MultiPoly f = map.at(i, j);
            for (std::size_t t = 1; t <= n; ++t) {
                Var v{0, std::uint8_t(i), std::uint8_t(t)};
                f -= map.at(i, j).linear_coeff(v) * MultiPoly::variable(v);
            }
            CoordinateStructureEntry e;
            e.i = i;
            e.j = j;
            e.l_bound = std::uint64_t{1} << (i - 1);
            e.l_actual = l_degree(f);
            for (const Var& v : f.support())
                if (v.level >= i) e.lower_levels_only = false;
            e.degree_ok = e.l_actual <= e.l_bound;
            e.tight = e.l_actual == e.l_bound;
            if (!e.degree_ok || !e.lower_levels_only) report.all_hold = false;
            report.entries.push_back(e);
        }
    }
    return report;
}

/// Unique factorization g = q * gamma with q fully fractional and gamma
/// in the integer lattice, computed level by level:
///   y_{i,j} = floor(p_{i,j} - sum_{s=1}^{i-1} q_{s,j} y_{i-s,s+j}),
///   q_{i,j} = frac(the same expression).
struct LatticeReduction {
    UnipotentMatrix q;
    UnipotentMatrix gamma;
};

inline LatticeReduction reduce_mod_lattice(const UnipotentMatrix& g) {
    std::size_t k = g.k();
    LatticeReduction out{UnipotentMatrix(k), UnipotentMatrix(k)};
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) {
            Rat rest = g.entry(i, j);
            for (std::size_t s = 1; s < i; ++s)
                rest -= out.q.entry(s, j) * out.gamma.entry(i - s, s + j);
            out.gamma.set_entry(i, j, Rat(rat_floor(rest)));
            out.q.set_entry(i, j, rat_frac(rest));
        }
    return out;
}

}  // namespace affdyn
