#pragma once

#include <affdyn/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

/// Variable of a coordinate polynomial: entry x_{level,pos} of a
/// unipotent matrix. copy distinguishes the two arguments g, g' when a
/// polynomial mixes them (homomorphism identities).
struct Var {
    std::uint8_t copy = 0;
    std::uint8_t level = 1;
    std::uint8_t pos = 1;

    std::uint32_t key() const {
        return (std::uint32_t(copy) << 16) | (std::uint32_t(level) << 8) | pos;
    }
    static Var from_key(std::uint32_t k) {
        return Var{std::uint8_t(k >> 16), std::uint8_t((k >> 8) & 0xff), std::uint8_t(k & 0xff)};
    }
    friend bool operator==(const Var& a, const Var& b) { return a.key() == b.key(); }
};

/// Sparse multivariate polynomial over Q in unipotent-matrix entry
/// variables. Monomials are sorted exponent vectors; zero coefficients
/// are never stored, so equality of canonical forms is map equality.
class MultiPoly {
public:
    // (var key, exponent) pairs, sorted by key, exponents > 0
    using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    MultiPoly() = default;
    explicit MultiPoly(Rat constant) {
        if (constant != 0) terms_[Monomial{}] = std::move(constant);
    }
    static MultiPoly variable(Var v) {
        MultiPoly p;
        p.terms_[Monomial{{v.key(), 1}}] = Rat(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rat(0) : it->second;
    }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    MultiPoly operator-() const {
        MultiPoly p = *this;
        for (auto& [m, c] : p.terms_) c = -c;
        return p;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) {
            auto it = terms_.find(m);
            if (it == terms_.end()) {
                terms_.emplace(m, c);
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) { return *this += -o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = merge(ma, mb);
                auto it = out.terms_.find(m);
                if (it == out.terms_.end()) {
                    out.terms_.emplace(std::move(m), ca * cb);
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) out.terms_.erase(it);
                }
            }
        return out;
    }

    friend MultiPoly operator*(const Rat& s, const MultiPoly& p) {
        MultiPoly out;
        if (s == 0) return out;
        out.terms_ = p.terms_;
        for (auto& [m, c] : out.terms_) c *= s;
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Evaluate in any commutative ring T reachable from Q: values(v)
    /// supplies the image of each variable.
    template <class T, class F>
    T eval(F&& values) const {
        T acc = T(Rat(0));
        for (const auto& [m, c] : terms_) {
            T term = T(c);
            for (const auto& [key, exp] : m) {
                T v = values(Var::from_key(key));
                for (std::uint32_t e = 0; e < exp; ++e) term = term * v;
            }
            acc = acc + term;
        }
        return acc;
    }

    /// Re-tags every variable with the given copy index (used to place a
    /// single-argument polynomial on the g or g' side of an identity).
    MultiPoly with_copy(std::uint8_t copy) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            Monomial m2 = m;
            for (auto& [key, exp] : m2) {
                Var v = Var::from_key(key);
                v.copy = copy;
                key = v.key();
            }
            std::sort(m2.begin(), m2.end());
            out.terms_[std::move(m2)] = c;
        }
        return out;
    }

    std::vector<Var> support() const {
        std::vector<std::uint32_t> keys;
        for (const auto& [m, c] : terms_)
            for (const auto& [key, exp] : m) keys.push_back(key);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<Var> out;
        for (auto k : keys) out.push_back(Var::from_key(k));
        return out;
    }

    /// Coefficient of the degree-1 monomial in the given variable.
    Rat linear_coeff(Var v) const {
        auto it = terms_.find(Monomial{{v.key(), 1}});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Drops all monomials that are exactly one of the given variables to
    /// the first power (used to split a coordinate polynomial into its
    /// linear part and remainder).
    MultiPoly without_linear_terms(const std::vector<Var>& vars) const {
        MultiPoly out = *this;
        for (const Var& v : vars) out.terms_.erase(Monomial{{v.key(), 1}});
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += format_rational(c);
            for (const auto& [key, exp] : m) {
                Var v = Var::from_key(key);
                s += "*x";
                if (v.copy) s += "'";
                s += "_{" + std::to_string(v.level) + "," + std::to_string(v.pos) + "}";
                if (exp > 1) s += "^" + std::to_string(exp);
            }
        }
        return s;
    }

private:
    static Monomial merge(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first == b[j].first) {
                m.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i;
                ++j;
            } else if (a[i].first < b[j].first) {
                m.push_back(a[i++]);
            } else {
                m.push_back(b[j++]);
            }
        }
        while (i < a.size()) m.push_back(a[i++]);
        while (j < b.size()) m.push_back(b[j++]);
        return m;
    }

    std::map<Monomial, Rat> terms_;
};

/// Weighted degree on unipotent-matrix coordinates: a level-i variable
/// weighs 2^{i-1}; the degree of a polynomial is the max over its
/// monomials, 0 for constants and for the zero polynomial.
inline std::uint64_t l_degree(const MultiPoly& p) {
    std::uint64_t best = 0;
    for (const auto& [m, c] : p.terms()) {
        std::uint64_t w = 0;
        for (const auto& [key, exp] : m) {
            Var v = Var::from_key(key);
            w += (std::uint64_t{1} << (v.level - 1)) * exp;
        }
        if (w > best) best = w;
    }
    return best;
}

}  // namespace affdyn
