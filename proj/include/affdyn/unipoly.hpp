#pragma once

#include <affdyn/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affdyn {

/// Univariate polynomial over Q. Coefficients are stored constant term
/// first and kept trimmed: the highest stored coefficient is nonzero
/// unless the polynomial is identically zero (empty vector).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Rat constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }
    explicit UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UniPoly variable() { return UniPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
    static UniPoly monomial(const Rat& c, std::size_t power) {
        std::vector<Rat> v(power + 1, Rat(0));
        v[power] = c;
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    /// Degree of the zero polynomial is reported as 0.
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

    Rat leading() const {
        if (coeffs_.empty()) return Rat(0);
        return coeffs_.back();
    }

    // Horner evaluation; T is any ring reachable from Rat (Rat itself,
    // UniPoly for composition, GP expressions, ...).
    template <class T>
    T eval(const T& x) const {
        T acc = T(Rat(0));
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + T(*it);
        return acc;
    }

    Rat operator()(const Rat& x) const { return eval<Rat>(x); }
    Rat operator()(const Int& x) const { return eval<Rat>(Rat(x)); }

    /// p(q(t)) by Horner over the polynomial ring.
    UniPoly compose(const UniPoly& inner) const { return eval<UniPoly>(inner); }

    /// p(t + c)
    UniPoly shift(const Rat& c) const {
        return compose(UniPoly(std::vector<Rat>{c, Rat(1)}));
    }

    UniPoly derivative() const {
        if (coeffs_.size() <= 1) return UniPoly();
        std::vector<Rat> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rat(Int(i));
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        std::vector<Rat> v = coeffs_;
        for (auto& c : v) c = -c;
        return UniPoly(std::move(v));
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return UniPoly(std::move(v));
    }

    friend UniPoly operator*(const Rat& c, const UniPoly& p) {
        if (c == 0) return UniPoly();
        std::vector<Rat> v = p.coeffs_;
        for (auto& x : v) x *= c;
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const UniPoly& p, const Rat& c) { return c * p; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    /// Euclidean division over Q: returns (quotient, remainder).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UniPoly r = *this;
        std::vector<Rat> q(coeffs_.size(), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t k = r.degree() - d.degree();
            Rat c = r.leading() / d.leading();
            for (std::size_t i = 0; i < d.coeffs_.size(); ++i)
                r.coeffs_[i + k] -= c * d.coeffs_[i];
            r.trim();
            q[k] = c;
        }
        return {UniPoly(std::move(q)), r};
    }

    /// Monic gcd over Q.
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero() && a.leading() != 1) a = (Rat(1) / a.leading()) * a;
        return a;
    }

    std::string to_string(const std::string& var = "t") const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || coeffs_[i] != 1) s += format_rational(coeffs_[i]);
            if (i > 0) {
                if (coeffs_[i] != 1) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

/// binom(t, k) = t(t-1)...(t-k+1)/k! as a polynomial in t. Valid as the
/// binomial coefficient for every integer t, including negatives.
inline UniPoly binomial_poly(unsigned k) {
    UniPoly p{Rat(1)};
    for (unsigned s = 0; s < k; ++s)
        p = p * UniPoly(std::vector<Rat>{Rat(-Int(s)), Rat(1)});
    return (Rat(1) / Rat(factorial(k))) * p;
}

/// q with q(n) = sum_{j=0}^{n-1} p(j) for all integers n >= 0.
/// Works in the binomial basis: p(j) = sum_k a_k binom(j,k) with
/// a_k the k-th forward difference of p at 0, and
/// sum_{j<n} binom(j,k) = binom(n,k+1).
inline UniPoly faulhaber_sum(const UniPoly& p) {
    if (p.is_zero()) return UniPoly();
    std::size_t d = p.degree();
    std::vector<Rat> table(d + 1);
    for (std::size_t i = 0; i <= d; ++i) table[i] = p(Rat(Int(i)));
    UniPoly q;
    for (std::size_t k = 0; k <= d; ++k) {
        q += table[0] * binomial_poly(static_cast<unsigned>(k) + 1);
        for (std::size_t i = 0; i + k < d; ++i) table[i] = table[i + 1] - table[i];
    }
    return q;
}

}  // namespace affdyn
