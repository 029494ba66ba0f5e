#pragma once

#include <affdyn/matrix.hpp>
#include <affdyn/rational.hpp>
#include <affdyn/roots.hpp>
#include <affdyn/unipoly.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace affdyn {

inline std::uint64_t euler_totient(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

struct CyclotomicOrders {
    std::set<std::uint64_t> orders;  // all n with totient(n) <= d
    Int lcm;
};

/// Every root of unity that can occur as an eigenvalue of a d x d
/// integer matrix has order n with totient(n) <= d (its cyclotomic
/// polynomial divides the characteristic polynomial). totient(n) >=
/// sqrt(n/2) bounds the search to n <= 2 d^2.
inline CyclotomicOrders cyclotomic_order_lcm(std::uint64_t d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    CyclotomicOrders out;
    out.lcm = 1;
    for (std::uint64_t n = 1; n <= 2 * d * d; ++n) {
        if (euler_totient(n) <= d) {
            out.orders.insert(n);
            out.lcm = lcm_int(out.lcm, Int(n));
        }
    }
    return out;
}

/// Exact decision: every eigenvalue of m lies in {0} union {roots of
/// unity}. Equivalent to m^d (m^B - I)^d = 0 over Z, with d = dim and
/// B the lcm of all admissible root-of-unity orders: the left factor
/// annihilates the generalized 0-eigenspace, the right one the
/// root-of-unity part, and no other eigenvalue satisfies either.
inline bool is_zero_entropy(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("is_zero_entropy needs a square matrix");
    std::size_t d = m.rows();
    Int big = cyclotomic_order_lcm(d).lcm;
    IntMatrix id = IntMatrix::identity(d);
    IntMatrix mb = m.pow(static_cast<std::uint64_t>(big));
    IntMatrix probe = (m.pow(static_cast<std::uint64_t>(d))) * (mb - id).pow(static_cast<std::uint64_t>(d));
    return probe.is_zero();
}

/// Smallest b >= 1 with (m^b - I)^dim = 0. Requires zero entropy and
/// det = +-1; any valid b divides the cyclotomic lcm, so only its
/// divisors are tested.
inline std::uint64_t unipotency_order(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("unipotency_order needs a square matrix");
    Int dm = det(m);
    if (dm != 1 && dm != -1)
        throw std::domain_error("unipotency_order: matrix is not invertible over Z (det != +-1)");
    if (!is_zero_entropy(m))
        throw std::domain_error("unipotency_order: matrix has positive entropy");
    std::size_t d = m.rows();
    std::uint64_t big = static_cast<std::uint64_t>(cyclotomic_order_lcm(d).lcm);
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t b = 1; b * b <= big; ++b) {
        if (big % b == 0) {
            divisors.push_back(b);
            if (b != big / b) divisors.push_back(big / b);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    IntMatrix id = IntMatrix::identity(d);
    for (std::uint64_t b : divisors) {
        IntMatrix diff = m.pow(b) - id;
        if (diff.pow(static_cast<std::uint64_t>(d)).is_zero()) return b;
    }
    throw std::logic_error("unipotency_order: no divisor of the cyclotomic lcm worked");
}

/// Symbolic power of a unipotent matrix: m^t = sum_i binom(t,i) (m-I)^i,
/// a matrix of polynomials in t of degree < dim. The identity holds for
/// every integer t (negative included), since both sides solve the same
/// linear recurrence with characteristic polynomial (x-1)^dim.
inline PolyMatrix unipotent_power_symbolic(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("unipotent_power_symbolic needs a square matrix");
    std::size_t d = m.rows();
    RatMatrix nil = m - RatMatrix::identity(d);
    {
        RatMatrix probe = nil.pow(static_cast<std::uint64_t>(d));
        if (!probe.is_zero())
            throw std::domain_error("unipotent_power_symbolic: matrix is not unipotent");
    }
    PolyMatrix result(d, d);
    RatMatrix nil_pow = RatMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
        UniPoly binom = binomial_poly(static_cast<unsigned>(i));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                result(r, c) += binom * nil_pow(r, c);
        if (i + 1 < d) nil_pow = nil_pow * nil;
    }
    return result;
}

inline RatMatrix eval_poly_matrix(const PolyMatrix& pm, const Rat& t) {
    return pm.map<Rat>([&](const UniPoly& p) { return p(t); });
}

inline EigenSpectrum matrix_spectrum(const IntMatrix& m, double tol = 1e-8) {
    return poly_roots(char_poly(m), tol);
}

/// Topological entropy of the toral endomorphism induced by m:
/// sum of log|lambda| over eigenvalues outside the unit circle, natural
/// log. The exact zero-entropy test overrides the float path, so
/// unipotent and finite-order matrices return exactly 0.0.
inline double entropy(const IntMatrix& m, double tol = 1e-8) {
    if (is_zero_entropy(m)) return 0.0;
    EigenSpectrum spec = matrix_spectrum(m, tol);
    double h = 0.0;
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
        double a = std::abs(spec.roots[i]);
        if (a > 1.0) h += spec.multiplicities[i] * std::log(a);
    }
    return h;
}

}  // namespace affdyn
