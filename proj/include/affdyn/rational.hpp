#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affdyn {

// Arbitrary-precision integers and rationals. Everything downstream
// (matrices, polynomials, orbits) is built on these two types; no
// floating point ever enters the exact paths.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= q (true mathematical floor, exact for negatives).
inline Int rat_floor(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

/// q - floor(q), always in [0, 1).
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

inline double to_double(const Rat& q) { return static_cast<double>(q); }

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// Coordinatewise distance on the circle R/Z: min(|dx|, 1-|dx|) for the
/// fractional difference. Inputs need not lie in [0,1).
inline Rat circle_dist(const Rat& a, const Rat& b) {
    Rat d = rat_frac(a - b);           // in [0,1)
    Rat e = Rat(1) - d;
    return d < e ? d : e;
}

/// Parses "p/q", "p" or "-p/q"; throws std::invalid_argument on junk.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline std::string format_rational(const Rat& q) {
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline Int int_pow(Int base, std::uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace affdyn
