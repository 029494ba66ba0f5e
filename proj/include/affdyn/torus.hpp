#pragma once

#include <affdyn/exact_algebra.hpp>
#include <affdyn/matrix.hpp>
#include <affdyn/rational.hpp>
#include <affdyn/return_times.hpp>
#include <affdyn/unipoly.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace affdyn {

/// Point on T^d; every coordinate is kept reduced to [0, 1).
struct TorusPoint {
    std::vector<Rat> coords;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<Rat> c) : coords(std::move(c)) {
        for (auto& q : coords) q = rat_frac(q);
    }

    std::size_t dim() const { return coords.size(); }

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
        return a.coords == b.coords;
    }
    friend bool operator!=(const TorusPoint& a, const TorusPoint& b) { return !(a == b); }
};

/// Affine map x -> A x + alpha on T^d. Unipotency data (b, C = A^b) is
/// precomputed when the linear part has zero entropy and det = +-1.
class TorusAffineMap {
public:
    TorusAffineMap(IntMatrix A, std::vector<Rat> alpha) : A_(std::move(A)), alpha_(std::move(alpha)) {
        if (!A_.square()) throw std::invalid_argument("torus map: A must be square");
        if (alpha_.size() != A_.rows())
            throw std::invalid_argument("torus map: translation dimension mismatch");
        for (auto& q : alpha_) q = rat_frac(q);
        zero_entropy_ = is_zero_entropy(A_);
        Int d = det(A_);
        invertible_ = (d == 1 || d == -1);
        if (zero_entropy_ && invertible_) {
            b_ = unipotency_order(A_);
            C_ = A_.pow(b_);
        }
    }

    std::size_t dim() const { return A_.rows(); }
    const IntMatrix& A() const { return A_; }
    const std::vector<Rat>& alpha() const { return alpha_; }
    bool zero_entropy() const { return zero_entropy_; }
    bool invertible_over_z() const { return invertible_; }

    std::uint64_t unipotency_period() const {
        require_polynomial_orbit();
        return b_;
    }
    const IntMatrix& power_b() const {
        require_polynomial_orbit();
        return C_;
    }

    void require_polynomial_orbit() const {
        if (!zero_entropy_)
            throw std::domain_error("positive entropy: the polynomial orbit form needs zero entropy");
        if (!invertible_)
            throw std::domain_error("polynomial orbit form needs det(A) = +-1");
    }

    TorusPoint operator()(const TorusPoint& x) const {
        if (x.dim() != dim()) throw std::invalid_argument("torus map: point dimension mismatch");
        std::vector<Rat> out(dim(), Rat(0));
        for (std::size_t r = 0; r < dim(); ++r) {
            Rat acc = alpha_[r];
            for (std::size_t c = 0; c < dim(); ++c) acc += Rat(A_(r, c)) * x.coords[c];
            out[r] = rat_frac(acc);
        }
        return TorusPoint(std::move(out));
    }

private:
    IntMatrix A_;
    std::vector<Rat> alpha_;
    bool zero_entropy_ = false;
    bool invertible_ = false;
    std::uint64_t b_ = 0;
    IntMatrix C_;
};

/// Per-residue polynomial form of a zero-entropy orbit: for n = t b + r,
/// coordinate j of the n-th iterate is frac(polys[r][j](t)).
struct PolynomialOrbit {
    std::uint64_t b = 1;
    std::vector<std::vector<UniPoly>> polys;  // [residue][coordinate]
    TorusPoint base;

    std::size_t dim() const { return base.dim(); }
};

/// Exact symbolic orbit of a zero-entropy affine map: with C = A^b
/// unipotent and beta the translation part of the b-th iterate,
/// tau^{tb+r} a = C^t (tau^r a) + (sum_{k<t} C^k) beta, all entries
/// polynomials in t over Q. No eigen-decomposition is involved, so the
/// construction stays in rational arithmetic end to end.
inline PolynomialOrbit polynomial_orbit(const TorusAffineMap& map, const TorusPoint& a) {
    map.require_polynomial_orbit();
    if (a.dim() != map.dim()) throw std::invalid_argument("polynomial_orbit: dimension mismatch");
    std::size_t d = map.dim();
    std::uint64_t b = map.unipotency_period();

    RatMatrix C = to_rational(map.power_b());
    PolyMatrix Ct = unipotent_power_symbolic(C);               // C^t
    PolyMatrix S(d, d);                                        // sum_{k<t} C^k
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) S(r, c) = faulhaber_sum(Ct(r, c));

    // beta = sum_{i<b} A^i alpha (a lift of the translation part of tau^b)
    std::vector<Rat> beta(d, Rat(0));
    RatMatrix Ar = RatMatrix::identity(d);
    RatMatrix Aq = to_rational(map.A());
    for (std::uint64_t i = 0; i < b; ++i) {
        std::vector<Rat> term = Ar.apply(map.alpha());
        for (std::size_t j = 0; j < d; ++j) beta[j] += term[j];
        Ar = Ar * Aq;
    }

    PolynomialOrbit orbit;
    orbit.b = b;
    orbit.base = a;
    orbit.polys.resize(b);
    TorusPoint base_r = a;
    for (std::uint64_t r = 0; r < b; ++r) {
        orbit.polys[r].resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            UniPoly p;
            for (std::size_t c = 0; c < d; ++c) {
                p += Ct(j, c) * base_r.coords[c];
                p += S(j, c) * beta[c];
            }
            orbit.polys[r][j] = std::move(p);
        }
        base_r = map(base_r);
    }
    return orbit;
}

inline TorusPoint eval_orbit(const PolynomialOrbit& orbit, std::int64_t n) {
    if (n < 0) throw std::domain_error("eval_orbit: n must be >= 0");
    std::int64_t b = static_cast<std::int64_t>(orbit.b);
    Rat t(Int(n / b));
    std::size_t r = static_cast<std::size_t>(n % b);
    std::vector<Rat> coords(orbit.dim());
    for (std::size_t j = 0; j < orbit.dim(); ++j) coords[j] = rat_frac(orbit.polys[r][j](t));
    return TorusPoint(std::move(coords));
}

inline ReturnTimeSet return_times_direct(const TorusAffineMap& map, const TorusPoint& a,
                                         const Rat& eps, std::int64_t window) {
    require_eps(eps);
    ReturnTimeSet out;
    out.window = window;
    TorusPoint x = a;
    for (std::int64_t n = 0; n <= window; ++n) {
        if (max_circle_dist(x.coords, a.coords) < eps) out.times.push_back(n);
        if (n < window) x = map(x);
    }
    return out;
}

inline ReturnTimeSet return_times_symbolic(const PolynomialOrbit& orbit, const Rat& eps,
                                           std::int64_t window) {
    require_eps(eps);
    ReturnTimeSet out;
    out.window = window;
    for (std::int64_t n = 0; n <= window; ++n) {
        TorusPoint x = eval_orbit(orbit, n);
        if (max_circle_dist(x.coords, orbit.base.coords) < eps) out.times.push_back(n);
    }
    return out;
}

/// Separated-set entropy estimate in floating point. Samples a uniform
/// grid, grows a greedy maximal (n_max, eps)-separated subset of it and
/// returns ln(count)/n_max. A lower-bound heuristic only: it saturates
/// at ln(samples)/n_max and says nothing rigorous for finite eps.
inline double entropy_estimate_separated(const TorusAffineMap& map, int n_max, double eps,
                                         std::size_t samples) {
    if (n_max < 2) throw std::invalid_argument("entropy estimator needs n_max >= 2");
    std::size_t d = map.dim();
    std::size_t per_axis = static_cast<std::size_t>(std::llround(std::pow(
        static_cast<double>(samples), 1.0 / static_cast<double>(d))));
    if (per_axis < 2) per_axis = 2;

    // double-precision copy of the map
    std::vector<std::vector<double>> A(d, std::vector<double>(d));
    std::vector<double> alpha(d);
    for (std::size_t r = 0; r < d; ++r) {
        alpha[r] = to_double(map.alpha()[r]);
        for (std::size_t c = 0; c < d; ++c) A[r][c] = static_cast<double>(map.A()(r, c));
    }
    auto step = [&](std::vector<double>& x) {
        std::vector<double> y(d);
        for (std::size_t r = 0; r < d; ++r) {
            double acc = alpha[r];
            for (std::size_t c = 0; c < d; ++c) acc += A[r][c] * x[c];
            y[r] = acc - std::floor(acc);
        }
        x = std::move(y);
    };

    // trajectories of all grid points, steps 0 .. n_max-1
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= per_axis;
    std::vector<std::vector<double>> traj(total, std::vector<double>(d * static_cast<std::size_t>(n_max)));
    for (std::size_t s = 0; s < total; ++s) {
        std::vector<double> x(d);
        std::size_t idx = s;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = static_cast<double>(idx % per_axis) / static_cast<double>(per_axis);
            idx /= per_axis;
        }
        for (int n = 0; n < n_max; ++n) {
            for (std::size_t i = 0; i < d; ++i) traj[s][static_cast<std::size_t>(n) * d + i] = x[i];
            if (n + 1 < n_max) step(x);
        }
    }

    auto circle = [](double a, double b) {
        double f = std::fabs(a - b);
        f -= std::floor(f);
        return std::min(f, 1.0 - f);
    };
    // separated iff some step within [0, n_max) differs by more than eps;
    // scan the late steps first, where expansion (if any) shows up
    auto separated = [&](std::size_t p, std::size_t q) {
        for (int n = n_max - 1; n >= 0; --n)
            for (std::size_t i = 0; i < d; ++i)
                if (circle(traj[p][static_cast<std::size_t>(n) * d + i],
                           traj[q][static_cast<std::size_t>(n) * d + i]) > eps)
                    return true;
        return false;
    };

    std::vector<std::size_t> kept;
    for (std::size_t s = 0; s < total; ++s) {
        bool ok = true;
        for (std::size_t k : kept) {
            if (!separated(s, k)) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(s);
    }
    return std::log(static_cast<double>(kept.size())) / static_cast<double>(n_max);
}

}  // namespace affdyn
