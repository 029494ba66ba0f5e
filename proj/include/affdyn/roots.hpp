#pragma once

#include <affdyn/unipoly.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace affdyn {

/// Numerically located roots of an exact polynomial. Multiplicities are
/// exact (they come from square-free decomposition over Q, not from
/// clustering floats); only the root coordinates are approximate.
/// residual is the largest relative backward error |p(z)| / scale(z)
/// over the square-free factors.
struct EigenSpectrum {
    std::vector<std::complex<double>> roots;
    std::vector<int> multiplicities;
    double residual = 0.0;
};

namespace detail {

/// Yun square-free decomposition over Q: returns factors f_1, f_2, ...
/// with p ~ prod f_i^i (up to a constant) and each f_i square-free.
inline std::vector<UniPoly> squarefree_factors(const UniPoly& p) {
    std::vector<UniPoly> out;
    if (p.degree() == 0) return out;
    UniPoly f = (Rat(1) / p.leading()) * p;
    UniPoly fp = f.derivative();
    UniPoly g = UniPoly::gcd(f, fp);
    UniPoly c = f.divmod(g).first;
    UniPoly d = fp.divmod(g).first - c.derivative();
    while (!(c.degree() == 0)) {
        UniPoly a = UniPoly::gcd(c, d);
        out.push_back(a);
        c = c.divmod(a).first;
        d = d.divmod(a).first - c.derivative();
    }
    return out;
}

inline std::vector<std::complex<double>> companion_roots(const UniPoly& monic) {
    std::size_t m = monic.degree();
    std::vector<std::complex<double>> roots;
    if (m == 0) return roots;
    if (m == 1) {
        roots.emplace_back(to_double(-monic.coeff(0) / monic.coeff(1)), 0.0);
        return roots;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<int>(m), static_cast<int>(m));
    for (std::size_t i = 1; i < m; ++i) comp(static_cast<int>(i), static_cast<int>(i - 1)) = 1.0;
    Rat lead = monic.leading();
    for (std::size_t i = 0; i < m; ++i)
        comp(static_cast<int>(i), static_cast<int>(m - 1)) = -to_double(monic.coeff(i) / lead);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("companion eigensolver failed to converge");
    for (std::size_t i = 0; i < m; ++i) roots.push_back(solver.eigenvalues()(static_cast<int>(i)));
    return roots;
}

inline double relative_residual(const UniPoly& p, const std::complex<double>& z) {
    std::complex<double> acc(0.0, 0.0);
    double scale = 0.0;
    double az = std::abs(z);
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        acc = acc * z + std::complex<double>(to_double(*it), 0.0);
        scale = scale * az + std::fabs(to_double(*it));
    }
    return std::abs(acc) / std::max(1.0, scale);
}

}  // namespace detail

/// All complex roots of p with exact multiplicities. Zero roots are
/// stripped exactly; repeated roots are separated by square-free
/// decomposition before the companion-matrix eigensolve, so clustered
/// eigenvalue ill-conditioning never arises. Throws if any root's
/// relative residual exceeds tol.
inline EigenSpectrum poly_roots(const UniPoly& p, double tol = 1e-8) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    EigenSpectrum spec;
    // factor out x^s exactly
    std::size_t s = 0;
    while (s <= p.degree() && p.coeff(s) == 0) ++s;
    if (s > 0) {
        spec.roots.emplace_back(0.0, 0.0);
        spec.multiplicities.push_back(static_cast<int>(s));
    }
    std::vector<Rat> rest(p.coeffs().begin() + static_cast<std::ptrdiff_t>(s), p.coeffs().end());
    UniPoly q{std::move(rest)};
    auto factors = detail::squarefree_factors(q);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() == 0) continue;
        auto roots = detail::companion_roots(factors[i]);
        for (const auto& z : roots) {
            double res = detail::relative_residual(factors[i], z);
            spec.residual = std::max(spec.residual, res);
            spec.roots.push_back(z);
            spec.multiplicities.push_back(static_cast<int>(i) + 1);
        }
    }
    if (spec.residual > tol)
        throw std::runtime_error("polynomial root residual " + std::to_string(spec.residual) +
                                 " above tolerance");
    return spec;
}

}  // namespace affdyn
