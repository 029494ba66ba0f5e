#include <affdyn/exact_algebra.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace affdyn;

namespace {

// Independent oracle: det(xI - m) by recursive cofactor expansion over
// the polynomial ring. Exponential, fine for dim <= 4.
UniPoly cofactor_det(const PolyMatrix& m) {
    std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    UniPoly acc;
    for (std::size_t c = 0; c < n; ++c) {
        PolyMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == c) continue;
                minor(r - 1, cc++) = m(r, k);
            }
        }
        UniPoly term = m(0, c) * cofactor_det(minor);
        if (c % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

UniPoly char_poly_oracle(const IntMatrix& m) {
    std::size_t n = m.rows();
    PolyMatrix xim(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            UniPoly e{Rat(-m(r, c))};
            if (r == c) e += UniPoly::variable();
            xim(r, c) = e;
        }
    return cofactor_det(xim);
}

// Brute-force totient: count coprime residues.
std::uint64_t totient_oracle(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t dim, int max_abs) {
    std::uniform_int_distribution<int> dist(-max_abs, max_abs);
    IntMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = dist(rng);
    return m;
}

UniPoly upoly(std::initializer_list<Rat> cs) { return UniPoly(std::vector<Rat>(cs)); }

}  // namespace

TEST_CASE("char_poly matches cofactor oracle on pinned cases") {
    IntMatrix cat{{Int(2), Int(1)}, {Int(1), Int(1)}};
    CHECK(char_poly(cat) == upoly({Rat(1), Rat(-3), Rat(1)}));
    CHECK(char_poly(cat) == char_poly_oracle(cat));

    IntMatrix id3 = IntMatrix::identity(3);
    CHECK(char_poly(id3) == upoly({Rat(-1), Rat(3), Rat(-3), Rat(1)}));  // (x-1)^3

    IntMatrix rot{{Int(0), Int(-1)}, {Int(1), Int(0)}};
    CHECK(char_poly(rot) == upoly({Rat(1), Rat(0), Rat(1)}));
    CHECK(char_poly(rot) == char_poly_oracle(rot));
}

TEST_CASE("char_poly equals cofactor oracle on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 120; ++iter) {
        std::size_t dim = 1 + static_cast<std::size_t>(rng() % 4);
        IntMatrix m = random_matrix(rng, dim, 6);
        CHECK(char_poly(m) == char_poly_oracle(m));
    }
}

TEST_CASE("Cayley-Hamilton holds exactly") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t dim = 1 + static_cast<std::size_t>(rng() % 4);
        IntMatrix m = random_matrix(rng, dim, 5);
        UniPoly p = char_poly(m);
        IntMatrix acc(dim, dim);
        IntMatrix mp = IntMatrix::identity(dim);
        for (std::size_t i = 0; i <= p.degree(); ++i) {
            acc = acc + rat_num(p.coeff(i)) * mp;
            if (i < p.degree()) mp = mp * m;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("cyclotomic_order_lcm enumerates totient levels") {
    auto c1 = cyclotomic_order_lcm(1);
    CHECK(c1.orders == std::set<std::uint64_t>{1, 2});
    CHECK(c1.lcm == 2);

    auto c2 = cyclotomic_order_lcm(2);
    CHECK(c2.orders == std::set<std::uint64_t>{1, 2, 3, 4, 6});
    CHECK(c2.lcm == 12);

    auto c4 = cyclotomic_order_lcm(4);
    CHECK(c4.lcm % 5 == 0);
    CHECK(c4.lcm % 8 == 0);
    CHECK(c4.lcm % 12 == 0);

    // oracle sweep: membership is exactly totient(n) <= d
    for (std::uint64_t d = 1; d <= 5; ++d) {
        auto cs = cyclotomic_order_lcm(d);
        for (std::uint64_t n = 1; n <= 2 * d * d; ++n)
            CHECK(cs.orders.count(n) == (totient_oracle(n) <= d ? 1u : 0u));
    }
}

TEST_CASE("is_zero_entropy on pinned cases") {
    IntMatrix cat{{Int(2), Int(1)}, {Int(1), Int(1)}};
    // oracle: leading eigenvalue (3+sqrt(5))/2 > 1 by the quadratic formula
    CHECK((3.0 + std::sqrt(5.0)) / 2.0 > 1.0 + 1e-9);
    CHECK_FALSE(is_zero_entropy(cat));

    IntMatrix shear{{Int(1), Int(1)}, {Int(0), Int(1)}};
    CHECK(is_zero_entropy(shear));

    IntMatrix rot{{Int(0), Int(-1)}, {Int(1), Int(0)}};
    CHECK(rot.pow(4) == IntMatrix::identity(2));  // direct multiplication
    CHECK(is_zero_entropy(rot));

    // non-invertible but zero entropy: nilpotent
    IntMatrix nil{{Int(0), Int(1)}, {Int(0), Int(0)}};
    CHECK(is_zero_entropy(nil));

    // zero eigenvalue mixed with expanding one
    IntMatrix mixed{{Int(2), Int(0)}, {Int(0), Int(0)}};
    CHECK_FALSE(is_zero_entropy(mixed));
}

TEST_CASE("unipotency_order finds the minimal period") {
    CHECK(unipotency_order(IntMatrix::identity(3)) == 1);

    IntMatrix rot{{Int(0), Int(-1)}, {Int(1), Int(0)}};
    CHECK(rot.pow(2) == Int(-1) * IntMatrix::identity(2));  // A^2 = -I, not unipotent
    CHECK(unipotency_order(rot) == 4);

    IntMatrix ord3{{Int(0), Int(-1)}, {Int(1), Int(-1)}};
    CHECK(ord3.pow(3) == IntMatrix::identity(2));  // direct multiplication
    CHECK(unipotency_order(ord3) == 3);

    IntMatrix cat{{Int(2), Int(1)}, {Int(1), Int(1)}};
    CHECK_THROWS_AS(unipotency_order(cat), std::domain_error);
    IntMatrix sing{{Int(0), Int(0)}, {Int(0), Int(0)}};
    CHECK_THROWS_AS(unipotency_order(sing), std::domain_error);
}

TEST_CASE("unipotency_order divisor minimality property") {
    std::mt19937_64 rng(99);
    // random conjugates of block matrices built from finite-order pieces
    std::vector<IntMatrix> pool = {
        IntMatrix{{Int(0), Int(-1)}, {Int(1), Int(0)}},
        IntMatrix{{Int(0), Int(-1)}, {Int(1), Int(-1)}},
        IntMatrix{{Int(1), Int(1)}, {Int(0), Int(1)}},
        IntMatrix{{Int(-1), Int(1)}, {Int(0), Int(-1)}},
    };
    for (const auto& m : pool) {
        std::uint64_t b = unipotency_order(m);
        std::size_t d = m.rows();
        IntMatrix id = IntMatrix::identity(d);
        CHECK((m.pow(b) - id).pow(d).is_zero());
        for (std::uint64_t bp = 1; bp < b; ++bp)
            if (b % bp == 0) CHECK_FALSE((m.pow(bp) - id).pow(d).is_zero());
    }
}

TEST_CASE("entropy: pinned values and exact-zero path") {
    IntMatrix cat{{Int(2), Int(1)}, {Int(1), Int(1)}};
    double golden = std::log((3.0 + std::sqrt(5.0)) / 2.0);  // quadratic-formula oracle
    CHECK(std::fabs(entropy(cat) - golden) < 1e-9);
    CHECK(std::fabs(entropy(cat) - 0.9624236501) < 1e-9);

    IntMatrix shear{{Int(1), Int(1)}, {Int(0), Int(1)}};
    CHECK(entropy(shear) == 0.0);

    IntMatrix diag{{Int(2), Int(0)}, {Int(0), Int(3)}};
    CHECK(std::fabs(entropy(diag) - std::log(6.0)) < 1e-9);
    CHECK(std::fabs(entropy(diag) - 1.7917594692) < 1e-9);
}

TEST_CASE("spectrum multiplicities and residuals behave") {
    // (x-1)^4: quadruple root recovered exactly through square-free part
    IntMatrix id4 = IntMatrix::identity(4);
    auto spec = matrix_spectrum(id4);
    REQUIRE(spec.roots.size() == 1);
    CHECK(spec.multiplicities[0] == 4);
    CHECK(std::abs(spec.roots[0] - std::complex<double>(1.0, 0.0)) < 1e-12);

    IntMatrix mixed{{Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(0)}, {Int(0), Int(0), Int(5)}};
    auto spec2 = matrix_spectrum(mixed);
    int total = 0;
    for (int mult : spec2.multiplicities) total += mult;
    CHECK(total == 3);
}

TEST_CASE("exact zero-entropy test agrees with float spectrum on a random corpus") {
    std::mt19937_64 rng(20260810);
    int checked = 0;
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t dim = 1 + static_cast<std::size_t>(rng() % 4);
        IntMatrix m = random_matrix(rng, dim, 5);
        bool exact = is_zero_entropy(m);
        auto spec = matrix_spectrum(m);
        double h = 0.0;
        for (std::size_t i = 0; i < spec.roots.size(); ++i) {
            double a = std::abs(spec.roots[i]);
            if (a > 1.0) h += spec.multiplicities[i] * std::log(a);
        }
        CHECK(exact == (h < 1e-6));
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("unipotent_power_symbolic on pinned cases") {
    RatMatrix shear{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    PolyMatrix p = unipotent_power_symbolic(shear);
    CHECK(p(0, 0) == UniPoly(Rat(1)));
    CHECK(p(0, 1) == UniPoly::variable());
    CHECK(p(1, 0) == UniPoly());
    CHECK(p(1, 1) == UniPoly(Rat(1)));

    RatMatrix jordan3(3, 3);
    for (int i = 0; i < 3; ++i) jordan3(i, i) = Rat(1);
    jordan3(0, 1) = Rat(1);
    jordan3(1, 2) = Rat(1);
    PolyMatrix p3 = unipotent_power_symbolic(jordan3);
    // entry (1,3) must be t(t-1)/2; cross-check against direct powers
    CHECK(p3(0, 2) == upoly({Rat(0), Rat(-1, 2), Rat(1, 2)}));
    RatMatrix direct = RatMatrix::identity(3);
    for (int t = 0; t <= 10; ++t) {
        CHECK(eval_poly_matrix(p3, Rat(t)) == direct);
        direct = direct * jordan3;
    }

    PolyMatrix pid = unipotent_power_symbolic(RatMatrix::identity(2));
    CHECK(pid(0, 0) == UniPoly(Rat(1)));
    CHECK(pid(0, 1) == UniPoly());

    RatMatrix cat{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    CHECK_THROWS_AS(unipotent_power_symbolic(cat), std::domain_error);
}

TEST_CASE("unipotent_power_symbolic equals iterated multiplication, t <= 50") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 10; ++iter) {
        // random unipotent: I + strictly-upper random rationals
        std::size_t d = 2 + static_cast<std::size_t>(rng() % 3);
        RatMatrix m = RatMatrix::identity(d);
        std::uniform_int_distribution<int> num(-3, 3);
        std::uniform_int_distribution<int> den(1, 4);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r + 1; c < d; ++c) m(r, c) = Rat(num(rng), den(rng));
        PolyMatrix p = unipotent_power_symbolic(m);
        RatMatrix direct = RatMatrix::identity(d);
        for (int t = 0; t <= 50; ++t) {
            REQUIRE(eval_poly_matrix(p, Rat(t)) == direct);
            direct = direct * m;
        }
    }
}

TEST_CASE("faulhaber_sum: pinned cases and direct-summation oracle") {
    CHECK(faulhaber_sum(UniPoly(Rat(1))) == UniPoly::variable());
    CHECK(faulhaber_sum(UniPoly::variable()) == upoly({Rat(0), Rat(-1, 2), Rat(1, 2)}));

    UniPoly j2 = upoly({Rat(0), Rat(0), Rat(1)});
    // n(n-1)(2n-1)/6 = (2n^3 - 3n^2 + n)/6
    CHECK(faulhaber_sum(j2) == upoly({Rat(0), Rat(1, 6), Rat(-1, 2), Rat(1, 3)}));

    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<Rat> cs(1 + rng() % 5);
        for (auto& c : cs) c = Rat(coeff(rng), 1 + static_cast<int>(rng() % 3));
        UniPoly p{cs};
        UniPoly q = faulhaber_sum(p);
        CHECK(q(Rat(0)) == 0);
        if (!p.is_zero()) CHECK(q.degree() == p.degree() + 1);
        Rat acc(0);
        for (int n = 0; n <= 20; ++n) {
            REQUIRE(q(Rat(n)) == acc);  // direct summation oracle
            acc += p(Rat(n));
        }
        // polynomial identity q(n+1) - q(n) = p(n)
        CHECK(q.shift(Rat(1)) - q == p);
    }
}
