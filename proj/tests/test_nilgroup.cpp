#include <affdyn/nilgroup.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace affdyn;

namespace {

UnipotentMatrix heis(Rat x, Rat y, Rat z) {
    UnipotentMatrix g(2);
    g.set_entry(1, 1, std::move(x));
    g.set_entry(1, 2, std::move(y));
    g.set_entry(2, 1, std::move(z));
    return g;
}

UnipotentMatrix random_element(std::mt19937_64& rng, std::size_t k, int den_max) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, den_max);
    UnipotentMatrix g(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) g.set_entry(i, j, Rat(num(rng), den(rng)));
    return g;
}

UnipotentMatrix random_lattice_element(std::mt19937_64& rng, std::size_t k, int max_abs) {
    std::uniform_int_distribution<int> num(-max_abs, max_abs);
    UnipotentMatrix g(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k + 1 - i; ++j) g.set_entry(i, j, Rat(num(rng)));
    return g;
}

// Oracle: multiply the full (k+1)x(k+1) matrices.
UnipotentMatrix full_mul(const UnipotentMatrix& a, const UnipotentMatrix& b) {
    return UnipotentMatrix::from_full(a.to_full() * b.to_full());
}

}  // namespace

TEST_CASE("group operations match full-matrix arithmetic") {
    std::mt19937_64 rng(31337);
    for (std::size_t k = 1; k <= 5; ++k) {
        for (int iter = 0; iter < 10; ++iter) {
            UnipotentMatrix g = random_element(rng, k, 6);
            UnipotentMatrix h = random_element(rng, k, 6);
            CHECK(group_mul(g, h) == full_mul(g, h));
            CHECK(group_mul(g, group_inv(g)) == UnipotentMatrix::identity(k));
            CHECK(group_mul(group_inv(g), g) == UnipotentMatrix::identity(k));
            CHECK(commutator(g, UnipotentMatrix::identity(k)) == UnipotentMatrix::identity(k));
        }
    }
}

TEST_CASE("Heisenberg commutator lands in the center with the antisymmetric coordinate") {
    std::mt19937_64 rng(55);
    for (int iter = 0; iter < 20; ++iter) {
        UnipotentMatrix g = random_element(rng, 2, 5);
        UnipotentMatrix h = random_element(rng, 2, 5);
        UnipotentMatrix c = commutator(g, h);
        CHECK(c.entry(1, 1) == 0);
        CHECK(c.entry(1, 2) == 0);
        CHECK(c.entry(2, 1) ==
              g.entry(1, 1) * h.entry(1, 2) - g.entry(1, 2) * h.entry(1, 1));
    }
}

TEST_CASE("lower_central_series_level uses the UT filtration") {
    CHECK(lower_central_series_level(UnipotentMatrix::identity(3)) == 4);

    UnipotentMatrix g(3);
    g.set_entry(2, 1, Rat(1, 2));
    CHECK(lower_central_series_level(g) == 2);

    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 10; ++iter) {
        UnipotentMatrix a = random_element(rng, 3, 4);
        UnipotentMatrix b = random_element(rng, 3, 4);
        CHECK(lower_central_series_level(commutator(a, b)) >= 2);
    }
}

TEST_CASE("l_degree weights levels by powers of two") {
    MultiPoly m = MultiPoly::variable(Var{0, 1, 1}) * MultiPoly::variable(Var{0, 1, 1}) *
                  MultiPoly::variable(Var{0, 2, 1});
    CHECK(l_degree(m) == 4);
    CHECK(l_degree(MultiPoly(Rat(7))) == 0);
    CHECK(l_degree(MultiPoly()) == 0);
    CHECK(l_degree(MultiPoly::variable(Var{0, 3, 1})) == 4);
}

TEST_CASE("l_degree subadditivity on random polynomials") {
    std::mt19937_64 rng(2025);
    auto random_poly = [&](std::size_t k) {
        MultiPoly p(Rat(static_cast<int>(rng() % 5)));
        for (int t = 0; t < 4; ++t) {
            MultiPoly mono(Rat(1 + static_cast<int>(rng() % 3)));
            for (int v = 0; v < 3; ++v) {
                std::uint8_t level = static_cast<std::uint8_t>(1 + rng() % k);
                std::uint8_t pos = static_cast<std::uint8_t>(1 + rng() % (k + 1 - level));
                mono = mono * MultiPoly::variable(Var{0, level, pos});
            }
            p += mono;
        }
        return p;
    };
    for (int iter = 0; iter < 40; ++iter) {
        MultiPoly f = random_poly(4), g = random_poly(4);
        CHECK(l_degree(f * g) <= l_degree(f) + l_degree(g));
        CHECK(l_degree(f + g) <= std::max(l_degree(f), l_degree(g)));
    }
}

TEST_CASE("inner_automorphism: pinned coordinate maps") {
    CoordinateMap id_map = inner_automorphism(RatMatrix::identity(3), 2);
    CHECK(id_map.phi == CoordinateMap::identity(2).phi);

    // u = E_12(1)
    RatMatrix u = RatMatrix::identity(3);
    u(0, 1) = Rat(1);
    CoordinateMap conj = inner_automorphism(u, 2);
    CHECK(conj.at(1, 1) == MultiPoly::variable(Var{0, 1, 1}));
    CHECK(conj.at(1, 2) == MultiPoly::variable(Var{0, 1, 2}));
    CHECK(conj.at(2, 1) ==
          MultiPoly::variable(Var{0, 2, 1}) + MultiPoly::variable(Var{0, 1, 2}));

    // unit diagonal changes nothing
    CoordinateMap diag_map = inner_automorphism(RatMatrix::identity(4), 3);
    CHECK(diag_map.phi == CoordinateMap::identity(3).phi);

    // non-normalizing u is rejected
    RatMatrix bad = RatMatrix::identity(3);
    bad(1, 1) = Rat(1, 2);
    CHECK_THROWS_AS(inner_automorphism(bad, 2), std::domain_error);
}

TEST_CASE("verify_homomorphism certifies the convolution identity symbolically") {
    CHECK(verify_homomorphism(CoordinateMap::identity(3)));

    RatMatrix u = RatMatrix::identity(4);
    u(0, 2) = Rat(2);
    u(1, 3) = Rat(-1);
    CHECK(verify_homomorphism(inner_automorphism(u, 3)));

    CoordinateMap broken = CoordinateMap::identity(2);
    broken.phi[1][0] = broken.phi[1][0] * broken.phi[1][0];  // x_{2,1} -> x_{2,1}^2
    CHECK_FALSE(verify_homomorphism(broken));
}

TEST_CASE("symbolic homomorphism identity implies the numeric one") {
    std::mt19937_64 rng(909);
    RatMatrix u = RatMatrix::identity(4);
    u(0, 1) = Rat(1);
    u(2, 3) = Rat(-2);
    CoordinateMap phi = inner_automorphism(u, 3);
    REQUIRE(verify_homomorphism(phi));
    for (int iter = 0; iter < 100; ++iter) {
        UnipotentMatrix g = random_element(rng, 3, 6);
        UnipotentMatrix h = random_element(rng, 3, 6);
        REQUIRE(phi(group_mul(g, h)) == group_mul(phi(g), phi(h)));
    }
}

TEST_CASE("linear_parts: identity, pinned conjugation, functoriality") {
    auto parts_id = linear_parts(CoordinateMap::identity(3));
    for (std::size_t i = 0; i < parts_id.size(); ++i)
        CHECK(parts_id[i] == RatMatrix::identity(3 - i));

    RatMatrix u = RatMatrix::identity(3);
    u(0, 1) = Rat(1);
    auto parts = linear_parts(inner_automorphism(u, 2));
    CHECK(parts[0] == RatMatrix::identity(2));
    CHECK(parts[1] == RatMatrix::identity(1));

    // composition multiplies level-wise
    RatMatrix v = RatMatrix::identity(4);
    v(1, 2) = Rat(3);
    RatMatrix w = RatMatrix::identity(4);
    w(0, 3) = Rat(-1);
    CoordinateMap f = inner_automorphism(v, 3);
    CoordinateMap g = inner_automorphism(w, 3);
    auto pf = linear_parts(f), pg = linear_parts(g), pc = linear_parts(f.compose(g));
    for (std::size_t i = 0; i < pc.size(); ++i) CHECK(pc[i] == pf[i] * pg[i]);
}

TEST_CASE("structure bounds: remainders live below and obey the weighted degree") {
    auto rep_id = verify_structure_bounds(CoordinateMap::identity(4));
    CHECK(rep_id.all_hold);
    for (const auto& e : rep_id.entries) CHECK(e.l_actual == 0);

    RatMatrix u = RatMatrix::identity(3);
    u(0, 1) = Rat(1);
    auto rep = verify_structure_bounds(inner_automorphism(u, 2));
    CHECK(rep.all_hold);
    // f_{2,1} = x_{1,2} has weighted degree 1, bound 2
    bool found = false;
    for (const auto& e : rep.entries)
        if (e.i == 2 && e.j == 1) {
            found = true;
            CHECK(e.l_actual == 1);
            CHECK(e.l_bound == 2);
            CHECK(e.lower_levels_only);
        }
    CHECK(found);
}

TEST_CASE("structure bounds hold for random composites of inner automorphisms") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int iter = 0; iter < 25; ++iter) {
        std::size_t k = 2 + static_cast<std::size_t>(rng() % 3);
        CoordinateMap phi = CoordinateMap::identity(k);
        int pieces = 1 + static_cast<int>(rng() % 4);
        for (int p = 0; p < pieces; ++p) {
            RatMatrix u = RatMatrix::identity(k + 1);
            if (rng() % 4 == 0) {
                for (std::size_t d = 0; d <= k; ++d) u(d, d) = (rng() % 2) ? Rat(1) : Rat(-1);
            } else {
                std::size_t r = rng() % k;
                std::size_t c = r + 1 + rng() % (k - r);
                u(r, c) = Rat(entry(rng));
            }
            phi = phi.compose(inner_automorphism(u, k));
        }
        REQUIRE(verify_homomorphism(phi));
        auto parts = linear_parts(phi);  // throws if singular
        CHECK(parts.size() == k);
        auto rep = verify_structure_bounds(phi);
        CHECK(rep.all_hold);
    }
}

TEST_CASE("reduce_mod_lattice: pinned cases") {
    UnipotentMatrix g = heis(Rat(1), Rat(1), Rat(5, 4));
    LatticeReduction red = reduce_mod_lattice(g);
    CHECK(red.q == heis(Rat(0), Rat(0), Rat(1, 4)));
    CHECK(red.gamma == heis(Rat(1), Rat(1), Rat(1)));
    CHECK(group_mul(red.q, red.gamma) == g);

    UnipotentMatrix frac = heis(Rat(1, 3), Rat(2, 5), Rat(7, 9));
    LatticeReduction red2 = reduce_mod_lattice(frac);
    CHECK(red2.q == frac);
    CHECK(red2.gamma == UnipotentMatrix::identity(2));

    UnipotentMatrix integral = heis(Rat(2), Rat(-3), Rat(4));
    LatticeReduction red3 = reduce_mod_lattice(integral);
    CHECK(red3.q == UnipotentMatrix::identity(2));
    CHECK(red3.gamma == integral);
}

TEST_CASE("reduce_mod_lattice: reconstruction and uniqueness on random inputs") {
    std::mt19937_64 rng(181818);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t k = 1 + static_cast<std::size_t>(rng() % 4);
        UnipotentMatrix g = random_element(rng, k, 20);
        LatticeReduction red = reduce_mod_lattice(g);
        REQUIRE(red.q.is_fractional());
        REQUIRE(red.gamma.is_integral());
        REQUIRE(group_mul(red.q, red.gamma) == g);
        // any other lattice divisor fails the fractional test
        for (int probe = 0; probe < 20; ++probe) {
            UnipotentMatrix delta = random_lattice_element(rng, k, 2);
            if (delta.is_identity()) continue;
            UnipotentMatrix gamma2 = group_mul(delta, red.gamma);
            UnipotentMatrix q2 = group_mul(g, group_inv(gamma2));
            CHECK_FALSE(q2.is_fractional());
        }
    }
}
