// Builds the Heisenberg translation by (alpha, beta, gamma), prints the
// generalized-polynomial coordinates of its orbit and cross-checks the
// first return times against direct iteration.

#include <affdyn/nil_affine.hpp>

#include <cstdio>

using namespace affdyn;

int main() {
    UnipotentMatrix g0(2);
    g0.set_entry(1, 1, Rat(1, 2));
    g0.set_entry(1, 2, Rat(1, 3));
    g0.set_entry(2, 1, Rat(1, 5));
    NilAffineMap map(g0, CoordinateMap::identity(2));

    NilPoint origin = NilPoint::origin(2);
    GPOrbit orbit = gp_orbit(map, origin);
    std::printf("residue period b = %llu\n", static_cast<unsigned long long>(orbit.b));
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 3 - i; ++j)
            std::printf("q[%zu,%zu](n) = %s\n", i, j,
                        orbit.q[0][i - 1][j - 1].to_string().c_str());

    ReturnTimeSet direct = return_times_direct(map, origin, Rat(1, 10), 300);
    ReturnTimeSet symbolic = return_times_gp(orbit, Rat(1, 10), 300);
    std::printf("return times (eps = 1/10, window 300):");
    for (std::int64_t n : symbolic.times) std::printf(" %lld", static_cast<long long>(n));
    std::printf("\nmethods agree: %s\n", direct == symbolic ? "yes" : "NO");
    return direct == symbolic ? 0 : 1;
}
