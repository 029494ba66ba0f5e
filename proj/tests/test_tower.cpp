#include <affdyn/tower.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace affdyn;

namespace {

// Two-level skew tower: top tau(x, y) = (x + 1/5, x + y) on T^2,
// bottom tau(x) = x + 1/5 on T^1, joined by first-coordinate projection.
Tower skew_tower() {
    Tower t;
    t.levels.emplace_back(TorusAffineMap(IntMatrix::identity(1), {Rat(1, 5)}));
    t.levels.emplace_back(
        TorusAffineMap(IntMatrix{{Int(1), Int(0)}, {Int(1), Int(1)}}, {Rat(1, 5), Rat(0)}));
    FactorMap f;
    f.kind = FactorMap::Kind::Project;
    f.coords = {0};
    t.maps.push_back(f);
    return t;
}

UnipotentMatrix heis(Rat x, Rat y, Rat z) {
    UnipotentMatrix g(2);
    g.set_entry(1, 1, std::move(x));
    g.set_entry(1, 2, std::move(y));
    g.set_entry(2, 1, std::move(z));
    return g;
}

// Nil tower: UT(4)/Gamma translation over its UT(3) corner over its
// UT(2) corner (a circle rotation).
Tower nil_tower() {
    Tower t;
    UnipotentMatrix low(1);
    low.set_entry(1, 1, Rat(1, 3));
    t.levels.emplace_back(NilAffineMap(low, CoordinateMap::identity(1)));

    t.levels.emplace_back(NilAffineMap(heis(Rat(1, 3), Rat(1, 4), Rat(1, 5)),
                                       CoordinateMap::identity(2)));

    UnipotentMatrix top(3);
    top.set_entry(1, 1, Rat(1, 3));
    top.set_entry(1, 2, Rat(1, 4));
    top.set_entry(1, 3, Rat(1, 7));
    top.set_entry(2, 1, Rat(1, 5));
    top.set_entry(2, 2, Rat(1, 2));
    top.set_entry(3, 1, Rat(1, 6));
    t.levels.emplace_back(NilAffineMap(top, CoordinateMap::identity(3)));

    FactorMap c1;
    c1.kind = FactorMap::Kind::Corner;
    c1.corner_k = 1;
    FactorMap c2;
    c2.kind = FactorMap::Kind::Corner;
    c2.corner_k = 2;
    t.maps = {c1, c2};
    return t;
}

}  // namespace

TEST_CASE("validate_tower accepts the skew projection tower") {
    Tower t = skew_tower();
    TowerValidation v = validate_tower(t);
    INFO(v.reason);
    CHECK(v.ok);
}

TEST_CASE("validate_tower accepts a single level") {
    Tower t;
    t.levels.emplace_back(TorusAffineMap(IntMatrix::identity(1), {Rat(1, 7)}));
    CHECK(validate_tower(t).ok);
}

TEST_CASE("validate_tower rejects mismatched translations") {
    Tower t = skew_tower();
    std::get<TorusAffineMap>(t.levels[0]) = TorusAffineMap(IntMatrix::identity(1), {Rat(1, 7)});
    TowerValidation v = validate_tower(t);
    CHECK_FALSE(v.ok);
    CHECK(v.failing_level == 0);
    CHECK(v.reason == "translations do not intertwine");
}

TEST_CASE("validate_tower rejects non-intertwining linear parts") {
    Tower t = skew_tower();
    std::get<TorusAffineMap>(t.levels[1]) =
        TorusAffineMap(IntMatrix{{Int(1), Int(1)}, {Int(0), Int(1)}}, {Rat(1, 5), Rat(0)});
    TowerValidation v = validate_tower(t);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == "linear parts do not intertwine");
}

TEST_CASE("validate_tower checks nil corners symbolically") {
    Tower t = nil_tower();
    TowerValidation v = validate_tower(t);
    INFO(v.reason);
    CHECK(v.ok);

    // break the corner translation
    Tower bad = nil_tower();
    UnipotentMatrix low(1);
    low.set_entry(1, 1, Rat(2, 3));
    std::get<NilAffineMap>(bad.levels[0]) = NilAffineMap(low, CoordinateMap::identity(1));
    TowerValidation vb = validate_tower(bad);
    CHECK_FALSE(vb.ok);
    CHECK(vb.reason == "g0 does not descend");
}

TEST_CASE("tower points stay compatible under the dynamics") {
    Tower t = skew_tower();
    TowerPoint x = TowerPoint::from_top(t, TorusPoint(std::vector<Rat>{Rat(1, 3), Rat(1, 7)}));
    REQUIRE(compatible(t, x));
    TowerPoint cur = x;
    for (int n = 0; n < 50; ++n) {
        cur = apply_tower(t, cur);
        REQUIRE(compatible(t, cur));
    }

    Tower nt = nil_tower();
    UnipotentMatrix g(3);
    g.set_entry(1, 1, Rat(1, 2));
    g.set_entry(2, 1, Rat(2, 7));
    TowerPoint z = TowerPoint::from_top(nt, NilPoint(g));
    REQUIRE(compatible(nt, z));
    TowerPoint curz = z;
    for (int n = 0; n < 30; ++n) {
        curz = apply_tower(nt, curz);
        REQUIRE(compatible(nt, curz));
    }
}

TEST_CASE("tower_metric: pinned values and tail bound") {
    Tower t = skew_tower();
    TowerPoint x = TowerPoint::from_top(t, TorusPoint(std::vector<Rat>{Rat(0), Rat(0)}));
    CHECK(tower_metric(t, x, x, 5) == 0);

    // differ only at level 1 (the bottom) by 1/4: weight 1/2
    TowerPoint y = x;
    y.coords[0] = TorusPoint(std::vector<Rat>{Rat(1, 4)});
    CHECK(tower_metric(t, x, y, 5) == Rat(1, 8));

    // any difference at level i contributes at most 2^{-i}
    TowerPoint z = x;
    z.coords[1] = TorusPoint(std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    CHECK(tower_metric(t, x, z, 1) == 0);  // truncation below level 2
    CHECK(tower_metric(t, x, z, 2) <= Rat(1, 4));

    // truncation tail bound: dropping levels > depth costs at most 2^{-depth}
    Tower nt = nil_tower();
    UnipotentMatrix g(3);
    g.set_entry(1, 1, Rat(1, 2));
    g.set_entry(2, 2, Rat(1, 3));
    g.set_entry(3, 1, Rat(1, 5));
    TowerPoint a = TowerPoint::from_top(nt, NilPoint(g));
    TowerPoint b = TowerPoint::from_top(nt, NilPoint(UnipotentMatrix::identity(3)));
    Rat full = tower_metric(nt, a, b, nt.depth());
    for (std::size_t depth = 0; depth <= nt.depth(); ++depth) {
        Rat truncated = tower_metric(nt, a, b, depth);
        CHECK(full - truncated <= Rat(Int(1), int_pow(Int(2), depth)));
        CHECK(truncated <= full);
    }
}

TEST_CASE("return_times_nested: per-level sets nest") {
    Tower t = skew_tower();
    TowerPoint x = TowerPoint::from_top(t, TorusPoint(std::vector<Rat>{Rat(0), Rat(0)}));
    auto sets = return_times_nested(t, x, Rat(1, 10), 100);
    REQUIRE(sets.size() == 2);
    // oracle: per-level direct scans
    {
        ReturnTimeSet bottom = return_times_direct(std::get<TorusAffineMap>(t.levels[0]),
                                                   std::get<TorusPoint>(x.coords[0]), Rat(1, 10), 100);
        ReturnTimeSet top = return_times_direct(std::get<TorusAffineMap>(t.levels[1]),
                                                std::get<TorusPoint>(x.coords[1]), Rat(1, 10), 100);
        CHECK(sets[0] == bottom);
        CHECK(sets[1] == top);
    }
    // nesting: upper-level returns are lower-level returns
    for (std::int64_t n : sets[1].times)
        CHECK(std::find(sets[0].times.begin(), sets[0].times.end(), n) != sets[0].times.end());

    Tower single;
    single.levels.emplace_back(TorusAffineMap(IntMatrix::identity(1), {Rat(1, 5)}));
    TowerPoint xs = TowerPoint::from_top(single, TorusPoint(std::vector<Rat>{Rat(0)}));
    CHECK(return_times_nested(single, xs, Rat(1, 10), 20).size() == 1);

    // identity dynamics: every level returns at every time
    Tower idt;
    idt.levels.emplace_back(TorusAffineMap(IntMatrix::identity(2), {Rat(0), Rat(0)}));
    idt.levels.emplace_back(TorusAffineMap(IntMatrix::identity(2), {Rat(0), Rat(0)}));
    FactorMap idmap;
    idmap.kind = FactorMap::Kind::Matrix;
    idmap.matrix = IntMatrix::identity(2);
    idt.maps.push_back(idmap);
    TowerPoint xi = TowerPoint::from_top(idt, TorusPoint(std::vector<Rat>{Rat(1, 3), Rat(1, 9)}));
    auto idsets = return_times_nested(idt, xi, Rat(1, 10), 25);
    for (const auto& s : idsets) CHECK(s.times.size() == 26);
}

TEST_CASE("return_times_nested rejects expanding factor maps") {
    Tower t;
    t.levels.emplace_back(TorusAffineMap(IntMatrix::identity(1), {Rat(1, 5)}));
    t.levels.emplace_back(TorusAffineMap(IntMatrix::identity(2), {Rat(1, 5), Rat(1, 10)}));
    FactorMap sum;  // x + y: a valid factor map but 2-Lipschitz
    sum.kind = FactorMap::Kind::Matrix;
    sum.matrix = IntMatrix(1, 2);
    sum.matrix(0, 0) = 1;
    sum.matrix(0, 1) = 1;
    t.maps.push_back(sum);
    // intertwining does not hold for alpha here, so fix it: 1/5 + 1/10 = 3/10
    std::get<TorusAffineMap>(t.levels[0]) = TorusAffineMap(IntMatrix::identity(1), {Rat(3, 10)});
    REQUIRE(validate_tower(t).ok);

    TowerPoint x = TowerPoint::from_top(t, TorusPoint(std::vector<Rat>{Rat(0), Rat(0)}));
    CHECK_THROWS_AS(return_times_nested(t, x, Rat(1, 10), 10), std::domain_error);
}

TEST_CASE("nested return times on the nil tower") {
    Tower nt = nil_tower();
    UnipotentMatrix g(3);
    g.set_entry(1, 2, Rat(1, 2));
    TowerPoint x = TowerPoint::from_top(nt, NilPoint(g));
    auto sets = return_times_nested(nt, x, Rat(1, 10), 200);
    REQUIRE(sets.size() == 3);
    for (std::size_t i = 0; i + 1 < sets.size(); ++i)
        for (std::int64_t n : sets[i + 1].times)
            CHECK(std::find(sets[i].times.begin(), sets[i].times.end(), n) != sets[i].times.end());
}
