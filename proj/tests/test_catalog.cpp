#include "doctest.h"

#include "ecq/catalog.hpp"
#include "ecq/torsion.hpp"

#include <set>

using namespace ecq;

namespace {

Rational Q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// x lifts to a rational point of y^2 = x^3 + Ax^2 + Bx over Q(param)
bool symbolic_member(const FamilyEntry& e, const RatFunc& x) {
    RatFunc rhs = x * x * x + e.A * x * x + e.B * x;
    return ratfunc_is_square(rhs).has_value();
}

Rational first_good_parameter(const FamilyEntry& e, long start = 2) {
    auto bad = e.degeneracy();
    for (long c = start; c < start + 50; ++c) {
        Rational q(c);
        if (std::find(bad.begin(), bad.end(), q) == bad.end()) return q;
    }
    FAIL("no small non-degenerate parameter");
    return Rational(0);
}

} // namespace

TEST_CASE("catalog has the full entry list in stable order") {
    const auto& cat = catalog_list();
    CHECK(cat.size() == 31);
    std::vector<std::string> ids;
    for (const auto& e : cat) ids.push_back(e.id);
    std::vector<std::string> expected = {
        "Z8_BASE", "Z26_BASE", "Z7_REMARK",
        "Z8_R1_1", "Z8_R1_2", "Z8_R1_3", "Z8_R1_4", "Z8_R1_5",
        "Z8_R1_6", "Z8_R1_7", "Z8_R1_8", "Z8_R1_9", "Z8_R1_10",
        "Z26_R1_1", "Z26_R1_2", "Z26_R1_3", "Z26_R1_4", "Z26_R1_5",
        "Z26_R1_6", "Z26_R1_7", "Z26_R1_8", "Z26_R1_9",
        "Z8_AA", "Z8_R2_A", "Z8_R2_B",
        "Z26_AA", "Z26_R2_A", "Z26_R2_B",
        "Z6_HADANO", "Z26_HADANO_R1", "Z26_R2_C"};
    CHECK(ids == expected);
    CHECK_THROWS_AS((void)catalog_entry("NO_SUCH_ID"), std::out_of_range);
}

TEST_CASE("base family coefficients are frozen") {
    const auto& z8 = catalog_entry("Z8_BASE");
    CHECK(z8.A == RatFunc(Poly::from_longs({1, -8, 16, -16, 8})));
    CHECK(z8.B.num()[4] == 16);
    CHECK(z8.B.num().degree() == 8);
    CHECK(z8.claimed_torsion.m == 1);
    CHECK(z8.claimed_torsion.n == 8);
    CHECK(!z8.has_c());

    const auto& z26 = catalog_entry("Z26_BASE");
    CHECK(z26.A == RatFunc(Poly::from_longs({37, -84, 102, -36, -3})));
    CHECK(z26.B.num().degree() == 7);
    CHECK(z26.claimed_torsion.m == 2);
    CHECK(z26.claimed_torsion.n == 6);
    CHECK(z26.torsion_generator.has_value());
    CHECK(z26.torsion_generator->y.has_value());

    const auto& z7 = catalog_entry("Z7_REMARK");
    CHECK(z7.has_c());
    CHECK(z7.claimed_torsion.n == 7);
}

TEST_CASE("specialization of the base families") {
    auto s8 = specialize(catalog_entry("Z8_BASE"), Q(2));
    CHECK(s8.curve.A() == 49);
    CHECK(s8.curve.B() == 256);

    auto s26 = specialize(catalog_entry("Z26_BASE"), Q(2));
    CHECK(s26.curve.A() == -59);
    CHECK(s26.curve.B() == 864);
    REQUIRE(s26.torsion_point.has_value());
    CHECK(s26.torsion_point->x == 24);
    CHECK(s26.torsion_point->y == 24);
    CHECK(s26.curve.point_order(*s26.torsion_point, 16) == 6);

    auto s7 = specialize(catalog_entry("Z7_REMARK"), Q(2));
    CHECK(s7.curve.A() == 73);
    CHECK(s7.curve.B() == -480);
    CHECK(s7.curve.C() == 2304);
}

TEST_CASE("claimed torsion matches computed torsion at a sample parameter") {
    for (const char* id : {"Z8_BASE", "Z26_BASE", "Z7_REMARK", "Z8_R1_4", "Z26_R1_4"}) {
        const auto& e = catalog_entry(id);
        auto s = specialize(e, first_good_parameter(e));
        auto t = torsion_structure(s.curve);
        CHECK(t.group.m == e.claimed_torsion.m);
        CHECK(t.group.n == e.claimed_torsion.n);
    }
}

TEST_CASE("degeneracy detection") {
    const auto& z8 = catalog_entry("Z8_BASE");
    auto bad = z8.degeneracy();
    CHECK(bad == std::vector<Rational>{Q(0), Q(1, 2), Q(1)});
    for (const auto& q : bad) CHECK_THROWS_AS(specialize(z8, q), DegenerateParameter);

    const auto& z26 = catalog_entry("Z26_BASE");
    for (const auto& q : z26.degeneracy()) CHECK_THROWS_AS(specialize(z26, q), DegenerateParameter);
    auto bad26 = z26.degeneracy();
    CHECK(std::find(bad26.begin(), bad26.end(), Q(1)) != bad26.end());
    CHECK(std::find(bad26.begin(), bad26.end(), Q(-1)) != bad26.end());
    CHECK(std::find(bad26.begin(), bad26.end(), Q(5, 3)) != bad26.end());
}

TEST_CASE("every claimed point and generator lifts symbolically") {
    for (const auto& e : catalog_list()) {
        if (e.has_c()) continue;
        CAPTURE(e.id);
        for (const auto& p : e.claimed_points) CHECK(symbolic_member(e, p.x));
        if (e.torsion_generator) CHECK(symbolic_member(e, e.torsion_generator->x));
    }
}

TEST_CASE("every entry specializes cleanly at two small parameters") {
    for (const auto& e : catalog_list()) {
        CAPTURE(e.id);
        Rational q1 = first_good_parameter(e);
        auto s1 = specialize(e, q1); // specialize verifies each point is on the curve
        CHECK(s1.points.size() == e.claimed_points.size());
        Rational q2 = first_good_parameter(e, q1.get_num().get_si() + 1);
        auto s2 = specialize(e, q2);
        CHECK(s2.points.size() == e.claimed_points.size());
        if (s1.torsion_point)
            CHECK(s1.curve.point_order(*s1.torsion_point, 16) == e.claimed_torsion.n);
    }
}

TEST_CASE("substitution chains reproduce the stored display coefficients exactly") {
    const auto& z8 = catalog_entry("Z8_BASE");
    auto aa8 = substitute(z8, catalog_substitution("z8.v3"), "w");
    CHECK(aa8.A == catalog_entry("Z8_AA").A);
    CHECK(aa8.B == catalog_entry("Z8_AA").B);
    CHECK(aa8.A == catalog_entry("Z8_R1_3").A);
    CHECK(aa8.B == catalog_entry("Z8_R1_3").B);

    auto r2a = substitute(aa8, catalog_substitution("z8.w1"), "u");
    CHECK(r2a.A == catalog_entry("Z8_R2_A").A);
    CHECK(r2a.B == catalog_entry("Z8_R2_A").B);
    auto r2b = substitute(aa8, catalog_substitution("z8.w2"), "u");
    CHECK(r2b.A == catalog_entry("Z8_R2_B").A);
    CHECK(r2b.B == catalog_entry("Z8_R2_B").B);

    const auto& z26 = catalog_entry("Z26_BASE");
    auto aa26 = substitute(z26, catalog_substitution("z26.v8"), "w");
    CHECK(aa26.A == catalog_entry("Z26_AA").A);
    CHECK(aa26.B == catalog_entry("Z26_AA").B);
    CHECK(substitute(aa26, catalog_substitution("z26.w1"), "u").A == catalog_entry("Z26_R2_A").A);
    CHECK(substitute(aa26, catalog_substitution("z26.w1"), "u").B == catalog_entry("Z26_R2_A").B);
    CHECK(substitute(aa26, catalog_substitution("z26.w2"), "u").A == catalog_entry("Z26_R2_B").A);
    CHECK(substitute(aa26, catalog_substitution("z26.w2"), "u").B == catalog_entry("Z26_R2_B").B);

    auto hr = substitute(catalog_entry("Z6_HADANO"), catalog_substitution("had.v"), "w");
    CHECK(hr.A == catalog_entry("Z26_HADANO_R1").A);
    CHECK(hr.B == catalog_entry("Z26_HADANO_R1").B);
    // the carried point lands exactly on the stored display
    REQUIRE(hr.claimed_points.size() == 1);
    CHECK(hr.claimed_points[0].x == catalog_entry("Z26_HADANO_R1").claimed_points[0].x);
    auto rc = substitute(hr, catalog_substitution("had.w"), "u");
    CHECK(rc.A == catalog_entry("Z26_R2_C").A);
    CHECK(rc.B == catalog_entry("Z26_R2_C").B);
}

TEST_CASE("substitution transports points onto the twisted model") {
    // carried claimed point of Z26_R1_8 coincides with the Z26_AA display
    const auto& r18 = catalog_entry("Z26_R1_8");
    const auto& aa = catalog_entry("Z26_AA");
    REQUIRE(r18.claimed_points.size() == 1);
    CHECK(r18.claimed_points[0].x == aa.claimed_points[0].x);
    // the transported torsion generator keeps its y-coordinate
    CHECK(r18.torsion_generator.has_value());
    CHECK(r18.torsion_generator->y.has_value());
    CHECK(r18.torsion_generator->x == aa.torsion_generator->x);
    CHECK(*r18.torsion_generator->y == *aa.torsion_generator->y);
}

TEST_CASE("substitute rejects constant substitutions") {
    CHECK_THROWS_AS(substitute(catalog_entry("Z8_BASE"), RatFunc(Rational(3)), "w"),
                    std::invalid_argument);
}

TEST_CASE("NonSquareY is reported when a claimed x does not lift") {
    FamilyEntry e = catalog_entry("Z8_BASE");
    e.claimed_points = {ClaimedPoint{RatFunc(Rational(3)), std::nullopt}};
    CHECK_THROWS_AS(specialize(e, Q(2)), NonSquareY);
}

TEST_CASE("ancestry records the substitution chain") {
    const auto& r2a = catalog_entry("Z8_R2_A");
    REQUIRE(r2a.ancestry.size() == 3);
    CHECK(r2a.ancestry[0] == "Z8_BASE");
    const auto& built = substitute(catalog_entry("Z8_BASE"), catalog_substitution("z8.v1"), "w");
    REQUIRE(built.ancestry.size() == 2);
    CHECK(built.ancestry[1].substr(0, 2) == "w:");
}
