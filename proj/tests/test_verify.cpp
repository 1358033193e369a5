#include "doctest.h"

#include "ecq/verify.hpp"

using namespace ecq;

TEST_CASE("membership verifies symbolically for the whole catalog") {
    for (const auto& e : catalog_list()) {
        CAPTURE(e.id);
        auto rep = verify_membership(e);
        CHECK(rep.passed());
        CHECK(!rep.claims.empty());
    }
}

TEST_CASE("membership witness matches a stored y-coordinate") {
    const auto& e = catalog_entry("Z26_BASE");
    REQUIRE(e.torsion_generator.has_value());
    REQUIRE(e.torsion_generator->y.has_value());
    // verify_membership already cross-checks stored y against the witness;
    // do it once more explicitly
    RatFunc x = e.torsion_generator->x;
    auto w = ratfunc_is_square(x * x * x + e.A * x * x + e.B * x);
    REQUIRE(w.has_value());
    bool matches = (*e.torsion_generator->y == *w) || (*e.torsion_generator->y == -*w);
    CHECK(matches);
    // and the witness squared reproduces the rhs
    CHECK(*w * *w == x * x * x + e.A * x * x + e.B * x);
}

TEST_CASE("membership fails loudly for a corrupted entry") {
    FamilyEntry e = catalog_entry("Z26_R1_4");
    e.B = -e.B;
    CHECK_THROWS_AS(verify_membership(e), SymbolicFailure);
}

TEST_CASE("sampled torsion verification") {
    CHECK(verify_torsion(catalog_entry("Z8_BASE"), 20, 1).passed());
    CHECK(verify_torsion(catalog_entry("Z7_REMARK"), 20, 1).passed());
    CHECK(verify_torsion(catalog_entry("Z26_R2_A"), 10, 1).passed());
    CHECK_THROWS_AS(verify_torsion(catalog_entry("Z8_BASE"), 0, 1), std::invalid_argument);
}

TEST_CASE("torsion mismatch is detected") {
    FamilyEntry e = catalog_entry("Z8_BASE");
    e.claimed_torsion = TorsionGroup{2, 8};
    CHECK_THROWS_AS(verify_torsion(e, 3, 1), TorsionMismatch);
}

TEST_CASE("torsion sampling is deterministic in the seed") {
    auto a = verify_torsion(catalog_entry("Z26_BASE"), 8, 7);
    auto b = verify_torsion(catalog_entry("Z26_BASE"), 8, 7);
    REQUIRE(a.claims.size() == b.claims.size());
    CHECK(a.claims.back().detail == b.claims.back().detail);
}

TEST_CASE("independence of the rank-2 point pairs") {
    for (const char* id : {"Z8_R2_A", "Z8_R2_B", "Z26_R2_A", "Z26_R2_B", "Z26_R2_C"}) {
        const auto& e = catalog_entry(id);
        CAPTURE(id);
        Rational q = default_independence_parameter(e);
        auto rep = verify_independence(e, q, 1e-6);
        CHECK(rep.passed());
    }
}

TEST_CASE("independence at the designated parameter u = 2") {
    CHECK(verify_independence(catalog_entry("Z26_R2_A"), Rational(2), 1e-6).passed());
    CHECK(verify_independence(catalog_entry("Z8_R2_A"), Rational(2), 1e-6).passed());
}

TEST_CASE("dependent points are rejected") {
    FamilyEntry e = catalog_entry("Z8_R2_A");
    e.claimed_points = {e.claimed_points[0], e.claimed_points[0]};
    CHECK_THROWS_AS(verify_independence(e, Rational(2), 1e-6), DependentPoints);
}

TEST_CASE("independence rejects degenerate parameters and short entries") {
    CHECK_THROWS_AS(verify_independence(catalog_entry("Z8_R2_A"), Rational(1), 1e-6),
                    DegenerateParameter);
    CHECK_THROWS_AS(verify_independence(catalog_entry("Z8_BASE"), Rational(2), 1e-6),
                    std::invalid_argument);
}

TEST_CASE("independence is stable under P -> -P and P -> P+T") {
    const auto& e = catalog_entry("Z26_R2_A");
    auto s = specialize(e, Rational(2));
    REQUIRE(s.points.size() == 2);
    REQUIRE(s.torsion_point.has_value());
    double reg = regulator(s.curve, s.points);
    double reg_neg = regulator(s.curve, {s.curve.neg(s.points[0]), s.points[1]});
    double reg_shift = regulator(s.curve, {s.curve.add(s.points[0], *s.torsion_point), s.points[1]});
    CHECK(reg > 1e-6);
    CHECK(std::abs(reg - reg_neg) < 1e-6);
    CHECK(std::abs(reg - reg_shift) < 1e-6);
}

TEST_CASE("substitution chain square conditions hold") {
    CHECK(verify_chain_conditions());
}

TEST_CASE("verify_entry aggregates all claims for the whole catalog") {
    for (const auto& e : catalog_list()) {
        CAPTURE(e.id);
        auto rep = verify_entry(e, 3, 1);
        CHECK(rep.passed());
        CHECK(rep.elapsed_seconds >= 0.0);
    }
}

TEST_CASE("verify_entry captures failures instead of throwing") {
    FamilyEntry e = catalog_entry("Z26_R1_4");
    e.B = -e.B;
    auto rep = verify_entry(e, 3, 1);
    CHECK(!rep.passed());
}
