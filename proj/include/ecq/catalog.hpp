// catalog.hpp - the registry of parametrized families: coefficients as exact
// rational functions, claimed points, claimed torsion, substitution chains.
//
// Coefficients are transcribed once, here, in factored form wherever the
// source displays them factored. Entries whose coefficients are not displayed
// anywhere (the rank-1 chains) are built by substitution from the base
// families, so only the substitutions themselves are transcribed.
#pragma once

#include "ecq/curve.hpp"
#include "ecq/ratfunc.hpp"
#include "ecq/torsion.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecq {

struct DegenerateParameter : std::runtime_error {
    explicit DegenerateParameter(const std::string& what) : std::runtime_error(what) {}
};
struct NonSquareY : std::runtime_error {
    explicit NonSquareY(const std::string& what) : std::runtime_error(what) {}
};

struct ClaimedPoint {
    RatFunc x;
    std::optional<RatFunc> y; // stored only when displayed at the source
};

struct FamilyEntry {
    std::string id;
    std::string param;
    RatFunc A, B;
    RatFunc C = RatFunc(Poly(Rational(0)), Poly(Rational(1))); // nonzero only for the Z/7 model
    std::vector<ClaimedPoint> claimed_points;
    TorsionGroup claimed_torsion;
    std::optional<ClaimedPoint> torsion_generator;
    std::string provenance; // construction ancestry, human readable
    std::vector<std::string> ancestry;

    bool has_c() const { return !C.num().is_zero(); }

    // discriminant of y^2 = x^3 + Ax^2 + Bx + C as a rational function
    RatFunc discriminant_rf() const {
        RatFunc k16(Poly(Rational(-16))), k64(Poly(Rational(-64))), k432(Poly(Rational(-432))),
            k288(Poly(Rational(288))), k4(Poly(Rational(4)));
        return k16 * A * A * (k4 * A * C - B * B) + k64 * B * B * B + k432 * C * C + k288 * A * B * C;
    }

    // Excluded parameter values: roots of the discriminant numerator plus
    // every denominator root appearing anywhere in the entry.
    std::vector<Rational> degeneracy() const {
        std::vector<Rational> out = rational_roots(discriminant_rf().num());
        auto add_den = [&out](const RatFunc& f) {
            for (const auto& r : rational_roots(f.den())) out.push_back(r);
        };
        add_den(A);
        add_den(B);
        add_den(C);
        for (const auto& p : claimed_points) {
            add_den(p.x);
            if (p.y) add_den(*p.y);
        }
        if (torsion_generator) {
            add_den(torsion_generator->x);
            if (torsion_generator->y) add_den(*torsion_generator->y);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct Specialization {
    Curve curve;
    std::vector<Point> points;
    std::optional<Point> torsion_point;
};

namespace detail {

inline Poly poly_l(std::vector<long> c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(Int(x));
    return Poly(std::move(v));
}
inline RatFunc rf(Poly p) { return RatFunc(std::move(p), Poly(Rational(1))); }
inline RatFunc rf(Poly n, Poly d) { return RatFunc(std::move(n), std::move(d)); }

inline Rational eval_or_degenerate(const RatFunc& f, const Rational& q, const char* what) {
    auto v = f.eval(q);
    if (!v) throw DegenerateParameter(std::string(what) + ": denominator vanishes");
    return *v;
}

// Smallest monic poly t with den | t^k, from the squarefree decomposition.
inline Poly clearing_factor(const Poly& den, int k) {
    Poly t(Rational(1));
    auto sq = den.squarefree_decomposition();
    for (std::size_t i = 0; i < sq.size(); ++i) {
        int mult = static_cast<int>(i) + 1;
        int need = (mult + k - 1) / k;
        if (sq[i].degree() > 0) t = t * sq[i].pow(need);
    }
    return t.monic();
}

// Coprime basis (factor refinement) of a set of positive integers: every
// input factors exactly over the returned pairwise-coprime elements > 1.
inline void coprime_insert(std::vector<Int>& basis, Int x) {
    x = abs(x);
    if (x <= 1) return;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Int g = gcd(x, basis[i]);
        if (g == 1) continue;
        if (x == basis[i]) return;
        // split basis[i] against x and refine all three parts
        Int b = basis[i];
        basis.erase(basis.begin() + static_cast<long>(i));
        coprime_insert(basis, g);
        coprime_insert(basis, b / g);
        coprime_insert(basis, x / g);
        return;
    }
    basis.push_back(x);
}

inline std::vector<Int> coprime_basis(const std::vector<Int>& in) {
    std::vector<Int> basis;
    for (const Int& x : in) coprime_insert(basis, x);
    return basis;
}

inline long valuation(Int x, const Int& p) {
    long v = 0;
    x = abs(x);
    while (x != 0 && x % p == 0) { x /= p; ++v; }
    return v;
}
inline long valuation(const Rational& x, const Int& p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

// positive content: gcd of numerators / lcm of denominators
inline Rational content(const Poly& p) {
    Int gn = 0, ld = 1;
    for (const auto& c : p.coeffs()) {
        gn = gcd(gn, Int(c.get_num()));
        mpz_lcm(ld.get_mpz_t(), ld.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (gn == 0) return Rational(0);
    Rational c{abs(gn)};
    c /= Rational(ld);
    return c;
}

} // namespace detail

// Compose the whole entry with param = sub(new_param), then clear
// denominators by the smallest quartic-twist scaling t(new_param) * sigma:
// A -> (t sigma)^2 A, B -> (t sigma)^4 B, C -> (t sigma)^6 C, point x/y by
// (t sigma)^{2,3}; t is the minimal monic clearing polynomial, sigma the
// rational constant giving integral coefficients of minimal content.
inline FamilyEntry substitute(const FamilyEntry& e, const RatFunc& sub, const std::string& new_param) {
    if (sub.num().degree() <= 0 && sub.den().degree() <= 0)
        throw std::invalid_argument("substitute: substitution must be non-constant");
    FamilyEntry out;
    RatFunc a = e.A.compose(sub), b = e.B.compose(sub), c = e.C.compose(sub);

    Poly t = detail::clearing_factor(a.den(), 2);
    t = Poly::lcm(t, detail::clearing_factor(b.den(), 4));
    if (e.has_c()) t = Poly::lcm(t, detail::clearing_factor(c.den(), 6));
    RatFunc t2 = detail::rf(t * t);
    a = a * t2;
    b = b * t2 * t2;
    c = c * t2 * t2 * t2;

    // undo any polynomial square twist left in the cleared coefficients:
    // the largest monic s with s^2 | A, s^4 | B (and s^6 | C)
    auto square_root_part = [](const Poly& p, int k) {
        Poly s(Rational(1));
        auto sq = p.squarefree_decomposition();
        for (std::size_t i = 0; i < sq.size(); ++i) {
            int e2 = (static_cast<int>(i) + 1) / k;
            if (e2 > 0 && sq[i].degree() > 0) s = s * sq[i].pow(static_cast<unsigned>(e2));
        }
        return s.monic();
    };
    Poly s = Poly::gcd(square_root_part(a.num(), 2), square_root_part(b.num(), 4));
    if (e.has_c()) s = Poly::gcd(s, square_root_part(c.num(), 6));
    RatFunc s2inv = detail::rf(Poly(Rational(1)), s * s);
    a = a * s2inv;
    b = b * s2inv * s2inv;
    c = c * s2inv * s2inv * s2inv;

    // constant normalization: minimal content over an exact coprime basis;
    // seeding with small primes keeps the basis elements prime in practice
    Rational ca = detail::content(a.num()), cb = detail::content(b.num());
    std::vector<Int> vals;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L,
                   53L, 59L, 61L, 67L, 71L, 73L, 79L, 83L, 89L, 97L})
        vals.emplace_back(p);
    vals.insert(vals.end(), {ca.get_num(), ca.get_den(), cb.get_num(), cb.get_den()});
    Rational cc(0);
    if (e.has_c()) {
        cc = detail::content(c.num());
        vals.push_back(cc.get_num());
        vals.push_back(cc.get_den());
    }
    Rational sigma(1);
    for (const auto& p : detail::coprime_basis(vals)) {
        long va = a.num().is_zero() ? 0 : detail::valuation(ca, p);
        long vb = detail::valuation(cb, p);
        long lo = std::min(va / 2 - (va < 0 && va % 2 != 0 ? 1 : 0), vb / 4 - (vb < 0 && vb % 4 != 0 ? 1 : 0));
        if (e.has_c()) {
            long vc = detail::valuation(cc, p);
            lo = std::min(lo, vc / 6 - (vc < 0 && vc % 6 != 0 ? 1 : 0));
        }
        if (lo == 0) continue;
        Rational pw{Int(1)};
        for (long i = 0; i < std::abs(lo); ++i) pw *= Rational(p);
        sigma *= lo > 0 ? Rational(1) / pw : pw;
    }
    RatFunc sg2(Poly(sigma * sigma));
    out.A = a * sg2;
    out.B = b * sg2 * sg2;
    out.C = c * sg2 * sg2 * sg2;

    RatFunc scale2 = t2 * s2inv * sg2;                                     // (t sigma / s)^2
    RatFunc scale3 = detail::rf(t * t * t, s * s * s) * RatFunc(Poly(sigma * sigma * sigma));
    auto carry = [&](const ClaimedPoint& p) {
        ClaimedPoint q;
        q.x = p.x.compose(sub) * scale2;
        if (p.y) q.y = p.y->compose(sub) * scale3;
        return q;
    };
    for (const auto& p : e.claimed_points) out.claimed_points.push_back(carry(p));
    if (e.torsion_generator) out.torsion_generator = carry(*e.torsion_generator);

    out.id = e.id + "/" + new_param;
    out.param = new_param;
    out.claimed_torsion = e.claimed_torsion;
    out.provenance = e.provenance;
    out.ancestry = e.ancestry;
    out.ancestry.push_back(new_param + ": [" + sub.num().to_string() + "] / [" + sub.den().to_string() + "]");
    return out;
}

inline Specialization specialize(const FamilyEntry& e, const Rational& q) {
    Rational av = detail::eval_or_degenerate(e.A, q, "A");
    Rational bv = detail::eval_or_degenerate(e.B, q, "B");
    Rational cv = detail::eval_or_degenerate(e.C, q, "C");
    if (bv == 0 && cv == 0) throw DegenerateParameter("B vanishes at the parameter");
    Curve curve = [&] {
        try {
            return Curve(av, bv, cv);
        } catch (const SingularCurve&) {
            throw DegenerateParameter("curve is singular at the parameter");
        }
    }();
    Specialization out{curve, {}, std::nullopt};
    auto lift = [&](const ClaimedPoint& cp) {
        Rational x = detail::eval_or_degenerate(cp.x, q, "claimed point");
        Rational y;
        if (cp.y) {
            y = detail::eval_or_degenerate(*cp.y, q, "claimed point");
        } else {
            auto s = exact_sqrt(curve.rhs(x));
            if (!s) throw NonSquareY("claimed x does not lift: y^2 is not a rational square");
            y = *s;
        }
        Point p(x, y);
        curve.require(p);
        return p;
    };
    for (const auto& cp : e.claimed_points) out.points.push_back(lift(cp));
    if (e.torsion_generator) out.torsion_point = lift(*e.torsion_generator);
    return out;
}

namespace detail {

inline Poly lin(long c0, long c1) { return poly_l({c0, c1}); }

struct CatalogData {
    std::vector<FamilyEntry> entries;
    std::map<std::string, RatFunc> subs;
};

inline CatalogData build_catalog() {
    CatalogData cat;
    const Poly one(Rational(1));
    auto& subs = cat.subs;

    // ---- base families ----
    FamilyEntry z8;
    z8.id = "Z8_BASE";
    z8.param = "v";
    z8.A = rf(poly_l({1, -8, 16, -16, 8}));
    z8.B = rf(poly_l({0, 0, 0, 0, 16}) * lin(-1, 1).pow(4)); // 16 v^4 (v-1)^4
    z8.claimed_torsion = TorsionGroup{1, 8};
    z8.provenance = "AB model of the Tate curve E(b,c) with b=(2v-1)(v-1), c=b/v; (0,0) has order 8";
    z8.ancestry = {"Z8_BASE"};
    cat.entries.push_back(z8);

    FamilyEntry z26;
    z26.id = "Z26_BASE";
    z26.param = "v";
    z26.A = rf(poly_l({37, -84, 102, -36, -3}));
    z26.B = rf(poly_l({32}) * lin(-1, 1).pow(3) * lin(1, 1).pow(3) * lin(-5, 3));
    z26.claimed_torsion = TorsionGroup{2, 6};
    z26.torsion_generator = ClaimedPoint{
        rf(poly_l({8}) * lin(-1, 1) * lin(1, 1) * lin(-5, 3)),
        rf(poly_l({8}) * lin(-3, 1).pow(2) * lin(-1, 1) * lin(1, 1) * lin(-5, 3))};
    z26.provenance = "order-6 family A6(c),B6(c) with c=(1-v^2)/(2(3v-5)) forcing full 2-torsion";
    z26.ancestry = {"Z26_BASE"};
    cat.entries.push_back(z26);

    FamilyEntry z7;
    z7.id = "Z7_REMARK";
    z7.param = "t";
    z7.A = rf(poly_l({1, -2, 3, 6, 1}));
    z7.B = rf(poly_l({0, 0, -8}) * lin(1, 1) * poly_l({-1, 1, 1}));
    z7.C = rf(poly_l({0, 0, 0, 0, 16}) * lin(1, 1).pow(2));
    z7.claimed_torsion = TorsionGroup{1, 7};
    z7.provenance = "general model with torsion Z/7 (K3 remark)";
    z7.ancestry = {"Z7_REMARK"};
    cat.entries.push_back(z7);

    // ---- rank-1 substitutions and forced x-coordinates, Z/8 ----
    subs["z8.v1"] = rf(poly_l({1, 0, 1}), poly_l({3, -2, 1}));
    subs["z8.v2"] = rf(poly_l({5, 0, 5}), poly_l({18, 0, 8}));
    subs["z8.v3"] = rf(poly_l({1, 0, 3}), poly_l({3, 0, 1}));
    subs["z8.v4"] = rf(poly_l({0, -2, 1}), poly_l({-2, 0, 1}));
    subs["z8.v5"] = rf(poly_l({0, -2, 1}), poly_l({1, 0, 1}));
    subs["z8.v6"] = rf(poly_l({2, -2, 1}), poly_l({4, 0, 1}));
    // numerator sign corrected: (5 - w^2), not (w^2 - 5); only the former
    // makes x7 = 4v^4 the x-coordinate of a rational point
    subs["z8.v7"] = rf(poly_l({5, 0, -1}), poly_l({4, 4}));
    subs["z8.v8"] = rf(poly_l({34, -6, 1}), poly_l({36, 0, 1}));
    subs["z8.v9"] = rf(poly_l({12, 0, 1}), poly_l({8, 0, 2}));
    subs["z8.v10"] = rf(poly_l({0, -2}), poly_l({1, -1, 1}));

    std::vector<std::optional<RatFunc>> z8x(11);
    // denominator reads (-1+4v)^2; with it x1 is a point of the base family
    z8x[1] = rf(poly_l({0, 0, 0, 0, -16}) * poly_l({1, -4, 2}), poly_l({-1, 4}).pow(2));
    z8x[2] = rf(lin(-1, 1).pow(4) * lin(-5, 8) * lin(-5, 18) * poly_l({-1}), poly_l({4}) * lin(-2, 3).pow(2));
    z8x[3] = rf(poly_l({-4}) * lin(-3, 1) * lin(-1, 1).pow(2) * poly_l({0, 0, 0, 0, 1}) * lin(-1, 3),
                poly_l({1, -4, 2}).pow(2));
    z8x[4] = rf(poly_l({16}) * lin(-1, 1).pow(2) * poly_l({0, 0, 1}) * poly_l({1, -2, 2}));
    z8x[5] = rf(poly_l({-64}) * lin(-1, 1).pow(2) * poly_l({0, 0, 1}) * poly_l({-1, -1, 1}),
                poly_l({-1, -4, 4}).pow(2));
    z8x[6] = rf(lin(-1, 1).pow(2) * poly_l({1, -6, 4}) * poly_l({-1}));
    z8x[7] = rf(poly_l({0, 0, 0, 0, 4}));
    z8x[8] = rf(lin(-1, 1).pow(2) * lin(-5, 2).pow(2) * poly_l({25, -70, 36}) * poly_l({-1}),
                lin(-7, 6).pow(2));

    for (int k = 1; k <= 10; ++k) {
        FamilyEntry base = z8;
        if (z8x[static_cast<std::size_t>(k)]) base.claimed_points = {ClaimedPoint{*z8x[static_cast<std::size_t>(k)], std::nullopt}};
        FamilyEntry r = substitute(base, subs["z8.v" + std::to_string(k)], "w");
        r.id = "Z8_R1_" + std::to_string(k);
        r.provenance = "Z8_BASE with v = v" + std::to_string(k) + "(w) forcing a non-torsion point";
        cat.entries.push_back(r);
    }

    // ---- rank-1 substitutions and forced x-coordinates, Z/2 x Z/6 ----
    subs["z26.v1"] = rf(poly_l({3}) * lin(-1, 1) * lin(1, 1), poly_l({-29, -8, 1}));
    subs["z26.v2"] = rf(poly_l({3}) * lin(-3, 1) * lin(3, 1), poly_l({-45, -24, 1}));
    subs["z26.v3"] = rf(poly_l({-7, 0, 1}), poly_l({1, -4, 1}));
    subs["z26.v4"] = rf(poly_l({-11, 0, 1}), poly_l({5, -4, 1}));
    subs["z26.v5"] = rf(poly_l({783, 0, 3}), poly_l({153, -24, 1}));
    subs["z26.v6"] = rf(poly_l({135, 0, -1}), poly_l({141, 24, 1}));
    subs["z26.v7"] = rf(poly_l({41, 0, -1}), poly_l({54, 14}));
    subs["z26.v8"] = rf(poly_l({3}), poly_l({5, 0, -1}));
    subs["z26.v9"] = rf(poly_l({-7, 0, -2}), poly_l({-9, 0, 6}));

    std::vector<std::optional<RatFunc>> z26x(10);
    z26x[1] = rf(poly_l({8}) * lin(-1, 1).pow(3) * lin(1, 1));
    z26x[2] = rf(poly_l({4}) * lin(1, 1).pow(3));
    z26x[3] = rf(poly_l({2}) * lin(-1, 1) * lin(1, 1).pow(2) * lin(-5, 3));
    z26x[4] = rf(poly_l({-16}) * lin(-1, 1).pow(2) * lin(1, 1));
    z26x[5] = rf(poly_l({16}) * lin(-5, 3) * lin(-7, 3).pow(2));
    z26x[6] = rf(poly_l({16}) * lin(1, 1) * lin(-5, 1).pow(2));
    z26x[7] = rf(poly_l({4}) * lin(-1, 1).pow(2) * lin(1, 1).pow(2) * poly_l({41, -54, 49}),
                 lin(-1, 3).pow(2));
    z26x[8] = rf(lin(-5, 3) * lin(-1, 3).pow(2));
    z26x[9] = rf(poly_l({2}) * lin(-1, 1) * lin(1, 1).pow(3) * lin(-1, 3).pow(2), lin(2, 2).pow(2));

    for (int k = 1; k <= 9; ++k) {
        FamilyEntry base = z26;
        base.claimed_points = {ClaimedPoint{*z26x[static_cast<std::size_t>(k)], std::nullopt}};
        FamilyEntry r = substitute(base, subs["z26.v" + std::to_string(k)], "w");
        r.id = "Z26_R1_" + std::to_string(k);
        r.provenance = "Z26_BASE with v = v" + std::to_string(k) + "(w) forcing a non-torsion point";
        cat.entries.push_back(r);
    }

    // ---- Z/8 rank-2 chain ----
    subs["z8.w1"] = rf(poly_l({11, 0, -1}), poly_l({0, 10}));
    subs["z8.w2"] = rf(poly_l({29, -12, 1}), poly_l({-29, 0, 1}));
    subs["z8.w3"] = rf(lin(-3, 1) * lin(3, 1), poly_l({7, -6}));
    subs["z8.w4"] = rf(lin(-3, 1) * lin(3, 1), poly_l({11, -6}));

    {
        FamilyEntry aa;
        aa.id = "Z8_AA";
        aa.param = "w";
        aa.A = rf(poly_l({-31, 0, -148, 0, 214, 0, -116, 0, 337}));
        aa.B = rf(poly_l({256}) * lin(-1, 1).pow(4) * lin(1, 1).pow(4) * poly_l({1, 0, 3}).pow(4));
        aa.claimed_torsion = TorsionGroup{1, 8};
        // the forced point inherited from the v3 chain (same family as Z8_R1_3)
        FamilyEntry tmp = z8;
        tmp.claimed_points = {ClaimedPoint{*z8x[3], std::nullopt}};
        FamilyEntry built = substitute(tmp, subs["z8.v3"], "w");
        aa.claimed_points = built.claimed_points;
        aa.provenance = "Z8_BASE with v = v3(w), coefficients in cleared display form";
        aa.ancestry = {"Z8_BASE", "w: v = v3(w)"};
        cat.entries.push_back(aa);
    }

    {
        FamilyEntry r2a;
        r2a.id = "Z8_R2_A";
        r2a.param = "u";
        r2a.A = rf(Poly(std::vector<Rational>{Rational(Int("72238942897")), Rational(0),
                                              Rational(Int("-73087520616")), Rational(0),
                                              Rational(Int("59257339196")), Rational(0),
                                              Rational(Int("-34888248472")), Rational(0),
                                              Rational(Int("2363813190")), Rational(0),
                                              Rational(Int("-288332632")), Rational(0),
                                              Rational(Int("4047356")), Rational(0),
                                              Rational(Int("-41256")), Rational(0), Rational(337)}));
        Poly q363 = poly_l({363, 0, 34, 0, 3});
        r2a.B = rf(poly_l({256}) * q363.pow(4) * lin(11, 1).pow(4) * lin(-11, 1).pow(4) *
                   lin(-1, 1).pow(4) * lin(1, 1).pow(4));
        Poly den1 = Poly(std::vector<Rational>{Rational(Int("102487")), Rational(0),
                                               Rational(Int("-303468")), Rational(0), Rational(43482),
                                               Rational(0), Rational(-2508), Rational(0), Rational(7)});
        r2a.claimed_points = {
            ClaimedPoint{rf(poly_l({102400}) * lin(-11, 1).pow(2) * lin(-1, 1).pow(2) * poly_l({0, 0, 1}) *
                             lin(1, 1).pow(2) * lin(11, 1).pow(2) * poly_l({-11, 0, 1}).pow(2) * q363.pow(4),
                         den1.pow(2)),
                         std::nullopt},
            ClaimedPoint{rf(lin(-11, 1).pow(2) * lin(-1, 1).pow(2) * lin(1, 1).pow(2) * lin(11, 1).pow(2) *
                             poly_l({11, 0, 1}).pow(2) * poly_l({847, 0, 346, 0, 7}).pow(2),
                         poly_l({0, 0, 64})),
                         std::nullopt}};
        r2a.claimed_torsion = TorsionGroup{1, 8};
        r2a.torsion_generator =
            ClaimedPoint{rf(poly_l({-8}) * lin(-11, 1) * lin(-1, 1) * lin(1, 1) * lin(11, 1) * q363.pow(3)),
                         std::nullopt};
        r2a.provenance = "Z8_BASE with v = v3(w), then w = w1(u) = (11-u^2)/(10u)";
        r2a.ancestry = {"Z8_BASE", "w: v = v3(w)", "u: w = w1(u)"};
        cat.entries.push_back(r2a);
    }

    {
        FamilyEntry r2b;
        r2b.id = "Z8_R2_B";
        r2b.param = "u";
        r2b.A = rf(Poly(std::vector<Rational>{
            Rational(Int("500246412961")), Rational(Int("-2069985157080")), Rational(Int("3162080774436")),
            Rational(Int("-2895517882032")), Rational(Int("1873181389706")), Rational(Int("-906769167048")),
            Rational(Int("333391978480")), Rational(Int("-93284915496")), Rational(Int("19860033555")),
            Rational(Int("-3216721224")), Rational(Int("396423280")), Rational(Int("-37179432")),
            Rational(Int("2648426")), Rational(Int("-141168")), Rational(Int("5316")), Rational(-120),
            Rational(1)}));
        Poly q841 = poly_l({841, -522, 137, -18, 1});
        r2b.B = rf(poly_l({0, 0, 0, 0, 256}) * lin(-6, 1).pow(4) * lin(-29, 6).pow(4) * q841.pow(4));
        Poly den1 = Poly(std::vector<Rational>{Rational(Int("707281")), Rational(Int("-292668")),
                                               Rational(Int("-200158")), Rational(Int("168432")),
                                               Rational(Int("-46685")), Rational(Int("5808")),
                                               Rational(-238), Rational(-12), Rational(1)});
        r2b.claimed_points = {
            ClaimedPoint{rf(poly_l({0, 0, 64}) * lin(-6, 1).pow(2) * lin(-29, 6).pow(2) *
                             poly_l({-29, 0, 1}).pow(2) * poly_l({29, -12, 1}).pow(2) * q841.pow(4),
                         den1.pow(2)),
                         std::nullopt},
            ClaimedPoint{rf(poly_l({0, 0, 1}) * lin(-6, 1).pow(2) * lin(-29, 6).pow(2) *
                             poly_l({87, -29, 3}).pow(2) * poly_l({2523, -1914, 541, -66, 3}).pow(2),
                         poly_l({4}) * poly_l({29, -12, 1}).pow(2)),
                         std::nullopt}};
        r2b.claimed_torsion = TorsionGroup{1, 8};
        r2b.torsion_generator =
            ClaimedPoint{rf(poly_l({0, 8}) * lin(-6, 1) * lin(-29, 6) * q841.pow(3)), std::nullopt};
        r2b.provenance = "Z8_BASE with v = v3(w), then w = w2(u) = (29-12u+u^2)/(-29+u^2)";
        r2b.ancestry = {"Z8_BASE", "w: v = v3(w)", "u: w = w2(u)"};
        cat.entries.push_back(r2b);
    }

    // ---- Z/2 x Z/6 rank-2 chain ----
    subs["z26.w1"] = rf(poly_l({14, 0, 2}), poly_l({-7, -2, 1}));
    subs["z26.w2"] = rf(poly_l({5, -2, 1}), poly_l({-5, 0, 1}));

    {
        FamilyEntry aa;
        aa.id = "Z26_AA";
        aa.param = "w";
        aa.A = rf(poly_l({9472, 0, -7808, 0, 2688, 0, -488, 0, 37}));
        Poly m8 = poly_l({-8, 0, 1}), m5 = poly_l({-5, 0, 1}), m2 = poly_l({-2, 0, 1}),
             m16 = poly_l({-16, 0, 5});
        aa.B = rf(poly_l({32}) * m8.pow(3) * m5 * m2.pow(3) * m16);
        Poly p4 = poly_l({4, 0, 1});
        aa.claimed_points = {ClaimedPoint{
            rf(m5 * p4.pow(2) * m16 * poly_l({-1})),
            rf(poly_l({0, 27}) * lin(-2, 1).pow(2) * lin(2, 1).pow(2) * m5 * p4 * m16)}};
        aa.claimed_torsion = TorsionGroup{2, 6};
        aa.torsion_generator = ClaimedPoint{
            rf(poly_l({8}) * m8 * m5 * m2 * m16),
            rf(poly_l({72}) * lin(-2, 1).pow(2) * lin(2, 1).pow(2) * m8 * m5 * m2 * m16)};
        aa.provenance = "Z26_BASE with v = v8(w) = 3/(5-w^2), coefficients in cleared display form";
        aa.ancestry = {"Z26_BASE", "w: v = v8(w)"};
        cat.entries.push_back(aa);
    }

    {
        FamilyEntry r2a;
        r2a.id = "Z26_R2_A";
        r2a.param = "u";
        r2a.A = rf(Poly(std::vector<Rational>{
                      Rational(Int("5764801")), Rational(Int("6588344")), Rational(Int("-21647416")),
                      Rational(Int("29445864")), Rational(Int("-9604")), Rational(Int("27969592")),
                      Rational(Int("-44631944")), Rational(Int("9779112")), Rational(Int("5909830")),
                      Rational(Int("-1397016")), Rational(Int("-910856")), Rational(Int("-81544")),
                      Rational(-4), Rational(-1752), Rational(-184), Rational(-8), Rational(1)}) *
                  Rational(-2));
        Poly f1 = poly_l({-7, -10, 1}), f2 = poly_l({-7, 2, 1});
        Poly q1 = poly_l({49, 140, -106, -20, 1}), q2 = poly_l({49, -28, 38, 4, 1}),
             q3 = poly_l({49, -112, 110, 16, 1});
        r2a.B = rf(f1.pow(3) * f2.pow(3) * q1 * q2.pow(3) * q3);
        r2a.claimed_points = {
            ClaimedPoint{rf(q1 * poly_l({49, 14, 2, -2, 1}).pow(2) * q3), std::nullopt},
            ClaimedPoint{rf(f1.pow(2) * f2.pow(2) * q2.pow(3), poly_l({-7, -2, 1}).pow(2)), std::nullopt}};
        r2a.claimed_torsion = TorsionGroup{2, 6};
        r2a.torsion_generator = ClaimedPoint{rf(f1 * f2 * q1 * q2 * q3), std::nullopt};
        r2a.provenance = "Z26_BASE with v = v8(w), then w = w1(u) = 2(7+u^2)/(-7-2u+u^2)";
        r2a.ancestry = {"Z26_BASE", "w: v = v8(w)", "u: w = w1(u)"};
        cat.entries.push_back(r2a);
    }

    {
        FamilyEntry r2b;
        r2b.id = "Z26_R2_B";
        r2b.param = "u";
        r2b.A = rf(Poly(std::vector<Rational>{
            Rational(Int("1523828125")), Rational(Int("1171250000")), Rational(Int("-3482125000")),
            Rational(Int("-1970850000")), Rational(Int("3530367500")), Rational(Int("1221154000")),
            Rational(Int("-2018502200")), Rational(Int("-238418640")), Rational(Int("632792782")),
            Rational(Int("-47683728")), Rational(Int("-80740088")), Rational(Int("9769232")),
            Rational(Int("5648588")), Rational(Int("-630672")), Rational(Int("-222856")),
            Rational(Int("14992")), Rational(Int("3901"))}));
        Poly f1 = poly_l({-7, 2, 1}), f2 = poly_l({-25, -10, 7});
        Poly q1 = poly_l({25, 5, -16, 1, 1}), q2 = poly_l({25, 20, -34, 4, 1}),
             q3 = poly_l({275, 100, -230, 20, 11});
        r2b.B = rf(poly_l({128}) * f1.pow(3) * f2.pow(3) * q1 * q2.pow(3) * q3);
        r2b.claimed_points = {
            ClaimedPoint{rf(poly_l({-4}) * q1 * poly_l({125, -20, -26, -4, 5}).pow(2) * q3), std::nullopt},
            ClaimedPoint{rf(poly_l({-4}) * poly_l({5, -2, 1}).pow(4) * f1 * f2 * q1 * q3,
                            poly_l({-5, 0, 1}).pow(2)),
                         std::nullopt}};
        r2b.claimed_torsion = TorsionGroup{2, 6};
        r2b.torsion_generator = ClaimedPoint{rf(poly_l({32}) * f1 * f2 * q1 * q2 * q3), std::nullopt};
        r2b.provenance = "Z26_BASE with v = v8(w), then w = w2(u) = (5-2u+u^2)/(-5+u^2)";
        r2b.ancestry = {"Z26_BASE", "w: v = v8(w)", "u: w = w2(u)"};
        cat.entries.push_back(r2b);
    }

    // ---- Hadano chain ----
    {
        FamilyEntry h;
        h.id = "Z6_HADANO";
        h.param = "v";
        // A61(a,v), B61(a,v) with a = v+1 pre-applied
        Poly a = lin(1, 1), v = lin(0, 1);
        Poly a2 = a * a, a3 = a2 * a, a4 = a2 * a2, a5 = a4 * a, a8 = a4 * a4;
        Poly A61 = (Poly(Rational(-1)) + Rational(8) * a2 - Rational(10) * a4 + Rational(3) * a8 +
                    Rational(4) * a * v + Rational(8) * a3 * v - Rational(12) * a5 * v +
                    Rational(2) * v * v + Rational(6) * a4 * v * v - Rational(4) * a * v * v * v -
                    v * v * v * v) *
                   Rational(2);
        Poly m1 = a2 - v - one;                       // -1 + a^2 - v
        Poly p1 = a2 + v - one;                       // -1 + a^2 + v
        Poly c1 = one - Rational(4) * a + Rational(3) * a2 - v;  // 1 - 4a + 3a^2 - v
        Poly c2 = one + Rational(4) * a + Rational(3) * a2 + v;  // 1 + 4a + 3a^2 + v
        Poly B61 = m1.pow(3) * c1 * p1.pow(3) * c2;
        h.A = rf(A61);
        h.B = rf(B61);
        Poly px = c1 * p1.pow(3) * Rational(-1);
        Poly py = Rational(4) * c1 * (a3 - a - v) * p1.pow(3);
        h.claimed_points = {ClaimedPoint{rf(px), rf(py)}};
        h.claimed_torsion = TorsionGroup{1, 6};
        h.provenance = "Hadano Z/6 model with b = -(a^2-v-1)(a^2+v-1)/(4(a^3-a-v)) and a = v+1";
        h.ancestry = {"Z6_HADANO"};
        cat.entries.push_back(h);
    }

    subs["had.v"] = rf(poly_l({1, 0, -1}), poly_l({-3, 2}));
    subs["had.w"] = rf(poly_l({-9, -4}), poly_l({-3, 0, 1}));

    {
        FamilyEntry hr;
        hr.id = "Z26_HADANO_R1";
        hr.param = "w";
        hr.A = rf(poly_l({-24, -216, 1008, -1596, 1319, -648, 198, -36, 3}) * Rational(2));
        hr.B = rf(lin(-4, 1).pow(3) * lin(-3, 1) * lin(-2, 1).pow(3) * lin(-1, 1).pow(3) * lin(0, 1) *
                  lin(1, 1).pow(3) * lin(-7, 3) * lin(-2, 3));
        hr.claimed_points = {ClaimedPoint{
            rf(lin(-4, 1).pow(3) * lin(-2, 1).pow(3) * lin(-1, 1).pow(2) * lin(0, 1) * lin(1, 1).pow(2) *
                   lin(-2, 3) * Rational(-1),
               poly_l({2, -2, 1}).pow(2)),
            std::nullopt}};
        hr.claimed_torsion = TorsionGroup{2, 6};
        hr.provenance = "Z6_HADANO with v = (1-w^2)/(-3+2w), forcing complete 2-torsion factorization";
        hr.ancestry = {"Z6_HADANO", "w: v = (1-w^2)/(-3+2w)"};
        cat.entries.push_back(hr);
    }

    {
        FamilyEntry rc;
        rc.id = "Z26_R2_C";
        rc.param = "u";
        rc.A = rf(Poly(std::vector<Rational>{
                      Rational(Int("157464")), Rational(Int("-1889568")), Rational(Int("-13594392")),
                      Rational(Int("-38047968")), Rational(Int("-62500248")), Rational(Int("-69622416")),
                      Rational(Int("-57719412")), Rational(Int("-38941344")), Rational(Int("-23353995")),
                      Rational(Int("-12980448")), Rational(Int("-6413268")), Rational(Int("-2578608")),
                      Rational(Int("-771608")), Rational(Int("-156576")), Rational(Int("-18648")),
                      Rational(-864), Rational(24)}) *
                  Rational(-2));
        Poly l6 = lin(-6, 1), lu = lin(0, 1), l2 = lin(2, 1), l12 = lin(-1, 2), l32 = lin(3, 2),
             l43 = lin(4, 3), l94 = lin(9, 4);
        Poly q6 = poly_l({6, 4, 1}), q3 = poly_l({3, 4, 2}), q21 = poly_l({21, 12, 2}),
             q7 = poly_l({6, 12, 7});
        rc.B = rf(l6.pow(3) * lu * l2.pow(3) * l12.pow(3) * l32.pow(3) * l43 * l94 * q6.pow(3) *
                  q3.pow(3) * q21 * q7 * Rational(-1));
        rc.claimed_points = {
            ClaimedPoint{rf(l6.pow(2) * lu * l2.pow(2) * l12 * l32 * l43 * q6.pow(3) * q7), std::nullopt},
            ClaimedPoint{rf(l6.pow(2) * l2.pow(2) * l12.pow(3) * l32.pow(3) * l94 * q6.pow(2) * q3.pow(3) *
                                q21 * Rational(-1),
                            poly_l({45, 48, 22, 8, 2}).pow(2)),
                         std::nullopt}};
        rc.claimed_torsion = TorsionGroup{2, 6};
        rc.provenance = "Z26_HADANO_R1 with w = -(9+4u)/(-3+u^2), forcing a second point";
        rc.ancestry = {"Z6_HADANO", "w: v = (1-w^2)/(-3+2w)", "u: w = -(9+4u)/(-3+u^2)"};
        cat.entries.push_back(rc);
    }

    return cat;
}

inline const CatalogData& catalog_data() {
    static const CatalogData cat = build_catalog();
    return cat;
}

} // namespace detail

inline const std::vector<FamilyEntry>& catalog_list() { return detail::catalog_data().entries; }

inline const FamilyEntry& catalog_entry(const std::string& id) {
    for (const auto& e : catalog_list())
        if (e.id == id) return e;
    throw std::out_of_range("no catalog entry with id " + id);
}

inline const RatFunc& catalog_substitution(const std::string& name) {
    const auto& subs = detail::catalog_data().subs;
    auto it = subs.find(name);
    if (it == subs.end()) throw std::out_of_range("no substitution named " + name);
    return it->second;
}

} // namespace ecq
