// rank3.hpp - rank-3 families from the parameter-matching equations.
//
// Two rank-2 chains share a parameter w; asking for both forced points at
// once means solving w1(r) = w2(s), a biquadratic whose s-discriminant is a
// quartic in r. A rational point on that quartic gives (via the standard
// birational transformation) a point on a positive-rank auxiliary cubic, so
// walking the cubic's Mordell-Weil group streams out parameters r with
// square discriminant, each yielding a curve carrying three claimed points.
#pragma once

#include "ecq/catalog.hpp"
#include "ecq/heights.hpp"
#include "ecq/torsion.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace ecq {

struct DegenerateQuartic : std::runtime_error {
    explicit DegenerateQuartic(const std::string& what) : std::runtime_error(what) {}
};
struct ExhaustedSearch : std::runtime_error {
    std::vector<std::string> attempted;
    ExhaustedSearch(const std::string& what, std::vector<std::string> tried)
        : std::runtime_error(what), attempted(std::move(tried)) {}
};

// t^2 = a4 r^4 + a3 r^3 + a2 r^2 + a1 r + a0 with a marked rational point.
struct QuarticCurve {
    std::array<Rational, 5> coeffs; // a4 .. a0
    Rational seed_r;
    Rational seed_t;

    QuarticCurve(std::array<Rational, 5> c, Rational r0, Rational t0)
        : coeffs(std::move(c)), seed_r(std::move(r0)), seed_t(std::move(t0)) {
        if (coeffs[0] == 0) throw std::invalid_argument("quartic: leading coefficient vanishes");
        if (seed_t * seed_t != eval(seed_r)) throw std::invalid_argument("quartic: seed point fails the equation");
    }

    Rational eval(const Rational& r) const {
        Rational acc(0);
        for (const auto& c : coeffs) acc = acc * r + c;
        return acc;
    }

    Poly poly() const {
        return Poly(std::vector<Rational>{coeffs[4], coeffs[3], coeffs[2], coeffs[1], coeffs[0]});
    }
};

// Result of quartic_to_cubic: the Weierstrass model together with the
// birational maps. After the shift u = r - r0 the quartic reads
// v^2 = a u^4 + b u^3 + c u^2 + d u + q^2 and lands on
//   y^2 = x^3 + c x^2 + (bd - 4aq^2) x + (ad^2 - 4acq^2 + b^2 q^2)
// via x = (2q(v+q) + du)/u^2, y = ((4q^2+du)(v+q) + qu(2d+2cu+bu^2))/u^3.
class QuarticCubicMap {
public:
    QuarticCubicMap(const QuarticCurve& quartic)
        : r0_(quartic.seed_r), q_(quartic.seed_t) {
        if (q_ == 0) throw std::invalid_argument("quartic_to_cubic: seed with t = 0");
        if (poly_sqrt(quartic.poly())) throw DegenerateQuartic("quartic is a perfect square (genus 0)");
        // shift r -> u + r0 (Horner with a polynomial argument)
        Poly arg(std::vector<Rational>{r0_, Rational(1)});
        Poly shifted(Rational(0));
        for (const auto& coeff : quartic.coeffs) shifted = shifted * arg + Poly(coeff);
        a_ = shifted[4];
        b_ = shifted[3];
        c_ = shifted[2];
        d_ = shifted[1];
        // shifted[0] == q^2 by the seed invariant
        Rational q2 = q_ * q_;
        cubic_ = Curve(c_, b_ * d_ - Rational(4) * a_ * q2,
                       a_ * d_ * d_ - Rational(4) * a_ * c_ * q2 + b_ * b_ * q2);
    }

    const Curve& cubic() const { return cubic_; }

    // (r, t) on the quartic -> point on the cubic. The seed branch (t = +q at
    // r = r0) is the point at infinity; the opposite branch maps to the finite
    // limit of the formulas.
    Point forward(const Rational& r, const Rational& t) const {
        Rational u = r - r0_;
        Rational v = t;
        Rational q2 = q_ * q_;
        if (u == 0) {
            if (v == q_) return Point::at_infinity();
            if (v == -q_)
                return Point(d_ * d_ / (Rational(4) * q2) - c_,
                             -q_ * b_ + c_ * d_ / (Rational(2) * q_) - d_ * d_ * d_ / (Rational(8) * q2 * q_));
            throw PointNotOnCurve("quartic point fails the equation");
        }
        Rational x = (Rational(2) * q_ * (v + q_) + d_ * u) / (u * u);
        Rational y = ((Rational(4) * q2 + d_ * u) * (v + q_) + q_ * u * (Rational(2) * d_ + Rational(2) * c_ * u + b_ * u * u)) /
                     (u * u * u);
        return Point(x, y);
    }

    // Point on the cubic -> (r, t). Infinity returns the seed; the second
    // point over u = infinity (where 2qy = dx + 2bq^2) has no affine preimage.
    std::pair<Rational, Rational> inverse(const Point& p) const {
        if (p.infinity) return {r0_, q_};
        cubic_.require(p);
        Rational q2 = q_ * q_;
        Rational den = Rational(2) * q_ * p.y - d_ * p.x - Rational(2) * b_ * q2;
        if (den == 0) throw std::domain_error("point maps to infinity on the quartic");
        Rational u = (Rational(4) * q2 * (p.x + c_) - d_ * d_) / den;
        Rational v = u == 0 ? Rational(-q_) : Rational((p.x * u * u - d_ * u) / (Rational(2) * q_) - q_);
        return {u + r0_, v};
    }

private:
    Rational r0_, q_;
    Rational a_, b_, c_, d_;
    Curve cubic_{Rational(0), Rational(1)};
};

inline QuarticCubicMap quartic_to_cubic(const QuarticCurve& q) { return QuarticCubicMap(q); }

// Q-isomorphism x -> lam^2 (x - x0), y -> lam^3 y between a general cubic and
// an AB model: shift a rational 2-torsion abscissa to 0, then square-scale.
struct AbIsomorphism {
    Rational x0;
    Rational lam;

    Point apply(const Point& p) const {
        if (p.infinity) return p;
        return Point(lam * lam * (p.x - x0), lam * lam * lam * p.y);
    }
    Point unapply(const Point& p) const {
        if (p.infinity) return p;
        return Point(p.x / (lam * lam) + x0, p.y / (lam * lam * lam));
    }
};

inline std::optional<AbIsomorphism> find_ab_isomorphism(const Curve& from, const Curve& to) {
    if (!to.is_ab()) return std::nullopt;
    for (const Point& t : from.two_torsion()) {
        const Rational& x0 = t.x;
        Rational a = from.A() + Rational(3) * x0;
        Rational b = Rational(3) * x0 * x0 + Rational(2) * from.A() * x0 + from.B();
        if (a == 0) continue; // the shift scaling needs A != 0
        Rational lam2 = to.A() / a;
        if (lam2 * lam2 * b != to.B()) continue;
        auto lam = exact_sqrt(lam2);
        if (!lam) continue;
        return AbIsomorphism{x0, *lam};
    }
    return std::nullopt;
}

// The matching problem w1(r) = w2(s) for one torsion kind: the biquadratic
// (as s2(r) s^2 + s1(r) s + s0(r)), the two chains it equates, the quartic
// discriminant condition, the auxiliary cubic the quartic transforms to, and
// the two catalog families whose forced points are being combined.
struct MatchSpec {
    std::string name; // CLI tag: "z8" or "z2x6"
    TorsionGroup torsion;
    Poly s2, s1, s0;
    RatFunc w1, w2;
    QuarticCurve quartic;
    Curve aux_cubic;
    std::string family_id;  // specialized at u = r; contributes two points
    std::string partner_id; // specialized at u = s; contributes the third
};

inline MatchSpec match_spec_z8() {
    using detail::poly_l;
    return MatchSpec{
        "z8",
        TorsionGroup{1, 8},
        poly_l({-11, 10, 1}),
        poly_l({0, -120}),
        poly_l({319, 290, -29}),
        catalog_substitution("z8.w1"),
        catalog_substitution("z8.w2"),
        QuarticCurve({Rational(29), Rational(0), Rational(62), Rational(0), Rational(3509)}, Rational(1), Rational(60)),
        Curve(Rational(-463), Rational(45936)),
        "Z8_R2_A",
        "Z8_R2_B"};
}

inline MatchSpec match_spec_z2x6() {
    using detail::poly_l;
    return MatchSpec{
        "z2x6",
        TorsionGroup{2, 6},
        poly_l({21, 2, 1}),
        poly_l({-14, -4, 2}),
        poly_l({-35, 10, -15}),
        catalog_substitution("z26.w1"),
        catalog_substitution("z26.w2"),
        QuarticCurve({Rational(1), Rational(1), Rational(20), Rational(-7), Rational(49)}, Rational(1), Rational(8)),
        Curve(Rational(-43), Rational(280)),
        "Z26_R2_A",
        "Z26_R2_B"};
}

inline MatchSpec match_spec(const std::string& name) {
    if (name == "z8") return match_spec_z8();
    if (name == "z2x6") return match_spec_z2x6();
    throw std::invalid_argument("unknown match spec: " + name);
}

// All rational s with w1(r) = w2(s), handling the fibers where the s^2
// coefficient vanishes and the equation degenerates to a linear one.
inline std::set<Rational> solve_match(const MatchSpec& spec, const Rational& r) {
    Rational a = spec.s2.eval(r), b = spec.s1.eval(r), c = spec.s0.eval(r);
    std::set<Rational> out;
    if (a == 0) {
        if (b != 0) out.insert(-c / b);
        return out;
    }
    for (const auto& s : solve_quadratic(a, b, c)) out.insert(s);
    return out;
}

// Point with integer x on the auxiliary cubic, classified.
struct AuxPoint {
    Point point;
    std::optional<int> order; // nullopt: non-torsion
    double height = 0.0;      // canonical height (0 for torsion)

    bool is_torsion() const { return order.has_value(); }
};

inline std::vector<AuxPoint> aux_points(const MatchSpec& spec, long search_bound) {
    if (search_bound < 1) throw std::invalid_argument("aux_points: search_bound must be >= 1");
    std::vector<AuxPoint> out;
    const Curve& e = spec.aux_cubic;
    for (long x = -search_bound; x <= search_bound; ++x) {
        Rational rx(x);
        auto y = exact_sqrt(e.rhs(rx));
        if (!y) continue;
        Point p(rx, *y); // y >= 0: one representative per +-pair
        auto ord = e.point_order(p, 16);
        double h = ord ? 0.0 : canonical_height(e, p).value;
        out.push_back(AuxPoint{p, ord, h});
    }
    return out;
}

// One accepted fiber: the matched (r, s), the shared parameter w = w1(r) =
// w2(s), the specialized curve, its three claimed points, and the auxiliary
// point that produced r.
struct Rank3Candidate {
    Rational r, s, w;
    Curve curve;
    std::array<Point, 3> points;
    Point aux_point;
};

struct Rank3Result {
    Rank3Candidate source;
    double regulator = 0.0;
};

// Candidate rejected by the independence / torsion certification step.
struct IndependenceFailure {
    Rational r, s, w;
    double regulator = 0.0;
    std::string reason;
};

namespace detail {

inline std::string fiber_tag(const Rational& r, const Rational& s) {
    return "r=" + to_string(r) + ", s=" + to_string(s);
}

// Specialize both families, transport the partner's forced point across the
// square twist relating the two models, and assemble the candidate. Returns
// nullopt (appending to `log`) for degenerate fibers.
inline std::optional<Rank3Candidate> assemble_fiber(const MatchSpec& spec, const Rational& r, const Rational& s,
                                                    const Point& aux, std::vector<std::string>* log) {
    auto reject = [&](const std::string& why) -> std::optional<Rank3Candidate> {
        if (log) log->push_back(fiber_tag(r, s) + ": " + why);
        return std::nullopt;
    };
    auto w = spec.w1.eval(r);
    if (!w) return reject("w1 undefined");
    auto w2 = spec.w2.eval(s);
    if (!w2 || *w2 != *w) return reject("w2(s) disagrees with w1(r)");
    std::optional<Specialization> main, partner;
    try {
        main = specialize(catalog_entry(spec.family_id), r);
        partner = specialize(catalog_entry(spec.partner_id), s);
    } catch (const DegenerateParameter& ex) {
        return reject(std::string("degenerate: ") + ex.what());
    } catch (const NonSquareY& ex) {
        return reject(std::string("no rational lift: ") + ex.what());
    }
    // same w, so the models differ by a square twist: x -> lam^2 x
    if (partner->curve.A() == 0) return reject("partner model has A = 0");
    Rational lam2 = main->curve.A() / partner->curve.A();
    if (lam2 * lam2 * partner->curve.B() != main->curve.B()) return reject("models are not square-twist related");
    auto lam = exact_sqrt(lam2);
    if (!lam) return reject("twist factor is not a rational square");
    if (main->curve.j_invariant() != partner->curve.j_invariant()) return reject("j-invariants disagree");
    const Point& forced = partner->points.at(1);
    Point third(Rational(lam2 * forced.x), Rational(*lam * lam2 * forced.y));
    main->curve.require(third);
    return Rank3Candidate{r, s, *w, main->curve, {main->points.at(0), main->points.at(1), third}, aux};
}

// Streams matched fibers to `sink` in deterministic order: the quartic's seed
// fiber first, then inverse images of nP + T over the auxiliary cubic's
// Mordell-Weil points, n increasing, candidates within one level sorted by
// naive height. `sink` returns false to stop. Returns true if stopped by the
// sink, false if the search space was exhausted.
template <typename Sink>
inline bool for_each_fiber(const MatchSpec& spec, long search_bound, int max_multiple, std::vector<std::string>* log,
                           Sink&& sink) {
    QuarticCubicMap map = quartic_to_cubic(spec.quartic);
    auto iso = find_ab_isomorphism(map.cubic(), spec.aux_cubic);
    if (!iso) throw std::logic_error("transformed cubic is not isomorphic to the auxiliary model");

    std::set<Rational> seen_r, seen_w;
    auto process_r = [&](const Rational& r, const Point& aux) -> bool {
        if (!seen_r.insert(r).second) return true;
        for (const auto& s : solve_match(spec, r)) {
            auto cand = assemble_fiber(spec, r, s, aux, log);
            if (!cand) continue;
            // distinct parameters only: both s-roots share w = w1(r), and
            // different r can repeat a w value
            if (!seen_w.insert(cand->w).second) continue;
            if (!sink(*cand)) return false;
        }
        return true;
    };

    if (!process_r(spec.quartic.seed_r, Point::at_infinity())) return true;

    const Curve& e = spec.aux_cubic;
    std::vector<Point> generators;
    for (const auto& ap : aux_points(spec, search_bound))
        if (!ap.is_torsion()) generators.push_back(ap.point);
    std::sort(generators.begin(), generators.end(),
              [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (generators.empty()) return false;

    // full torsion subgroup from its generators
    std::vector<Point> torsion{Point::at_infinity()};
    for (const auto& g : torsion_structure(e).generators) {
        std::vector<Point> grown;
        for (const auto& t : torsion) {
            Point acc = t;
            do {
                grown.push_back(acc);
                acc = e.add(acc, g);
            } while (acc != t);
        }
        torsion = std::move(grown);
    }

    for (int n = 1; n <= max_multiple; ++n) {
        std::vector<Point> level;
        for (const auto& g : generators) {
            Point ng = e.scalar_mul(n, g);
            for (const auto& t : torsion) {
                Point q = e.add(ng, t);
                if (!q.infinity) {
                    level.push_back(q);
                    level.push_back(e.neg(q));
                }
            }
        }
        std::sort(level.begin(), level.end(), [](const Point& a, const Point& b) {
            double ha = naive_height(a), hb = naive_height(b);
            if (ha != hb) return ha < hb;
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
        level.erase(std::unique(level.begin(), level.end()), level.end());
        for (const auto& q : level) {
            Rational r;
            try {
                r = map.inverse(iso->unapply(q)).first;
            } catch (const std::domain_error&) {
                continue; // fiber over the quartic's points at infinity
            }
            if (!process_r(r, q)) return true;
        }
    }
    return false;
}

} // namespace detail

// `count` non-degenerate matched parameters, each carrying the family's two
// forced points plus the partner chain's third. Degenerate fibers (singular
// specializations, e.g. w = 1 on the Z/8 chain) are filtered and, when a log
// is supplied, recorded in it.
inline std::vector<Rank3Candidate> generate_parameters(const MatchSpec& spec, int count, long search_bound = 200,
                                                       std::vector<std::string>* filtered = nullptr,
                                                       int max_multiple = 10) {
    if (count < 0) throw std::invalid_argument("generate_parameters: count must be >= 0");
    std::vector<Rank3Candidate> out;
    if (count == 0) return out;
    std::vector<std::string> log;
    bool stopped = detail::for_each_fiber(spec, search_bound, max_multiple, &log, [&](const Rank3Candidate& c) {
        out.push_back(c);
        return static_cast<int>(out.size()) < count;
    });
    if (filtered) *filtered = log;
    if (!stopped && static_cast<int>(out.size()) < count)
        throw ExhaustedSearch("generate_parameters: candidates exhausted after " + std::to_string(out.size()) +
                                  " of " + std::to_string(count),
                              std::move(log));
    return out;
}

// End-to-end: generate parameters, certify the torsion structure and the
// 3-point regulator on each, and return `count` certified curves. Rejections
// are recorded in `failures` and excluded; `filtered` receives the full
// skip log (degenerate fibers included); if the candidate stream runs dry
// first, ExhaustedSearch carries that log instead.
inline std::vector<Rank3Result> build_rank3(const MatchSpec& spec, int count, double eps = 1e-6,
                                            std::vector<IndependenceFailure>* failures = nullptr,
                                            long search_bound = 200, int max_multiple = 10,
                                            std::vector<std::string>* filtered = nullptr) {
    if (count < 1) throw std::invalid_argument("build_rank3: count must be >= 1");
    if (eps <= 0) throw std::invalid_argument("build_rank3: eps must be positive");
    std::vector<Rank3Result> out;
    std::vector<std::string> log;
    auto record = [&](const Rank3Candidate& c, double reg, const std::string& why) {
        if (failures) failures->push_back(IndependenceFailure{c.r, c.s, c.w, reg, why});
        log.push_back(detail::fiber_tag(c.r, c.s) + ": " + why);
    };
    bool stopped = detail::for_each_fiber(spec, search_bound, max_multiple, &log, [&](const Rank3Candidate& c) {
        TorsionGroup found = torsion_structure(c.curve).group;
        if (found != spec.torsion) {
            record(c, 0.0, "torsion " + found.to_string() + " != " + spec.torsion.to_string());
            return true;
        }
        double reg = regulator(c.curve, {c.points[0], c.points[1], c.points[2]});
        if (!(reg > eps)) {
            record(c, reg, "regulator " + std::to_string(reg) + " <= eps");
            return true;
        }
        out.push_back(Rank3Result{c, reg});
        return static_cast<int>(out.size()) < count;
    });
    if (!stopped && static_cast<int>(out.size()) < count)
        throw ExhaustedSearch("build_rank3: candidates exhausted after " + std::to_string(out.size()) + " of " +
                                  std::to_string(count),
                              std::move(log));
    if (filtered) *filtered = std::move(log);
    return out;
}

} // namespace ecq
