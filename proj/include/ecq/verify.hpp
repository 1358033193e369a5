// verify.hpp - checks the catalog's claims: symbolic membership of every
// claimed point, sampled torsion structure, and independence of point pairs
// via the canonical-height regulator at a designated specialization.
#pragma once

#include "ecq/catalog.hpp"
#include "ecq/heights.hpp"
#include "ecq/torsion.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace ecq {

struct SymbolicFailure : std::runtime_error {
    explicit SymbolicFailure(const std::string& what) : std::runtime_error(what) {}
};
struct TorsionMismatch : std::runtime_error {
    explicit TorsionMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct DependentPoints : std::runtime_error {
    explicit DependentPoints(const std::string& what) : std::runtime_error(what) {}
};

struct ClaimStatus {
    std::string claim;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string entry_id;
    std::vector<ClaimStatus> claims;
    double elapsed_seconds = 0.0;

    bool passed() const {
        for (const auto& c : claims)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// rhs of the family curve at a symbolic x-coordinate
inline RatFunc family_rhs(const FamilyEntry& e, const RatFunc& x) {
    return x * x * x + e.A * x * x + e.B * x + e.C;
}

inline std::string rf_str(const RatFunc& f) {
    return "[" + f.num().to_string() + "] / [" + f.den().to_string() + "]";
}

// deterministic non-degenerate rational samples, numerator in [-50, 50],
// denominator in [1, 50]
inline std::vector<Rational> sample_parameters(const FamilyEntry& e, int samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 50);
    auto bad = e.degeneracy();
    std::vector<Rational> out;
    while (static_cast<int>(out.size()) < samples) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        if (std::find(bad.begin(), bad.end(), q) != bad.end()) continue;
        out.push_back(q);
    }
    return out;
}

} // namespace detail

// Every claimed x (points and torsion generator) must make the curve's rhs a
// literal square in Q(param). Stored y-coordinates must match the witness up
// to sign.
inline VerificationReport verify_membership(const FamilyEntry& entry) {
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.entry_id = entry.id;
    auto check = [&](const std::string& label, const ClaimedPoint& p) {
        ClaimStatus st;
        st.claim = label;
        RatFunc s = detail::family_rhs(entry, p.x);
        auto w = ratfunc_is_square(s);
        if (!w) {
            st.pass = false;
            st.detail = "rhs is not a square: " + detail::rf_str(s);
        } else if (p.y && *p.y != *w && *p.y != -*w) {
            st.pass = false;
            st.detail = "stored y does not match the square-root witness";
        } else {
            st.pass = true;
            st.detail = "witness y = " + detail::rf_str(*w);
        }
        rep.claims.push_back(st);
        if (!st.pass) {
            rep.elapsed_seconds = clock.seconds();
            throw SymbolicFailure(entry.id + " " + label + ": " + st.detail);
        }
    };
    for (std::size_t i = 0; i < entry.claimed_points.size(); ++i)
        check("membership point " + std::to_string(i + 1), entry.claimed_points[i]);
    if (entry.torsion_generator) check("membership torsion generator", *entry.torsion_generator);
    if (rep.claims.empty())
        rep.claims.push_back({"membership", true, "no claimed points"});
    rep.elapsed_seconds = clock.seconds();
    return rep;
}

inline VerificationReport verify_torsion(const FamilyEntry& entry, int samples, unsigned long seed) {
    if (samples < 1) throw std::invalid_argument("verify_torsion: samples must be >= 1");
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.entry_id = entry.id;
    // The claimed group is the generic torsion; on a thin set of parameters
    // the specialized torsion may jump to a supergroup. Require the claimed
    // group to embed at every sample and to match exactly at least once.
    std::ostringstream list;
    int exact = 0;
    for (const Rational& q : detail::sample_parameters(entry, samples, seed)) {
        auto s = specialize(entry, q);
        auto t = torsion_structure(s.curve);
        bool embeds = t.group.m % entry.claimed_torsion.m == 0 &&
                      t.group.n % entry.claimed_torsion.n == 0;
        bool is_exact = t.group.m == entry.claimed_torsion.m && t.group.n == entry.claimed_torsion.n;
        exact += is_exact ? 1 : 0;
        list << (list.tellp() > 0 ? " " : "") << q.get_str();
        if (!is_exact) list << "->" << t.group.to_string();
        if (!embeds) {
            rep.claims.push_back({"torsion at " + q.get_str(), false,
                                  "computed " + t.group.to_string() + ", claimed " +
                                      entry.claimed_torsion.to_string()});
            rep.elapsed_seconds = clock.seconds();
            throw TorsionMismatch(entry.id + " at " + q.get_str() + ": computed " +
                                  t.group.to_string());
        }
    }
    if (exact == 0) {
        rep.claims.push_back({"torsion sampled", false, "no sample matched the claimed group exactly"});
        rep.elapsed_seconds = clock.seconds();
        throw TorsionMismatch(entry.id + ": no sample matched " + entry.claimed_torsion.to_string());
    }
    rep.claims.push_back({"torsion sampled", true,
                          std::to_string(samples) + " samples (" + std::to_string(exact) +
                              " exact): " + list.str()});
    rep.elapsed_seconds = clock.seconds();
    return rep;
}

inline VerificationReport verify_independence(const FamilyEntry& entry, const Rational& q,
                                              double eps = 1e-6) {
    if (entry.claimed_points.size() < 2)
        throw std::invalid_argument("verify_independence: entry has fewer than two claimed points");
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.entry_id = entry.id;
    auto s = specialize(entry, q); // throws DegenerateParameter when q is excluded
    for (const auto& p : s.points) {
        if (s.curve.point_order(p, 16).has_value()) {
            rep.claims.push_back({"independence at " + q.get_str(), false, "claimed point is torsion"});
            throw DependentPoints(entry.id + " at " + q.get_str() + ": claimed point is torsion");
        }
    }
    double reg = regulator(s.curve, s.points);
    ClaimStatus st;
    st.claim = "independence at " + q.get_str();
    st.pass = reg > eps;
    std::ostringstream os;
    os << "regulator " << reg;
    st.detail = os.str();
    rep.claims.push_back(st);
    rep.elapsed_seconds = clock.seconds();
    if (!st.pass) throw DependentPoints(entry.id + " at " + q.get_str() + ": " + st.detail);
    return rep;
}

// The first non-degenerate integer >= 2 for an entry, the default spot for
// independence checks.
inline Rational default_independence_parameter(const FamilyEntry& entry) {
    auto bad = entry.degeneracy();
    for (long c = 2;; ++c) {
        Rational q(c);
        if (std::find(bad.begin(), bad.end(), q) == bad.end()) return q;
    }
}

// The chain conditions behind the Hadano-derived entries: each substitution
// turns the relevant expression into a literal square over Q.
inline bool verify_chain_conditions() {
    using detail::poly_l;
    using detail::rf;
    // a (a^3 - a - v) (a^2 - a v + v^2 - 1) with a = v + 1 becomes a square
    // after v = (1-w^2)/(-3+2w)
    Poly a = detail::lin(1, 1), v = detail::lin(0, 1);
    Poly expr = a * (a * a * a - a - v) * (a * a - a * v + v * v - Poly(Rational(1)));
    RatFunc cond1 = RatFunc(expr).compose(catalog_substitution("had.v"));
    if (!ratfunc_is_square(cond1)) return false;
    // 4 - 9w + 3w^2 becomes a square after w = -(9+4u)/(-3+u^2)
    RatFunc cond2 = RatFunc(poly_l({4, -9, 3})).compose(catalog_substitution("had.w"));
    return ratfunc_is_square(cond2).has_value();
}

// Full verification of one entry for the CLI: failures are captured in the
// report instead of thrown.
inline VerificationReport verify_entry(const FamilyEntry& entry, int samples = 5,
                                       unsigned long seed = 1, double eps = 1e-6) {
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.entry_id = entry.id;
    auto absorb = [&rep](auto&& fn, const std::string& label) {
        try {
            VerificationReport sub = fn();
            for (auto& c : sub.claims) rep.claims.push_back(std::move(c));
        } catch (const DegenerateParameter& ex) {
            rep.claims.push_back({label, false, ex.what()});
        } catch (const std::runtime_error& ex) {
            rep.claims.push_back({label, false, ex.what()});
        }
    };
    absorb([&] { return verify_membership(entry); }, "membership");
    absorb([&] { return verify_torsion(entry, samples, seed); }, "torsion");
    if (entry.claimed_points.size() >= 2)
        absorb([&] { return verify_independence(entry, default_independence_parameter(entry), eps); },
               "independence");
    rep.elapsed_seconds = clock.seconds();
    return rep;
}

} // namespace ecq
