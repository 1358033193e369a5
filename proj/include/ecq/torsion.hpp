// torsion.hpp - torsion subgroup of E(Q) via reduction bounds plus exact
// point search (2-power tower by point halving, odd part by division
// polynomials on the depressed cubic).
#pragma once

#include "ecq/curve.hpp"
#include "ecq/poly.hpp"
#include "ecq/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecq {

struct BadPrime : std::runtime_error {
    explicit BadPrime(const std::string& what) : std::runtime_error(what) {}
};
struct BadReduction : std::runtime_error {
    explicit BadReduction(const std::string& what) : std::runtime_error(what) {}
};

// Z/m x Z/n with m | n and m in {1, 2}. Mazur: n <= 10 or n = 12 when
// m = 1, and n in {2, 4, 6, 8} when m = 2.
struct TorsionGroup {
    int m = 1;
    int n = 1;

    long order() const { return static_cast<long>(m) * n; }

    bool in_mazur_list() const {
        if (m == 1) return (n >= 1 && n <= 10) || n == 12;
        if (m == 2) return n == 2 || n == 4 || n == 6 || n == 8;
        return false;
    }

    std::string to_string() const {
        if (m == 1 && n == 1) return "trivial";
        if (m == 1) return "Z/" + std::to_string(n);
        return "Z/" + std::to_string(m) + " x Z/" + std::to_string(n);
    }

    friend bool operator==(const TorsionGroup& a, const TorsionGroup& b) {
        return a.m == b.m && a.n == b.n;
    }
    friend bool operator!=(const TorsionGroup& a, const TorsionGroup& b) { return !(a == b); }
};

struct TorsionResult {
    TorsionGroup group;
    bool exact = true;        // search is uncapped, so always exact here
    long order_bound = 0;     // gcd of good-reduction counts; order divides it
    std::vector<Point> generators; // cyclic generator first, then the extra
                                   // 2-torsion generator when m = 2
    std::vector<long> primes_used;
};

// Quartic twist (A,B,C) -> (t^2 A, t^4 B, t^6 C) with t the lcm of the
// denominators; gives an integral, Q-isomorphic model.
inline Curve twist_clear(const Curve& e, Rational* factor = nullptr) {
    Int t = 1;
    mpz_lcm(t.get_mpz_t(), e.A().get_den().get_mpz_t(), e.B().get_den().get_mpz_t());
    mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), e.C().get_den().get_mpz_t());
    Rational t2 = Rational(t) * Rational(t);
    if (factor) *factor = Rational(t);
    return Curve(e.A() * t2, e.B() * t2 * t2, e.C() * t2 * t2 * t2);
}

namespace detail {

inline long mod_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    return t < 0 ? t + p : t;
}

// r mod p in [0, p); throws if p divides the denominator.
inline long rational_mod(const Rational& r, long p) {
    long num = static_cast<long>(mpz_fdiv_ui(r.get_num().get_mpz_t(), static_cast<unsigned long>(p)));
    long den = static_cast<long>(mpz_fdiv_ui(r.get_den().get_mpz_t(), static_cast<unsigned long>(p)));
    if (den == 0) throw BadPrime("prime divides a coefficient denominator");
    return static_cast<long>((static_cast<unsigned long long>(num) * static_cast<unsigned long long>(mod_inv(den, p))) % static_cast<unsigned long long>(p));
}

} // namespace detail

// #E(F_p) = 1 + sum_x (1 + chi(x^3 + Ax^2 + Bx + C)), chi the quadratic
// character mod p.
inline long count_points_mod_p(const Curve& e, long p) {
    if (p < 3) throw BadPrime("character-sum count needs an odd prime");
    if (detail::rational_mod(e.discriminant(), p) == 0)
        throw BadReduction("curve is singular mod p");
    const long a = detail::rational_mod(e.A(), p);
    const long b = detail::rational_mod(e.B(), p);
    const long c = detail::rational_mod(e.C(), p);
    std::vector<char> qr(static_cast<std::size_t>(p), 0);
    for (long i = 0; i < p; ++i)
        qr[static_cast<std::size_t>((static_cast<unsigned long long>(i) * i) % static_cast<unsigned long long>(p))] = 1;
    long count = 1; // point at infinity
    const auto up = static_cast<unsigned long long>(p);
    for (long x = 0; x < p; ++x) {
        unsigned long long f = static_cast<unsigned long long>(x) + a;
        f = (f % up) * x % up;
        f = (f + b) * x % up;
        f = (f + c) % up;
        if (f == 0) count += 1;
        else if (qr[static_cast<std::size_t>(f)]) count += 2;
    }
    return count;
}

// gcd of #E(F_p) over the first num_primes good odd primes; the torsion
// order divides the result.
inline long torsion_order_bound(const Curve& e, int num_primes, std::vector<long>* primes_out = nullptr) {
    if (num_primes < 3) throw std::invalid_argument("need at least 3 primes for a bound");
    Curve ec = twist_clear(e);
    Int disc = ec.discriminant().get_num();
    long g = 0;
    int used = 0;
    mpz_class p(2);
    while (used < num_primes) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        long lp = p.get_si();
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(lp))) continue;
        g = std::gcd(g, count_points_mod_p(ec, lp));
        if (primes_out) primes_out->push_back(lp);
        ++used;
    }
    return g;
}

namespace detail {

// x(2P) = dup_num(x) / dup_den(x) on y^2 = x^3 + Ax^2 + Bx + C.
inline Poly dup_num(const Curve& e) {
    const Rational &A = e.A(), &B = e.B(), &C = e.C();
    return Poly(std::vector<Rational>{B * B - Rational(4) * A * C, Rational(-8) * C, Rational(-2) * B,
                                      Rational(0), Rational(1)});
}
inline Poly dup_den(const Curve& e) {
    return Poly(std::vector<Rational>{Rational(4) * e.C(), Rational(4) * e.B(), Rational(4) * e.A(),
                                      Rational(4)});
}

// All rational Q with 2Q = t, sorted by x (one sign of y per x).
inline std::vector<Point> rational_halves(const Curve& e, const Point& t) {
    std::vector<Point> out;
    Poly q = dup_num(e) - dup_den(e) * t.x;
    for (const auto& r : rational_roots(q)) {
        auto y = exact_sqrt(e.rhs(r));
        if (!y) continue;
        Point cand(r, *y);
        if (e.scalar_mul(2, cand) == t) out.push_back(cand);
        else if (e.scalar_mul(2, e.neg(cand)) == t) out.push_back(e.neg(cand));
    }
    return out;
}

// Longest halving tower above a 2-torsion point, capped at order 8 (Mazur).
inline std::pair<long, Point> best_two_tower(const Curve& e, const Point& t, long ord) {
    std::pair<long, Point> best{ord, t};
    if (ord >= 8) return best;
    for (const auto& h : rational_halves(e, t)) {
        auto cand = best_two_tower(e, h, 2 * ord);
        if (cand.first > best.first) best = cand;
    }
    return best;
}

// Odd-index division polynomial (the x-part W_ell with psi_ell = W_ell for
// odd ell) on y^2 = x^3 + ax + b; rational x-coordinates of ell-torsion are
// among its roots.
inline Poly division_poly(int ell, const Rational& a, const Rational& b) {
    Poly w3(std::vector<Rational>{-a * a, Rational(12) * b, Rational(6) * a, Rational(0), Rational(3)});
    if (ell == 3) return w3;
    // psi_4 = 2y * w4 with w4 = 2(x^6 + 5ax^4 + 20bx^3 - 5a^2x^2 - 4abx - 8b^2 - a^3)
    Poly w4(std::vector<Rational>{Rational(-8) * b * b - a * a * a, Rational(-4) * a * b,
                                  Rational(-5) * a * a, Rational(20) * b, Rational(5) * a, Rational(0),
                                  Rational(1)});
    w4 = w4 * Rational(2);
    Poly f(std::vector<Rational>{b, a, Rational(0), Rational(1)});
    Poly f2 = f * f * Rational(16);
    Poly w5 = f2 * w4 - w3 * w3 * w3;
    if (ell == 5) return w5;
    Poly w7 = w5 * w3 * w3 * w3 - f2 * w4 * w4 * w4;
    if (ell == 7) return w7;
    if (ell == 9) {
        Poly w6 = w3 * (w5 - w4 * w4);
        return f2 * w6 * w4 * w4 * w4 - w3 * w5 * w5 * w5;
    }
    throw std::invalid_argument("division_poly: only odd ell in {3,5,7,9}");
}

// First (smallest-x) rational point of exact order ell, odd ell.
inline std::optional<Point> find_odd_torsion(const Curve& e, int ell) {
    const Rational s = e.A() / Rational(3);
    const Rational a = e.B() - e.A() * s;
    const Rational b = e.C() - e.B() * s + Rational(2) * s * s * s;
    Poly w = division_poly(ell, a, b);
    std::vector<Rational> skip;
    if (ell == 9) skip = rational_roots(division_poly(3, a, b)); // 3-torsion x's recur in psi_9
    for (const auto& r : rational_roots(w)) {
        if (std::find(skip.begin(), skip.end(), r) != skip.end()) continue;
        Rational x = r - s;
        auto y = exact_sqrt(e.rhs(x));
        if (y) return Point(x, *y);
    }
    return std::nullopt;
}

} // namespace detail

inline TorsionResult torsion_structure(const Curve& e) {
    TorsionResult res;
    res.order_bound = torsion_order_bound(e, 12, &res.primes_used);

    auto t2 = e.two_torsion();

    // 2-power cyclic part: deepest halving tower over any 2-torsion point.
    long ord2 = 1;
    Point gen2 = Point::at_infinity();
    for (const auto& t : t2) {
        auto tower = detail::best_two_tower(e, t, 2);
        if (tower.first > ord2) { ord2 = tower.first; gen2 = tower.second; }
    }

    // Odd part: at most one of 3, 5, 7 (9 sits above 3) by Mazur.
    long oddord = 1;
    Point oddgen = Point::at_infinity();
    for (int ell : {3, 5, 7}) {
        if (res.order_bound % ell != 0) continue;
        auto p = detail::find_odd_torsion(e, ell);
        if (!p) continue;
        oddord = ell;
        oddgen = *p;
        if (ell == 3 && res.order_bound % 9 == 0) {
            if (auto p9 = detail::find_odd_torsion(e, 9)) { oddord = 9; oddgen = *p9; }
        }
        break;
    }

    const int m = (t2.size() == 3) ? 2 : 1;
    const long n = ord2 * oddord;
    res.group = TorsionGroup{m, static_cast<int>(n)};
    res.exact = res.group.in_mazur_list() && res.group.order() != 0;

    if (n > 1) {
        Point gen = ord2 > 1 && oddord > 1 ? e.add(gen2, oddgen) : (ord2 > 1 ? gen2 : oddgen);
        if (!gen.infinity && gen.y < 0) gen = e.neg(gen); // sign normalization
        res.generators.push_back(gen);
        if (m == 2) {
            // independent 2-torsion generator: smallest x not already in <gen>
            Point inside = e.scalar_mul(n / 2, gen);
            for (const auto& t : t2) {
                if (t != inside) { res.generators.push_back(t); break; }
            }
        }
    }
    return res;
}

} // namespace ecq
