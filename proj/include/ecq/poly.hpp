// poly.hpp - dense univariate polynomials over Q: ring arithmetic,
// gcd via primitive pseudo-remainder sequences, exact square roots,
// quadratic solving and complete rational root finding.
#pragma once

#include "ecq/rational.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ecq {

class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c) { if (c != 0) coeffs_.push_back(c); }
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(Rational(1)); }
    static Poly constant(const Rational& c) { return Poly(c); }
    // x
    static Poly var() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }
    // c * x^k
    static Poly monomial(const Rational& c, std::size_t k) {
        if (c == 0) return Poly();
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly from_longs(std::initializer_list<long> cs) {
        std::vector<Rational> v;
        for (long c : cs) v.emplace_back(c);
        return Poly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& operator[](std::size_t i) const {
        static const Rational kZero(0);
        return i < coeffs_.size() ? coeffs_[i] : kZero;
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const {
        if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    const Rational& constant_term() const { return (*this)[0]; }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a) { return Poly() - a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Rational& s) {
        if (s == 0) return Poly();
        std::vector<Rational> v = a.coeffs_;
        for (auto& c : v) c *= s;
        return Poly(std::move(v));
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const {
        Poly r = one(), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(v));
    }

    // Euclidean division; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
        Poly r = a;
        std::vector<Rational> q(a.coeffs_.size() > b.coeffs_.size() - 1
                                    ? a.coeffs_.size() - b.coeffs_.size() + 1
                                    : 0,
                                Rational(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t k = static_cast<std::size_t>(r.degree() - b.degree());
            Rational c = r.leading() / b.leading();
            q[k] = c;
            r = r - monomial(c, k) * b;
        }
        return {Poly(std::move(q)), r};
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        return *this * (Rational(1) / leading());
    }

    // Clears denominators and content: returns primitive integer-coefficient
    // polynomial g and rational scale s with *this == s * g.
    std::pair<Poly, Rational> primitive() const {
        if (is_zero()) return {Poly(), Rational(1)};
        Int den_lcm(1);
        for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        Int content(0);
        std::vector<Rational> v(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            Int z = Int(coeffs_[i].get_num()) * (den_lcm / Int(coeffs_[i].get_den()));
            v[i] = Rational(z);
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        }
        if (sgn(Int(v.back().get_num())) < 0) content = -content;
        for (auto& c : v) c /= Rational(content);
        Rational scale(content, den_lcm);
        scale.canonicalize();
        return {Poly(std::move(v)), scale};
    }

    // gcd via primitive PRS on integer polynomials; result is monic.
    static Poly gcd(Poly a, Poly b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        Poly f = a.primitive().first;
        Poly g = b.primitive().first;
        if (f.degree() < g.degree()) std::swap(f, g);
        while (!g.is_zero()) {
            Poly r = pseudo_rem(f, g).primitive().first;
            f = g;
            g = r;
        }
        return f.monic();
    }

    static Poly lcm(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        return divmod(a * b, gcd(a, b)).first.monic();
    }

    // Squarefree decomposition (Yun): returns [f1, f2, ...] with
    // monic(f) = prod fi^i and the fi squarefree and pairwise coprime.
    std::vector<Poly> squarefree_decomposition() const {
        std::vector<Poly> out;
        if (is_constant()) return out;
        Poly f = monic();
        Poly fp = f.derivative();
        Poly a = gcd(f, fp);
        Poly b = divmod(f, a).first;
        Poly c = divmod(fp, a).first;
        Poly d = c - b.derivative();
        while (true) {
            if (b.is_constant()) break;
            Poly g = gcd(b, d);
            out.push_back(g);
            b = divmod(b, g).first;
            c = divmod(d, g).first;
            d = c - b.derivative();
        }
        return out;
    }

    // Constant-first coefficient list, the canonical external form.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << ",";
            os << coeffs_[i].get_str();
        }
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    static Poly pseudo_rem(const Poly& a, const Poly& b) {
        // lead(b)^(deg a - deg b + 1) * a mod b, staying fraction-free.
        Poly r = a;
        Rational lb = b.leading();
        int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            std::size_t k = static_cast<std::size_t>(r.degree() - db);
            Rational c = r.leading();
            r = r * lb - monomial(c, k) * b;
        }
        return r;
    }

    std::vector<Rational> coeffs_;
};

// g with g^2 == f, normalized with positive leading coefficient; nullopt
// when f is not a square over Q.
inline std::optional<Poly> poly_sqrt(const Poly& f) {
    if (f.is_zero()) return Poly();
    int m = f.degree();
    if (m % 2 != 0) return std::nullopt;
    auto lead = exact_sqrt(f.leading());
    if (!lead) return std::nullopt;
    int n = m / 2;
    std::vector<Rational> g(static_cast<std::size_t>(n) + 1, Rational(0));
    g[n] = *lead;
    Rational two_lead = Rational(2) * g[n];
    for (int k = 1; k <= n; ++k) {
        // match the coefficient of x^(m-k) against known higher coefficients
        Rational s(0);
        for (int i = n - k + 1; i <= n; ++i) {
            int j = m - k - i;
            if (j < 0 || j > n) continue;
            if (j >= n - k + 1 && j < i) s += Rational(2) * g[i] * g[j];
            else if (j == i) s += g[i] * g[i];
        }
        g[static_cast<std::size_t>(n - k)] = (f[static_cast<std::size_t>(m - k)] - s) / two_lead;
    }
    Poly cand(std::move(g));
    if (cand * cand != f) return std::nullopt;
    return cand;
}

// All rational roots of a*x^2 + b*x + c. Linear when a == 0. Roots exist
// iff the discriminant is a rational square.
inline std::vector<Rational> solve_quadratic(const Rational& a, const Rational& b, const Rational& c) {
    if (a == 0) {
        if (b == 0) {
            if (c != 0) throw std::invalid_argument("inconsistent equation c = 0 with c != 0");
            throw std::invalid_argument("identically zero equation");
        }
        return {-c / b};
    }
    Rational disc = b * b - Rational(4) * a * c;
    auto root = exact_sqrt(disc);
    if (!root) return {};
    if (*root == 0) return {-b / (Rational(2) * a)};
    Rational r1 = (-b + *root) / (Rational(2) * a);
    Rational r2 = (-b - *root) / (Rational(2) * a);
    if (r2 < r1) std::swap(r1, r2);
    return {r1, r2};
}

namespace detail {

// Hensel lifting of a simple root mod p up to modulus >= target, followed by
// rational reconstruction. Returns nullopt when reconstruction fails.
inline std::optional<Rational> lift_root(const std::vector<Int>& f, const std::vector<Int>& fp,
                                         const Int& p, unsigned long r0, const Int& target) {
    auto eval_mod = [](const std::vector<Int>& poly, const Int& x, const Int& m) {
        Int acc(0);
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
            acc = (acc * x + *it) % m;
        }
        if (sgn(acc) < 0) acc += m;
        return acc;
    };
    Int m = p;
    Int r(r0);
    while (m < target) {
        Int m2 = m * m;
        Int fr = eval_mod(f, r, m2);
        Int fpr = eval_mod(fp, r, m2);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), fpr.get_mpz_t(), m2.get_mpz_t()) == 0) return std::nullopt;
        r = (r - fr * inv) % m2;
        if (sgn(r) < 0) r += m2;
        m = m2;
    }
    // rational reconstruction: find n/d == r (mod m) with small n, d
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int v0 = m, v1 = r, t0 = 0, t1 = 1;
    while (v1 > bound) {
        Int q = v0 / v1;
        Int v2 = v0 - q * v1;
        Int t2 = t0 - q * t1;
        v0 = v1; v1 = v2; t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Rational cand(v1, t1);
    cand.canonicalize();
    return cand;
}

} // namespace detail

// Complete list of rational roots, each verified by back-substitution.
inline std::vector<Rational> rational_roots(const Poly& input) {
    std::vector<Rational> roots;
    if (input.is_zero() || input.is_constant()) return roots;
    Poly f = input;
    // strip zero roots
    if (f.constant_term() == 0) {
        roots.emplace_back(0);
        std::vector<Rational> v(f.coeffs().begin(), f.coeffs().end());
        std::size_t shift = 0;
        while (shift < v.size() && v[shift] == 0) ++shift;
        f = Poly(std::vector<Rational>(v.begin() + static_cast<long>(shift), v.end()));
        if (f.is_constant()) return roots;
    }
    // squarefree part with primitive integer coefficients
    Poly sf = Poly::divmod(f, Poly::gcd(f, f.derivative())).first.primitive().first;
    std::vector<Int> ic, ipc;
    for (const auto& c : sf.coeffs()) ic.emplace_back(c.get_num());
    Poly sfd = sf.derivative();
    ipc.resize(ic.size() > 1 ? ic.size() - 1 : 0);
    for (std::size_t i = 1; i < ic.size(); ++i) ipc[i - 1] = ic[i] * static_cast<long>(i);

    // reconstruction target: roots n/d have |n| <= |a0|, |d| <= |a_deg|
    Int target = 2 * abs(ic.front()) * abs(ic.back()) + 1;
    target = target * target; // margin so sqrt(m/2) covers both bounds

    static const unsigned long kPrimes[] = {10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079};
    for (unsigned long pl : kPrimes) {
        Int p(pl);
        if (ic.back() % p == 0) continue;
        // reduce mod p and check squarefreeness via distinct simple roots
        std::vector<unsigned long> cm(ic.size()), cpm(ipc.size());
        bool ok = true;
        for (std::size_t i = 0; i < ic.size(); ++i) cm[i] = mpz_fdiv_ui(ic[i].get_mpz_t(), pl);
        for (std::size_t i = 0; i < ipc.size(); ++i) cpm[i] = mpz_fdiv_ui(ipc[i].get_mpz_t(), pl);
        auto eval_ul = [pl](const std::vector<unsigned long>& c, unsigned long x) {
            unsigned long long acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % pl;
            return static_cast<unsigned long>(acc);
        };
        std::vector<unsigned long> modroots;
        for (unsigned long x = 0; x < pl && ok; ++x) {
            if (eval_ul(cm, x) == 0) {
                if (eval_ul(cpm, x) == 0) { ok = false; break; } // multiple root mod p: try next prime
                modroots.push_back(x);
            }
        }
        if (!ok) continue;
        for (unsigned long r0 : modroots) {
            auto cand = detail::lift_root(ic, ipc, p, r0, target);
            if (cand && sf.eval(*cand) == 0) roots.push_back(*cand);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }
    throw std::runtime_error("rational_roots: no usable prime (unexpected)");
}

} // namespace ecq
