// ratfunc.hpp - rational functions over Q in one variable, normalized to
// lowest terms with a monic denominator so equality is structural.
#pragma once

#include "ecq/poly.hpp"

#include <optional>

namespace ecq {

class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(const Rational& c) : num_(Poly::constant(c)), den_(Poly::one()) {}
    RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
        reduce();
    }

    static RatFunc var() { return RatFunc(Poly::var()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_ == Poly::one(); }
    bool is_constant() const { return num_.is_constant() && is_poly(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { RatFunc r; r.num_ = -a.num_; r.den_ = a.den_; return r; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFunc operator*(const RatFunc& a, const Rational& s) { return a * RatFunc(s); }
    friend RatFunc operator*(const Rational& s, const RatFunc& a) { return a * RatFunc(s); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(unsigned e) const {
        RatFunc r(Rational(1)), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // Evaluation; nullopt when the denominator vanishes at x.
    std::optional<Rational> eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d == 0) return std::nullopt;
        return num_.eval(x) / d;
    }

    // f(g) for f = *this.
    RatFunc compose(const RatFunc& g) const {
        // Horner on both numerator and denominator against a common g-power
        auto eval_poly = [&g](const Poly& p) {
            RatFunc acc;
            for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
                acc = acc * g + RatFunc(*it);
            return acc;
        };
        return eval_poly(num_) / eval_poly(den_);
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

// g with g^2 == f, or nullopt. For f = n/d in lowest terms, f is a square
// iff n*d is a square polynomial (the witness is sqrt(n*d)/d).
inline std::optional<RatFunc> ratfunc_is_square(const RatFunc& f) {
    if (f.is_zero()) return RatFunc();
    auto g = poly_sqrt(f.num() * f.den());
    if (!g) return std::nullopt;
    return RatFunc(*g, f.den());
}

} // namespace ecq
