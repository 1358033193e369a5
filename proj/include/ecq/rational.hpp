// rational.hpp - exact rational scalars on top of GMP, plus integer and
// rational square root helpers used throughout the library.
#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecq {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" (sign on the numerator). Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Floor square root of a nonnegative integer; nullopt unless n is a
// perfect square.
inline std::optional<Int> exact_isqrt(const Int& n) {
    if (sgn(n) < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Nonnegative square root of a rational, if it is a rational square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    auto n = exact_isqrt(Int(q.get_num()));
    if (!n) return std::nullopt;
    auto d = exact_isqrt(Int(q.get_den()));
    if (!d) return std::nullopt;
    Rational r(*n, *d);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace ecq
