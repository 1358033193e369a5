// heights.hpp - canonical heights, height pairings, regulators.
//
// hhat(P) = lim 4^{-n} log max(|num x(2^n P)|, |den x(2^n P)|). The limit is
// telescoped over the duplication map: with coprime (p,q) and the homogeneous
// duplication pair U(p,q), G(p,q),
//   h_{k+1} = 4 h_k + log m_k - log g_k,
// where m_k is the homogeneous value at the normalized floating pair and
// g_k = gcd(U(p_k,q_k), G(p_k,q_k)). The floats stay O(1); the gcds are exact,
// computed modulo a power of the resultant Res(U,G), which every g_k divides.
// The 4^{-k} discount exactly absorbs the Lyapunov growth of the float orbit,
// so double precision reaches ~1e-12 regardless of coefficient size.
#pragma once

#include "ecq/curve.hpp"
#include "ecq/torsion.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ecq {

struct InfinityPoint : std::runtime_error {
    explicit InfinityPoint(const std::string& what) : std::runtime_error(what) {}
};

struct HeightValue {
    double value = 0.0;
    double error_bound = 0.0;
};

inline double log_abs(const Int& z) {
    if (z == 0) throw std::domain_error("log_abs(0)");
    long exp2 = 0;
    double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(exp2) * std::log(2.0);
}

// log max(|num x|, |den x|)
inline double naive_height(const Point& p) {
    if (p.infinity) throw InfinityPoint("naive height of the point at infinity");
    Int n = abs(p.x.get_num());
    Int d = p.x.get_den();
    const Int& mx = n > d ? n : d;
    return log_abs(mx);
}

namespace detail {

// Resultant of two binary quartic forms (coefficients descending), via exact
// Gaussian elimination on the 8x8 Sylvester matrix.
inline Int quartic_form_resultant(const std::array<Int, 5>& u, const std::array<Int, 5>& g) {
    std::array<std::array<Rational, 8>, 8> m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 5; ++c) {
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + c)] = Rational(u[static_cast<std::size_t>(c)]);
            m[static_cast<std::size_t>(r + 4)][static_cast<std::size_t>(r + c)] = Rational(g[static_cast<std::size_t>(c)]);
        }
    Rational det(1);
    for (int col = 0; col < 8; ++col) {
        int piv = -1;
        for (int r = col; r < 8; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { piv = r; break; }
        if (piv < 0) return Int(0);
        if (piv != col) { std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]); det = -det; }
        const Rational& p = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        det *= p;
        for (int r = col + 1; r < 8; ++r) {
            Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
            if (f == 0) continue;
            for (int c = col; c < 8; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
    return det.get_num(); // integer matrix, so the determinant is integral
}

inline mpf_class homog_eval(const std::array<mpf_class, 5>& c, const mpf_class& x, const mpf_class& z) {
    mpf_class acc(0, x.get_prec());
    mpf_class xp(1, x.get_prec());
    std::array<mpf_class, 5> zp;
    zp[0] = mpf_class(1, x.get_prec());
    for (int i = 1; i <= 4; ++i) zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i) - 1] * z;
    for (int i = 4; i >= 0; --i) { // c[i] x^(4-i) z^i
        acc += c[static_cast<std::size_t>(i)] * xp * zp[static_cast<std::size_t>(i)];
        xp *= x;
    }
    return acc;
}

// log |f| via mantissa + base-2 exponent; f may be far outside double range.
inline double log_abs_f(const mpf_class& f) {
    long e = 0;
    double m = mpf_get_d_2exp(&e, f.get_mpf_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

inline Int homog_eval_mod(const std::array<Int, 5>& c, const Int& x, const Int& z, const Int& mod) {
    Int acc = 0, xp = 1;
    std::array<Int, 5> zp;
    zp[0] = 1;
    for (int i = 1; i <= 4; ++i) zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i) - 1] * z % mod;
    for (int i = 4; i >= 0; --i) {
        acc = (acc + c[static_cast<std::size_t>(i)] * xp % mod * zp[static_cast<std::size_t>(i)]) % mod;
        xp = xp * x % mod;
    }
    return acc;
}

} // namespace detail

inline HeightValue canonical_height(const Curve& e0, const Point& p0, double eps = 1e-10) {
    e0.require(p0);
    if (eps <= 0) throw std::invalid_argument("canonical_height: eps must be positive");
    if (p0.infinity || e0.point_order(p0, 16)) return {0.0, eps}; // torsion: exactly 0
    Rational t(1);
    Curve e = twist_clear(e0, &t); // Q-isomorphism; hhat is invariant
    Point p(p0.x * t * t, p0.y * t * t * t);
    const Rational &A = e.A(), &B = e.B(), &C = e.C();

    // x(2P) = U/G, homogeneous coefficients, descending
    std::array<Int, 5> cu = {Int(1), Int(0), Rational(-2 * B).get_num(), Rational(-8 * C).get_num(),
                             Rational(B * B - Rational(4) * A * C).get_num()};
    std::array<Int, 5> cg = {Int(0), Int(4), Rational(4 * A).get_num(), Rational(4 * B).get_num(),
                             Rational(4 * C).get_num()};
    Int r0 = abs(detail::quartic_form_resultant(cu, cg)); // nonzero: curve nonsingular

    // The float orbit runs in mpf: the forms' coefficients (and hence the
    // terms that must cancel against each other) can span far more orders of
    // magnitude than a double exponent holds for large models.
    constexpr unsigned long prec = 128;
    std::array<mpf_class, 5> cud, cgd;
    double maxlog = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Int &zu = cu[static_cast<std::size_t>(i)], &zg = cg[static_cast<std::size_t>(i)];
        cud[static_cast<std::size_t>(i)] = mpf_class(zu, prec);
        cgd[static_cast<std::size_t>(i)] = mpf_class(zg, prec);
        if (zu != 0) maxlog = std::max(maxlog, log_abs(zu));
        if (zg != 0) maxlog = std::max(maxlog, log_abs(zg));
    }
    const double big = maxlog + std::log(11.0) + (r0 > 1 ? log_abs(r0) : 0.0) + 10.0;
    int iters = 10;
    while (std::pow(0.25, iters) * big / 3.0 > eps / 2.0 && iters < 400) ++iters;

    Int pn = p.x.get_num(), qn = p.x.get_den();
    double acc = naive_height(p);
    Int smax = abs(pn) > qn ? abs(pn) : qn;
    mpf_class u(mpq_class(mpq_class(pn) / mpq_class(smax)), prec);
    mpf_class v(mpq_class(mpq_class(qn) / mpq_class(smax)), prec);

    const bool track = r0 > 1;
    Int modulus = 1, pm = 0, qm = 0, r0sq = r0 * r0;
    if (track) {
        mpz_pow_ui(modulus.get_mpz_t(), r0.get_mpz_t(), static_cast<unsigned long>(iters) + 2);
        pm = ((pn % modulus) + modulus) % modulus;
        qm = qn % modulus;
    }

    double scale = 0.25;
    for (int k = 0; k < iters; ++k, scale *= 0.25) {
        mpf_class uv = detail::homog_eval(cud, u, v);
        mpf_class gv = detail::homog_eval(cgd, u, v);
        double loggc = 0.0;
        if (track) {
            Int um = detail::homog_eval_mod(cu, pm, qm, modulus);
            Int gm = detail::homog_eval_mod(cg, pm, qm, modulus);
            Int g = gcd(gcd(um, gm), r0sq); // = gcd(U,G): every prime of it divides r0
            if (g > 1) loggc = log_abs(g);
            modulus /= r0;
            pm = um / g % modulus;
            qm = gm / g % modulus;
        }
        mpf_class au(abs(uv)), ag(abs(gv));
        const mpf_class& m = au > ag ? au : ag;
        acc += scale * (detail::log_abs_f(m) - loggc);
        u = uv / m;
        v = gv / m;
    }
    return {acc, eps};
}

inline HeightValue height_pairing(const Curve& e, const Point& p, const Point& q, double eps = 1e-10) {
    HeightValue hs = canonical_height(e, e.add(p, q), eps);
    HeightValue hp = canonical_height(e, p, eps);
    HeightValue hq = canonical_height(e, q, eps);
    return {(hs.value - hp.value - hq.value) / 2.0, (hs.error_bound + hp.error_bound + hq.error_bound) / 2.0};
}

// Determinant of the canonical-height Gram matrix; > 0 (within error) iff the
// points are independent modulo torsion.
inline double regulator(const Curve& e, const std::vector<Point>& points, double eps = 1e-10) {
    const std::size_t n = points.size();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = i == j ? canonical_height(e, points[i], eps).value
                              : height_pairing(e, points[i], points[j], eps).value;
            gram[i][j] = gram[j][i] = v;
        }
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(gram[r][col]) > std::fabs(gram[piv][col])) piv = r;
        if (gram[piv][col] == 0.0) return 0.0;
        if (piv != col) { std::swap(gram[piv], gram[col]); det = -det; }
        det *= gram[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = gram[r][col] / gram[col][col];
            for (std::size_t c = col; c < n; ++c) gram[r][c] -= f * gram[col][c];
        }
    }
    return det;
}

} // namespace ecq
