// curve.hpp - elliptic curve models over Q and the chord-tangent group law.
//
// The working model is y^2 = x^3 + A x^2 + B x (+ C); C is zero for every
// family with 2-torsion and nonzero only for the Z/7Z model. A separate
// GeneralCurve holds five-coefficient Weierstrass equations (Tate normal
// forms) together with the reduction to the working model.
#pragma once

#include "ecq/poly.hpp"
#include "ecq/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ecq {

struct SingularCurve : std::runtime_error {
    explicit SingularCurve(const std::string& what) : std::runtime_error(what) {}
};
struct PointNotOnCurve : std::runtime_error {
    explicit PointNotOnCurve(const std::string& what) : std::runtime_error(what) {}
};
struct NoRational2Torsion : std::runtime_error {
    explicit NoRational2Torsion(const std::string& what) : std::runtime_error(what) {}
};

struct Point {
    bool infinity = true;
    Rational x{0};
    Rational y{0};

    Point() = default;
    Point(Rational px, Rational py) : infinity(false), x(std::move(px)), y(std::move(py)) {}
    static Point at_infinity() { return Point(); }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

class Curve {
public:
    Curve(Rational A, Rational B, Rational C = Rational(0))
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
        if (disc_cubic() == 0) throw SingularCurve("singular cubic y^2 = x^3 + Ax^2 + Bx + C");
    }

    const Rational& A() const { return A_; }
    const Rational& B() const { return B_; }
    const Rational& C() const { return C_; }
    bool is_ab() const { return C_ == 0; }

    Rational rhs(const Rational& x) const { return ((x + A_) * x + B_) * x + C_; }

    bool contains(const Point& p) const {
        return p.infinity || p.y * p.y == rhs(p.x);
    }
    void require(const Point& p) const {
        if (!contains(p)) throw PointNotOnCurve("point fails the curve equation");
    }

    Point neg(const Point& p) const { return p.infinity ? p : Point(p.x, -p.y); }

    Point add(const Point& p, const Point& q) const {
        require(p);
        require(q);
        if (p.infinity) return q;
        if (q.infinity) return p;
        Rational lambda;
        if (p.x == q.x) {
            if (p.y == -q.y) return Point::at_infinity();
            // tangent
            lambda = (Rational(3) * p.x * p.x + Rational(2) * A_ * p.x + B_) / (Rational(2) * p.y);
        } else {
            lambda = (q.y - p.y) / (q.x - p.x);
        }
        Rational x3 = lambda * lambda - A_ - p.x - q.x;
        Rational y3 = lambda * (p.x - x3) - p.y;
        return Point(x3, y3);
    }

    Point scalar_mul(long n, const Point& p) const {
        require(p);
        if (n == 0) return Point::at_infinity();
        Point base = n < 0 ? neg(p) : p;
        unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
        Point acc = Point::at_infinity();
        while (e) {
            if (e & 1) acc = add(acc, base);
            base = add(base, base);
            e >>= 1;
        }
        return acc;
    }

    // Exact order if <= max, nullopt otherwise ("exceeds max").
    std::optional<int> point_order(const Point& p, int max = 16) const {
        require(p);
        if (p.infinity) return 1;
        Point acc = p;
        for (int n = 1; n <= max; ++n) {
            if (acc.infinity) return n;
            acc = add(acc, p);
        }
        return std::nullopt;
    }

    Rational c4() const { return Rational(16) * A_ * A_ - Rational(48) * B_; }
    Rational discriminant() const {
        // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6 with b2=4A, b4=2B, b6=4C, b8=4AC-B^2
        return Rational(-16) * A_ * A_ * (Rational(4) * A_ * C_ - B_ * B_) - Rational(64) * B_ * B_ * B_ -
               Rational(432) * C_ * C_ + Rational(288) * A_ * B_ * C_;
    }
    Rational j_invariant() const {
        Rational c = c4();
        return c * c * c / discriminant();
    }

    // All rational points with y = 0, sorted by x.
    std::vector<Point> two_torsion() const {
        std::vector<Point> out;
        std::vector<Rational> xs;
        if (C_ == 0) {
            xs.push_back(Rational(0));
            for (const auto& r : solve_quadratic(Rational(1), A_, B_)) {
                if (r != 0) xs.push_back(r);
            }
        } else {
            Poly cubic(std::vector<Rational>{C_, B_, A_, Rational(1)});
            xs = rational_roots(cubic);
        }
        std::sort(xs.begin(), xs.end());
        for (const auto& x : xs) out.emplace_back(x, Rational(0));
        return out;
    }

    friend bool operator==(const Curve& a, const Curve& b) {
        return a.A_ == b.A_ && a.B_ == b.B_ && a.C_ == b.C_;
    }
    friend bool operator!=(const Curve& a, const Curve& b) { return !(a == b); }

private:
    Rational disc_cubic() const {
        // discriminant of x^3 + A x^2 + B x + C
        return Rational(18) * A_ * B_ * C_ - Rational(4) * A_ * A_ * A_ * C_ + A_ * A_ * B_ * B_ -
               Rational(4) * B_ * B_ * B_ - Rational(27) * C_ * C_;
    }

    Rational A_, B_, C_;
};

inline Curve curve_ab(const Rational& A, const Rational& B) {
    if (B == 0 || A * A == Rational(4) * B)
        throw SingularCurve("y^2 = x^3 + Ax^2 + Bx with B = 0 or A^2 = 4B");
    return Curve(A, B);
}

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
class GeneralCurve {
public:
    GeneralCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
        if (discriminant() == 0) throw SingularCurve("singular Weierstrass equation");
    }

    const Rational& a1() const { return a1_; }
    const Rational& a2() const { return a2_; }
    const Rational& a3() const { return a3_; }
    const Rational& a4() const { return a4_; }
    const Rational& a6() const { return a6_; }

    Rational b2() const { return a1_ * a1_ + Rational(4) * a2_; }
    Rational b4() const { return Rational(2) * a4_ + a1_ * a3_; }
    Rational b6() const { return a3_ * a3_ + Rational(4) * a6_; }
    Rational b8() const {
        return a1_ * a1_ * a6_ + Rational(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    }
    Rational c4() const { return b2() * b2() - Rational(24) * b4(); }
    Rational discriminant() const {
        Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - Rational(8) * B4 * B4 * B4 - Rational(27) * B6 * B6 + Rational(9) * B2 * B4 * B6;
    }
    Rational j_invariant() const {
        Rational c = c4();
        return c * c * c / discriminant();
    }

    bool contains(const Point& p) const {
        if (p.infinity) return true;
        return p.y * p.y + a1_ * p.x * p.y + a3_ * p.y ==
               ((p.x + a2_) * p.x + a4_) * p.x + a6_;
    }
    void require(const Point& p) const {
        if (!contains(p)) throw PointNotOnCurve("point fails the Weierstrass equation");
    }

    Point neg(const Point& p) const {
        return p.infinity ? p : Point(p.x, -p.y - a1_ * p.x - a3_);
    }

    Point add(const Point& p, const Point& q) const {
        require(p);
        require(q);
        if (p.infinity) return q;
        if (q.infinity) return p;
        if (p.x == q.x && q.y == -p.y - a1_ * p.x - a3_) return Point::at_infinity();
        Rational lambda, nu;
        if (p.x == q.x) {
            Rational d = Rational(2) * p.y + a1_ * p.x + a3_;
            lambda = (Rational(3) * p.x * p.x + Rational(2) * a2_ * p.x + a4_ - a1_ * p.y) / d;
            nu = (-p.x * p.x * p.x + a4_ * p.x + Rational(2) * a6_ - a3_ * p.y) / d;
        } else {
            lambda = (q.y - p.y) / (q.x - p.x);
            nu = p.y - lambda * p.x;
        }
        Rational x3 = lambda * lambda + a1_ * lambda - a2_ - p.x - q.x;
        Rational y3 = -(lambda + a1_) * x3 - nu - a3_;
        return Point(x3, y3);
    }

    Point scalar_mul(long n, const Point& p) const {
        require(p);
        if (n == 0) return Point::at_infinity();
        Point base = n < 0 ? neg(p) : p;
        unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
        Point acc = Point::at_infinity();
        while (e) {
            if (e & 1) acc = add(acc, base);
            base = add(base, base);
            e >>= 1;
        }
        return acc;
    }

    std::optional<int> point_order(const Point& p, int max = 16) const {
        require(p);
        if (p.infinity) return 1;
        Point acc = p;
        for (int n = 1; n <= max; ++n) {
            if (acc.infinity) return n;
            acc = add(acc, p);
        }
        return std::nullopt;
    }

private:
    Rational a1_, a2_, a3_, a4_, a6_;
};

// Tate normal form E(b,c): y^2 + (1-c) xy - b y = x^3 - b x^2, marked point (0,0).
inline GeneralCurve tate_curve(const Rational& b, const Rational& c) {
    if (b == 0) throw SingularCurve("Tate normal form requires b != 0");
    return GeneralCurve(Rational(1) - c, -b, -b, Rational(0), Rational(0));
}

// Affine coordinate change carrying points of a GeneralCurve onto the
// AB-model produced by tate_to_ab.
struct AbMap {
    Rational a1, a3; // of the source curve
    Rational shift;  // rational 2-torsion root moved to x = 0

    Point operator()(const Point& p) const {
        if (p.infinity) return p;
        return Point(p.x - shift, p.y + (a1 * p.x + a3) / Rational(2));
    }
};

// Completes the square in y, then translates the smallest rational root of
// the resulting cubic to the origin. Preserves the j-invariant.
inline std::pair<Curve, AbMap> tate_to_ab(const GeneralCurve& e) {
    // y -> y - (a1 x + a3)/2 gives y^2 = x^3 + p x^2 + q x + r
    Rational p = e.a2() + e.a1() * e.a1() / Rational(4);
    Rational q = e.a4() + e.a1() * e.a3() / Rational(2);
    Rational r = e.a6() + e.a3() * e.a3() / Rational(4);
    Poly cubic(std::vector<Rational>{r, q, p, Rational(1)});
    auto roots = rational_roots(cubic);
    if (roots.empty()) throw NoRational2Torsion("completed cubic has no rational root");
    Rational rho = roots.front(); // rational_roots returns sorted
    Rational A = Rational(3) * rho + p;
    Rational B = Rational(3) * rho * rho + Rational(2) * p * rho + q;
    Curve ab = curve_ab(A, B);
    return {ab, AbMap{e.a1(), e.a3(), rho}};
}

} // namespace ecq
