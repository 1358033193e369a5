// acceptance.cpp - end-to-end acceptance run: one line per criterion,
// nonzero exit if any fails. Invokes the ecfam binary (path baked in at
// configure time) for the CLI-level criteria and the library for the rest.
#include "ecq/heights.hpp"
#include "ecq/rank3.hpp"
#include "ecq/sieve.hpp"
#include "ecq/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ecq;

namespace {

int g_failed = 0;

void report(int n, const std::string& what, bool ok, double seconds) {
    std::printf("criterion %d (%s): %s  [%.1fs]\n", n, what.c_str(), ok ? "PASS" : "FAIL",
                seconds);
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

template <typename F>
void criterion(int n, const std::string& what, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = f();
    } catch (const std::exception& e) {
        std::printf("  threw: %s\n", e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(n, what, ok, dt);
}

int run_cli(const std::string& args, const std::string& out_path) {
    std::string cmd = std::string(ECFAM_PATH) + " " + args + " > " + out_path + " 2>&1";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

long count_lines_with(const std::string& text, const std::string& needle) {
    long n = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.find(needle) != std::string::npos) ++n;
    return n;
}

long modpow(long b, long e, long p) {
    long acc = 1;
    b %= p;
    if (b < 0) b += p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return acc;
}

// independent point count: direct double loop, no character sum
long brute_count(const Curve& e, long p) {
    auto md = [&](const Rational& r) {
        long num = static_cast<long>(mpz_fdiv_ui(r.get_num().get_mpz_t(), p));
        long den = static_cast<long>(mpz_fdiv_ui(r.get_den().get_mpz_t(), p));
        return num * modpow(den, p - 2, p) % p;
    };
    const long a = md(e.A()), b = md(e.B()), c = md(e.C());
    long count = 1;
    for (long x = 0; x < p; ++x) {
        long f = ((x * x % p * x + a * x % p * x) % p + b * x + c) % p;
        for (long y = 0; y < p; ++y)
            if ((y * y - f) % p == 0) ++count;
    }
    return count;
}

const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool good_at(const Curve& e, long p) {
    return mpz_fdiv_ui(e.discriminant().get_num().get_mpz_t(), p) != 0;
}

Rational qq(long n, long d = 1) { return make_rational(n, d); }

} // namespace

int main() {
    const std::string tmp = "acceptance_out.txt";

    criterion(1, "symbolic identity suite via verify --all", [&] {
        return run_cli("verify --all", tmp) == 0;
    });

    criterion(2, "torsion at 20 seeded specializations per entry", [&] {
        for (const auto& e : catalog_list())
            if (!verify_torsion(e, 20, 7).passed()) return false;
        return true;
    });

    criterion(3, "hand-verified anchor values", [&] {
        auto s8 = specialize(catalog_entry("Z8_BASE"), qq(2));
        if (s8.curve.A() != 49 || s8.curve.B() != 256) return false;
        if (count_points_mod_p(s8.curve, 7) != 8) return false;
        auto s26 = specialize(catalog_entry("Z26_BASE"), qq(2));
        if (s26.curve.A() != -59 || s26.curve.B() != 864) return false;
        if (count_points_mod_p(s26.curve, 7) != 12) return false;
        if (!s26.torsion_point || *s26.torsion_point != Point(qq(24), qq(24))) return false;
        if (s26.curve.point_order(*s26.torsion_point, 16) != std::optional<int>(6)) return false;
        auto t2 = s26.curve.two_torsion();
        return t2.size() == 3 && t2[0].x == 0 && t2[1].x == 27 && t2[2].x == 32;
    });

    criterion(4, "rank-2 independence at the first good integer >= 2", [&] {
        for (const char* id : {"Z8_R2_A", "Z8_R2_B", "Z26_R2_A", "Z26_R2_B", "Z26_R2_C"}) {
            const auto& e = catalog_entry(id);
            if (!verify_independence(e, default_independence_parameter(e)).passed()) return false;
        }
        return true;
    });

    criterion(5, "rank-3 generation with hand-solution fibers in the stream", [&] {
        for (const auto& spec : {match_spec_z8(), match_spec_z2x6()}) {
            // the seed certificates behind each construction, checked exactly
            if (spec.quartic.eval(spec.quartic.seed_r) != spec.quartic.seed_t * spec.quartic.seed_t)
                return false;
            auto results = build_rank3(spec, 3);
            if (results.size() != 3) return false;
            for (const auto& r : results) {
                if (torsion_structure(r.source.curve).group != spec.torsion) return false;
                if (!(r.regulator > 1e-6)) return false;
            }
        }
        if (run_cli("rank3 --torsion z8 --count 3", tmp) != 0) return false;
        std::string z8 = slurp(tmp);
        if (count_lines_with(z8, "regulator = ") != 3) return false;
        if (count_lines_with(z8, "filtered r=1, s=29/6") != 1) return false; // degenerate fiber
        if (run_cli("rank3 --torsion z2x6 --count 3", tmp) != 0) return false;
        std::string z26 = slurp(tmp);
        if (count_lines_with(z26, "regulator = ") != 3) return false;
        return count_lines_with(z26, "filtered r=1, s=-1") == 1; // the hand solution w = -2
    });

    criterion(6, "auxiliary quartics map onto the stated rank-certified cubics", [&] {
        struct Aux {
            MatchSpec spec;
            Curve target;
            Point witness;
        };
        const Aux cases[] = {
            {match_spec_z8(), Curve(qq(-463), qq(45936)), Point(qq(99), qq(990))},
            {match_spec_z2x6(), Curve(qq(-43), qq(280)), Point(qq(7), qq(14))},
        };
        for (const auto& c : cases) {
            auto map = quartic_to_cubic(c.spec.quartic);
            if (map.cubic().j_invariant() != c.target.j_invariant()) return false;
            if (!find_ab_isomorphism(map.cubic(), c.target)) return false;
            bool found = false;
            for (const auto& ap : aux_points(c.spec, 120))
                if (!ap.is_torsion() && ap.point == c.witness) found = true;
            if (!found) return false;
        }
        return true;
    });

    criterion(7, "sieve vs brute-force counts, published parameters rank as expected", [&] {
        const std::vector<Curve> curves = {
            specialize(catalog_entry("Z8_BASE"), qq(3)).curve,
            specialize(catalog_entry("Z26_BASE"), qq(2)).curve,
            specialize(catalog_entry("Z8_R1_2"), qq(287, 109)).curve,
            specialize(catalog_entry("Z26_R2_A"), qq(5, 13)).curve,
            Curve(qq(-43), qq(280)),
        };
        for (const auto& e0 : curves) {
            Curve e = twist_clear(e0);
            for (long p : kPrimes)
                if (good_at(e, p) && count_points_mod_p(e, p) != brute_count(e, p)) return false;
        }
        struct Anchor {
            const char* id;
            long num, den;
        };
        for (const auto& a : {Anchor{"Z8_R1_2", 287, 109}, Anchor{"Z26_R1_3", 53, 90},
                              Anchor{"Z8_R1_6", 100, 29}}) {
            auto recs = scan(catalog_entry(a.id), a.num, a.num, a.den, a.den, 200, 1);
            if (recs.size() != 1 || !recs[0].torsion_ok) return false;
        }
        return true;
    });

    criterion(8, "standalone property suites", [&] {
        std::mt19937_64 rng(0);
        auto small = [&](long lo, long hi) {
            return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
        };

        // group law: curves through two random points, 1000 cases
        for (int i = 0; i < 1000; ++i) {
            Rational x1 = qq(small(-20, 20), small(1, 5)), y1 = qq(small(1, 20), small(1, 5));
            Rational x2 = qq(small(-20, 20), small(1, 5)), y2 = qq(small(1, 20), small(1, 5));
            if (x1 == x2) continue;
            // solve y_i^2 - x_i^3 = A x_i^2 + B x_i
            Rational r1 = y1 * y1 - x1 * x1 * x1, r2 = y2 * y2 - x2 * x2 * x2;
            if (x1 == 0 || x2 == 0) continue;
            Rational A = (r1 / x1 - r2 / x2) / (x1 - x2);
            Rational B = r1 / x1 - A * x1;
            std::optional<Curve> e;
            try {
                e.emplace(A, B);
            } catch (const SingularCurve&) {
                continue;
            }
            Point P(x1, y1), Q(x2, y2), R = e->add(P, Q);
            if (e->add(P, Q) != e->add(Q, P)) return false;
            if (e->add(e->add(P, Q), R) != e->add(P, e->add(Q, R))) return false;
            if (e->add(P, e->neg(P)) != Point::at_infinity()) return false;
            if (e->add(P, Point::at_infinity()) != P) return false;
        }

        // height quadraticity and pairing symmetry/bilinearity on rank-2 fibers
        for (const char* id : {"Z8_R2_A", "Z26_R2_A", "Z26_R2_C"}) {
            const auto& entry = catalog_entry(id);
            auto s = specialize(entry, default_independence_parameter(entry));
            const Point &P = s.points.at(0), &Q = s.points.at(1);
            const Curve& e = s.curve;
            double hP = canonical_height(e, P).value;
            double h2P = canonical_height(e, e.scalar_mul(2, P)).value;
            if (std::fabs(h2P - 4.0 * hP) > 5e-10) return false;
            double pq = height_pairing(e, P, Q).value;
            double qp = height_pairing(e, Q, P).value;
            if (std::fabs(pq - qp) > 5e-10) return false;
            // <P+Q, Q> = <P, Q> + <Q, Q>
            double lhs = height_pairing(e, e.add(P, Q), Q).value;
            double hQ = canonical_height(e, Q).value;
            if (std::fabs(lhs - (pq + hQ)) > 1e-8) return false;
        }

        // Hasse bound on every good odd prime below 100
        for (const char* id : {"Z8_BASE", "Z26_BASE", "Z7_REMARK"}) {
            const auto& entry = catalog_entry(id);
            Curve e = twist_clear(specialize(entry, default_independence_parameter(entry)).curve);
            for (long p : kPrimes) {
                if (!good_at(e, p)) continue;
                long n = count_points_mod_p(e, p);
                if (static_cast<double>(std::labs(p + 1 - n)) > 2.0 * std::sqrt(double(p)))
                    return false;
            }
        }

        // poly_sqrt round-trips on random polynomials
        for (int i = 0; i < 200; ++i) {
            std::vector<Rational> cs;
            int deg = static_cast<int>(small(0, 5));
            for (int k = 0; k <= deg; ++k) cs.push_back(qq(small(-9, 9), small(1, 4)));
            Poly q(cs);
            if (q.is_zero()) continue;
            auto r = poly_sqrt(q * q);
            if (!r || (*r != q && *r != q * Rational(-1))) return false;
        }

        return true;
    });

    std::remove(tmp.c_str());
    return g_failed == 0 ? 0 : 1;
}
