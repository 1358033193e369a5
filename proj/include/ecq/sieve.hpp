// sieve.hpp - Mestre-Nagao scoring and parameter grid scans.
//
// The score is S(E, N) = sum over good odd primes p <= N of
// (1 - (p-1)/#E(F_p)) log p: many small residue counts push the sum up,
// which correlates with rank. The variant is fixed here (and echoed in the
// CSV header), so scores are only comparable between runs of this tool.
#pragma once

#include "ecq/catalog.hpp"
#include "ecq/torsion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ecq {

struct SieveRecord {
    Rational parameter;
    double score = 0.0;
    bool torsion_ok = false;
    long primes_used = 0;
    std::string notes;
};

inline double mestre_nagao(const Curve& e0, long N, long* good_primes = nullptr,
                           long* bad_primes = nullptr) {
    if (N < 3) throw std::invalid_argument("mestre_nagao needs N >= 3");
    Curve e = twist_clear(e0); // integral model; the count depends on it
    Int disc = e.discriminant().get_num();
    double s = 0.0;
    long good = 0, bad = 0;
    mpz_class p(2);
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        long lp = p.get_si();
        if (lp > N) break;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(lp))) {
            ++bad;
            continue;
        }
        long n = count_points_mod_p(e, lp);
        s += (1.0 - static_cast<double>(lp - 1) / static_cast<double>(n)) *
             std::log(static_cast<double>(lp));
        ++good;
    }
    if (good_primes) *good_primes = good;
    if (bad_primes) *bad_primes = bad;
    return s;
}

// Scores every non-degenerate parameter a/q (a, q ranging over the inclusive
// integer grids) and returns the top_k records by score, scored in parallel
// but with deterministic output: score descending, ties in grid order
// (numerators outer, denominators inner, duplicate fractions kept once at
// their first position). Torsion is verified on the returned records only.
inline std::vector<SieveRecord> scan(const FamilyEntry& entry, long num_lo, long num_hi,
                                     long den_lo, long den_hi, long N = 1000, int top_k = 10,
                                     int threads = 0) {
    if (num_lo > num_hi || den_lo > den_hi) throw std::invalid_argument("scan: empty range");
    if (N < 3) throw std::invalid_argument("scan needs N >= 3");
    if (top_k < 1) throw std::invalid_argument("scan needs top_k >= 1");

    struct Cell {
        Rational w;
        Curve curve;
        long good = 0, bad = 0;
        double score = 0.0;
    };
    std::vector<Cell> cells;
    std::set<Rational> seen;
    for (long a = num_lo; a <= num_hi; ++a) {
        for (long q = den_lo; q <= den_hi; ++q) {
            if (q == 0) continue;
            Rational w{Int(a), Int(q)};
            w.canonicalize();
            if (!seen.insert(w).second) continue;
            auto av = entry.A.eval(w);
            auto bv = entry.B.eval(w);
            auto cv = entry.C.eval(w);
            if (!av || !bv || !cv) continue;    // a coefficient denominator vanishes
            if (*bv == 0 && *cv == 0) continue; // degenerate fiber
            try {
                cells.push_back({w, Curve(*av, *bv, *cv), 0, 0, 0.0});
            } catch (const SingularCurve&) {
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            cells[i].score = mestre_nagao(cells[i].curve, N, &cells[i].good, &cells[i].bad);
        }
    };
    const unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return cells[i].score > cells[j].score; });

    std::vector<SieveRecord> out;
    for (std::size_t k = 0; k < order.size() && out.size() < static_cast<std::size_t>(top_k); ++k) {
        const Cell& c = cells[order[k]];
        SieveRecord rec{c.w, c.score, false, c.good, ""};
        rec.torsion_ok = torsion_structure(c.curve).group == entry.claimed_torsion;
        if (c.good == 0) rec.notes = "no good primes";
        else if (c.bad > 0) rec.notes = "skipped " + std::to_string(c.bad) + " bad primes";
        out.push_back(std::move(rec));
    }
    return out;
}

inline void write_csv(const std::vector<SieveRecord>& records, std::ostream& os) {
    os << "# score: S(N) = sum over good odd p <= N of (1 - (p-1)/#E(F_p)) log p\n";
    os << "param,score,torsion_ok,primes_used,notes\n";
    auto old = os.precision(12);
    for (const auto& r : records)
        os << to_string(r.parameter) << ',' << r.score << ',' << (r.torsion_ok ? "true" : "false")
           << ',' << r.primes_used << ',' << r.notes << '\n';
    os.precision(old);
}

} // namespace ecq
