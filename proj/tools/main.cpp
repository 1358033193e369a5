// ecfam - command-line front end for the family catalog: listing, symbolic
// verification, specialization, torsion, heights, sieving, and rank-3
// generation. Exit codes: 0 success, 1 verification/search failure, 2 usage.
#include "ecq/heights.hpp"
#include "ecq/rank3.hpp"
#include "ecq/sieve.hpp"
#include "ecq/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using njson = nlohmann::json; // std::map-backed: keys come out sorted

namespace {

using namespace ecq;

njson curve_json(const Curve& e) {
    if (e.C() == 0) return njson{{"model", "AB"}, {"A", to_string(e.A())}, {"B", to_string(e.B())}};
    return njson{{"model", "W"},
                 {"a", {"0", to_string(e.A()), "0", to_string(e.B()), to_string(e.C())}}};
}

njson point_json(const Point& p) {
    if (p.infinity) return njson("infinity");
    return njson{{"x", to_string(p.x)}, {"y", to_string(p.y)}};
}

njson coeff_json(const Poly& p) {
    njson out = njson::array();
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

njson ratfunc_json(const RatFunc& f) {
    return njson{{"num", coeff_json(f.num())}, {"den", coeff_json(f.den())}};
}

// "a..b" inclusive integer range
std::pair<long, long> parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) throw CLI::ValidationError("range must look like a..b: " + s);
    try {
        long lo = std::stol(s.substr(0, pos));
        long hi = std::stol(s.substr(pos + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("range must look like a..b: " + s);
    }
}

// "x1,y1;x2,y2;..."
std::vector<Point> parse_points(const std::string& s) {
    std::vector<Point> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto comma = part.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("point must look like x,y: " + part);
        out.emplace_back(parse_rational(part.substr(0, comma)),
                         parse_rational(part.substr(comma + 1)));
    }
    if (out.empty()) throw CLI::ValidationError("no points given");
    return out;
}

void emit(const njson& j) { std::cout << j.dump(2) << "\n"; }

int cmd_catalog(bool as_json) {
    const auto& entries = catalog_list();
    if (as_json) {
        njson out = njson::array();
        for (const auto& e : entries) {
            njson points = njson::array();
            for (const auto& p : e.claimed_points) {
                njson pt{{"x", ratfunc_json(p.x)}};
                if (p.y) pt["y"] = ratfunc_json(*p.y);
                points.push_back(std::move(pt));
            }
            njson je{{"id", e.id},
                     {"parameter", e.param},
                     {"A", ratfunc_json(e.A)},
                     {"B", ratfunc_json(e.B)},
                     {"points", std::move(points)},
                     {"torsion", e.claimed_torsion.to_string()},
                     {"provenance", e.provenance},
                     {"ancestry", e.ancestry}};
            if (e.has_c()) je["C"] = ratfunc_json(e.C);
            out.push_back(std::move(je));
        }
        emit(njson{{"entries", std::move(out)}});
        return 0;
    }
    for (const auto& e : entries)
        std::printf("%-14s %-3s %-11s %zu point(s)\n", e.id.c_str(), e.param.c_str(),
                    e.claimed_torsion.to_string().c_str(), e.claimed_points.size());
    return 0;
}

int cmd_verify(bool all, const std::string& family, int samples, unsigned long seed,
               bool as_json) {
    std::vector<const FamilyEntry*> targets;
    if (all)
        for (const auto& e : catalog_list()) targets.push_back(&e);
    else
        targets.push_back(&catalog_entry(family));

    bool ok = true;
    njson out = njson::array();
    for (const auto* e : targets) {
        auto rep = verify_entry(*e, samples, seed);
        ok = ok && rep.passed();
        if (as_json) {
            njson claims = njson::array();
            for (const auto& c : rep.claims)
                claims.push_back({{"claim", c.claim}, {"pass", c.pass}, {"detail", c.detail}});
            out.push_back({{"entry", rep.entry_id},
                           {"passed", rep.passed()},
                           {"claims", std::move(claims)},
                           {"seconds", rep.elapsed_seconds}});
        } else {
            std::printf("%-14s %s  (%zu claims, %.2fs)\n", rep.entry_id.c_str(),
                        rep.passed() ? "pass" : "FAIL", rep.claims.size(), rep.elapsed_seconds);
            for (const auto& c : rep.claims)
                if (!c.pass) std::printf("    %s: %s\n", c.claim.c_str(), c.detail.c_str());
        }
    }
    if (as_json) emit(njson{{"all_passed", ok}, {"reports", std::move(out)}});
    return ok ? 0 : 1;
}

int cmd_specialize(const std::string& family, const Rational& param, bool as_json) {
    auto s = specialize(catalog_entry(family), param);
    if (as_json) {
        njson points = njson::array();
        for (const auto& p : s.points) points.push_back(point_json(p));
        njson j{{"curve", curve_json(s.curve)}, {"points", std::move(points)}};
        if (s.torsion_point) j["torsion_point"] = point_json(*s.torsion_point);
        emit(j);
        return 0;
    }
    std::cout << "A = " << to_string(s.curve.A()) << "\nB = " << to_string(s.curve.B()) << "\n";
    if (s.curve.C() != 0) std::cout << "C = " << to_string(s.curve.C()) << "\n";
    for (const auto& p : s.points)
        std::cout << "point (" << to_string(p.x) << ", " << to_string(p.y) << ")\n";
    if (s.torsion_point)
        std::cout << "torsion point (" << to_string(s.torsion_point->x) << ", "
                  << to_string(s.torsion_point->y) << ")\n";
    return 0;
}

int cmd_torsion(const Curve& e, bool as_json) {
    auto t = torsion_structure(e);
    if (as_json) {
        njson gens = njson::array();
        for (const auto& g : t.generators) gens.push_back(point_json(g));
        emit(njson{{"group", t.group.to_string()},
                   {"order", t.group.order()},
                   {"order_bound", t.order_bound},
                   {"generators", std::move(gens)}});
        return 0;
    }
    std::cout << t.group.to_string() << " (order " << t.group.order() << ")\n";
    for (const auto& g : t.generators)
        std::cout << "generator (" << to_string(g.x) << ", " << to_string(g.y) << ")\n";
    return 0;
}

int cmd_height(const Curve& e, const std::vector<Point>& pts, double eps, bool as_json) {
    for (const auto& p : pts) e.require(p);
    std::vector<double> heights;
    for (const auto& p : pts) heights.push_back(canonical_height(e, p, eps).value);
    std::vector<std::vector<double>> gram(pts.size(), std::vector<double>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j)
            gram[i][j] = gram[j][i] =
                i == j ? heights[i] : height_pairing(e, pts[i], pts[j], eps).value;
    double reg = regulator(e, pts, eps);
    if (as_json) {
        emit(njson{{"heights", heights}, {"gram", gram}, {"regulator", reg}});
        return 0;
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        std::printf("h((%s, %s)) = %.10f\n", to_string(pts[i].x).c_str(),
                    to_string(pts[i].y).c_str(), heights[i]);
    for (const auto& row : gram) {
        for (double v : row) std::printf("  %12.8f", v);
        std::printf("\n");
    }
    std::printf("regulator = %.10f\n", reg);
    return 0;
}

int cmd_sieve(const std::string& family, const std::string& num, const std::string& den, long N,
              int top, const std::string& out_path, int threads, bool as_json) {
    auto [nlo, nhi] = parse_range(num);
    auto [dlo, dhi] = parse_range(den);
    auto recs = scan(catalog_entry(family), nlo, nhi, dlo, dhi, N, top, threads);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw CLI::ValidationError("cannot open " + out_path);
        write_csv(recs, f);
    }
    if (as_json) {
        njson out = njson::array();
        for (const auto& r : recs)
            out.push_back({{"param", to_string(r.parameter)},
                           {"score", r.score},
                           {"torsion_ok", r.torsion_ok},
                           {"primes_used", r.primes_used},
                           {"notes", r.notes}});
        emit(njson{{"records", std::move(out)}});
        return 0;
    }
    write_csv(recs, std::cout);
    return 0;
}

int cmd_rank3(const std::string& torsion, int count, long bound, double eps, bool as_json) {
    auto spec = match_spec(torsion);
    std::vector<std::string> filtered;
    std::vector<Rank3Result> results;
    try {
        results = build_rank3(spec, count, eps, nullptr, bound, 10, &filtered);
    } catch (const ExhaustedSearch& ex) {
        std::cerr << ex.what() << "\n";
        for (const auto& line : ex.attempted) std::cerr << "  " << line << "\n";
        return 1;
    }
    if (as_json) {
        njson out = njson::array();
        for (const auto& r : results) {
            njson points = njson::array();
            for (const auto& p : r.source.points) points.push_back(point_json(p));
            out.push_back({{"curve", curve_json(r.source.curve)},
                           {"points", std::move(points)},
                           {"regulator", r.regulator},
                           {"provenance",
                            {{"r", to_string(r.source.r)},
                             {"s", to_string(r.source.s)},
                             {"w", to_string(r.source.w)},
                             {"aux_point", point_json(r.source.aux_point)}}}});
        }
        emit(njson{{"curves", std::move(out)}, {"filtered", filtered}});
        return 0;
    }
    for (const auto& r : results) {
        std::cout << "w = " << to_string(r.source.w) << "  (r = " << to_string(r.source.r)
                  << ", s = " << to_string(r.source.s) << ", aux ("
                  << to_string(r.source.aux_point.x) << ", " << to_string(r.source.aux_point.y)
                  << "))\n";
        std::cout << "  A = " << to_string(r.source.curve.A())
                  << "\n  B = " << to_string(r.source.curve.B()) << "\n";
        for (const auto& p : r.source.points)
            std::cout << "  point (" << to_string(p.x) << ", " << to_string(p.y) << ")\n";
        std::printf("  regulator = %.6f\n", r.regulator);
    }
    for (const auto& line : filtered) std::cout << "filtered " << line << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic-curve family toolkit: torsion Z/8 and Z/2 x Z/6"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    bool as_json = false;
    unsigned long seed = 0;
    int threads = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "PRNG seed for sampled checks")->capture_default_str();
    app.add_option("--threads", threads, "parallelism cap (0 = all cores)");

    auto* cat = app.add_subcommand("catalog", "family catalog");
    cat->add_subcommand("list", "one line per entry")->required();

    auto* ver = app.add_subcommand("verify", "symbolic + sampled claim verification");
    bool ver_all = false;
    std::string ver_family;
    int samples = 5;
    ver->add_flag("--all", ver_all, "verify every entry");
    ver->add_option("--family", ver_family, "verify one entry");
    ver->add_option("--samples", samples, "specializations per torsion check")
        ->capture_default_str();

    auto* spc = app.add_subcommand("specialize", "evaluate a family at a parameter");
    std::string spc_family, spc_param;
    spc->add_option("--family", spc_family)->required();
    spc->add_option("--param", spc_param, "rational p/q")->required();

    std::string opt_a, opt_b, opt_c = "0";
    auto* tor = app.add_subcommand("torsion", "torsion subgroup of y^2 = x^3 + Ax^2 + Bx + C");
    tor->add_option("--A", opt_a)->required();
    tor->add_option("--B", opt_b)->required();
    tor->add_option("--C", opt_c);

    auto* hgt = app.add_subcommand("height", "canonical heights, Gram matrix, regulator");
    std::string hgt_a, hgt_b, hgt_c = "0", hgt_points;
    double hgt_eps = 1e-10;
    hgt->add_option("--A", hgt_a)->required();
    hgt->add_option("--B", hgt_b)->required();
    hgt->add_option("--C", hgt_c);
    hgt->add_option("--points", hgt_points, "x1,y1;x2,y2;...")->required();
    hgt->add_option("--eps", hgt_eps)->capture_default_str();

    auto* sve = app.add_subcommand("sieve", "Mestre-Nagao grid scan");
    std::string sve_family, sve_num, sve_den, sve_out;
    long sve_primes = 1000;
    int sve_top = 10;
    sve->add_option("--family", sve_family)->required();
    sve->add_option("--num", sve_num, "numerator range a..b")->required();
    sve->add_option("--den", sve_den, "denominator range c..d")->required();
    sve->add_option("--primes", sve_primes)->capture_default_str();
    sve->add_option("--top", sve_top)->capture_default_str();
    sve->add_option("--out", sve_out, "write CSV here");

    auto* rk3 = app.add_subcommand("rank3", "generate rank >= 3 curves");
    std::string rk3_torsion;
    int rk3_count = 3;
    long rk3_bound = 200;
    double rk3_eps = 1e-6;
    rk3->add_option("--torsion", rk3_torsion, "z8 or z2x6")
        ->required()
        ->check(CLI::IsMember({"z8", "z2x6"}));
    rk3->add_option("--count", rk3_count)->capture_default_str();
    rk3->add_option("--search-bound", rk3_bound)->capture_default_str();
    rk3->add_option("--eps", rk3_eps)->capture_default_str();

    // global flags (--json, --seed, --threads) are accepted after a subcommand
    for (auto* s : app.get_subcommands(nullptr)) {
        s->fallthrough();
        for (auto* ss : s->get_subcommands(nullptr)) ss->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help is a success; anything else is usage
    }

    try {
        if (cat->parsed()) return cmd_catalog(as_json);
        if (ver->parsed()) {
            if (ver_all != ver_family.empty()) {
                std::cerr << "verify needs exactly one of --all / --family\n";
                return 2;
            }
            return cmd_verify(ver_all, ver_family, samples, seed, as_json);
        }
        if (spc->parsed())
            return cmd_specialize(spc_family, parse_rational(spc_param), as_json);
        if (tor->parsed())
            return cmd_torsion(
                Curve(parse_rational(opt_a), parse_rational(opt_b), parse_rational(opt_c)),
                as_json);
        if (hgt->parsed())
            return cmd_height(
                Curve(parse_rational(hgt_a), parse_rational(hgt_b), parse_rational(hgt_c)),
                parse_points(hgt_points), hgt_eps, as_json);
        if (sve->parsed())
            return cmd_sieve(sve_family, sve_num, sve_den, sve_primes, sve_top, sve_out, threads,
                             as_json);
        if (rk3->parsed()) return cmd_rank3(rk3_torsion, rk3_count, rk3_bound, rk3_eps, as_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1; // domain failures: degenerate parameter, off-curve point, ...
    }
    return 2;
}
