#pragma once

#include <cstdlib>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "qcover/selftest.hpp"

namespace qcover {

inline int default_jobs() {
    if (const char* env = std::getenv("QCOVER_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

namespace detail {

inline void print_ineq(std::ostream& out, const IneqReport& rep) {
    out << rep.lhs.get_str() << " < " << rep.rhs.get_str() << ' '
        << (rep.holds ? "HOLDS" : "FAILS") << '\n';
    for (const auto& s : rep.steps)
        out << "  " << s.label << ": " << s.lhs.get_str() << (s.strict ? " < " : " <= ")
            << s.rhs.get_str() << ' ' << (s.holds ? "HOLDS" : "FAILS") << '\n';
}

inline void write_json_file(const std::string& path, const OrderedJson& j) {
    std::ofstream f(path);
    if (!f) fail(errc::parse, "cannot open output file: " + path);
    f << j.dump(2) << '\n';
}

} // namespace detail

/// Full command-line surface. Exit codes: 0 success or property holds,
/// 1 property violated or bound fails, 2 invalid input, 3 desk-scale gate
/// exceeded (including node budgets).
inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    CLI::App app{"exact toolkit for intersecting families of subspaces over GF(q)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    std::function<int()> action;

    // gauss q n m
    struct {
        unsigned long q = 2;
        long n = 0, m = 0;
    } ga;
    {
        auto* sub = app.add_subcommand("gauss", "number of m-subspaces of an n-space over GF(q)");
        sub->add_option("q", ga.q)->required();
        sub->add_option("n", ga.n)->required();
        sub->add_option("m", ga.m)->required();
        sub->callback([&] {
            action = [&]() -> int {
                out << gaussian(ga.n, ga.m, ga.q).get_str() << '\n';
                return 0;
            };
        });
    }

    // count-type q m1 k1 m k n l
    struct {
        unsigned long q = 2;
        long m1 = 0, k1 = 0, m = 0, k = 0, n = 0, l = 0;
    } ct;
    {
        auto* sub = app.add_subcommand(
            "count-type", "number of type-(m1,k1) subspaces inside a type-(m,k) subspace");
        sub->add_option("q", ct.q)->required();
        sub->add_option("m1", ct.m1)->required();
        sub->add_option("k1", ct.k1)->required();
        sub->add_option("m", ct.m)->required();
        sub->add_option("k", ct.k)->required();
        sub->add_option("n", ct.n)->required();
        sub->add_option("l", ct.l)->required();
        sub->callback([&] {
            action = [&]() -> int {
                out << count_type(ct.m1, ct.k1, ct.m, ct.k, ct.n, ct.l, ct.q).get_str() << '\n';
                return 0;
            };
        });
    }

    // tau <family-file> [--oracle] [--jobs N] [--budget B] [--cert FILE]
    struct {
        std::string file;
        bool oracle = false;
        int jobs = default_jobs();
        std::uint64_t budget = 0;
        std::string cert;
    } ta;
    {
        auto* sub = app.add_subcommand("tau", "exact covering number of a family file");
        sub->add_option("family-file", ta.file)->required();
        sub->add_flag("--oracle", ta.oracle, "use the exhaustive layer scan instead");
        sub->add_option("--jobs", ta.jobs,
                        "worker count (results are identical for every value)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--budget", ta.budget, "node budget; 0 means unlimited");
        sub->add_option("--cert", ta.cert, "write a JSON certificate here");
        sub->callback([&] {
            action = [&]() -> int {
                LoadedFamily lf = read_family_file(ta.file);
                CoverOptions opt;
                if (ta.budget > 0) opt.node_budget = ta.budget;
                CoverResult res = ta.oracle ? covering_number_exhaustive(lf.family, opt)
                                            : covering_number(lf.family, opt);
                if (res.exact)
                    out << "tau=" << res.tau << '\n';
                else
                    out << "tau<=" << res.tau << " (node budget exceeded)\n";
                out << "witness=" << subspace_line(res.witness) << '\n';
                if (!res.family_intersecting) out << "warning: family is not intersecting\n";
                if (!ta.cert.empty())
                    detail::write_json_file(
                        ta.cert, tau_certificate(res, lf.family, lf.sing, ta.file, ta.oracle));
                return res.exact ? 0 : 3;
            };
        });
    }

    // check-intersecting <family-file>
    struct {
        std::string file;
    } ci;
    {
        auto* sub = app.add_subcommand("check-intersecting",
                                       "verify that every pair of members shares a point");
        sub->add_option("family-file", ci.file)->required();
        sub->callback([&] {
            action = [&]() -> int {
                LoadedFamily lf = read_family_file(ci.file);
                IntersectReport rep = is_intersecting(lf.family);
                if (rep.intersecting) {
                    out << "intersecting\n";
                    return 0;
                }
                out << "not intersecting: members " << rep.violating->first << " and "
                    << rep.violating->second << '\n';
                return 1;
            };
        });
    }

    // construct {trivial|extremal|extremal-singular} --q --n --m [--l --k] -o <file>
    struct {
        std::string kind;
        unsigned long q = 2;
        int n = 0, m = 0, l = -1, k = -1;
        std::string output;
    } co;
    {
        auto* sub = app.add_subcommand("construct", "build a named family and write it to a file");
        sub->add_option("kind", co.kind)
            ->required()
            ->check(CLI::IsMember({"trivial", "extremal", "extremal-singular"}));
        sub->add_option("--q", co.q)->required();
        sub->add_option("--n", co.n)->required();
        sub->add_option("--m", co.m)->required();
        sub->add_option("--l", co.l, "distinguished-subspace dimension (extremal-singular)");
        sub->add_option("--k", co.k, "member type parameter (extremal-singular)");
        sub->add_option("-o,--output", co.output)->required();
        sub->callback([&] {
            action = [&]() -> int {
                FieldPtr f = Field::make_shared(co.q);
                if (co.kind == "trivial") {
                    std::vector<Elem> e1(static_cast<std::size_t>(co.n), 0);
                    if (co.n < 1) fail(errc::range, "trivial construction requires n >= 1");
                    e1[0] = 1;
                    Family fam =
                        trivial_family(f, co.n, co.m, Subspace::span(f, co.n, {e1}));
                    write_family_file(co.output, fam);
                    out << "wrote " << co.output << " count=" << fam.size() << '\n';
                } else if (co.kind == "extremal") {
                    Family fam = extremal_family(f, co.n, co.m);
                    write_family_file(co.output, fam);
                    out << "wrote " << co.output << " count=" << fam.size() << '\n';
                } else {
                    if (co.l < 0 || co.k < 0)
                        fail(errc::range, "extremal-singular requires --l and --k");
                    SingularSpace sing(f, co.n, co.l);
                    Family fam = extremal_singular_family(sing, co.m, co.k);
                    write_family_file(co.output, fam, sing);
                    out << "wrote " << co.output << " count=" << fam.size() << '\n';
                }
                return 0;
            };
        });
    }

    // lemma37 --q --dim-v --a --b --c --d [--seed S]
    struct {
        unsigned long q = 2;
        int dimv = 0, a = 0, b = 0, c = 0, d = 0;
        std::uint64_t seed = kDefaultSeed;
    } le;
    {
        auto* sub = app.add_subcommand(
            "lemma37",
            "build S inside A+B with dim(S cap A) = d and S cap B = 0 for random A, B");
        sub->add_option("--q", le.q)->required();
        sub->add_option("--dim-v", le.dimv)->required();
        sub->add_option("--a", le.a, "dim A")->required();
        sub->add_option("--b", le.b, "dim B")->required();
        sub->add_option("--c", le.c, "dim(A cap B)")->required();
        sub->add_option("--d", le.d, "target dim(S cap A)")->required();
        sub->add_option("--seed", le.seed);
        sub->callback([&] {
            action = [&]() -> int {
                FieldPtr f = Field::make_shared(le.q);
                std::mt19937_64 rng(le.seed);
                SpacePair pair = random_pair_with_meet(f, le.dimv, le.a, le.b, le.c, rng);
                Subspace s = transversal_subspace(pair.a, pair.b, le.d);
                out << "A=" << subspace_line(pair.a) << '\n';
                out << "B=" << subspace_line(pair.b) << '\n';
                out << "S=" << subspace_line(s) << '\n';
                out << "dim(S)=" << s.dim() << " dim(S^A)=" << meet(s, pair.a).dim()
                    << " dim(S^B)=" << meet(s, pair.b).dim() << " verified\n";
                return 0;
            };
        });
    }

    // verify-ineq {23|chain12|233|10} <params or --sweep ranges>
    struct {
        std::string which;
        long m = -1, k = -1, n = -1, l = -1, a = -1, b = -1;
        unsigned long q = 0;
        bool sweep = false;
        long m_min = -1, m_max = -1;
        unsigned long q_max = 0;
        long a_max = 12;
        int jobs = default_jobs();
        std::string cert;
    } vi;
    {
        auto* sub = app.add_subcommand("verify-ineq", "exact verification of a counting bound");
        sub->add_option("which", vi.which)
            ->required()
            ->check(CLI::IsMember({"23", "chain12", "233", "10"}));
        sub->add_option("--m", vi.m);
        sub->add_option("--k", vi.k);
        sub->add_option("--n", vi.n);
        sub->add_option("--l", vi.l);
        sub->add_option("--a", vi.a);
        sub->add_option("--b", vi.b);
        sub->add_option("--q", vi.q);
        sub->add_flag("--sweep", vi.sweep, "run the whole parameter grid");
        sub->add_option("--m-min", vi.m_min, "sweep: smallest m");
        sub->add_option("--m-max", vi.m_max, "sweep: largest m");
        sub->add_option("--q-max", vi.q_max, "sweep: largest q");
        sub->add_option("--a-max", vi.a_max, "sweep (10): largest a");
        sub->add_option("--jobs", vi.jobs)->check(CLI::PositiveNumber);
        sub->add_option("--cert", vi.cert, "single check: write a JSON certificate here");
        sub->callback([&] {
            action = [&]() -> int {
                auto single = [&](const IneqReport& rep, const std::string& kind) -> int {
                    detail::print_ineq(out, rep);
                    if (!vi.cert.empty())
                        detail::write_json_file(vi.cert, ineq_certificate(kind, rep));
                    return rep.all_hold() ? 0 : 1;
                };
                if (!vi.sweep) {
                    if (vi.which == "23") {
                        if (vi.m < 0 || vi.q == 0) fail(errc::range, "need --m and --q");
                        return single(verify_size_bound(static_cast<int>(vi.m), vi.q), "23");
                    }
                    if (vi.which == "chain12") {
                        if (vi.m < 0 || vi.q == 0) fail(errc::range, "need --m and --q");
                        return single(verify_size_bound_chain(static_cast<int>(vi.m), vi.q),
                                      "chain12");
                    }
                    if (vi.which == "10") {
                        if (vi.a < 0 || vi.b < 0 || vi.q == 0)
                            fail(errc::range, "need --a, --b and --q");
                        return single(verify_power_bounds(vi.a, vi.b, vi.q), "10");
                    }
                    if (vi.m < 0 || vi.k < 0 || vi.n < 0 || vi.l < 0 || vi.q == 0)
                        fail(errc::range, "need --m, --k, --n, --l and --q");
                    return single(verify_singular_bound(static_cast<int>(vi.m),
                                                        static_cast<int>(vi.k),
                                                        static_cast<int>(vi.n),
                                                        static_cast<int>(vi.l), vi.q),
                                  "233");
                }
                // sweeps, deterministic aggregation in grid order
                struct Instance {
                    std::function<IneqReport()> run;
                    std::string name;
                };
                std::vector<Instance> grid;
                if (vi.which == "23") {
                    long mlo = vi.m_min < 0 ? 3 : vi.m_min;
                    long mhi = vi.m_max < 0 ? 10 : vi.m_max;
                    unsigned long qhi = vi.q_max == 0 ? 128 : vi.q_max;
                    for (long m = mlo; m <= mhi; ++m)
                        for (unsigned long q : prime_powers(m, qhi))
                            grid.push_back({[m, q] { return verify_size_bound(static_cast<int>(m), q); },
                                            "m=" + std::to_string(m) + " q=" + std::to_string(q)});
                } else if (vi.which == "chain12") {
                    long mlo = vi.m_min < 0 ? 4 : vi.m_min;
                    long mhi = vi.m_max < 0 ? 10 : vi.m_max;
                    unsigned long qhi = vi.q_max == 0 ? 128 : vi.q_max;
                    for (long m = mlo; m <= mhi; ++m)
                        for (unsigned long q : prime_powers(m, qhi))
                            grid.push_back(
                                {[m, q] { return verify_size_bound_chain(static_cast<int>(m), q); },
                                 "m=" + std::to_string(m) + " q=" + std::to_string(q)});
                } else if (vi.which == "10") {
                    unsigned long qhi = vi.q_max == 0 ? 8 : vi.q_max;
                    for (long a = 2; a <= vi.a_max; ++a)
                        for (long b = 1; b < a; ++b)
                            for (unsigned long q : prime_powers(2, qhi))
                                grid.push_back({[a, b, q] { return verify_power_bounds(a, b, q); },
                                                "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                                    " q=" + std::to_string(q)});
                } else { // 233
                    long mlo = vi.m_min < 0 ? 3 : vi.m_min;
                    long mhi = vi.m_max < 0 ? 8 : vi.m_max;
                    unsigned long qhi = vi.q_max == 0 ? 64 : vi.q_max;
                    for (long m = mlo; m <= mhi; ++m)
                        for (unsigned long q : prime_powers(m + 2, qhi))
                            for (int k = 0; k <= 2; ++k) {
                                int t = extremal_t(static_cast<int>(m), k, 2 * static_cast<int>(m) - 1);
                                int n = k == 0 ? 2 * static_cast<int>(m) - 1
                                               : std::max(1, static_cast<int>(m) - k);
                                int l = k == 0 ? 0 : t;
                                grid.push_back(
                                    {[m, k, n, l, q] {
                                         return verify_singular_bound(static_cast<int>(m), k, n, l, q);
                                     },
                                     "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                         " n=" + std::to_string(n) + " l=" + std::to_string(l) +
                                         " q=" + std::to_string(q)});
                            }
                }
                std::vector<char> okv(grid.size(), 0);
                parallel_all(grid.size(), vi.jobs, [&](std::size_t i) {
                    okv[i] = grid[i].run().all_hold() ? 1 : 0;
                    return true;
                });
                std::size_t failures = 0;
                for (std::size_t i = 0; i < grid.size(); ++i)
                    if (!okv[i]) {
                        ++failures;
                        out << "FAIL " << grid[i].name << '\n';
                    }
                out << "checked " << grid.size() << " instances: "
                    << (failures == 0 ? "all HOLD" : std::to_string(failures) + " FAILED") << '\n';
                return failures == 0 ? 0 : 1;
            };
        });
    }

    // search-max --q --n --m --min-tau [--target]
    struct {
        unsigned long q = 2;
        int n = 0, m = 0, min_tau = 1;
        long target = -1;
        std::size_t gate = 200;
        bool force = false;
        std::string output, cert;
    } sm;
    {
        auto* sub = app.add_subcommand(
            "search-max", "exhaustive search for maximum intersecting families");
        sub->add_option("--q", sm.q)->required();
        sub->add_option("--n", sm.n)->required();
        sub->add_option("--m", sm.m)->required();
        sub->add_option("--min-tau", sm.min_tau)->required();
        sub->add_option("--target", sm.target, "decision form: find size >= target or refute");
        sub->add_option("--gate", sm.gate, "largest admissible subspace count");
        sub->add_flag("--force", sm.force, "ignore the size gate");
        sub->add_option("-o,--output", sm.output, "write the witness family here");
        sub->add_option("--cert", sm.cert, "write a JSON certificate here");
        sub->callback([&] {
            action = [&]() -> int {
                SearchParams p;
                p.q = sm.q;
                p.n = sm.n;
                p.m = sm.m;
                p.min_tau = sm.min_tau;
                p.vertex_gate = sm.gate;
                p.force = sm.force;
                SearchCertificate cert;
                if (sm.target >= 0) {
                    p.target = static_cast<std::size_t>(sm.target);
                    cert = search_family_exists(p);
                    if (cert.found)
                        out << "exists: found size=" << cert.best_size << '\n';
                    else
                        out << "exists: none (search space exhausted)\n";
                } else {
                    cert = search_max_family(p);
                    out << "size=" << cert.best_size << " optima=" << cert.optima.size()
                        << " optimal=" << (cert.optimal ? "yes" : "no") << " nodes=" << cert.nodes
                        << '\n';
                }
                std::optional<std::string> wit_path;
                if (!sm.output.empty() && cert.witness) {
                    write_family_file(sm.output, *cert.witness);
                    wit_path = sm.output;
                    out << "witness written to " << sm.output << '\n';
                }
                if (!sm.cert.empty())
                    detail::write_json_file(sm.cert, search_certificate(cert, wit_path));
                return 0;
            };
        });
    }

    // structure-check <family-file>
    struct {
        std::string file;
    } sc;
    {
        auto* sub = app.add_subcommand(
            "structure-check", "does the family equal the full layer of its span?");
        sub->add_option("family-file", sc.file)->required();
        sub->callback([&] {
            action = [&]() -> int {
                LoadedFamily lf = read_family_file(sc.file);
                bool complete = is_span_complete(lf.family, lf.sing);
                out << (complete ? "complete\n" : "incomplete\n");
                return complete ? 0 : 1;
            };
        });
    }

    // selftest [--quick]
    struct {
        bool quick = false;
        int jobs = default_jobs();
    } st;
    {
        auto* sub = app.add_subcommand("selftest", "run the invariant suite at tiny parameters");
        sub->add_flag("--quick", st.quick);
        sub->add_option("--jobs", st.jobs)->check(CLI::PositiveNumber);
        sub->callback([&] {
            action = [&]() -> int { return run_selftest(out, st.quick, st.jobs) ? 0 : 1; };
        });
    }

    try {
        std::vector<const char*> argv;
        argv.push_back("qcover");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (!action) {
        err << app.help();
        return 2;
    }
    try {
        return action();
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == errc::size_gate ? 3 : 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace qcover
