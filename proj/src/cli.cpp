#include "trirec/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "trirec/error.hpp"
#include "trirec/fast_eval.hpp"
#include "trirec/identities.hpp"
#include "trirec/instrument.hpp"
#include "trirec/roots.hpp"
#include "trirec/series.hpp"
#include "trirec/sums.hpp"

namespace trirec {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational arg_rational(const std::string& text, const std::string& what) {
    try {
        return Rational::parse(text);
    } catch (const DomainError& e) {
        throw UsageError(what + ": cannot read '" + text + "' as a rational");
    }
}

struct ParamOptions {
    std::string preset;
    std::vector<std::string> params;
    std::vector<std::string> abc;
    std::vector<std::string> rst;

    void attach(CLI::App* sub) {
        auto* p = sub->add_option("--preset", preset,
                                  "tribonacci, tribonacci-lucas, padovan, perrin, generalized-tribonacci, "
                                  "generalized-padovan, u, v or z");
        auto* q = sub->add_option("--params", params, "a b c r s t (integers or p/q)")->expected(6);
        p->excludes(q);
        sub->add_option("--abc", abc, "initial terms for the generalized presets")->expected(3)->needs(p);
        sub->add_option("--rst", rst, "recurrence coefficients for the u, v, z presets")->expected(3)->needs(p);
    }

    RationalParams resolve() const {
        if (!params.empty()) {
            std::array<Rational, 6> x;
            static constexpr std::array<const char*, 6> names{"a", "b", "c", "r", "s", "t"};
            for (std::size_t i = 0; i < 6; ++i) x[i] = arg_rational(params[i], std::string("--params ") + names[i]);
            return make_rational_params(x[0], x[1], x[2], x[3], x[4], x[5]);
        }
        if (preset.empty()) throw UsageError("one of --preset or --params is required");
        const auto kind = parse_preset_kind(preset);
        if (!kind) throw UsageError("unknown preset '" + preset + "'");
        Preset row{*kind};
        const bool generalized =
            *kind == PresetKind::generalized_tribonacci || *kind == PresetKind::generalized_padovan;
        const bool basis = *kind == PresetKind::u || *kind == PresetKind::v || *kind == PresetKind::z;
        if (!abc.empty()) {
            if (!generalized) throw UsageError("--abc applies only to the generalized presets");
            row.a = arg_rational(abc[0], "--abc");
            row.b = arg_rational(abc[1], "--abc");
            row.c = arg_rational(abc[2], "--abc");
        }
        if (!rst.empty()) {
            if (!basis) throw UsageError("--rst applies only to the u, v, z presets");
            row.r = arg_rational(rst[0], "--rst");
            row.s = arg_rational(rst[1], "--rst");
            row.t = arg_rational(rst[2], "--rst");
        }
        return preset_params(row);
    }
};

std::optional<ModRing> modular_ring(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("--mod expects a prime, got '" + text + "'");
    }
    try {
        return ModRing(std::stoull(text));
    } catch (const std::out_of_range&) {
        throw UsageError("--mod value out of range");
    } catch (const DomainError& e) {
        throw UsageError(std::string("--mod: ") + e.what());
    }
}

json params_json(const RationalParams& p) {
    return {{"a", p.a.to_string()}, {"b", p.b.to_string()}, {"c", p.c.to_string()},
            {"r", p.r.to_string()}, {"s", p.s.to_string()}, {"t", p.t.to_string()}};
}

template <RingElement T>
T evaluate(const SequenceParams<T>& p, long n, const std::string& method) {
    if (method == "iter") return term_iter(p, n);
    if (method == "matrix") return term_matrix(p, n);
    return term_fast(p, n);
}

struct TermRow {
    long n;
    std::string method;
    std::string value;
    std::uint64_t multiplications;
    double seconds;
};

TermRow timed_term(const RationalParams& p, const std::optional<ModRing>& ring, long n, const std::string& method) {
    const instrument::MultiplicationCounter counter;
    const auto start = std::chrono::steady_clock::now();
    std::string value = ring ? evaluate(to_mod_params(p, *ring), n, method).to_string()
                             : evaluate(p, n, method).to_string();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {n, method, std::move(value), counter.elapsed(), seconds};
}

json modulus_json(const std::optional<ModRing>& ring) {
    return ring ? json(ring->modulus()) : json(nullptr);
}

struct Cli {
    CLI::App app{"Exact evaluation, sums and identity checks for w_n = r w_{n-1} + s w_{n-2} + t w_{n-3}", "trirec"};
    std::ostream& out;

    ParamOptions term_params, table_params, sum_params, bench_params, roots_params;

    // term
    long term_n = 0;
    std::string term_method = "fast";
    std::string term_mod;
    bool term_json = false;

    // table
    long table_from = 0, table_to = 10;
    std::string table_mod;
    bool table_json = false, table_csv = false;

    // sum
    long sum_n = 0, sum_m = 1, sum_k = 0;
    std::string sum_h = "1";
    std::string sum_kind = "w";
    std::string sum_method = "closed";
    bool sum_gf = false;
    std::size_t sum_order = 10;
    bool sum_json = false;

    // check
    std::string check_identity = "all";
    long check_trials = 50;
    std::uint64_t check_seed = 42;
    unsigned check_threads = 0;
    bool check_json = false, check_list = false;

    // bench
    std::vector<long> bench_indices{1000};
    std::vector<std::string> bench_methods{"iter", "fast", "matrix"};
    std::string bench_mod;
    bool bench_force = false, bench_json = false, bench_csv = false;

    // roots
    long roots_n = 6;
    bool roots_json = false;

    CLI::App *term, *table, *sum, *check, *bench, *roots;

    explicit Cli(std::ostream& o) : out(o) {
        app.require_subcommand(1);
        const auto methods = CLI::IsMember({"iter", "fast", "matrix"});

        term = app.add_subcommand("term", "one term w_n");
        term_params.attach(term);
        term->add_option("-n", term_n, "index (may be negative)")->required();
        term->add_option("--method", term_method, "iter, fast or matrix")->check(methods);
        term->add_option("--mod", term_mod, "evaluate in Z/pZ for a prime p");
        term->add_flag("--json", term_json);

        table = app.add_subcommand("table", "terms w_from..w_to");
        table_params.attach(table);
        table->add_option("--from", table_from);
        table->add_option("--to", table_to);
        table->add_option("--mod", table_mod, "evaluate in Z/pZ for a prime p");
        table->add_flag("--json", table_json)->excludes(table->add_flag("--csv", table_csv));

        sum = app.add_subcommand("sum", "sum_{j=0..k} x_{n+jm} h^j");
        sum->set_help_flag("--help", "Print this help message and exit");
        sum_params.attach(sum);
        sum->add_option("--n", sum_n);
        sum->add_option("--m", sum_m);
        sum->add_option("--k", sum_k)->required();
        sum->add_option("--h", sum_h, "rational weight, default 1");
        sum->add_option("--kind", sum_kind, "w, v2 (squares of v) or uv (u times v)")
            ->check(CLI::IsMember({"w", "v2", "v-squares", "uv"}));
        sum->add_option("--method", sum_method, "closed, brute or both")
            ->check(CLI::IsMember({"closed", "brute", "both"}));
        sum->add_flag("--gf", sum_gf, "also print the generating function and its expansion");
        sum->add_option("--order", sum_order, "expansion order for --gf");
        sum->add_flag("--json", sum_json);

        check = app.add_subcommand("check", "randomized exact identity suite");
        check->add_option("--identity", check_identity, "identity id or 'all'");
        check->add_option("--trials", check_trials)->check(CLI::NonNegativeNumber);
        check->add_option("--seed", check_seed);
        check->add_option("--threads", check_threads, "worker threads, 0 for all cores");
        check->add_flag("--list", check_list, "list registered identities");
        check->add_flag("--json", check_json);

        bench = app.add_subcommand("bench", "multiplication counts and timings");
        bench_params.attach(bench);
        bench->add_option("--indices", bench_indices)->expected(1, -1);
        bench->add_option("--methods", bench_methods)->expected(1, -1)->check(methods);
        bench->add_option("--mod", bench_mod, "evaluate in Z/pZ for a prime p");
        bench->add_flag("--force", bench_force, "allow exact arithmetic beyond the index guard");
        bench->add_flag("--json", bench_json)->excludes(bench->add_flag("--csv", bench_csv));

        roots = app.add_subcommand("roots", "characteristic roots and floating diagnostics");
        roots_params.attach(roots);
        roots->add_option("-n", roots_n, "index for the diagnostics");
        roots->add_flag("--json", roots_json);
    }

    void dispatch() {
        if (term->parsed()) return run_term();
        if (table->parsed()) return run_table();
        if (sum->parsed()) return run_sum();
        if (check->parsed()) return run_check();
        if (bench->parsed()) return run_bench();
        run_roots();
    }

    void run_term() {
        const auto p = term_params.resolve();
        const auto ring = modular_ring(term_mod);
        const TermRow row = timed_term(p, ring, term_n, term_method);
        if (term_json) {
            out << json{{"params", params_json(p)},       {"n", row.n},
                        {"method", row.method},           {"modulus", modulus_json(ring)},
                        {"value", row.value},             {"multiplications", row.multiplications}}
                       .dump(2)
                << '\n';
        } else {
            out << row.value << '\n';
        }
    }

    void run_table() {
        const auto p = table_params.resolve();
        const auto ring = modular_ring(table_mod);
        std::vector<std::string> values;
        if (ring) {
            for (const auto& x : term_range(to_mod_params(p, *ring), table_from, table_to)) values.push_back(x.to_string());
        } else {
            for (const auto& x : term_range(p, table_from, table_to)) values.push_back(x.to_string());
        }
        if (table_json) {
            json terms = json::array();
            for (std::size_t i = 0; i < values.size(); ++i) {
                terms.push_back({{"n", table_from + static_cast<long>(i)}, {"value", values[i]}});
            }
            out << json{{"params", params_json(p)}, {"modulus", modulus_json(ring)}, {"terms", terms}}.dump(2) << '\n';
            return;
        }
        if (table_csv) out << "n,value\n";
        for (std::size_t i = 0; i < values.size(); ++i) {
            out << table_from + static_cast<long>(i) << (table_csv ? "," : " ") << values[i] << '\n';
        }
    }

    void run_sum() {
        const auto p = sum_params.resolve();
        const Rational h = arg_rational(sum_h, "--h");
        const SummandKind kind = sum_kind == "v2" || sum_kind == "v-squares" ? SummandKind::v_squares
                                 : sum_kind == "uv" ? SummandKind::uv
                                                    : SummandKind::w;
        std::optional<SumResult> closed;
        std::optional<Rational> brute;
        if (sum_method != "brute") {
            switch (kind) {
                case SummandKind::w: closed = sum_ap_closed(p, sum_n, sum_m, sum_k, h); break;
                case SummandKind::v_squares: closed = sum_v_squares(p.r, p.s, p.t, sum_n, sum_m, sum_k, h); break;
                case SummandKind::uv: closed = sum_uv(p.r, p.s, p.t, sum_n, sum_m, sum_k, h); break;
            }
        }
        if (sum_method != "closed") {
            switch (kind) {
                case SummandKind::w: brute = sum_brute(p, sum_n, sum_m, sum_k, h); break;
                case SummandKind::v_squares: brute = sum_brute_v_squares(p.r, p.s, p.t, sum_n, sum_m, sum_k, h); break;
                case SummandKind::uv: brute = sum_brute_uv(p.r, p.s, p.t, sum_n, sum_m, sum_k, h); break;
            }
        }
        std::optional<RationalFunction> gf;
        std::vector<std::string> expansion;
        if (sum_gf) {
            switch (kind) {
                case SummandKind::w: gf = gf_ap(p, sum_n, sum_m); break;
                case SummandKind::v_squares: gf = gf_v_squares(p.r, p.s, p.t, sum_n, sum_m); break;
                case SummandKind::uv: gf = gf_uv(p.r, p.s, p.t, sum_n, sum_m); break;
            }
            const auto e = gf->expand(sum_order);
            for (const auto& c : e.coefficients()) expansion.push_back(c.to_string());
        }

        if (sum_json) {
            json doc{{"params", params_json(p)}, {"kind", summand_kind_name(kind)},
                     {"n", sum_n}, {"m", sum_m}, {"k", sum_k}, {"h", h.to_string()}};
            if (closed) {
                doc["closed"] = {{"value", closed->value.to_string()},
                                 {"method", sum_method_name(closed->method)},
                                 {"singular", closed->singular}};
            }
            if (brute) doc["brute"] = brute->to_string();
            if (closed && brute) doc["agree"] = closed->value == *brute;
            if (gf) {
                json num = json::array(), den = json::array();
                for (const auto& c : gf->numerator()) num.push_back(c.to_string());
                for (const auto& c : gf->denominator()) den.push_back(c.to_string());
                doc["gf"] = {{"numerator", num}, {"denominator", den}, {"expansion", expansion}};
            }
            out << doc.dump(2) << '\n';
            return;
        }
        if (closed && !brute) {
            out << closed->value.to_string();
            if (closed->singular) out << "  (closed-form denominator is zero; summed directly)";
            out << '\n';
        } else if (brute && !closed) {
            out << brute->to_string() << '\n';
        } else {
            out << "closed: " << closed->value.to_string() << " [" << sum_method_name(closed->method) << "]\n"
                << "brute:  " << brute->to_string() << '\n'
                << "agree:  " << (closed->value == *brute ? "yes" : "NO") << '\n';
        }
        if (gf) {
            out << "gf: " << gf->to_string() << '\n' << "expansion:";
            for (const auto& c : expansion) out << ' ' << c;
            out << '\n';
        }
    }

    void run_check() {
        if (check_list) {
            const auto list = list_identities();
            if (check_json) {
                json arr = json::array();
                for (const auto& s : list) {
                    arr.push_back({{"id", s.id}, {"signature", s.signature}, {"statement", s.citation},
                                   {"expected_fail", s.expected_fail}});
                }
                out << arr.dump(2) << '\n';
            } else {
                for (const auto& s : list) {
                    out << s.id << (s.expected_fail ? " [expected-fail]" : "") << "  (" << s.signature << ")  "
                        << s.citation << '\n';
                }
            }
            return;
        }
        SuiteConfig cfg;
        cfg.seed = check_seed;
        cfg.trials = check_trials;
        cfg.threads = check_threads;
        if (check_identity != "all") cfg.ids = {check_identity};
        const Report rep = run_suite(cfg);

        if (check_json) {
            json results = json::array();
            for (const auto& r : rep.results) {
                json failures = json::array();
                for (const auto& v : r.failures) {
                    json bindings = json::object();
                    for (const auto& [k, x] : v.bindings.rendered()) bindings[k] = x;
                    json f{{"bindings", bindings}, {"lhs", v.lhs.to_string()}, {"rhs", v.rhs.to_string()}};
                    if (!v.error.empty()) f["error"] = v.error;
                    failures.push_back(std::move(f));
                }
                results.push_back({{"id", r.id},
                                   {"expected_fail", r.expected_fail},
                                   {"trials", r.trials},
                                   {"passes", r.passes},
                                   {"fails", r.fails},
                                   {"skips", r.skips},
                                   {"failures", failures}});
            }
            const json config{{"trials", cfg.trials},
                              {"numerator_bound", cfg.numerator_bound},
                              {"denominator_bound", cfg.denominator_bound},
                              {"n_range", {cfg.n_lo, cfg.n_hi}},
                              {"m_range", {cfg.m_lo, cfg.m_hi}},
                              {"k_range", {cfg.k_lo, cfg.k_hi}},
                              {"max_resamples", kMaxResamples}};
            out << json{{"seed", cfg.seed}, {"config", config}, {"results", results}}.dump(2) << '\n';
        } else {
            for (const auto& r : rep.results) {
                out << r.id << ": " << r.passes << " pass, " << r.fails << " fail, " << r.skips << " skip";
                if (r.expected_fail) out << " (expected-fail)";
                out << '\n';
            }
            out << rep.results.size() << " identities, " << rep.unexpected_failures() << " unexpected failures\n";
        }
        if (rep.unexpected_failures() != 0) {
            throw UnexpectedFailures(rep.unexpected_failures());
        }
    }

    void run_bench() {
        const auto p = bench_params.resolve();
        const auto ring = modular_ring(bench_mod);
        if (!ring && !bench_force) {
            for (long n : bench_indices) {
                if (n > kBignumGuardIndex || n < -kBignumGuardIndex) {
                    fail(ErrorCode::BignumGuard, "index " + std::to_string(n) +
                                                     " in exact arithmetic; pass --mod p or --force");
                }
            }
        }
        std::vector<TermRow> rows;
        for (long n : bench_indices) {
            for (const auto& m : bench_methods) rows.push_back(timed_term(p, ring, n, m));
        }
        if (bench_json) {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"index", r.n}, {"method", r.method}, {"multiplications", r.multiplications},
                               {"seconds", r.seconds}, {"value", r.value}});
            }
            out << json{{"params", params_json(p)}, {"modulus", modulus_json(ring)}, {"rows", arr}}.dump(2) << '\n';
            return;
        }
        out << (bench_csv ? "index,method,multiplications,seconds,value\n" : "");
        for (const auto& r : rows) {
            if (bench_csv) {
                out << r.n << ',' << r.method << ',' << r.multiplications << ',' << r.seconds << ',' << r.value << '\n';
            } else {
                out << r.n << "  " << r.method << "  mults=" << r.multiplications << "  " << r.seconds * 1e3
                    << " ms  " << (r.value.size() > 40 ? r.value.substr(0, 37) + "..." : r.value) << '\n';
            }
        }
    }

    void run_roots() {
        const auto p = roots_params.resolve();
        const CubicRoots cr = solve_cubic(p.r, p.s, p.t);
        const auto vieta = vieta_residuals(cr, p.r, p.s, p.t);
        const auto k = binet_coefficients(p, cr);
        const auto diags = float_diagnostics(p, roots_n);
        const auto cjson = [](const Complex64& z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
        if (roots_json) {
            json roots_arr = json::array();
            for (const auto& z : cr.roots) roots_arr.push_back(cjson(z));
            json diag_arr = json::array();
            for (const auto& d : diags) {
                diag_arr.push_back({{"name", d.name}, {"residual", d.residual}, {"scale", d.scale}, {"ok", d.ok()}});
            }
            out << json{{"params", params_json(p)},
                        {"roots", roots_arr},
                        {"discriminant", cr.discriminant},
                        {"min_separation", cr.min_separation},
                        {"vieta", {{"sum", vieta.sum}, {"pairs", vieta.pairs}, {"product", vieta.product},
                                   {"scale", vieta.scale}}},
                        {"binet", {cjson(k.A), cjson(k.B), cjson(k.C)}},
                        {"n", roots_n},
                        {"diagnostics", diag_arr}}
                       .dump(2)
                << '\n';
            return;
        }
        const auto fmt = [](const Complex64& z) {
            std::ostringstream os;
            os.precision(12);
            os << z.real();
            if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
            return os.str();
        };
        out << "roots:";
        for (const auto& z : cr.roots) out << "  " << fmt(z);
        out << "\ndiscriminant: " << cr.discriminant << "\nvieta residual: " << vieta.worst()
            << "\nbinet: A = " << fmt(k.A) << ", B = " << fmt(k.B) << ", C = " << fmt(k.C) << "\ndiagnostics at n = "
            << roots_n << ":\n";
        for (const auto& d : diags) {
            out << "  " << d.name << ": " << d.residual << (d.ok() ? "  ok" : "  FAIL") << '\n';
        }
    }

    struct UnexpectedFailures {
        long count;
    };
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Cli cli(out);
    std::vector<const char*> argv{"trirec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        cli.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = cli.app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        cli.dispatch();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Cli::UnexpectedFailures& f) {
        err << "error: " << f.count << " identity checks failed\n";
        return 1;
    }
    return 0;
}

}  // namespace trirec
