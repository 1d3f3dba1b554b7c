#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdiv/fdiv.hpp"
#include "fdiv/matrix_suites.hpp"
#include "fdiv/report.hpp"

namespace {

using fdv::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

std::string sig12(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Fatal {
    int code;
    std::string message;
};

std::vector<double> parse_comma_list(const std::string& s, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument("trailing junk");
            out.push_back(v);
        } catch (const std::exception&) {
            throw Fatal{kExitUsage, "malformed number in --" + field + ": '" + item + "'"};
        }
    }
    if (out.empty()) throw Fatal{kExitUsage, "--" + field + " is empty"};
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Fatal{kExitUsage, "cannot open input file: " + path};
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Fatal{kExitUsage, std::string("input file is not valid JSON: ") + e.what()};
    }
}

std::vector<double> json_number_array(const json& j, const std::string& field) {
    if (!j.is_array()) throw Fatal{kExitUsage, "field '" + field + "' must be an array of numbers"};
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw Fatal{kExitUsage, "field '" + field + "' must be an array of numbers"};
        out.push_back(v.get<double>());
    }
    if (out.empty()) throw Fatal{kExitUsage, "field '" + field + "' is empty"};
    return out;
}

// Single-column CSV: one number per line, optional header skipped if non-numeric.
std::vector<double> load_csv_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Fatal{kExitUsage, "cannot open input file: " + path};
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(std::stod(line));
        } catch (const std::exception&) {
            if (first) { first = false; continue; }
            throw Fatal{kExitUsage, "malformed number in " + path + ": '" + line + "'"};
        }
        first = false;
    }
    if (out.empty()) throw Fatal{kExitUsage, "no numbers found in " + path};
    return out;
}

fdv::Interval parse_interval(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw Fatal{kExitUsage, "--interval must have the form lo:hi, got '" + s + "'"};
    try {
        std::string his = s.substr(colon + 1);
        double lo = std::stod(s.substr(0, colon));
        double hi = (his == "inf") ? fdv::kPlusInf : std::stod(his);
        if (!(hi > lo)) throw std::invalid_argument("empty");
        return {lo, hi};
    } catch (const Fatal&) {
        throw;
    } catch (const std::exception&) {
        throw Fatal{kExitUsage, "--interval must have the form lo:hi with lo < hi, got '" + s + "'"};
    }
}

std::optional<fdv::extended_real> parse_limit(const std::string& s) {
    if (s.empty()) return {};
    if (s == "inf" || s == "+inf") return fdv::kPlusInf;
    if (s == "-inf") return fdv::kMinusInf;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw Fatal{kExitUsage, "limit override must be a number or inf, got '" + s + "'"};
    }
}

struct CoreSpec {
    std::string name;
    std::optional<double> param;
    std::string expr;
    std::string limit0;
    std::string slope_inf;
    fdv::Interval domain{0.0, fdv::kPlusInf};
};

void render_parse_error(const fdv::expr::ParseError& e, const std::string& src) {
    std::cerr << "error: " << e.what() << "\n  " << src << "\n  " << std::string(e.offset, ' ')
              << "^\n";
}

fdv::CoreFunction resolve_core(const CoreSpec& spec) {
    if (!spec.name.empty() && !spec.expr.empty())
        throw Fatal{kExitUsage, "--name and --f conflict; give exactly one"};
    if (!spec.name.empty()) return fdv::catalog_lookup(spec.name, spec.param);
    if (!spec.expr.empty()) {
        auto ast = fdv::expr::parse(spec.expr); // ParseError propagates to main
        return fdv::expr::compile(ast, spec.domain, parse_limit(spec.limit0),
                                   parse_limit(spec.slope_inf));
    }
    throw Fatal{kExitUsage, "a core function is required: give --name or --f"};
}

void emit(const json& payload, const std::string& format) {
    if (format == "json") {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        // flat projection of the JSON payload: dotted key, value
        std::cout << "key,value\n";
        std::function<void(const json&, const std::string&)> walk = [&](const json& j,
                                                                        const std::string& prefix) {
            if (j.is_object()) {
                for (auto it = j.begin(); it != j.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (j.is_array()) {
                std::size_t i = 0;
                for (const auto& v : j) walk(v, prefix + "[" + std::to_string(i++) + "]");
            } else {
                std::cout << prefix << "," << j.dump() << "\n";
            }
        };
        walk(payload, "");
        return;
    }
    throw Fatal{kExitUsage, "unknown format '" + format + "'"};
}

void print_text_header(std::uint64_t seed, std::uint64_t trials, double tol) {
    std::cout << "fdiv " << fdv::kToolVersion << " seed=" << seed << " trials=" << trials
              << " tolerance=" << sig12(tol) << "\n";
}

// ---- div ----------------------------------------------------------------

int cmd_div(const CoreSpec& core_spec, const std::string& p_inline, const std::string& q_inline,
            const std::string& input_path, std::optional<double> alpha, const std::string& format) {
    std::vector<double> pv, qv;
    if (!input_path.empty()) {
        if (!p_inline.empty() || !q_inline.empty())
            throw Fatal{kExitUsage, "--input conflicts with inline --p/--q; give one or the other"};
        if (input_path.size() > 4 && input_path.substr(input_path.size() - 4) == ".csv") {
            throw Fatal{kExitUsage, "CSV input carries a single tuple; use --p-file/--q-file"};
        }
        json j = load_json_file(input_path);
        if (!j.contains("p")) throw Fatal{kExitUsage, "input file is missing field 'p'"};
        if (!j.contains("q")) throw Fatal{kExitUsage, "input file is missing field 'q'"};
        pv = json_number_array(j["p"], "p");
        qv = json_number_array(j["q"], "q");
    } else {
        if (p_inline.empty() || q_inline.empty())
            throw Fatal{kExitUsage, "both --p and --q are required (or --input)"};
        pv = parse_comma_list(p_inline, "p");
        qv = parse_comma_list(q_inline, "q");
    }
    if (pv.size() != qv.size())
        throw Fatal{kExitUsage, "p and q must have equal length (got " + std::to_string(pv.size()) +
                                    " and " + std::to_string(qv.size()) + ")"};

    fdv::PositiveTuple p{pv}, q{qv};
    fdv::DivergenceValue v;
    if (!core_spec.name.empty() && core_spec.expr.empty() &&
        (core_spec.name == "renyi_rho" || core_spec.name == "renyi_R")) {
        if (!alpha) throw Fatal{kExitUsage, "--alpha is required for " + core_spec.name};
        v = fdv::named_divergence(core_spec.name, p, q, alpha);
    } else {
        fdv::CoreFunction f = resolve_core(core_spec);
        v = fdv::csiszar_divergence(f, p, q);
    }

    if (format == "text") {
        std::string line = sig12(v.value);
        std::vector<std::string> flags;
        if (v.flags.used_zero_over_zero) flags.push_back("0/0");
        if (v.flags.used_p_over_zero) flags.push_back("p/0");
        if (!flags.empty()) {
            line += " (convention: " + flags[0];
            for (std::size_t i = 1; i < flags.size(); ++i) line += ", " + flags[i];
            line += ")";
        }
        std::cout << line << "\n";
    } else {
        json out = fdv::to_json(v);
        out["tool_version"] = fdv::kToolVersion;
        emit(out, format);
    }
    return kExitOk;
}

// ---- classify -----------------------------------------------------------

int cmd_classify(const CoreSpec& core_spec, fdv::Interval interval, std::uint64_t trials,
                 std::uint64_t seed, const std::string& format) {
    if (trials < 1) throw Fatal{kExitUsage, "--trials must be >= 1"};
    fdv::CoreFunction f = resolve_core(core_spec);
    fdv::Interval eff = interval;
    if (eff.lo < f.domain().lo) eff.lo = f.domain().lo;
    if (eff.hi > f.domain().hi) eff.hi = f.domain().hi;
    if (!(eff.hi > eff.lo))
        throw Fatal{kExitDomain, "interval does not intersect the core function's domain"};
    auto reports = fdv::classify(f, eff, trials, seed);

    if (format == "text") {
        print_text_header(seed, trials, fdv::kDefaultRelTol);
        std::cout << "core: " << f.name() << "  interval: [" << sig12(eff.lo) << ", "
                  << sig12(eff.hi) << "]\n";
        for (const auto& r : reports) {
            std::cout << r.pair.str() << ": " << fdv::verdict_name(r.verdict);
            if (r.witness)
                std::cout << "  witness x=" << sig12(r.witness->x) << " y=" << sig12(r.witness->y)
                          << " alpha=" << sig12(r.witness->alpha) << " lhs=" << sig12(r.witness->lhs)
                          << " rhs=" << sig12(r.witness->rhs);
            std::cout << "\n";
        }
    } else {
        json out;
        out["header"] = fdv::report_header(seed, trials, fdv::kDefaultRelTol);
        out["core"] = f.name();
        out["interval"] = {eff.lo, eff.hi};
        json verdicts = json::array();
        for (const auto& r : reports) verdicts.push_back(fdv::to_json(r));
        out["verdicts"] = verdicts;
        emit(out, format);
    }
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

json counterexample_json() {
    auto c = fdv::fixed_counterexample();
    return json{{"suite", "counterexample"},
                {"lhs", c.lhs},
                {"rhs", c.rhs},
                {"violated_as_expected", c.violated}};
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               unsigned jobs, const std::string& format) {
    if (suite == "counterexample") {
        auto c = fdv::fixed_counterexample();
        if (format == "text") {
            print_text_header(seed, 1, fdv::kDefaultRelTol);
            std::cout << "counterexample: lhs=" << sig12(c.lhs) << " rhs=" << sig12(c.rhs) << " "
                      << (c.violated ? "lhs > rhs (expected violation found): PASS"
                                     : "expected violation missing: FAIL")
                      << "\n";
        } else {
            json out;
            out["header"] = fdv::report_header(seed, 1, fdv::kDefaultRelTol);
            out["result"] = counterexample_json();
            emit(out, format);
        }
        return c.violated ? kExitOk : kExitDomain;
    }

    if (trials < 1) throw Fatal{kExitUsage, "--trials must be >= 1"};

    using Runner = std::function<fdv::SuiteReport()>;
    std::vector<std::pair<std::string, Runner>> runners;
    auto add = [&](const std::string& name) {
        if (name == "thm23")
            runners.push_back({name, [=] {
                                   return fdv::randomized_suite_thm23(fdv::default_thm23_pairings(),
                                                                       trials, seed);
                               }});
        else if (name == "thm24")
            runners.push_back({name, [=] {
                                   return fdv::randomized_suite_thm24(fdv::default_thm24_pairings(),
                                                                       trials, seed);
                               }});
        else if (name == "prop31")
            runners.push_back({name, [=] { return fdv::run_prop31_suite(trials, seed); }});
        else if (name == "thm32")
            runners.push_back({name, [=] { return fdv::run_thm32_suite(trials, seed); }});
        else
            throw Fatal{kExitUsage, "unknown suite '" + name + "'"};
    };
    bool counterexample_too = false;
    if (suite == "all") {
        add("thm23");
        add("thm24");
        add("prop31");
        add("thm32");
        counterexample_too = true;
    } else {
        add(suite);
    }

    std::vector<fdv::SuiteReport> results(runners.size());
    if (jobs > 1 && runners.size() > 1) {
        std::vector<std::future<fdv::SuiteReport>> futs;
        futs.reserve(runners.size());
        for (auto& [name, run] : runners) futs.push_back(std::async(std::launch::async, run));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < runners.size(); ++i) results[i] = runners[i].second();
    }

    std::size_t total_violations = 0;
    for (const auto& r : results) total_violations += r.violations.size();
    bool ce_ok = true;
    std::optional<fdv::CounterexampleResult> ce;
    if (counterexample_too) {
        ce = fdv::fixed_counterexample();
        ce_ok = ce->violated;
    }

    if (format == "text") {
        print_text_header(seed, trials, fdv::kDefaultRelTol);
        for (std::size_t i = 0; i < runners.size(); ++i) {
            const auto& r = results[i];
            std::cout << runners[i].first << ": " << r.checks_run << " checks, "
                      << r.violations.size() << " violations\n";
            for (const auto& v : r.violations)
                std::cout << "  " << v.where << " lhs=" << sig12(v.lhs) << " rhs=" << sig12(v.rhs)
                          << "\n";
        }
        if (ce)
            std::cout << "counterexample: "
                      << (ce->violated ? "expected violation found" : "expected violation MISSING")
                      << "\n";
        std::cout << (total_violations == 0 && ce_ok ? "PASS" : "FAIL") << "\n";
    } else {
        json out;
        out["header"] = fdv::report_header(seed, trials, fdv::kDefaultRelTol);
        json suites = json::object();
        for (std::size_t i = 0; i < runners.size(); ++i)
            suites[runners[i].first] = fdv::to_json(results[i]);
        if (ce) suites["counterexample"] = counterexample_json();
        out["suites"] = suites;
        out["total_violations"] = total_violations;
        out["pass"] = total_violations == 0 && ce_ok;
        emit(out, format);
    }
    return (total_violations == 0 && ce_ok) ? kExitOk : kExitDomain;
}

// ---- matrix ----------------------------------------------------------------

fdv::SymMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw Fatal{kExitUsage, "field 'A' must be an array of arrays (dense row-major)"};
    std::size_t n = j.size();
    fdv::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw Fatal{kExitUsage, "field 'A' must be a square matrix"};
        for (std::size_t k = 0; k < n; ++k) {
            if (!j[i][k].is_number()) throw Fatal{kExitUsage, "field 'A' must contain numbers"};
            m(i, k) = j[i][k].get<double>();
        }
    }
    return fdv::SymMatrix(std::move(m));
}

int cmd_matrix(const CoreSpec& core_spec, const std::string& input_path, const std::string& op,
               const std::string& variant, const std::string& format) {
    if (input_path.empty()) throw Fatal{kExitUsage, "--input is required for matrix operations"};
    json j = load_json_file(input_path);
    if (!j.contains("A")) throw Fatal{kExitUsage, "input file is missing field 'A'"};
    fdv::SymMatrix a = matrix_from_json(j["A"]);

    if (op == "eigen") {
        auto sf = fdv::eigendecompose(a);
        if (format == "text") {
            std::cout << "eigenvalues:";
            for (double v : sf.eigenvalues) std::cout << " " << sig12(v);
            std::cout << "\n";
        } else {
            json out{{"tool_version", fdv::kToolVersion}, {"eigenvalues", sf.eigenvalues}};
            json clusters = json::array();
            for (const auto& c : sf.clusters)
                clusters.push_back(json{{"value", c.value}, {"multiplicity", c.multiplicity}});
            out["clusters"] = clusters;
            emit(out, format);
        }
        return kExitOk;
    }

    fdv::CoreFunction f = resolve_core(core_spec);

    if (op == "function") {
        fdv::SymMatrix fa = fdv::matrix_function(f, a);
        if (format == "text") {
            for (std::size_t i = 0; i < fa.dim(); ++i) {
                for (std::size_t k = 0; k < fa.dim(); ++k)
                    std::cout << (k ? " " : "") << sig12(fa(i, k));
                std::cout << "\n";
            }
        } else {
            json rows = json::array();
            for (std::size_t i = 0; i < fa.dim(); ++i) {
                json row = json::array();
                for (std::size_t k = 0; k < fa.dim(); ++k) row.push_back(fa(i, k));
                rows.push_back(row);
            }
            emit(json{{"tool_version", fdv::kToolVersion}, {"fA", rows}}, format);
        }
        return kExitOk;
    }

    if (op == "jensen") {
        if (!j.contains("eta")) throw Fatal{kExitUsage, "input file is missing field 'eta'"};
        auto etav = json_number_array(j["eta"], "eta");
        fdv::UnitVector eta = fdv::UnitVector::normalized(std::move(etav));
        fdv::MeanPair pair = fdv::mean_pair_from(variant);
        auto r = fdv::jensen_scalar_form(f, pair, a, eta);
        if (format == "text") {
            std::cout << variant << ": lhs=" << sig12(r.lhs) << " rhs=" << sig12(r.rhs) << " "
                      << (r.holds ? "holds" : "violated") << "\n";
        } else {
            emit(json{{"tool_version", fdv::kToolVersion},
                      {"variant", variant},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"holds", r.holds}},
                 format);
        }
        return kExitOk;
    }

    throw Fatal{kExitUsage, "unknown matrix op '" + op + "' (expected jensen, function, eigen)"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"f-divergence calculator and inequality verifier"};
    app.require_subcommand(1);

    CoreSpec core;
    std::string interval_str = "0.01:100";
    std::string format = "text";
    std::uint64_t trials = 10000, seed = 1;
    unsigned jobs = 1;
    double param = 0.0;
    bool has_param = false;

    auto add_core_flags = [&](CLI::App* sub) {
        sub->add_option("--name", core.name, "catalog core function name");
        sub->add_option("--param", param, "catalog parameter (power_r, exp_power)")
            ->each([&](const std::string&) { has_param = true; });
        sub->add_option("--f", core.expr, "core function expression in t");
        sub->add_option("--limit0", core.limit0, "override for lim f(t), t->0+ (number or inf)");
        sub->add_option("--slope-inf", core.slope_inf,
                        "override for lim f(t)/t, t->inf (number or inf)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: text, json, csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    // div
    std::string p_inline, q_inline, input_path;
    double alpha = 0.0;
    bool has_alpha = false;
    auto* div = app.add_subcommand("div", "compute a Csiszar f-divergence");
    add_core_flags(div);
    add_format(div);
    div->add_option("--p", p_inline, "first tuple, comma separated");
    div->add_option("--q", q_inline, "second tuple, comma separated");
    div->add_option("--input", input_path, "JSON file with fields p and q");
    div->add_option("--alpha", alpha, "order for renyi_rho / renyi_R")
        ->each([&](const std::string&) { has_alpha = true; });

    // classify
    auto* classify = app.add_subcommand("classify", "nine-pair MN-convexity verdict table");
    add_core_flags(classify);
    add_format(classify);
    classify->add_option("--interval", interval_str, "sampling interval lo:hi");
    classify->add_option("--trials", trials, "randomized trials per pair");
    classify->add_option("--seed", seed, "RNG seed");

    // verify
    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a randomized verification suite");
    verify->add_option("suite", suite, "thm23, thm24, prop31, thm32, counterexample, all")
        ->required();
    add_format(verify);
    verify->add_option("--trials", trials, "trials per pairing / instances per case");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--jobs", jobs, "parallel suite evaluation (verify all)");

    // matrix
    std::string op = "jensen", variant = "AA";
    auto* matrix = app.add_subcommand("matrix", "matrix Jensen forms and functional calculus");
    add_core_flags(matrix);
    add_format(matrix);
    matrix->add_option("--input", input_path, "JSON file with fields A (and eta for jensen)");
    matrix->add_option("--op", op, "jensen, function, eigen");
    matrix->add_option("--variant", variant, "mean pair for jensen, e.g. AA, AH, GG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (has_param) core.param = param;
    if (classify->parsed()) core.domain = parse_interval(interval_str);

    try {
        if (div->parsed())
            return cmd_div(core, p_inline, q_inline, input_path,
                           has_alpha ? std::optional<double>(alpha) : std::nullopt, format);
        if (classify->parsed())
            return cmd_classify(core, parse_interval(interval_str), trials, seed, format);
        if (verify->parsed()) return cmd_verify(suite, trials, seed, jobs, format);
        if (matrix->parsed()) return cmd_matrix(core, input_path, op, variant, format);
    } catch (const Fatal& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const fdv::expr::ParseError& e) {
        render_parse_error(e, core.expr);
        return kExitUsage;
    } catch (const fdv::UnknownCoreError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const fdv::EvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
