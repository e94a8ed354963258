#include "aterm/cli.hpp"

#include "aterm/errors.hpp"
#include "aterm/estimate.hpp"
#include "aterm/eval.hpp"
#include "aterm/formulas.hpp"
#include "aterm/oracles.hpp"
#include "aterm/parse.hpp"
#include "aterm/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace aterm::cli {

namespace {

using json = nlohmann::json;

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }
double us(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::micro>(d).count(); }

class UsageError : public Error {
public:
    using Error::Error;
};

Integer parse_integer(const std::string& s, const char* what, bool allow_negative = false) {
    std::size_t start = allow_negative && !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(), ::isdigit))
        throw UsageError(std::string(what) + ": not an integer: '" + s + "'");
    return Integer(s, 10);
}

Integer parse_positive(const std::string& s, const char* what) {
    Integer v = parse_integer(s, what);
    if (sgn(v) <= 0)
        throw UsageError(std::string(what) + " must be positive");
    return v;
}

Bindings parse_vars(const std::vector<std::string>& vars) {
    Bindings env;
    for (const auto& v : vars) {
        auto eq = v.find('=');
        if (eq == std::string::npos)
            throw UsageError("--var expects name=value, got '" + v + "'");
        std::string name = v.substr(0, eq);
        if (!is_identifier(name))
            throw UsageError("bad variable name '" + name + "'");
        env[name] = parse_integer(v.substr(eq + 1), "--var value", true);
    }
    return env;
}

json inputs_json(const sweep::Inputs& in) {
    json j = json::object();
    for (const auto& [k, v] : in)
        j[k] = v;
    return j;
}

std::string inputs_text(const sweep::Inputs& in) {
    std::string s;
    for (const auto& [k, v] : in)
        s += (s.empty() ? "" : " ") + k + "=" + v;
    return s;
}

std::string_view status_name(sweep::Status s) {
    switch (s) {
    case sweep::Status::pass: return "pass";
    case sweep::Status::mismatch: return "mismatch";
    case sweep::Status::budget: return "budget";
    case sweep::Status::excluded: return "excluded";
    }
    return "?";
}

// Shared option state. Each subcommand binds the fields it uses.
struct Options {
    std::string expr;
    std::vector<std::string> vars;
    std::optional<std::uint64_t> budget_bits;
    std::string strategy = "naive";
    bool stats = false;
    bool json = false;

    std::string a, b, n, base;
    std::string method;
    std::string mode = "hybrid";

    std::string suite;
    std::optional<std::uint64_t> min, max;
    bool large = false;
    bool strict = false;
    bool serial = false;
    std::string csv;

    std::string term_kind;
    std::vector<std::string> term_args;

    EvalBudget budget() const { return budget_bits ? EvalBudget(*budget_bits) : EvalBudget::from_env(); }
};

Strategy parse_strategy(const std::string& s) {
    if (s == "naive") return Strategy::naive;
    if (s == "rewrite") return Strategy::rewrite;
    throw UsageError("unknown strategy '" + s + "'");
}

int cmd_eval(const Options& o, std::ostream& out) {
    Term t = parse(o.expr);
    Bindings env = parse_vars(o.vars);
    auto r = evaluate(t, env, o.budget(), parse_strategy(o.strategy));
    if (o.json) {
        out << json{{"expr", o.expr},
                    {"result", r.value.get_str()},
                    {"peak_bits", r.stats.peak_bits},
                    {"elapsed_ms", ms(r.stats.elapsed)}}
                   .dump()
            << '\n';
        return ok;
    }
    out << r.value.get_str() << '\n';
    if (o.stats)
        out << "peak_bits " << r.stats.peak_bits << "\nmul_count " << r.stats.mul_count << "\npow_count "
            << r.stats.pow_count << "\ndiv_count " << r.stats.div_count << "\nelapsed_ms " << ms(r.stats.elapsed)
            << '\n';
    return ok;
}

int cmd_gcd(const Options& o, std::ostream& out) {
    Integer a = parse_positive(o.a, "a"), b = parse_positive(o.b, "b");
    auto method = parse_gcd_method(o.method.empty() ? "modmod" : o.method);
    if (!method)
        throw UsageError("unknown gcd method '" + o.method + "'");
    std::optional<Integer> base;
    if (!o.base.empty())
        base = parse_integer(o.base, "--base");
    auto r = gcd(a, b, *method, base, o.budget());
    if (o.json)
        out << json{{"a", a.get_str()},
                    {"b", b.get_str()},
                    {"method", to_string(*method)},
                    {"base", r.base.get_str()},
                    {"result", r.value.get_str()},
                    {"peak_bits", r.stats.peak_bits},
                    {"elapsed_ms", ms(r.stats.elapsed)}}
                   .dump()
            << '\n';
    else
        out << r.value.get_str() << '\n';
    return ok;
}

int cmd_isqrt(const Options& o, std::ostream& out, std::ostream& err) {
    Integer n = parse_integer(o.n, "n");
    std::string method = o.method.empty() ? "term" : o.method;
    if (method != "term" && method != "oracle")
        throw UsageError("isqrt --method is term or oracle");
    std::string route = method;
    Integer value;
    std::uint64_t peak = 0;
    if (method == "term" && (n < 3 || oracles::is_square(n))) {
        err << "note: the isqrt term covers non-square n >= 3; using the oracle\n";
        route = "oracle";
    }
    if (route == "term") {
        auto r = evaluate(build_isqrt_term(n), {}, o.budget());
        value = r.value;
        peak = r.stats.peak_bits;
    } else {
        value = oracles::isqrt(n);
    }
    if (o.json)
        out << json{{"n", n.get_str()}, {"method", route}, {"result", value.get_str()}, {"peak_bits", peak}}.dump()
            << '\n';
    else
        out << value.get_str() << '\n';
    return ok;
}

int cmd_factorial(const Options& o, std::ostream& out, std::ostream& err) {
    Integer k = parse_integer(o.n, "k");
    if (!k.fits_ulong_p())
        throw UsageError("k is too large");
    std::string method = o.method.empty() ? "term" : o.method;
    if (method != "term" && method != "matiyasevich" && method != "oracle")
        throw UsageError("factorial --method is term, matiyasevich or oracle");
    std::string route = method;
    if (method != "oracle" && k < 2) {
        err << "note: " << method << " needs k >= 2; using the oracle\n";
        route = "oracle";
    }
    Integer value;
    std::uint64_t peak = 0;
    if (route == "term") {
        Term t = build_factorial_term(k);
        EvalBudget budget = o.budget();
        EvalResult r;
        try {
            r = evaluate(t, {}, budget);
        } catch (const BudgetExceeded& e) {
            auto est = estimate_bits(t, {}, budget);
            throw BudgetExceeded(std::max(est.total_bound_bits, e.required_bits()), budget.max_bits(),
                                 "factorial term, estimator bound " + std::to_string(est.total_bound_bits) + " bits");
        }
        value = r.value;
        peak = r.stats.peak_bits;
    } else if (route == "matiyasevich") {
        value = oracles::factorial_matiyasevich(k.get_ui());
    } else {
        value = oracles::factorial(k.get_ui());
    }
    if (o.json)
        out << json{{"k", k.get_str()}, {"method", route}, {"result", value.get_str()}, {"peak_bits", peak}}.dump()
            << '\n';
    else
        out << value.get_str() << '\n';
    return ok;
}

FactorMode mode_of(const Options& o) {
    auto m = parse_factor_mode(o.mode);
    if (!m)
        throw UsageError("unknown mode '" + o.mode + "'");
    return *m;
}

json factor_json(const FactorResult& r) {
    return json{{"n", r.n.get_str()},
                {"p", r.p.get_str()},
                {"q", r.q.get_str()},
                {"mode", to_string(r.mode)},
                {"omega", r.omega.get_str()},
                {"gamma_bits", r.gamma_bits},
                {"verified", r.verified},
                {"outside_paper_formula", r.outside_paper_formula},
                {"peak_bits", r.stats.peak_bits},
                {"elapsed_ms", ms(r.stats.elapsed)}};
}

int cmd_factor(const Options& o, std::ostream& out, std::ostream& err) {
    Integer n = parse_integer(o.n, "n");
    FactorResult r = factor_semiprime(n, mode_of(o), o.budget());
    if (r.outside_paper_formula)
        err << "note: n is a prime square; p = q = sqrt(n) from the oracle, outside the closed form\n";
    if (o.json)
        out << factor_json(r).dump() << '\n';
    else
        out << r.p.get_str() << ' ' << r.q.get_str() << '\n';
    return ok;
}

int cmd_totient(const Options& o, std::ostream& out, std::ostream& err) {
    Integer n = parse_integer(o.n, "n");
    FactorResult r = factor_semiprime(n, mode_of(o), o.budget());
    Integer phi;
    if (r.outside_paper_formula) {
        err << "note: n is a prime square; phi = p(p-1), outside the closed form\n";
        phi = r.p * (r.p - 1);
    } else {
        phi = (r.p - 1) * (r.q - 1);
    }
    if (o.json) {
        json j = factor_json(r);
        j["totient"] = phi.get_str();
        out << j.dump() << '\n';
    } else {
        out << phi.get_str() << '\n';
    }
    return ok;
}

json check_json(const sweep::Check& c) {
    json j{{"method", c.method}, {"expected", c.expected}, {"actual", c.actual}, {"status", status_name(c.status)}};
    if (!c.note.empty())
        j["note"] = c.note;
    return j;
}

json record_json(const sweep::CaseRecord& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(check_json(c));
    return json{{"inputs", inputs_json(r.inputs)},
                {"status", status_name(r.status())},
                {"checks", checks},
                {"peak_bits", r.peak_bits},
                {"elapsed_ms", ms(r.elapsed)}};
}

int cmd_verify(const Options& o, std::ostream& out) {
    auto suite = sweep::parse_suite(o.suite);
    if (!suite)
        throw UsageError("unknown suite '" + o.suite + "'");
    sweep::Config cfg;
    cfg.suite = *suite;
    cfg.min = o.min;
    cfg.max = o.max;
    cfg.large = o.large;
    cfg.budget = o.budget();
    if (!o.base.empty())
        cfg.base = parse_integer(o.base, "--base");
    if (*suite == sweep::Suite::factor)
        cfg.factor_mode = mode_of(o);
    if (!o.method.empty()) {
        if (*suite == sweep::Suite::gcd) {
            std::stringstream ss(o.method);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto m = parse_gcd_method(item);
                if (!m || *m == GcdMethod::euclid)
                    throw UsageError("verify gcd --method takes mazzanti, poly-base, modmod");
                cfg.gcd_methods.push_back(*m);
            }
        } else if (*suite == sweep::Suite::factorial) {
            if (o.method != "term" && o.method != "matiyasevich")
                throw UsageError("verify factorial --method is term or matiyasevich");
            cfg.factorial_method = o.method;
        } else {
            throw UsageError("--method applies to the gcd and factorial suites");
        }
    }
    auto [lo, hi] = sweep::default_range(cfg.suite);
    if (cfg.min.value_or(lo) > cfg.max.value_or(hi))
        throw UsageError("empty range");

    auto rep = sweep::run(cfg, o.serial ? sweep::Execution::serial : sweep::Execution::parallel);

    if (o.json) {
        for (const auto& r : rep.records) {
            json line{{"type", "case"}};
            line.update(record_json(r));
            out << line.dump() << '\n';
        }
        json mism = json::array();
        for (const auto& m : rep.mismatches)
            mism.push_back(
                {{"inputs", inputs_json(m.inputs)}, {"expected", m.expected}, {"actual", m.actual}, {"method", m.method}});
        json budget = json::array(), excluded = json::array();
        for (const auto& r : rep.budget_exceeded)
            budget.push_back(record_json(r));
        for (const auto& r : rep.excluded)
            excluded.push_back(record_json(r));
        json params = json::object();
        for (const auto& [k, v] : rep.params)
            params[k] = v;
        out << json{{"type", "report"},
                    {"suite", rep.suite},
                    {"params", params},
                    {"cases", rep.cases},
                    {"passed", rep.passed},
                    {"mismatches", mism},
                    {"budget_exceeded", budget},
                    {"excluded", excluded},
                    {"elapsed_ms", ms(rep.elapsed)}}
                   .dump()
            << '\n';
    } else {
        out << "suite " << rep.suite << " (";
        for (std::size_t i = 0; i < rep.params.size(); ++i)
            out << (i ? " " : "") << rep.params[i].first << "=" << rep.params[i].second;
        out << "): " << rep.cases << " cases, " << rep.passed << " passed, " << rep.mismatches.size()
            << " mismatches, " << rep.budget_exceeded.size() << " over budget, " << rep.excluded.size()
            << " excluded, " << std::fixed << std::setprecision(1) << ms(rep.elapsed) << " ms\n";
        for (const auto& m : rep.mismatches)
            out << "  MISMATCH " << inputs_text(m.inputs) << " method=" << m.method << " expected=" << m.expected
                << " actual=" << m.actual << '\n';
        for (const auto& r : rep.budget_exceeded)
            out << "  BUDGET   " << inputs_text(r.inputs) << '\n';
        for (const auto& r : rep.excluded)
            for (const auto& c : r.checks)
                if (c.status == sweep::Status::excluded)
                    out << "  EXCLUDED " << inputs_text(r.inputs) << " method=" << c.method
                        << " oracle=" << c.expected << " term=" << (c.actual.empty() ? "-" : c.actual) << " ("
                        << c.note << ")\n";
    }
    if (!rep.ok())
        return verify_failed;
    if (o.strict && !rep.budget_exceeded.empty())
        return budget;
    return ok;
}

void print_estimate_rows(const Term& t, const SizeEstimate& est, std::size_t idx, std::size_t depth,
                         std::ostream& out) {
    std::string text = render(t);
    if (text.size() > 60)
        text = text.substr(0, 57) + "...";
    out << std::setw(5) << idx << std::setw(6) << depth << "  " << std::left << std::setw(9) << op_name(t.op())
        << std::right << std::setw(22) << est.node_bits[idx] << "  " << text << '\n';
    if (is_binary(t.op())) {
        print_estimate_rows(t.lhs(), est, idx + 1, depth + 1, out);
        print_estimate_rows(t.rhs(), est, idx + 1 + t.lhs().size(), depth + 1, out);
    }
}

void estimate_rows_json(const Term& t, const SizeEstimate& est, std::size_t idx, std::size_t depth, json& rows) {
    rows.push_back({{"index", idx}, {"depth", depth}, {"op", op_name(t.op())}, {"bound_bits", est.node_bits[idx]}});
    if (is_binary(t.op())) {
        estimate_rows_json(t.lhs(), est, idx + 1, depth + 1, rows);
        estimate_rows_json(t.rhs(), est, idx + 1 + t.lhs().size(), depth + 1, rows);
    }
}

int cmd_estimate(const Options& o, std::ostream& out) {
    Term t = parse(o.expr);
    Bindings env = parse_vars(o.vars);
    EvalBudget budget = o.budget();
    auto est = estimate_bits(t, env, budget);
    if (o.json) {
        json rows = json::array();
        estimate_rows_json(t, est, 0, 0, rows);
        out << json{{"expr", o.expr},
                    {"total_bound_bits", est.total_bound_bits},
                    {"root_bits", est.root_bits},
                    {"within_budget", est.total_bound_bits <= budget.max_bits()},
                    {"nodes", rows}}
                   .dump()
            << '\n';
        return ok;
    }
    out << "total_bound_bits " << est.total_bound_bits << '\n';
    out << "budget_bits " << budget.max_bits() << (est.total_bound_bits <= budget.max_bits() ? " (within)" : " (over)")
        << '\n';
    out << "index depth  op                   bound_bits  subterm\n";
    print_estimate_rows(t, est, 0, 0, out);
    return ok;
}

int cmd_term(const Options& o, std::ostream& out) {
    const auto& args = o.term_args;
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw UsageError("term " + o.term_kind + " takes " + std::to_string(k) + " argument(s)");
    };
    Term t = Term::literal(0ul);
    if (o.term_kind == "gcd") {
        need(2);
        auto method = parse_gcd_method(o.method.empty() ? "poly-base" : o.method);
        if (!method)
            throw UsageError("unknown gcd method '" + o.method + "'");
        std::optional<Integer> base;
        if (!o.base.empty())
            base = parse_integer(o.base, "--base");
        t = build_gcd_term(parse_positive(args[0], "a"), parse_positive(args[1], "b"), *method, base);
    } else if (o.term_kind == "isqrt") {
        need(1);
        t = build_isqrt_term(parse_integer(args[0], "n"));
    } else if (o.term_kind == "factorial") {
        need(1);
        t = build_factorial_term(parse_integer(args[0], "w"));
    } else if (o.term_kind == "base2") {
        need(2);
        t = build_base2_quotient_term(parse_positive(args[0], "a"), parse_positive(args[1], "b"));
    } else {
        throw UsageError("term kinds: gcd, isqrt, factorial, base2");
    }
    out << render(t) << '\n';
    return ok;
}

struct BenchRow {
    std::string suite, method, a, b, n;
    std::uint64_t peak_bits = 0;
    double elapsed_us = 0;
    bool ok = false;
};

template <class F>
BenchRow timed(BenchRow row, F&& body) {
    auto start = std::chrono::steady_clock::now();
    body(row);
    row.elapsed_us = us(std::chrono::steady_clock::now() - start);
    return row;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<BenchRow> rows;
    std::size_t skipped = 0;
    EvalBudget budget = o.budget();

    if (o.suite == "gcd-methods") {
        std::uint64_t lo = o.min.value_or(1), hi = o.max.value_or(32);
        if (lo == 0 || lo > hi)
            throw UsageError("empty range");
        for (std::uint64_t ai = lo; ai <= hi; ++ai) {
            for (std::uint64_t bi = lo; bi <= hi; ++bi) {
                Integer a(static_cast<unsigned long>(ai)), b(static_cast<unsigned long>(bi));
                Integer expected = oracles::gcd_euclid(a, b);
                struct Variant {
                    const char* name;
                    GcdMethod method;
                    Strategy strategy;
                };
                std::vector<Variant> variants{{"euclid", GcdMethod::euclid, Strategy::naive},
                                              {"poly-base", GcdMethod::poly_base, Strategy::naive},
                                              {"modmod", GcdMethod::modmod, Strategy::rewrite},
                                              {"modmod-naive", GcdMethod::modmod, Strategy::naive}};
                if (ai <= 12 && bi <= 12)
                    variants.push_back({"mazzanti", GcdMethod::mazzanti, Strategy::naive});
                for (const auto& v : variants) {
                    try {
                        rows.push_back(timed(BenchRow{"gcd-methods", v.name, a.get_str(), b.get_str(), "", 0, 0, false},
                                             [&](BenchRow& row) {
                                                 auto r = gcd(a, b, v.method, std::nullopt, budget, v.strategy);
                                                 row.n = r.base.get_str();
                                                 row.peak_bits = r.stats.peak_bits;
                                                 row.ok = r.value == expected;
                                             }));
                    } catch (const BudgetExceeded&) {
                        ++skipped;
                    }
                }
            }
        }
    } else if (o.suite == "factor-modes") {
        std::uint64_t lo = o.min.value_or(6), hi = o.max.value_or(143);
        if (lo > hi)
            throw UsageError("empty range");
        auto ns = sweep::semiprimes_in(std::max<std::uint64_t>(lo, 6), hi);
        if (ns.empty())
            throw UsageError("no non-square semiprimes in range");
        for (std::uint64_t nv : ns) {
            Integer n(static_cast<unsigned long>(nv));
            auto f = oracles::trial_division(n);
            Integer omega = oracles::isqrt(n);
            for (FactorMode mode : {FactorMode::oracle, FactorMode::hybrid, FactorMode::pure}) {
                // pure beyond omega 5 costs minutes per case; hybrid at omega 11 is the stress tier
                if (mode == FactorMode::pure && omega > 5) {
                    ++skipped;
                    continue;
                }
                if (mode == FactorMode::hybrid && omega >= sweep::kLargeOmega && !o.large) {
                    ++skipped;
                    continue;
                }
                try {
                    rows.push_back(timed(BenchRow{"factor-modes", std::string(to_string(mode)), "", "", n.get_str()},
                                         [&](BenchRow& row) {
                                             try {
                                                 auto r = factor_semiprime(n, mode, budget);
                                                 row.a = r.p.get_str();
                                                 row.b = r.q.get_str();
                                                 row.peak_bits = r.stats.peak_bits;
                                                 row.ok = r.verified && r.p == f.front() && r.q == f.back();
                                             } catch (const NotSemiprime& e) {
                                                 row.a = e.result().p.get_str();
                                                 row.b = e.result().q.get_str();
                                                 row.ok = false;
                                             }
                                         }));
                } catch (const BudgetExceeded&) {
                    ++skipped;
                }
            }
        }
    } else {
        throw UsageError("bench suites: gcd-methods, factor-modes");
    }

    if (rows.empty())
        throw UsageError("empty range");

    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f)
            throw UsageError("cannot write " + o.csv);
        f << "suite,method,a,b,n,peak_bits,elapsed_us,ok\n";
        for (const auto& r : rows)
            f << r.suite << ',' << r.method << ',' << r.a << ',' << r.b << ',' << r.n << ',' << r.peak_bits << ','
              << std::fixed << std::setprecision(1) << r.elapsed_us << ',' << (r.ok ? "true" : "false") << '\n';
    }

    struct Agg {
        std::size_t rows = 0, ok = 0;
        double total_us = 0;
        std::uint64_t peak = 0;
    };
    std::map<std::string, Agg> agg;
    std::vector<std::string> order;
    for (const auto& r : rows) {
        if (!agg.count(r.method))
            order.push_back(r.method);
        auto& g = agg[r.method];
        ++g.rows;
        g.ok += r.ok;
        g.total_us += r.elapsed_us;
        g.peak = std::max(g.peak, r.peak_bits);
    }
    out << "method          rows    ok     total_ms      mean_us    peak_bits\n";
    for (const auto& m : order) {
        const auto& g = agg[m];
        out << std::left << std::setw(14) << m << std::right << std::setw(6) << g.rows << std::setw(6) << g.ok
            << std::fixed << std::setprecision(1) << std::setw(13) << g.total_us / 1000 << std::setw(13)
            << g.total_us / static_cast<double>(g.rows) << std::setw(13) << g.peak << '\n';
    }
    if (skipped)
        err << "note: " << skipped << " (method, input) pairs skipped (budget or stress tier; see --large)\n";
    bool all_ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.ok; });
    if (!all_ok)
        err << "error: some bench rows produced wrong results\n";
    return all_ok ? ok : verify_failed;
}

void add_json_flag(CLI::App* sub, Options& o) { sub->add_flag("--json", o.json, "Emit one JSON object per line"); }

void add_budget(CLI::App* sub, Options& o) {
    sub->add_option("--budget-bits", o.budget_bits, "Bit ceiling for intermediates (default 2^30 or $ATERM_BUDGET_BITS)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"aterm: exact arithmetic-term evaluation and closed-form number theory"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate an arithmetic term");
    eval->add_option("expr", o.expr, "Term text")->required();
    eval->add_option("--var", o.vars, "Binding name=value (repeatable)");
    eval->add_option("--strategy", o.strategy, "naive or rewrite")->check(CLI::IsMember({"naive", "rewrite"}));
    eval->add_flag("--stats", o.stats, "Print evaluation statistics");
    add_budget(eval, o);
    add_json_flag(eval, o);

    auto* gcd_cmd = app.add_subcommand("gcd", "gcd(a, b) through a closed form");
    gcd_cmd->add_option("a", o.a)->required();
    gcd_cmd->add_option("b", o.b)->required();
    gcd_cmd->add_option("--method", o.method, "mazzanti, poly-base, modmod (default) or euclid");
    gcd_cmd->add_option("--base", o.base, "Integer base (default max(4, min(a,b)+1))");
    add_budget(gcd_cmd, o);
    add_json_flag(gcd_cmd, o);

    auto* isqrt_cmd = app.add_subcommand("isqrt", "floor(sqrt(n))");
    isqrt_cmd->add_option("n", o.n)->required();
    isqrt_cmd->add_option("--method", o.method, "term (default) or oracle");
    add_budget(isqrt_cmd, o);
    add_json_flag(isqrt_cmd, o);

    auto* fact_cmd = app.add_subcommand("factorial", "k!");
    fact_cmd->add_option("k", o.n)->required();
    fact_cmd->add_option("--method", o.method, "term (default), matiyasevich or oracle");
    add_budget(fact_cmd, o);
    add_json_flag(fact_cmd, o);

    auto* factor_cmd = app.add_subcommand("factor", "Factor a non-square semiprime");
    factor_cmd->add_option("n", o.n)->required();
    factor_cmd->add_option("--mode", o.mode, "pure, hybrid (default) or oracle");
    add_budget(factor_cmd, o);
    add_json_flag(factor_cmd, o);

    auto* tot_cmd = app.add_subcommand("totient", "Euler phi of a semiprime through its factors");
    tot_cmd->add_option("n", o.n)->required();
    tot_cmd->add_option("--mode", o.mode, "pure, hybrid (default) or oracle");
    add_budget(tot_cmd, o);
    add_json_flag(tot_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify", "Sweep a closed form against its oracle");
    verify_cmd->add_option("--suite", o.suite, "gcd, isqrt, factorial, factor, base2-evenness")->required();
    verify_cmd->add_option("--min", o.min, "Range start");
    verify_cmd->add_option("--max", o.max, "Range end (inclusive)");
    verify_cmd->add_option("--method", o.method, "gcd: comma list of methods; factorial: term or matiyasevich");
    verify_cmd->add_option("--mode", o.mode, "factor mode");
    verify_cmd->add_option("--base", o.base, "gcd: fixed base");
    verify_cmd->add_flag("--large", o.large, "factor: include omega >= 11 stress cases");
    verify_cmd->add_flag("--strict", o.strict, "Exit 3 when any case exceeds the budget");
    verify_cmd->add_flag("--serial", o.serial, "Run cases on one thread");
    add_budget(verify_cmd, o);
    add_json_flag(verify_cmd, o);

    auto* est_cmd = app.add_subcommand("estimate", "Bound intermediate bit sizes without evaluating");
    est_cmd->add_option("expr", o.expr, "Term text")->required();
    est_cmd->add_option("--var", o.vars, "Binding name=value (repeatable)");
    add_budget(est_cmd, o);
    add_json_flag(est_cmd, o);

    auto* bench_cmd = app.add_subcommand("bench", "Time methods against each other");
    bench_cmd->add_option("--suite", o.suite, "gcd-methods or factor-modes")->required();
    bench_cmd->add_option("--min", o.min, "Range start");
    bench_cmd->add_option("--max", o.max, "Range end (inclusive)");
    bench_cmd->add_option("--csv", o.csv, "Write rows to this CSV file");
    bench_cmd->add_flag("--large", o.large, "Include omega >= 11 hybrid cases");
    add_budget(bench_cmd, o);

    auto* term_cmd = app.add_subcommand("term", "Print a closed-form term");
    term_cmd->add_option("kind", o.term_kind, "gcd, isqrt, factorial, base2")->required();
    term_cmd->add_option("args", o.term_args, "Integer arguments");
    term_cmd->add_option("--method", o.method, "gcd method");
    term_cmd->add_option("--base", o.base, "gcd base");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*eval) return cmd_eval(o, out);
        if (*gcd_cmd) return cmd_gcd(o, out);
        if (*isqrt_cmd) return cmd_isqrt(o, out, err);
        if (*fact_cmd) return cmd_factorial(o, out, err);
        if (*factor_cmd) return cmd_factor(o, out, err);
        if (*tot_cmd) return cmd_totient(o, out, err);
        if (*verify_cmd) return cmd_verify(o, out);
        if (*est_cmd) return cmd_estimate(o, out);
        if (*bench_cmd) return cmd_bench(o, out, err);
        if (*term_cmd) return cmd_term(o, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return budget;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return domain;
    } catch (const NotSemiprime& e) {
        err << "error: " << e.what() << '\n';
        return verify_failed;
    } catch (const Error& e) {
        // ParseError, UnboundVariable, PreconditionError, UsageError
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"aterm"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace aterm::cli
