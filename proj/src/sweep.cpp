#include "aterm/sweep.hpp"

#include "aterm/oracles.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace aterm::sweep {

std::string_view to_string(Suite s) {
    switch (s) {
    case Suite::gcd: return "gcd";
    case Suite::isqrt: return "isqrt";
    case Suite::factorial: return "factorial";
    case Suite::factor: return "factor";
    case Suite::base2_evenness: return "base2-evenness";
    }
    return "?";
}

std::optional<Suite> parse_suite(std::string_view s) {
    for (Suite x : {Suite::gcd, Suite::isqrt, Suite::factorial, Suite::factor, Suite::base2_evenness})
        if (s == to_string(x))
            return x;
    return std::nullopt;
}

std::pair<std::uint64_t, std::uint64_t> default_range(Suite s) {
    switch (s) {
    case Suite::gcd: return {1, 64};
    case Suite::isqrt: return {3, 300};
    case Suite::factorial: return {2, 5};
    case Suite::factor: return {6, 143};
    case Suite::base2_evenness: return {1, 16};
    }
    return {1, 1};
}

Status CaseRecord::status() const {
    auto rank = [](Status s) {
        switch (s) {
        case Status::mismatch: return 3;
        case Status::budget: return 2;
        case Status::excluded: return 1;
        case Status::pass: return 0;
        }
        return 0;
    };
    Status worst = Status::pass;
    for (const auto& c : checks)
        if (rank(c.status) > rank(worst))
            worst = c.status;
    return worst;
}

std::vector<std::uint64_t> semiprimes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 4); n <= hi; ++n) {
        Integer v(static_cast<unsigned long>(n));
        if (oracles::is_semiprime(v) && !oracles::is_square(v))
            out.push_back(n);
    }
    return out;
}

namespace {

std::vector<GcdMethod> gcd_methods(const Config& cfg) {
    if (cfg.gcd_methods.empty())
        return {GcdMethod::poly_base, GcdMethod::modmod};
    return cfg.gcd_methods;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

Integer input(const Inputs& in, std::string_view name) {
    for (const auto& [k, v] : in)
        if (k == name)
            return Integer(v);
    throw std::logic_error("missing sweep input");
}

// Wraps a check body: budget and domain failures become statuses.
template <class F>
Check guarded(std::string method, std::string expected, F&& body) {
    Check c{std::move(method), std::move(expected), {}, Status::pass, {}};
    try {
        body(c);
    } catch (const BudgetExceeded& e) {
        c.status = Status::budget;
        c.note = e.what();
    } catch (const NotSemiprime& e) {
        c.status = Status::mismatch;
        c.actual = e.result().p.get_str() + " " + e.result().q.get_str();
        c.note = e.what();
    } catch (const PreconditionError& e) {
        c.status = Status::excluded;
        c.note = e.what();
    } catch (const Error& e) {
        c.status = Status::mismatch;
        c.actual = "error";
        c.note = e.what();
    }
    return c;
}

void compare(Check& c, const Integer& actual) {
    c.actual = actual.get_str();
    c.status = c.actual == c.expected ? Status::pass : Status::mismatch;
}

CaseRecord gcd_case(const Config& cfg, const Inputs& in) {
    CaseRecord rec{in, {}, 0, {}};
    Integer a = input(in, "a"), b = input(in, "b");
    std::string expected = oracles::gcd_euclid(a, b).get_str();
    for (GcdMethod m : gcd_methods(cfg)) {
        rec.checks.push_back(guarded(std::string(to_string(m)), expected, [&](Check& c) {
            if (m == GcdMethod::mazzanti && (a > kMazzantiCap || b > kMazzantiCap))
                throw PreconditionError("mazzanti capped at a, b <= " + std::to_string(kMazzantiCap));
            std::optional<Integer> base = m == GcdMethod::mazzanti ? std::nullopt : cfg.base;
            auto out = gcd(a, b, m, base, cfg.budget);
            rec.peak_bits = std::max(rec.peak_bits, out.stats.peak_bits);
            compare(c, out.value);
        }));
    }
    return rec;
}

CaseRecord isqrt_case(const Config& cfg, const Inputs& in) {
    CaseRecord rec{in, {}, 0, {}};
    Integer n = input(in, "n");
    std::string expected = oracles::isqrt(n).get_str();
    rec.checks.push_back(guarded("term", expected, [&](Check& c) {
        bool in_domain = n >= 3 && !oracles::is_square(n);
        auto out = evaluate(instantiate_isqrt_term(n), {}, cfg.budget);
        rec.peak_bits = out.stats.peak_bits;
        compare(c, out.value);
        if (!in_domain) {
            c.status = Status::excluded;
            c.note = "outside the term's domain (non-square n >= 3)";
        }
    }));
    return rec;
}

CaseRecord factorial_case(const Config& cfg, const Inputs& in) {
    CaseRecord rec{in, {}, 0, {}};
    Integer w = input(in, "w");
    std::string expected = oracles::factorial(w.get_ui()).get_str();
    rec.checks.push_back(guarded(cfg.factorial_method, expected, [&](Check& c) {
        if (cfg.factorial_method == "matiyasevich") {
            compare(c, oracles::factorial_matiyasevich(w.get_ui()));
            return;
        }
        if (w < 2)
            throw PreconditionError("factorial term needs w >= 2 (w = 1 divides by zero)");
        auto out = evaluate(build_factorial_term(w), {}, cfg.budget);
        rec.peak_bits = out.stats.peak_bits;
        compare(c, out.value);
    }));
    return rec;
}

CaseRecord factor_case(const Config& cfg, const Inputs& in) {
    CaseRecord rec{in, {}, 0, {}};
    Integer n = input(in, "n");
    auto f = oracles::trial_division(n);
    std::string expected = f.front().get_str() + " " + f.back().get_str();
    std::string mode(to_string(cfg.factor_mode));
    std::optional<FactorResult> result;
    rec.checks.push_back(guarded("factor:" + mode, expected, [&](Check& c) {
        if (!cfg.large && cfg.factor_mode != FactorMode::oracle && oracles::isqrt(n) >= kLargeOmega)
            throw PreconditionError("stress case (omega >= " + std::to_string(kLargeOmega) + "); enable large");
        result = factor_semiprime(n, cfg.factor_mode, cfg.budget);
        rec.peak_bits = result->stats.peak_bits;
        c.actual = result->p.get_str() + " " + result->q.get_str();
        c.status = c.actual == c.expected && result->verified ? Status::pass : Status::mismatch;
    }));
    if (result) {
        rec.checks.push_back(guarded("totient:" + mode, oracles::totient(n).get_str(), [&](Check& c) {
            compare(c, (result->p - 1) * (result->q - 1));
        }));
    }
    return rec;
}

CaseRecord base2_case(const Config& cfg, const Inputs& in) {
    CaseRecord rec{in, {}, 0, {}};
    Integer a = input(in, "a"), b = input(in, "b");
    rec.checks.push_back(guarded("base2-quotient", "even", [&](Check& c) {
        auto out = evaluate(build_base2_quotient_term(a, b), {}, cfg.budget);
        rec.peak_bits = out.stats.peak_bits;
        c.actual = mpz_even_p(out.value.get_mpz_t()) ? "even" : "odd";
        c.status = c.actual == c.expected ? Status::pass : Status::mismatch;
        if (c.status == Status::pass)
            c.note = "mod 2 = 0, gcd = " + oracles::gcd_euclid(a, b).get_str();
    }));
    return rec;
}

std::pair<std::uint64_t, std::uint64_t> range_of(const Config& cfg) {
    auto [lo, hi] = default_range(cfg.suite);
    return {cfg.min.value_or(lo), cfg.max.value_or(hi)};
}

}  // namespace

std::vector<Inputs> enumerate_cases(const Config& cfg) {
    auto [lo, hi] = range_of(cfg);
    std::vector<Inputs> out;
    switch (cfg.suite) {
    case Suite::gcd:
    case Suite::base2_evenness:
        for (std::uint64_t a = std::max<std::uint64_t>(lo, 1); a <= hi; ++a)
            for (std::uint64_t b = std::max<std::uint64_t>(lo, 1); b <= hi; ++b)
                out.push_back({{"a", num(a)}, {"b", num(b)}});
        break;
    case Suite::isqrt:
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (!oracles::is_square(Integer(static_cast<unsigned long>(n))))
                out.push_back({{"n", num(n)}});
        break;
    case Suite::factorial:
        for (std::uint64_t w = lo; w <= hi; ++w)
            out.push_back({{"w", num(w)}});
        break;
    case Suite::factor:
        for (std::uint64_t n : semiprimes_in(std::max<std::uint64_t>(lo, 6), hi))
            out.push_back({{"n", num(n)}});
        break;
    }
    return out;
}

CaseRecord run_case(const Config& cfg, const Inputs& in) {
    auto start = std::chrono::steady_clock::now();
    CaseRecord rec;
    switch (cfg.suite) {
    case Suite::gcd: rec = gcd_case(cfg, in); break;
    case Suite::isqrt: rec = isqrt_case(cfg, in); break;
    case Suite::factorial: rec = factorial_case(cfg, in); break;
    case Suite::factor: rec = factor_case(cfg, in); break;
    case Suite::base2_evenness: rec = base2_case(cfg, in); break;
    }
    rec.elapsed = std::chrono::steady_clock::now() - start;
    return rec;
}

std::vector<CaseRecord> run_cases_parallel(const std::vector<Inputs>& cases, const CaseFn& fn) {
    std::vector<CaseRecord> out(cases.size());
    const auto n = static_cast<std::int64_t>(cases.size());
    // Case cost varies by orders of magnitude; hand them out one at a time.
    #pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[i] = fn(cases[i]);
        } catch (const std::exception& e) {
            out[i] = CaseRecord{cases[i], {Check{"internal", "", "error", Status::mismatch, e.what()}}, 0, {}};
        }
    }
    return out;
}

VerificationReport summarize(const Config& cfg, std::vector<CaseRecord> records) {
    VerificationReport rep;
    rep.suite = std::string(to_string(cfg.suite));
    auto [lo, hi] = range_of(cfg);
    rep.params = {{"min", num(lo)}, {"max", num(hi)}};
    if (cfg.suite == Suite::factor) {
        rep.params.emplace_back("mode", std::string(to_string(cfg.factor_mode)));
        rep.params.emplace_back("large", cfg.large ? "true" : "false");
    }
    if (cfg.suite == Suite::factorial)
        rep.params.emplace_back("method", cfg.factorial_method);
    if (cfg.suite == Suite::gcd) {
        std::string ms;
        for (GcdMethod m : gcd_methods(cfg))
            ms += (ms.empty() ? "" : ",") + std::string(to_string(m));
        rep.params.emplace_back("methods", ms);
        if (cfg.base)
            rep.params.emplace_back("base", cfg.base->get_str());
    }

    for (const auto& r : records) {
        switch (r.status()) {
        case Status::pass:
            ++rep.cases;
            ++rep.passed;
            break;
        case Status::mismatch:
            ++rep.cases;
            for (const auto& c : r.checks)
                if (c.status == Status::mismatch)
                    rep.mismatches.push_back({r.inputs, c.expected, c.actual, c.method});
            break;
        case Status::budget:
            rep.budget_exceeded.push_back(r);
            break;
        case Status::excluded:
            rep.excluded.push_back(r);
            break;
        }
    }
    rep.records = std::move(records);
    return rep;
}

VerificationReport run(const Config& cfg, Execution exec) {
    auto start = std::chrono::steady_clock::now();
    auto cases = enumerate_cases(cfg);
    CaseFn fn = [&cfg](const Inputs& in) { return run_case(cfg, in); };
    auto records = exec == Execution::parallel ? run_cases_parallel(cases, fn) : run_cases_serial(cases, fn);
    VerificationReport rep = summarize(cfg, std::move(records));
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return rep;
}

}  // namespace aterm::sweep
