#include "aterm/formulas.hpp"

#include "aterm/estimate.hpp"
#include "aterm/oracles.hpp"
#include "aterm/parse.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace aterm {

namespace {

const Term& mazzanti_template() {
    static const Term t = parse(
        "((2^(a^2*b*(b+1)) - 2^(a^2*b)) * (2^(a^2*b^2) - 1))"
        " / ((2^(a^2*b) - 1) * (2^(a*b^2) - 1) * 2^(a^2*b^2))"
        " % 2^(a*b)");
    return t;
}

const Term& poly_base_template() {
    static const Term t = parse("n^(a+a*b) / ((n^a - 1) * (n^b - 1)) % n");
    return t;
}

const Term& base2_quotient_template() {
    static const Term t = parse("2^(a+a*b) / ((2^a - 1) * (2^b - 1))");
    return t;
}

const Term& modmod_template() {
    static const Term t = parse("(0 - n^(a+a*b) % (n^(a+b) - n^a - n^b + 1)) % n");
    return t;
}

const Term& isqrt_template() {
    static const Term t = parse(
        "((n^(2*n) + 1)^(2*n+1) % (n^(4*n) - n))"
        " / ((n^(2*n) + 1)^(2*n) % (n^(4*n) - n)) - 1");
    return t;
}

const Term& factorial_template() {
    static const Term t = parse(
        "(w+1)^(w*(w+2))"
        " / (((w+1)^(w*(w+2)) + 1)^((w+1)^(w+2)) / (w+1)^(w^2*(w+2)) % (w+1)^(w*(w+2)))");
    return t;
}

void require_positive(const Integer& v, const char* what) {
    if (sgn(v) <= 0)
        throw PreconditionError(std::string(what) + " must be a positive integer");
}

std::string str(const Integer& v) { return v.get_str(); }

Term instantiate_at_base(const Integer& a, const Integer& b, GcdMethod method, const Integer& n) {
    const Term& tmpl = method == GcdMethod::poly_base ? poly_base_template() : modmod_template();
    return substitute(tmpl, {{"a", a}, {"b", b}, {"n", n}});
}

}  // namespace

std::string_view to_string(GcdMethod m) {
    switch (m) {
    case GcdMethod::mazzanti: return "mazzanti";
    case GcdMethod::poly_base: return "poly-base";
    case GcdMethod::modmod: return "modmod";
    case GcdMethod::euclid: return "euclid";
    }
    return "?";
}

std::string_view to_string(FactorMode m) {
    switch (m) {
    case FactorMode::pure: return "pure";
    case FactorMode::hybrid: return "hybrid";
    case FactorMode::oracle: return "oracle";
    }
    return "?";
}

std::optional<GcdMethod> parse_gcd_method(std::string_view s) {
    if (s == "mazzanti") return GcdMethod::mazzanti;
    if (s == "poly-base" || s == "poly_base") return GcdMethod::poly_base;
    if (s == "modmod") return GcdMethod::modmod;
    if (s == "euclid") return GcdMethod::euclid;
    return std::nullopt;
}

std::optional<FactorMode> parse_factor_mode(std::string_view s) {
    if (s == "pure") return FactorMode::pure;
    if (s == "hybrid") return FactorMode::hybrid;
    if (s == "oracle") return FactorMode::oracle;
    return std::nullopt;
}

Integer auto_base(const Integer& a, const Integer& b) {
    Integer m = std::min(a, b) + 1;
    return m < 4 ? Integer(4) : m;
}

Term build_gcd_term(const Integer& a, const Integer& b, GcdMethod method, const std::optional<Integer>& base) {
    require_positive(a, "a");
    require_positive(b, "b");
    switch (method) {
    case GcdMethod::euclid:
        throw PreconditionError("euclid is an oracle and has no term form");
    case GcdMethod::mazzanti:
        if (a > kMazzantiCap || b > kMazzantiCap)
            throw PreconditionError("mazzanti accepts a, b <= " + std::to_string(kMazzantiCap));
        return substitute(mazzanti_template(), {{"a", a}, {"b", b}});
    case GcdMethod::poly_base:
    case GcdMethod::modmod:
        break;
    }

    Integer n = base ? *base : auto_base(a, b);
    if (n <= 2)
        throw InvalidBase("base must exceed 2, got " + str(n));
    if (base && n <= oracles::gcd_euclid(a, b))
        throw InvalidBase("base must exceed gcd(a,b) = " + str(oracles::gcd_euclid(a, b)) + ", got " + str(n));
    return instantiate_at_base(a, b, method, n);
}

GcdOutcome gcd(const Integer& a, const Integer& b, GcdMethod method, const std::optional<Integer>& base,
               const EvalBudget& budget, std::optional<Strategy> strategy) {
    if (method == GcdMethod::euclid) {
        require_positive(a, "a");
        require_positive(b, "b");
        return {oracles::gcd_euclid(a, b), Integer(0), {}};
    }
    Term t = build_gcd_term(a, b, method, base);
    Strategy s = strategy.value_or(method == GcdMethod::modmod ? Strategy::rewrite : Strategy::naive);
    auto r = evaluate(t, {}, budget, s);
    Integer used;
    if (method == GcdMethod::mazzanti)
        used = Integer(1) << static_cast<mp_bitcnt_t>(Integer(a * b).get_ui());
    else
        used = base ? *base : auto_base(a, b);
    return {std::move(r.value), std::move(used), r.stats};
}

Term build_isqrt_term(const Integer& n) {
    if (n < 3)
        throw PreconditionError("the isqrt term needs n >= 3");
    if (oracles::is_square(n))
        throw PreconditionError("the isqrt term needs a non-square n");
    return instantiate_isqrt_term(n);
}

Term instantiate_isqrt_term(const Integer& n) {
    if (sgn(n) < 0)
        throw PreconditionError("n must be non-negative");
    return substitute(isqrt_template(), {{"n", n}});
}

Term build_factorial_term(const Integer& w) {
    if (w < 2)
        throw PreconditionError("the factorial term needs w >= 2");
    return instantiate_factorial_term(w);
}

Term instantiate_factorial_term(const Integer& w) {
    if (sgn(w) < 0)
        throw PreconditionError("w must be non-negative");
    return substitute(factorial_template(), {{"w", w}});
}

Term build_base2_quotient_term(const Integer& a, const Integer& b) {
    require_positive(a, "a");
    require_positive(b, "b");
    return substitute(base2_quotient_template(), {{"a", a}, {"b", b}});
}

NotSemiprime::NotSemiprime(FactorResult result)
    : Error("n = " + str(result.n) + " is not a semiprime: pipeline produced p = " + str(result.p) +
            ", q = " + str(result.q)),
      result_(std::move(result)) {}

namespace {

bool verify(FactorResult& r) {
    r.verified = sgn(r.p) > 0 && r.p * r.q == r.n && oracles::is_prime(r.p) && oracles::is_prime(r.q) &&
                 (r.outside_paper_formula ? r.p == r.q : r.p < r.q);
    return r.verified;
}

// Base n is valid whenever n is a semiprime; otherwise n may divide gamma and
// the term yields garbage, which verification then rejects.
Term factor_term(const Integer& n, const Integer& gamma, GcdMethod method) {
    return instantiate_at_base(n, gamma, method, n);
}

// The evaluator refuses each operation from actual operand sizes; on refusal
// the estimator's whole-term bound goes into the message for diagnosis.
EvalResult checked_eval(const Term& t, const EvalBudget& budget, Strategy s, const char* what) {
    try {
        return evaluate(t, {}, budget, s);
    } catch (const BudgetExceeded& e) {
        SizeEstimate est = estimate_bits(t, {}, budget);
        throw BudgetExceeded(std::max(est.total_bound_bits, e.required_bits()), budget.max_bits(),
                             std::string(what) + " term in pure mode, estimator bound " +
                                 std::to_string(est.total_bound_bits) + " bits; try --mode hybrid");
    }
}

}  // namespace

FactorResult factor_semiprime(const Integer& n, FactorMode mode, const EvalBudget& budget) {
    if (n < 6)
        throw PreconditionError("factor_semiprime needs n >= 6");

    FactorResult r;
    r.n = n;
    r.mode = mode;

    Integer root = oracles::isqrt(n);
    if (root * root == n) {
        r.omega = root;
        r.p = root;
        r.q = root;
        r.outside_paper_formula = true;
        if (!verify(r))
            throw NotSemiprime(std::move(r));
        return r;
    }

    switch (mode) {
    case FactorMode::oracle: {
        auto f = oracles::trial_division(n);
        r.omega = root;
        r.p = f.front();
        r.q = f.size() == 2 ? f.back() : n / f.front();
        break;
    }
    case FactorMode::pure: {
        auto omega = checked_eval(build_isqrt_term(n), budget, Strategy::naive, "omega");
        r.stats += omega.stats;
        r.omega = omega.value;
        auto gamma = checked_eval(build_factorial_term(r.omega), budget, Strategy::naive, "gamma");
        r.stats += gamma.stats;
        r.gamma_bits = bit_length(gamma.value);
        Term p_term = factor_term(n, gamma.value, GcdMethod::poly_base);
        auto p = checked_eval(p_term, budget, Strategy::naive, "p");
        r.stats += p.stats;
        r.p = p.value;
        break;
    }
    case FactorMode::hybrid: {
        r.omega = root;
        // gamma feeds an exponent, which must stay below 2^63; 20! is the last that does.
        if (root > 20)
            throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(), budget.max_bits(),
                                 "gamma = " + str(root) + "! is too large for an exponent");
        Integer gamma = oracles::factorial(root.get_ui());
        r.gamma_bits = bit_length(gamma);
        auto p = evaluate(factor_term(n, gamma, GcdMethod::modmod), {}, budget, Strategy::rewrite);
        r.stats += p.stats;
        r.p = p.value;
        break;
    }
    }

    if (sgn(r.p) > 0)
        r.q = n / r.p;
    if (!verify(r))
        throw NotSemiprime(std::move(r));
    return r;
}

Integer totient_semiprime(const Integer& n, FactorMode mode, const EvalBudget& budget) {
    FactorResult r = factor_semiprime(n, mode, budget);
    if (r.outside_paper_formula)
        return r.p * (r.p - 1);
    return (r.p - 1) * (r.q - 1);
}

}  // namespace aterm
