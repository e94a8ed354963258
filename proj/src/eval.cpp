#include "aterm/eval.hpp"

#include "aterm/errors.hpp"
#include "aterm/modpow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace aterm {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 63;

std::string budget_message(std::uint64_t required, std::uint64_t max_bits, const std::string& hint) {
    std::string msg = "bit budget exceeded: needs up to " +
                      (required == kSaturated ? std::string(">= 2^64") : std::to_string(required)) +
                      " bits, budget is " + std::to_string(max_bits);
    if (!hint.empty())
        msg += " (" + hint + ")";
    return msg;
}

// Upper bound on bit_length(|a|^e) for |a| >= 2, e >= 1.
std::uint64_t pow_bits_bound(const Integer& a, std::uint64_t e) {
    std::uint64_t abits = bit_length(a);
    // Power of two: exact.
    if (mpz_scan1(a.get_mpz_t(), 0) == abits - 1) {
        long double exact = static_cast<long double>(e) * static_cast<long double>(abits - 1) + 1;
        return exact >= 1.8e19L ? kSaturated : static_cast<std::uint64_t>(exact);
    }
    // |a| < (d + 2^-52) * 2^x with d in [0.5, 1) truncated from the top bits.
    long x = 0;
    double d = std::fabs(mpz_get_d_2exp(&x, a.get_mpz_t()));
    long double log2_up = static_cast<long double>(x) + std::log2(static_cast<long double>(d) + 0x1p-52L);
    // bit_length = floor(log2) + 1; the relative slack covers rounding
    long double bound = std::floor(static_cast<long double>(e) * log2_up * (1 + 1e-12L)) + 1;
    long double naive = static_cast<long double>(e) * static_cast<long double>(abits);
    bound = std::min(bound, naive);
    return bound >= 1.8e19L ? kSaturated : static_cast<std::uint64_t>(bound);
}

bool has_pow_in_mul_tree(const Term& t) {
    if (t.op() == Op::pow)
        return true;
    if (t.op() == Op::mul)
        return has_pow_in_mul_tree(t.lhs()) || has_pow_in_mul_tree(t.rhs());
    return false;
}

class Evaluator {
public:
    Evaluator(const Bindings& env, std::uint64_t max_bits, Strategy strategy,
              std::vector<std::optional<std::uint64_t>>* trace)
        : env_(env), max_bits_(max_bits), strategy_(strategy), trace_(trace) {}

    Integer eval(const Term& t, std::size_t idx) {
        switch (t.op()) {
        case Op::literal:
            check(bit_length(t.value()));
            record(idx, t.value());
            return t.value();
        case Op::variable: {
            auto it = env_.find(t.name());
            if (it == env_.end())
                throw UnboundVariable(t.name());
            check(bit_length(it->second));
            record(idx, it->second);
            return it->second;
        }
        default: break;
        }

        if (t.op() == Op::mod && strategy_ == Strategy::rewrite && has_pow_in_mul_tree(t.lhs()))
            return eval_mod_rewrite(t, idx);

        Integer a = eval(t.lhs(), idx + 1);
        Integer b = eval(t.rhs(), idx + 1 + t.lhs().size());
        Integer r = apply(t.op(), a, b);
        record(idx, r);
        return r;
    }

    EvalStats stats;

private:
    // Mul/Pow skeleton above a rewritten Mod. Leaves are evaluated normally.
    struct Skel {
        enum Kind { leaf, pow, mul } kind;
        std::size_t idx;
        Integer value;  // leaf value, or pow base
        std::uint64_t exp = 0;
        std::unique_ptr<Skel> l, r;
    };

    std::unique_ptr<Skel> collect(const Term& t, std::size_t idx) {
        auto s = std::make_unique<Skel>();
        s->idx = idx;
        if (t.op() == Op::pow) {
            Integer base = eval(t.lhs(), idx + 1);
            Integer e = eval(t.rhs(), idx + 1 + t.lhs().size());
            ++stats.pow_count;
            if (sgn(e) < 0)
                throw NegativeExponent();
            if (cmpabs_ui(base, 1) <= 0) {
                s->kind = Skel::leaf;
                s->value = small_pow(base, e);
                record(idx, s->value);
                return s;
            }
            if (e >= Integer(std::to_string(kMaxExponent)))
                throw BudgetExceeded(kSaturated, max_bits_, "exponent must be below 2^63");
            s->kind = Skel::pow;
            s->value = std::move(base);
            s->exp = e.get_ui();
            return s;
        }
        if (t.op() == Op::mul && has_pow_in_mul_tree(t)) {
            s->kind = Skel::mul;
            s->l = collect(t.lhs(), idx + 1);
            s->r = collect(t.rhs(), idx + 1 + t.lhs().size());
            return s;
        }
        s->kind = Skel::leaf;
        s->value = eval(t, idx);
        return s;
    }

    Integer reduce(const Skel& s, const Integer& m) {
        Integer r;
        switch (s.kind) {
        case Skel::leaf:
            mpz_fdiv_r(r.get_mpz_t(), s.value.get_mpz_t(), m.get_mpz_t());
            return r;
        case Skel::pow:
            return modpow(s.value, s.exp, m, max_bits_, stats.peak_bits);
        case Skel::mul: {
            Integer a = reduce(*s.l, m);
            Integer b = reduce(*s.r, m);
            ++stats.mul_count;
            check(bit_length(a) + bit_length(b));
            r = a * b;
            stats.peak_bits = std::max(stats.peak_bits, bit_length(r));
            mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
            return r;
        }
        }
        return r;
    }

    // Fallback when the modulus is negative: compute the skeleton in full.
    Integer materialize(const Skel& s) {
        switch (s.kind) {
        case Skel::leaf:
            return s.value;
        case Skel::pow: {
            std::uint64_t bound = pow_bits_bound(s.value, s.exp);
            check(bound);
            Integer r;
            mpz_pow_ui(r.get_mpz_t(), s.value.get_mpz_t(), s.exp);
            record(s.idx, r);
            return r;
        }
        case Skel::mul: {
            Integer a = materialize(*s.l);
            Integer b = materialize(*s.r);
            ++stats.mul_count;
            check(bit_length(a) + bit_length(b));
            Integer r = a * b;
            record(s.idx, r);
            return r;
        }
        }
        return {};
    }

    Integer eval_mod_rewrite(const Term& t, std::size_t idx) {
        auto skel = collect(t.lhs(), idx + 1);
        Integer m = eval(t.rhs(), idx + 1 + t.lhs().size());
        ++stats.div_count;
        if (sgn(m) == 0)
            throw DivisionByZero();
        Integer r;
        if (sgn(m) > 0) {
            r = reduce(*skel, m);
        } else {
            Integer a = materialize(*skel);
            mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        }
        record(idx, r);
        return r;
    }

    static Integer small_pow(const Integer& base, const Integer& e) {
        // |base| <= 1, e >= 0
        if (sgn(base) == 0)
            return sgn(e) == 0 ? Integer(1) : Integer(0);
        if (base == 1)
            return 1;
        return mpz_even_p(e.get_mpz_t()) ? Integer(1) : Integer(-1);
    }

    Integer apply(Op op, const Integer& a, const Integer& b) {
        Integer r;
        switch (op) {
        case Op::add:
            check(std::max(bit_length(a), bit_length(b)) + 1);
            r = a + b;
            break;
        case Op::sub:
            check(std::max(bit_length(a), bit_length(b)) + 1);
            r = a - b;
            break;
        case Op::mul:
            ++stats.mul_count;
            check(bit_length(a) + bit_length(b));
            r = a * b;
            break;
        case Op::floor_div:
            ++stats.div_count;
            if (sgn(b) == 0)
                throw DivisionByZero();
            mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            break;
        case Op::mod:
            ++stats.div_count;
            if (sgn(b) == 0)
                throw DivisionByZero();
            mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            break;
        case Op::pow: {
            ++stats.pow_count;
            if (sgn(b) < 0)
                throw NegativeExponent();
            if (cmpabs_ui(a, 1) <= 0)
                return small_pow(a, b);
            if (b >= Integer(std::to_string(kMaxExponent)))
                throw BudgetExceeded(kSaturated, max_bits_, "exponent must be below 2^63");
            std::uint64_t e = b.get_ui();
            check(pow_bits_bound(a, e));
            mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
            break;
        }
        default:
            throw std::logic_error("apply: not a binary operator");
        }
        return r;
    }

    static int cmpabs_ui(const Integer& v, unsigned long x) { return mpz_cmpabs_ui(v.get_mpz_t(), x); }

    void check(std::uint64_t bound) const {
        if (bound > max_bits_)
            throw BudgetExceeded(bound, max_bits_);
    }

    void record(std::size_t idx, const Integer& v) {
        std::uint64_t bits = bit_length(v);
        stats.peak_bits = std::max(stats.peak_bits, bits);
        if (trace_)
            (*trace_)[idx] = bits;
    }

    const Bindings& env_;
    std::uint64_t max_bits_;
    Strategy strategy_;
    std::vector<std::optional<std::uint64_t>>* trace_;
};

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required_bits, std::uint64_t max_bits, const std::string& hint)
    : Error(budget_message(required_bits, max_bits, hint)), required_bits_(required_bits), max_bits_(max_bits) {}

UnboundVariable::UnboundVariable(std::string name)
    : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}

EvalBudget::EvalBudget(std::uint64_t max_bits) : max_bits_(max_bits) {
    if (max_bits < min_bits)
        throw std::invalid_argument("budget must be at least 64 bits");
}

EvalBudget EvalBudget::from_env() {
    const char* raw = std::getenv("ATERM_BUDGET_BITS");
    if (!raw || !*raw)
        return EvalBudget();
    std::size_t used = 0;
    unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size())
        throw std::invalid_argument("ATERM_BUDGET_BITS is not an integer");
    return EvalBudget(v);
}

EvalStats& EvalStats::operator+=(const EvalStats& o) {
    peak_bits = std::max(peak_bits, o.peak_bits);
    mul_count += o.mul_count;
    pow_count += o.pow_count;
    div_count += o.div_count;
    elapsed += o.elapsed;
    return *this;
}

EvalResult evaluate(const Term& t, const Bindings& env, const EvalBudget& budget, Strategy strategy) {
    auto start = std::chrono::steady_clock::now();
    Evaluator ev(env, budget.max_bits(), strategy, nullptr);
    EvalResult out{ev.eval(t, 0), ev.stats};
    out.stats.elapsed = std::chrono::steady_clock::now() - start;
    return out;
}

TracedResult evaluate_traced(const Term& t, const Bindings& env, const EvalBudget& budget, Strategy strategy) {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<std::uint64_t>> trace(t.size());
    Evaluator ev(env, budget.max_bits(), strategy, &trace);
    Integer v = ev.eval(t, 0);
    TracedResult out{std::move(v), ev.stats, std::move(trace)};
    out.stats.elapsed = std::chrono::steady_clock::now() - start;
    return out;
}

}  // namespace aterm
