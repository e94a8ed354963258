#include "aterm/estimate.hpp"

#include "aterm/errors.hpp"

#include <algorithm>
#include <limits>

namespace aterm {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSat / a)
        return kSat;
    return a * b;
}

bool is_zero_literal(const Term& t) { return t.op() == Op::literal && sgn(t.value()) == 0; }

class Estimator {
public:
    Estimator(const Bindings& env, const EvalBudget& budget, std::size_t n)
        : env_(env), budget_(budget) {
        out.node_bits.assign(n, 0);
    }

    std::uint64_t visit(const Term& t, std::size_t idx) {
        std::uint64_t bits = 0;
        switch (t.op()) {
        case Op::literal:
            bits = bit_length(t.value());
            break;
        case Op::variable: {
            auto it = env_.find(t.name());
            if (it == env_.end())
                throw UnboundVariable(t.name());
            bits = bit_length(it->second);
            break;
        }
        default: {
            std::uint64_t l = visit(t.lhs(), idx + 1);
            std::uint64_t r = visit(t.rhs(), idx + 1 + t.lhs().size());
            bits = combine(t, l, r);
        }
        }
        out.node_bits[idx] = bits;
        out.total_bound_bits = std::max(out.total_bound_bits, bits);
        return bits;
    }

    SizeEstimate out;

private:
    std::uint64_t combine(const Term& t, std::uint64_t l, std::uint64_t r) {
        switch (t.op()) {
        case Op::add:
        case Op::sub:
            return sat_add(std::max(l, r), 1);
        case Op::mul:
            return sat_add(l, r);
        case Op::floor_div:
            if (is_zero_literal(t.rhs()))
                throw DivisionByZero();
            return l;
        case Op::mod:
            if (is_zero_literal(t.rhs()))
                throw DivisionByZero();
            return r;
        case Op::pow: {
            Integer e = evaluate(t.rhs(), env_, budget_, Strategy::rewrite).value;
            if (sgn(e) < 0)
                throw NegativeExponent();
            if (sgn(e) == 0)
                return 1;
            if (!e.fits_ulong_p())
                return kSat;
            return std::max<std::uint64_t>(1, sat_mul(e.get_ui(), l));
        }
        default:
            return 0;
        }
    }

    const Bindings& env_;
    const EvalBudget& budget_;
};

}  // namespace

SizeEstimate estimate_bits(const Term& t, const Bindings& env, const EvalBudget& budget) {
    Estimator est(env, budget, t.size());
    est.out.root_bits = est.visit(t, 0);
    return est.out;
}

}  // namespace aterm
