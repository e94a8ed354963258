#pragma once

#include "aterm/term.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace aterm {

/// Ceiling on the bit length of any intermediate value.
class EvalBudget {
public:
    static constexpr std::uint64_t default_bits = std::uint64_t{1} << 30;
    static constexpr std::uint64_t min_bits = 64;

    EvalBudget() = default;
    /// Throws std::invalid_argument when max_bits < 64.
    explicit EvalBudget(std::uint64_t max_bits);

    std::uint64_t max_bits() const { return max_bits_; }

    /// Default budget, overridden by ATERM_BUDGET_BITS when set and valid.
    static EvalBudget from_env();

private:
    std::uint64_t max_bits_ = default_bits;
};

struct EvalStats {
    std::uint64_t peak_bits = 0;
    std::uint64_t mul_count = 0;
    std::uint64_t pow_count = 0;
    std::uint64_t div_count = 0;
    std::chrono::nanoseconds elapsed{0};

    EvalStats& operator+=(const EvalStats& o);
};

enum class Strategy {
    naive,
    /// Mod(Pow(b,e), m) and Mod(Mul-tree of Pows, m) evaluate by modular
    /// exponentiation; results are bit-identical to naive.
    rewrite,
};

struct EvalResult {
    Integer value;
    EvalStats stats;
};

/// Exact evaluation. Division floors toward -inf; a % b == a - b*(a/b); 0^0 == 1.
/// Throws UnboundVariable, DivisionByZero, NegativeExponent, BudgetExceeded.
/// Before each operation the result's bit length is bounded from the actual
/// operand sizes; the operation is refused if the bound exceeds the budget.
EvalResult evaluate(const Term& t, const Bindings& env = {}, const EvalBudget& budget = {},
                    Strategy strategy = Strategy::naive);

/// Like evaluate, but also records the bit length of every node value that
/// was materialized, indexed by preorder position. Nodes skipped by the
/// rewrite strategy (the Pow under a rewritten Mod) stay empty.
struct TracedResult {
    Integer value;
    EvalStats stats;
    std::vector<std::optional<std::uint64_t>> node_bits;
};

TracedResult evaluate_traced(const Term& t, const Bindings& env = {}, const EvalBudget& budget = {},
                             Strategy strategy = Strategy::naive);

}  // namespace aterm
