#pragma once

#include "aterm/eval.hpp"
#include "aterm/term.hpp"

#include <cstdint>
#include <vector>

namespace aterm {

/// Conservative bit-length bounds, one per node in preorder.
struct SizeEstimate {
    std::vector<std::uint64_t> node_bits;
    /// Largest per-node bound: the peak any naive evaluation can reach.
    std::uint64_t total_bound_bits = 0;
    std::uint64_t root_bits = 0;
};

/// Rules: bits(a+-b) <= max+1, bits(ab) <= bits(a)+bits(b),
/// bits(a^e) <= e*bits(a) with e evaluated exactly, bits(a/b) <= bits(a),
/// bits(a%b) <= bits(b). Bounds saturate at UINT64_MAX.
/// Exponent subterms are evaluated under `budget`; nothing else is.
/// Throws UnboundVariable, DivisionByZero for a literal zero divisor,
/// NegativeExponent, or BudgetExceeded from an exponent evaluation.
SizeEstimate estimate_bits(const Term& t, const Bindings& env = {}, const EvalBudget& budget = {});

}  // namespace aterm
