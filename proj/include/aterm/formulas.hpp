#pragma once

#include "aterm/errors.hpp"
#include "aterm/eval.hpp"
#include "aterm/term.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace aterm {

enum class GcdMethod { mazzanti, poly_base, modmod, euclid };
enum class FactorMode { pure, hybrid, oracle };

std::string_view to_string(GcdMethod m);
std::string_view to_string(FactorMode m);
/// Accepts both `poly-base` and `poly_base` spellings.
std::optional<GcdMethod> parse_gcd_method(std::string_view s);
std::optional<FactorMode> parse_factor_mode(std::string_view s);

/// Largest a or b the mazzanti term accepts; its top power is 2^(a^2 b (b+1)).
inline constexpr unsigned long kMazzantiCap = 24;

/// max(4, min(a,b)+1): above any possible gcd(a,b). Base 3 meets the stated
/// n > 2, n > gcd(a,b) but fails at b = 1: the quotient there is
/// (n^a-1)/(n-1) + 2/(n-1) + eps, and 2/(n-1) carries into the last digit.
Integer auto_base(const Integer& a, const Integer& b);

/// Closed term for gcd(a,b).
///   mazzanti:  floor((2^(a^2 b(b+1)) - 2^(a^2 b))(2^(a^2 b^2) - 1)
///                    / ((2^(a^2 b) - 1)(2^(a b^2) - 1) 2^(a^2 b^2))) mod 2^(ab)
///   poly_base: floor(n^(a+ab) / ((n^a - 1)(n^b - 1))) mod n
///   modmod:    (0 - n^(a+ab) mod (n^(a+b) - n^a - n^b + 1)) mod n
/// `base` defaults to auto_base(a, b) and is ignored by mazzanti.
/// Throws PreconditionError for a, b < 1, mazzanti beyond kMazzantiCap, or
/// euclid (no term form); InvalidBase when base <= 2 or base <= gcd(a,b).
Term build_gcd_term(const Integer& a, const Integer& b, GcdMethod method,
                    const std::optional<Integer>& base = std::nullopt);

struct GcdOutcome {
    Integer value;
    /// Base the term was instantiated at; 2^(ab) for mazzanti, 0 for euclid.
    Integer base;
    EvalStats stats;
};

/// modmod defaults to the rewrite strategy, the other term methods to naive.
GcdOutcome gcd(const Integer& a, const Integer& b, GcdMethod method,
               const std::optional<Integer>& base = std::nullopt, const EvalBudget& budget = {},
               std::optional<Strategy> strategy = std::nullopt);

/// floor(((n^(2n)+1)^(2n+1) mod (n^(4n)-n)) / ((n^(2n)+1)^(2n) mod (n^(4n)-n))) - 1
/// Evaluates to floor(sqrt(n)) for non-square n >= 3. Throws PreconditionError otherwise.
Term build_isqrt_term(const Integer& n);

/// The isqrt formula instantiated at any n >= 0 without domain checks, for
/// probing where it stops agreeing with floor(sqrt(n)) (it gives 0 at n = 2).
Term instantiate_isqrt_term(const Integer& n);

/// With c = (w+1)^(w(w+2)):
///   floor(c / (floor((c+1)^((w+1)^(w+2)) / (w+1)^(w^2 (w+2))) mod c))
/// Evaluates to w! for w >= 2; at w = 1 the inner remainder is 0.
Term build_factorial_term(const Integer& w);
Term instantiate_factorial_term(const Integer& w);

/// floor(2^(a+ab) / ((2^a - 1)(2^b - 1))): the poly_base quotient at the
/// excluded base 2, which is always even.
Term build_base2_quotient_term(const Integer& a, const Integer& b);

struct FactorResult {
    Integer n;
    Integer p;
    Integer q;
    FactorMode mode = FactorMode::hybrid;
    Integer omega;
    /// Bit length of gamma = omega!; 0 in oracle mode, which never forms gamma.
    std::uint64_t gamma_bits = 0;
    bool verified = false;
    /// n is a prime square: p = q = sqrt(n) from the oracle, not from the closed forms.
    bool outside_paper_formula = false;
    EvalStats stats;
};

/// Raised when the pipeline's output fails verification (p*q != n, p >= q,
/// or a factor is not prime). Carries what was computed.
class NotSemiprime : public Error {
public:
    explicit NotSemiprime(FactorResult result);
    const FactorResult& result() const noexcept { return result_; }

private:
    FactorResult result_;
};

/// p = gcd(n, floor(sqrt n)!) through the closed forms, q = n / p.
///   pure:   omega, gamma and p all by term evaluation (poly_base at base n)
///   hybrid: omega and gamma by oracle, p by the modmod term with rewrite
///   oracle: trial division
/// Throws PreconditionError for n < 6, NotSemiprime, BudgetExceeded.
FactorResult factor_semiprime(const Integer& n, FactorMode mode, const EvalBudget& budget = {});

/// (p-1)(q-1) from factor_semiprime. For a flagged prime square returns p(p-1).
Integer totient_semiprime(const Integer& n, FactorMode mode, const EvalBudget& budget = {});

}  // namespace aterm
