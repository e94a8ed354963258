#pragma once

#include "aterm/eval.hpp"
#include "aterm/formulas.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Verification sweeps: enumerate independent cases, check each closed form
// against its oracle, aggregate into a report whose order depends only on
// the inputs.
namespace aterm::sweep {

enum class Suite { gcd, isqrt, factorial, factor, base2_evenness };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view s);

/// Ordered name -> decimal value pairs.
using Inputs = std::vector<std::pair<std::string, std::string>>;

enum class Status { pass, mismatch, budget, excluded };

struct Check {
    std::string method;
    std::string expected;
    std::string actual;
    Status status = Status::pass;
    std::string note;
};

struct CaseRecord {
    Inputs inputs;
    std::vector<Check> checks;
    std::uint64_t peak_bits = 0;
    std::chrono::nanoseconds elapsed{0};

    /// Worst status across checks: mismatch > budget > excluded > pass.
    Status status() const;
};

struct Mismatch {
    Inputs inputs;
    std::string expected;
    std::string actual;
    std::string method;
};

struct Config {
    Suite suite = Suite::gcd;
    /// Range bounds; unset means the suite default (see default_range).
    std::optional<std::uint64_t> min;
    std::optional<std::uint64_t> max;
    /// gcd: methods to check per (a,b); empty means poly_base and modmod.
    std::vector<GcdMethod> gcd_methods;
    /// gcd: explicit base instead of auto_base.
    std::optional<Integer> base;
    /// factorial: "term" or "matiyasevich".
    std::string factorial_method = "term";
    FactorMode factor_mode = FactorMode::hybrid;
    /// factor: run the cases with omega >= kLargeOmega.
    bool large = false;
    EvalBudget budget;
};

/// omega = floor(sqrt n) at which factor cases count as stress cases:
/// gamma = 11! puts the modmod modulus near 2.8e8 bits.
inline constexpr std::uint64_t kLargeOmega = 11;

std::pair<std::uint64_t, std::uint64_t> default_range(Suite s);

struct VerificationReport {
    std::string suite;
    Inputs params;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::vector<Mismatch> mismatches;
    /// Cases that hit the bit budget; not counted in `cases`.
    std::vector<CaseRecord> budget_exceeded;
    /// Inputs outside the formula's domain, reported but not counted.
    std::vector<CaseRecord> excluded;
    /// Every case in input order.
    std::vector<CaseRecord> records;
    std::chrono::nanoseconds elapsed{0};

    bool ok() const { return mismatches.empty(); }
};

/// Expands a config into its ordered case list (inputs only).
std::vector<Inputs> enumerate_cases(const Config& cfg);

/// Runs one case. Never throws for budget or domain failures; those become
/// check statuses.
CaseRecord run_case(const Config& cfg, const Inputs& in);

using CaseFn = std::function<CaseRecord(const Inputs&)>;

/// OpenMP fan-out over cases; records land in input order.
std::vector<CaseRecord> run_cases_parallel(const std::vector<Inputs>& cases, const CaseFn& fn);
/// Plain loop. Reference for run_cases_parallel.
std::vector<CaseRecord> run_cases_serial(const std::vector<Inputs>& cases, const CaseFn& fn);

enum class Execution { parallel, serial };

VerificationReport run(const Config& cfg, Execution exec = Execution::parallel);

/// Builds the report from records already in input order.
VerificationReport summarize(const Config& cfg, std::vector<CaseRecord> records);

/// Non-square semiprimes in [lo, hi], ascending.
std::vector<std::uint64_t> semiprimes_in(std::uint64_t lo, std::uint64_t hi);

}  // namespace aterm::sweep
