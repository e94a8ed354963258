#include "aterm/errors.hpp"
#include "aterm/eval.hpp"
#include "aterm/parse.hpp"

#include "random_terms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <typeinfo>

using namespace aterm;

namespace {

Integer eval(const char* text, const Bindings& env = {}, Strategy s = Strategy::naive) {
    return evaluate(parse(text), env, {}, s).value;
}

std::uint64_t max_node_bits(const TracedResult& r) {
    std::uint64_t m = 0;
    for (const auto& b : r.node_bits)
        if (b)
            m = std::max(m, *b);
    return m;
}

}  // namespace

TEST(Evaluate, ModIdentityExample) {
    EXPECT_EQ(eval("a - b*(a/b)", {{"a", 17}, {"b", 5}}), 2);
}

TEST(Evaluate, FloorIdentityExample) {
    EXPECT_EQ(eval("(a - a%b)/b", {{"a", 17}, {"b", 5}}), 3);
    EXPECT_EQ(eval("a/b", {{"a", 17}, {"b", 5}}), 3);
}

TEST(Evaluate, PolyBaseQuotientAtBase2) {
    // native 64-bit arithmetic as the independent route
    std::uint64_t a = 3, b = 5;
    std::uint64_t num = std::uint64_t{1} << (a + a * b);
    std::uint64_t den = ((std::uint64_t{1} << a) - 1) * ((std::uint64_t{1} << b) - 1);
    ASSERT_EQ(num / den, 1208u);
    EXPECT_EQ(eval("2^(a+a*b) / ((2^a-1)*(2^b-1))", {{"a", 3}, {"b", 5}}), 1208);
}

TEST(Evaluate, FloorDivisionRoundsTowardNegativeInfinity) {
    EXPECT_EQ(eval("(0-7)/2"), -4);
    EXPECT_EQ(eval("7/(0-2)"), -4);
    EXPECT_EQ(eval("(0-7)/(0-2)"), 3);
    EXPECT_EQ(eval("(0-8)/2"), -4);
}

TEST(Evaluate, ModSignFollowsDivisor) {
    EXPECT_EQ(eval("(0-7)%2"), 1);
    EXPECT_EQ(eval("7%(0-2)"), -1);
    EXPECT_EQ(eval("(0-7)%(0-2)"), -1);
    EXPECT_EQ(eval("0%5"), 0);
}

TEST(Evaluate, Powers) {
    EXPECT_EQ(eval("0^0"), 1);
    EXPECT_EQ(eval("0^5"), 0);
    EXPECT_EQ(eval("(0-1)^7"), -1);
    EXPECT_EQ(eval("(0-1)^8"), 1);
    EXPECT_EQ(eval("(0-2)^3"), -8);
    EXPECT_EQ(eval("2^3^2"), 512);
    // |base| <= 1 stays cheap even with a colossal exponent
    EXPECT_EQ(eval("1^(10^30)"), 1);
    EXPECT_EQ(eval("(0-1)^(10^30+1)"), -1);
}

TEST(Evaluate, Errors) {
    EXPECT_THROW(eval("1/0"), DivisionByZero);
    EXPECT_THROW(eval("1%(2-2)"), DivisionByZero);
    EXPECT_THROW(eval("2^(0-1)"), NegativeExponent);
    EXPECT_THROW(eval("x+1"), UnboundVariable);
    EXPECT_THROW(eval("2^(2^63)"), BudgetExceeded);
    EXPECT_THROW(eval("3^(2^40)"), BudgetExceeded);
    // domain errors are detected under rewrite too
    EXPECT_THROW(eval("2^5 % 0", {}, Strategy::rewrite), DivisionByZero);
    EXPECT_THROW(eval("2^(0-1) % 7", {}, Strategy::rewrite), NegativeExponent);
}

TEST(Evaluate, UnboundVariableNamesTheVariable) {
    try {
        eval("a + zeta", {{"a", 1}});
        FAIL();
    } catch (const UnboundVariable& e) {
        EXPECT_EQ(e.name(), "zeta");
    }
}

TEST(Evaluate, SignedBindings) {
    EXPECT_EQ(eval("x*x - y", {{"x", -12}, {"y", 200}}), -56);
}

TEST(Evaluate, StatsCountOperations) {
    auto r = evaluate(parse("2^10 * 3 / 4 % 5 + 1"));
    EXPECT_EQ(r.value, (1024 * 3 / 4) % 5 + 1);
    EXPECT_EQ(r.stats.pow_count, 1u);
    EXPECT_EQ(r.stats.mul_count, 1u);
    EXPECT_EQ(r.stats.div_count, 2u);
    EXPECT_GE(r.stats.peak_bits, bit_length(r.value));
    EXPECT_EQ(r.stats.peak_bits, 12u);  // 3072
}

TEST(Evaluate, RewriteMatchesNaiveOnModPow) {
    const char* cases[] = {
        "7^1000 % 1000003",
        "(0-7)^1001 % 1000003",
        "7^1000 * 3^77 % 1000003",
        "5^123 % (0-97)",
        "(2^5000 + 1)^3 % (3^2000 - 1)",
        "2^70000 % (3^45000 + 11)",  // modulus above the lazy-reduction threshold
        "123^0 % 1",
    };
    for (const char* c : cases) {
        auto naive = evaluate(parse(c), {}, {}, Strategy::naive);
        auto rew = evaluate(parse(c), {}, {}, Strategy::rewrite);
        EXPECT_EQ(naive.value, rew.value) << c;
    }
}

TEST(Evaluate, RewriteAvoidsMaterializingThePower) {
    // 3^(2^40) alone is far over budget; its residue is not.
    Term t = parse("3^(2^40) % 1000000007");
    EXPECT_THROW(evaluate(t, {}, {}, Strategy::naive), BudgetExceeded);
    auto r = evaluate(t, {}, {}, Strategy::rewrite);
    Integer expected;
    Integer e = Integer(1) << 40;
    mpz_powm(expected.get_mpz_t(), Integer(3).get_mpz_t(), e.get_mpz_t(), Integer(1000000007).get_mpz_t());
    EXPECT_EQ(r.value, expected);
}

TEST(Evaluate, TraceMarksSkippedNodes) {
    Term t = parse("3^100 % 7");
    auto naive = evaluate_traced(t);
    for (const auto& b : naive.node_bits)
        EXPECT_TRUE(b.has_value());
    auto rew = evaluate_traced(t, {}, {}, Strategy::rewrite);
    EXPECT_FALSE(rew.node_bits[1].has_value());  // the Pow
    EXPECT_TRUE(rew.node_bits[0].has_value());
    EXPECT_EQ(rew.value, naive.value);
}

TEST(Budget, RejectsBelowMinimum) {
    EXPECT_THROW(EvalBudget(63), std::invalid_argument);
    EXPECT_EQ(EvalBudget().max_bits(), std::uint64_t{1} << 30);
}

TEST(Budget, FromEnvironment) {
    ::setenv("ATERM_BUDGET_BITS", "4096", 1);
    EXPECT_EQ(EvalBudget::from_env().max_bits(), 4096u);
    ::setenv("ATERM_BUDGET_BITS", "12x", 1);
    EXPECT_THROW(EvalBudget::from_env(), std::invalid_argument);
    ::unsetenv("ATERM_BUDGET_BITS");
    EXPECT_EQ(EvalBudget::from_env().max_bits(), EvalBudget::default_bits);
}

TEST(Budget, PeaksUpToEightTimesTheBudgetAreRefused) {
    const std::uint64_t budget = 1 << 14;
    for (std::uint64_t factor : {1u, 2u, 3u, 5u, 8u}) {
        std::uint64_t target = budget * factor + 1;  // strictly over
        std::string pow_expr = "2^" + std::to_string(target - 1);
        std::string mul_expr = "2^" + std::to_string(target / 2) + "*2^" + std::to_string(target / 2 + 1);
        std::string add_expr = "2^" + std::to_string(target - 2) + "+2^" + std::to_string(target - 2);
        for (const auto& e : {pow_expr, mul_expr, add_expr}) {
            Term t = parse(e);
            // true value is at least `target` bits
            ASSERT_GE(evaluate(t, {}, EvalBudget(budget * 16)).stats.peak_bits, target) << e;
            EXPECT_THROW(evaluate(t, {}, EvalBudget(budget)), BudgetExceeded) << e;
        }
    }
}

TEST(Budget, TightPowerBoundAcceptsExactFit) {
    // 2^(budget-1) has exactly `budget` bits.
    EXPECT_NO_THROW(evaluate(parse("2^4095"), {}, EvalBudget(4096)));
    EXPECT_THROW(evaluate(parse("2^4096"), {}, EvalBudget(4096)), BudgetExceeded);
    // 3^2584 has 4096 bits
    EXPECT_EQ(bit_length(evaluate(parse("3^2584"), {}, EvalBudget(4096)).value), 4096u);
}

TEST(BudgetProperty, TruePeakOverBudgetAlwaysThrows) {
    aterm::testing::TermGen::Options opts;
    opts.max_exponent = 40;
    aterm::testing::TermGen gen(99, opts);
    int checked = 0;
    for (int i = 0; i < 1500; ++i) {
        Term t = gen.next();
        TracedResult full;
        try {
            full = evaluate_traced(t, {}, EvalBudget(1 << 22));
        } catch (const Error&) {
            continue;
        }
        std::uint64_t peak = max_node_bits(full);
        if (peak <= 64)
            continue;
        std::uint64_t small = std::max<std::uint64_t>(64, peak / (1 + i % 8));
        if (small >= peak)
            continue;
        ++checked;
        EXPECT_THROW(evaluate(t, {}, EvalBudget(small)), BudgetExceeded) << render(t);
    }
    EXPECT_GT(checked, 100);
}

TEST(Property, ModIdentity) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    Term mod = parse("a % b");
    Term expanded = parse("a - b*(a/b)");
    for (int i = 0; i < 2000; ++i) {
        long a = dist(rng), b = dist(rng);
        if (b == 0)
            continue;
        Bindings env{{"a", a}, {"b", b}};
        EXPECT_EQ(evaluate(mod, env).value, evaluate(expanded, env).value);
    }
}

TEST(Property, FloorIdentity) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> da(-1000000000, 1000000000), db(1, 100000);
    Term lhs = parse("a / b");
    Term rhs = parse("(a - a % b) / b");
    for (int i = 0; i < 2000; ++i) {
        Bindings env{{"a", da(rng)}, {"b", db(rng)}};
        Integer q = evaluate(lhs, env).value;
        EXPECT_EQ(q, evaluate(rhs, env).value);
        // (a - a mod b) is an exact multiple of b
        Integer num = evaluate(parse("a - a % b"), env).value;
        EXPECT_EQ(num, q * env["b"]);
    }
}

TEST(Property, StrategiesAgreeOnRandomTerms) {
    aterm::testing::TermGen gen(31337, {});
    int values = 0, domain_errors = 0;
    for (int i = 0; i < 3000; ++i) {
        Term t = gen.next();
        const EvalBudget budget(1 << 20);
        EvalResult naive;
        try {
            naive = evaluate(t, {}, budget, Strategy::naive);
        } catch (const BudgetExceeded&) {
            continue;
        } catch (const DomainError& e) {
            ++domain_errors;
            try {
                evaluate(t, {}, budget, Strategy::rewrite);
                ADD_FAILURE() << "rewrite succeeded where naive threw: " << render(t);
            } catch (const DomainError& r) {
                EXPECT_EQ(typeid(e), typeid(r)) << render(t);
            }
            continue;
        }
        ++values;
        auto rew = evaluate(t, {}, budget, Strategy::rewrite);
        ASSERT_EQ(naive.value, rew.value) << render(t);
    }
    EXPECT_GT(values, 1000);
    EXPECT_GT(domain_errors, 10);
}

TEST(Concurrency, SharedTermAcrossThreads) {
    Term t = parse("(x^(2*x)+1)^(2*x+1) % (x^(4*x)-x) / ((x^(2*x)+1)^(2*x) % (x^(4*x)-x)) - 1");
    Bindings env{{"x", 150}};
    Integer expected = evaluate(t, env).value;
    std::vector<Integer> got(8);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < got.size(); ++i)
        threads.emplace_back([&, i] {
            Term local = t;  // copies share nodes
            got[i] = evaluate(local, env, {}, i % 2 ? Strategy::rewrite : Strategy::naive).value;
        });
    for (auto& th : threads)
        th.join();
    for (const auto& g : got)
        EXPECT_EQ(g, expected);
    EXPECT_EQ(expected, 12);
}
