#include "aterm/formulas.hpp"
#include "aterm/oracles.hpp"
#include "aterm/parse.hpp"

#include <gtest/gtest.h>

using namespace aterm;

TEST(AutoBase, Values) {
    EXPECT_EQ(auto_base(12, 18), 13);
    EXPECT_EQ(auto_base(1, 1), 4);
    EXPECT_EQ(auto_base(5, 100), 6);
    EXPECT_EQ(auto_base(2, 2), 4);
    EXPECT_EQ(auto_base(3, 9), 4);
}

TEST(GcdTerm, BaseThreeCarriesWhenBIsOne) {
    // floor(3^(2a) / ((3^a-1)*2)) = (3^a-1)/2 + 1, so the last digit is 2
    for (unsigned long a = 1; a <= 20; ++a) {
        EXPECT_EQ(gcd(a, 1, GcdMethod::poly_base, Integer(3)).value, 2) << a;
        EXPECT_EQ(gcd(a, 1, GcdMethod::modmod, Integer(3)).value, 2) << a;
        EXPECT_EQ(gcd(a, 1, GcdMethod::poly_base, Integer(4)).value, 1) << a;
    }
    EXPECT_EQ(gcd(1, 5, GcdMethod::poly_base, Integer(3)).value, 1);
}

TEST(Names, RoundTrip) {
    for (auto m : {GcdMethod::mazzanti, GcdMethod::poly_base, GcdMethod::modmod, GcdMethod::euclid})
        EXPECT_EQ(parse_gcd_method(to_string(m)), m);
    EXPECT_EQ(parse_gcd_method("poly_base"), GcdMethod::poly_base);
    EXPECT_FALSE(parse_gcd_method("binary"));
    for (auto m : {FactorMode::pure, FactorMode::hybrid, FactorMode::oracle})
        EXPECT_EQ(parse_factor_mode(to_string(m)), m);
    EXPECT_FALSE(parse_factor_mode("fast"));
}

TEST(GcdTerm, Examples) {
    for (auto m : {GcdMethod::mazzanti, GcdMethod::poly_base, GcdMethod::modmod, GcdMethod::euclid}) {
        EXPECT_EQ(gcd(12, 18, m).value, 6) << to_string(m);
        EXPECT_EQ(gcd(7, 7, m).value, 7) << to_string(m);
        EXPECT_EQ(gcd(1, 9, m).value, 1) << to_string(m);
        EXPECT_EQ(gcd(13, 8, m).value, 1) << to_string(m);
    }
}

TEST(GcdTerm, RenderedFormEvaluatesTheSame) {
    Term t = build_gcd_term(12, 18, GcdMethod::poly_base);
    EXPECT_EQ(render(t), "13^(12+12*18)/((13^12-1)*(13^18-1))%13");
    EXPECT_EQ(evaluate(parse(render(t))).value, 6);
}

TEST(GcdTerm, ExplicitBase) {
    EXPECT_EQ(gcd(12, 18, GcdMethod::poly_base, Integer(100)).value, 6);
    EXPECT_EQ(gcd(12, 18, GcdMethod::modmod, Integer(7)).value, 6);
    EXPECT_THROW(build_gcd_term(12, 18, GcdMethod::poly_base, Integer(2)), InvalidBase);
    EXPECT_THROW(build_gcd_term(12, 18, GcdMethod::modmod, Integer(6)), InvalidBase);
    EXPECT_THROW(build_gcd_term(4, 6, GcdMethod::modmod, Integer(-3)), InvalidBase);
}

TEST(GcdTerm, Preconditions) {
    EXPECT_THROW(build_gcd_term(0, 5, GcdMethod::poly_base), PreconditionError);
    EXPECT_THROW(build_gcd_term(5, 5, GcdMethod::euclid), PreconditionError);
    EXPECT_THROW(build_gcd_term(25, 5, GcdMethod::mazzanti), PreconditionError);
    EXPECT_NO_THROW(build_gcd_term(24, 5, GcdMethod::mazzanti));
    EXPECT_EQ(gcd(4, 6, GcdMethod::mazzanti).base, 16 * 16 * 16 * 16 * 16 * 16);
}

TEST(GcdTerm, MethodsAgreeWithEuclid) {
    for (unsigned long a = 1; a <= 16; ++a)
        for (unsigned long b = 1; b <= 16; ++b) {
            Integer want = oracles::gcd_euclid(a, b);
            for (auto m : {GcdMethod::poly_base, GcdMethod::modmod})
                ASSERT_EQ(gcd(a, b, m).value, want) << a << "," << b << " " << to_string(m);
            ASSERT_EQ(gcd(b, a, GcdMethod::modmod).value, want);
            if (a <= 8 && b <= 8)
                ASSERT_EQ(gcd(a, b, GcdMethod::mazzanti).value, want) << a << "," << b;
        }
}

TEST(GcdTerm, ModmodStrategiesAgree) {
    for (unsigned long a = 1; a <= 10; ++a)
        for (unsigned long b = 1; b <= 10; ++b)
            ASSERT_EQ(gcd(a, b, GcdMethod::modmod, std::nullopt, {}, Strategy::naive).value,
                      gcd(a, b, GcdMethod::modmod, std::nullopt, {}, Strategy::rewrite).value);
}

TEST(IsqrtTerm, WorkedCase) {
    // n = 3: (3^6+1)^7 mod (3^12-3) over (3^6+1)^6 mod (3^12-3), minus 1
    Integer m = 531438, num, den;
    mpz_powm_ui(num.get_mpz_t(), Integer(730).get_mpz_t(), 7, m.get_mpz_t());
    mpz_powm_ui(den.get_mpz_t(), Integer(730).get_mpz_t(), 6, m.get_mpz_t());
    EXPECT_EQ(num, 239680);
    EXPECT_EQ(den, 87688);
    EXPECT_EQ(evaluate(build_isqrt_term(3)).value, Integer(239680 / 87688 - 1));
    EXPECT_EQ(evaluate(build_isqrt_term(3)).value, 1);
}

TEST(IsqrtTerm, MatchesOracle) {
    for (unsigned long n = 3; n <= 120; ++n) {
        if (oracles::is_square(n))
            continue;
        ASSERT_EQ(evaluate(build_isqrt_term(n), {}, {}, Strategy::rewrite).value, oracles::isqrt(n)) << n;
    }
}

TEST(IsqrtTerm, Domain) {
    EXPECT_THROW(build_isqrt_term(2), PreconditionError);
    EXPECT_THROW(build_isqrt_term(16), PreconditionError);
    // outside the domain the formula drifts from floor(sqrt n)
    EXPECT_EQ(evaluate(instantiate_isqrt_term(2)).value, 0);
}

TEST(FactorialTerm, SmallValues) {
    EXPECT_EQ(evaluate(build_factorial_term(2)).value, 2);
    EXPECT_EQ(evaluate(build_factorial_term(3)).value, 6);
    EXPECT_EQ(evaluate(build_factorial_term(5)).value, 120);
    EXPECT_THROW(build_factorial_term(1), PreconditionError);
    EXPECT_THROW(evaluate(instantiate_factorial_term(1)), DivisionByZero);
}

TEST(Base2Quotient, ParityIsMixed) {
    // The quotient is not always even: 2^4 / (3*1) = 5.
    EXPECT_EQ(evaluate(build_base2_quotient_term(2, 1)).value, 5);
    EXPECT_EQ(evaluate(build_base2_quotient_term(1, 1)).value, 4);
    int odd = 0;
    for (unsigned long a = 1; a <= 16; ++a)
        for (unsigned long b = 1; b <= 16; ++b) {
            Integer q = evaluate(build_base2_quotient_term(a, b)).value;
            Integer want = (Integer(1) << (a + a * b)) / (((Integer(1) << a) - 1) * ((Integer(1) << b) - 1));
            ASSERT_EQ(q, want);
            odd += mpz_odd_p(q.get_mpz_t()) != 0;
        }
    EXPECT_EQ(odd, 56);
}

TEST(Factor, Examples) {
    for (auto mode : {FactorMode::pure, FactorMode::hybrid, FactorMode::oracle}) {
        auto r = factor_semiprime(15, mode);
        EXPECT_EQ(r.p, 3);
        EXPECT_EQ(r.q, 5);
        EXPECT_TRUE(r.verified);
        EXPECT_FALSE(r.outside_paper_formula);
        EXPECT_EQ(r.omega, 3);
    }
    auto r = factor_semiprime(77, FactorMode::hybrid);
    EXPECT_EQ(r.p, 7);
    EXPECT_EQ(r.q, 11);
    EXPECT_EQ(r.gamma_bits, 16u);
    EXPECT_EQ(factor_semiprime(77, FactorMode::oracle).gamma_bits, 0u);
}

TEST(Factor, HybridMatchesOracleUpTo60) {
    for (unsigned long n = 6; n <= 60; ++n) {
        if (!oracles::is_semiprime(n) || oracles::is_square(n))
            continue;
        auto h = factor_semiprime(n, FactorMode::hybrid);
        auto o = factor_semiprime(n, FactorMode::oracle);
        ASSERT_EQ(h.p, o.p) << n;
        ASSERT_EQ(h.q, o.q) << n;
    }
}

TEST(Factor, PrimeSquare) {
    auto r = factor_semiprime(49, FactorMode::hybrid);
    EXPECT_EQ(r.p, 7);
    EXPECT_EQ(r.q, 7);
    EXPECT_TRUE(r.outside_paper_formula);
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(totient_semiprime(49, FactorMode::hybrid), 42);
    EXPECT_THROW(factor_semiprime(36, FactorMode::oracle), NotSemiprime);
}

TEST(Factor, RejectsNonSemiprimes) {
    EXPECT_THROW(factor_semiprime(5, FactorMode::oracle), PreconditionError);
    EXPECT_THROW(factor_semiprime(13, FactorMode::hybrid), NotSemiprime);
    EXPECT_THROW(factor_semiprime(30, FactorMode::hybrid), NotSemiprime);
    EXPECT_THROW(factor_semiprime(30, FactorMode::oracle), NotSemiprime);
    try {
        factor_semiprime(30, FactorMode::hybrid);
    } catch (const NotSemiprime& e) {
        EXPECT_FALSE(e.result().verified);
        EXPECT_EQ(e.result().n, 30);
    }
}

TEST(Factor, PureModeReportsBudget) {
    try {
        factor_semiprime(143, FactorMode::pure, EvalBudget(1 << 20));
        FAIL();
    } catch (const BudgetExceeded& e) {
        EXPECT_GT(e.required_bits(), 1u << 20);
        EXPECT_NE(std::string(e.what()).find("hybrid"), std::string::npos);
    }
}

TEST(Totient, Examples) {
    EXPECT_EQ(totient_semiprime(21, FactorMode::hybrid), 12);
    EXPECT_EQ(totient_semiprime(6, FactorMode::pure), 2);
    for (unsigned long n : {6ul, 10ul, 35ul, 55ul, 91ul, 119ul})
        EXPECT_EQ(totient_semiprime(n, FactorMode::hybrid), oracles::totient(n)) << n;
}
