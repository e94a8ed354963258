#include "aterm/errors.hpp"
#include "aterm/parse.hpp"

#include "random_terms.hpp"

#include <gtest/gtest.h>

using namespace aterm;

namespace {
Term var(const char* n) { return Term::variable(n); }
Term lit(unsigned long v) { return Term::literal(v); }
}  // namespace

TEST(Parse, PowerWithSum) {
    EXPECT_EQ(parse("x^(a+a*b)"), pow(var("x"), var("a") + var("a") * var("b")));
}

TEST(Parse, PowerIsRightAssociative) {
    EXPECT_EQ(parse("2^3^2"), pow(lit(2), pow(lit(3), lit(2))));
}

TEST(Parse, ModOperator) {
    EXPECT_EQ(parse("a % b"), var("a") % var("b"));
}

TEST(Parse, Precedence) {
    EXPECT_EQ(parse("a+b*c^d"), var("a") + var("b") * pow(var("c"), var("d")));
    EXPECT_EQ(parse("a-b-c"), (var("a") - var("b")) - var("c"));
    EXPECT_EQ(parse("a/b%c*d"), ((var("a") / var("b")) % var("c")) * var("d"));
    EXPECT_EQ(parse("0 - x % y"), lit(0) - (var("x") % var("y")));
}

TEST(Parse, WhitespaceInsensitive) {
    EXPECT_EQ(parse("  x ^ ( a + a * b ) "), parse("x^(a+a*b)"));
    EXPECT_EQ(parse("\tfoo_1\n*\n2"), var("foo_1") * lit(2));
}

TEST(Parse, BigLiterals) {
    Term t = parse("340282366920938463463374607431768211456");
    EXPECT_EQ(t.value(), Integer(1) << 128);
}

TEST(Parse, ErrorsCarryPosition) {
    auto position_of = [](const char* text) -> std::size_t {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    EXPECT_EQ(position_of("-5"), 0u);
    EXPECT_EQ(position_of("a + -5"), 4u);
    EXPECT_EQ(position_of("(a+b"), 4u);
    EXPECT_EQ(position_of("a+"), 2u);
    EXPECT_EQ(position_of("a b"), 2u);
    EXPECT_EQ(position_of("2x"), 1u);
    EXPECT_EQ(position_of(""), 0u);
    EXPECT_EQ(position_of("a $ b"), 2u);
    EXPECT_EQ(position_of("()"), 1u);
}

TEST(Render, Examples) {
    EXPECT_EQ(render(pow(var("x"), var("a") + var("a") * var("b"))), "x^(a+a*b)");
    EXPECT_EQ(render(lit(0)), "0");
    EXPECT_EQ(render(lit(0) - var("a")), "0-a");
}

TEST(Render, MinimalParentheses) {
    EXPECT_EQ(render(parse("(a+b)+c")), "a+b+c");
    EXPECT_EQ(render(parse("a+(b+c)")), "a+(b+c)");
    EXPECT_EQ(render(parse("a-(b-c)")), "a-(b-c)");
    EXPECT_EQ(render(parse("(a*b)/c")), "a*b/c");
    EXPECT_EQ(render(parse("a/(b*c)")), "a/(b*c)");
    EXPECT_EQ(render(parse("(2^3)^2")), "(2^3)^2");
    EXPECT_EQ(render(parse("2^(3^2)")), "2^3^2");
    EXPECT_EQ(render(parse("(a+b)^(c*d)")), "(a+b)^(c*d)");
    EXPECT_EQ(render(parse("((x))")), "x");
}

TEST(RenderProperty, RoundTripRandomTerms) {
    aterm::testing::TermGen::Options opts;
    opts.vars = {"a", "b", "x", "long_name"};
    opts.max_literal = 1000000;
    aterm::testing::TermGen gen(20240611, opts);
    for (int i = 0; i < 2000; ++i) {
        Term t = gen.next();
        std::string text = render(t);
        ASSERT_EQ(parse(text), t) << text;
        // rendering is a fixed point
        ASSERT_EQ(render(parse(text)), text);
    }
}
