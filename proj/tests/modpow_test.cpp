#include "aterm/errors.hpp"
#include "aterm/modpow.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aterm;

namespace {

Integer reference(const Integer& b, std::uint64_t e, const Integer& m) {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), e, m.get_mpz_t());
    return r;
}

Integer random_bits(gmp_randclass& g, std::uint64_t bits) { return g.get_z_bits(bits); }

}  // namespace

TEST(Modpow, SmallModulusPath) {
    std::uint64_t peak = 0;
    EXPECT_EQ(modpow(3, 200, 1000000007, 1 << 20, peak), reference(3, 200, 1000000007));
    EXPECT_EQ(modpow(3, 0, 7, 1 << 20, peak), 1);
    EXPECT_EQ(modpow(3, 5, 1, 1 << 20, peak), 0);
    EXPECT_EQ(modpow(-3, 3, 7, 1 << 20, peak), 1);  // -27 mod 7
}

TEST(Modpow, LazyPathAgreesWithPowm) {
    gmp_randclass g(gmp_randinit_default);
    g.seed(17);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 12; ++i) {
        Integer m = random_bits(g, kLazyThresholdBits + 1 + rng() % 50000) + 1;
        Integer b = i % 3 == 0 ? Integer(static_cast<unsigned long>(2 + rng() % 200)) : random_bits(g, 70000);
        if (i % 4 == 1)
            b = -b;
        std::uint64_t e = rng() % 5000;
        std::uint64_t peak = 0;
        EXPECT_EQ(modpow(b, e, m, 1 << 22, peak), reference(b, e, m)) << i;
        EXPECT_LE(peak, 2 * bit_length(m));
    }
}

TEST(Modpow, LazyPathExponentEdgeCases) {
    Integer m = (Integer(1) << (kLazyThresholdBits + 5)) + 12345;
    std::uint64_t peak = 0;
    EXPECT_EQ(modpow(5, 0, m, 1 << 22, peak), 1);
    EXPECT_EQ(modpow(5, 1, m, 1 << 22, peak), 5);
    EXPECT_EQ(modpow(m + 5, 1, m, 1 << 22, peak), 5);
    EXPECT_EQ(modpow(7, 123456789, m, 1 << 22, peak), reference(7, 123456789, m));
}

TEST(Modpow, BudgetCoversTheSquare) {
    std::uint64_t peak = 0;
    Integer m = Integer(1) << 100;
    EXPECT_THROW(modpow(3, 10, m, 150, peak), BudgetExceeded);
    EXPECT_NO_THROW(modpow(3, 10, m, 202, peak));
}

TEST(Modpow, BarrettPathAgreesWithPowm) {
    gmp_randclass g(gmp_randinit_default);
    g.seed(29);
    std::uint64_t peak = 0;
    Integer m = random_bits(g, kBarrettThresholdBits + 1000) | 1;
    m |= Integer(1) << (kBarrettThresholdBits + 999);
    // small base: the product outgrows m after a few squarings, then every
    // step runs a Barrett reduction
    Integer got = modpow(3, (1u << 23) + 12345, m, 1ull << 30, peak);
    Integer want;
    mpz_powm_ui(want.get_mpz_t(), Integer(3).get_mpz_t(), (1u << 23) + 12345, m.get_mpz_t());
    EXPECT_EQ(got, want);
    EXPECT_LE(peak, 2 * bit_length(m) + 2);
}
