#include "aterm/modpow.hpp"

#include "aterm/errors.hpp"

#include <algorithm>
#include <bit>

namespace aterm {

namespace {

// Reduction by a fixed modulus. Past kBarrettThresholdBits a precomputed
// reciprocal mu = floor(4^k / m) turns each reduction into two
// multiplications, which beats GMP's division at these sizes.
class Reducer {
public:
    explicit Reducer(const Integer& m) : m_(m), k_(bit_length(m)) {
        if (k_ >= kBarrettThresholdBits) {
            mu_ = 1;
            mu_ <<= static_cast<mp_bitcnt_t>(2 * k_);
            mpz_tdiv_q(mu_.get_mpz_t(), mu_.get_mpz_t(), m.get_mpz_t());
        }
    }

    // x >= 0
    void reduce(Integer& x, std::uint64_t& peak_bits) {
        if (x < m_)
            return;
        std::uint64_t xbits = bit_length(x);
        if (sgn(mu_) == 0 || xbits < k_ + 64 || xbits > 2 * k_) {
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m_.get_mpz_t());
            return;
        }
        mpz_tdiv_q_2exp(q_.get_mpz_t(), x.get_mpz_t(), k_ - 1);
        q_ *= mu_;
        peak_bits = std::max(peak_bits, bit_length(q_));
        mpz_tdiv_q_2exp(q_.get_mpz_t(), q_.get_mpz_t(), k_ + 1);
        q_ *= m_;
        x -= q_;
        while (x >= m_)  // at most twice
            x -= m_;
    }

private:
    const Integer& m_;
    std::uint64_t k_;
    Integer mu_;
    Integer q_;
};

}  // namespace

Integer modpow(const Integer& base, std::uint64_t exp, const Integer& m, std::uint64_t max_bits,
               std::uint64_t& peak_bits) {
    std::uint64_t mbits = bit_length(m);
    std::uint64_t need = 2 * mbits + (mbits >= kBarrettThresholdBits ? 2 : 0);
    if (need > max_bits)
        throw BudgetExceeded(need, max_bits, "modular exponentiation squares below the modulus");

    Integer b;
    mpz_fdiv_r(b.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t());
    Integer acc;

    if (mbits <= kLazyThresholdBits) {
        mpz_powm_ui(acc.get_mpz_t(), b.get_mpz_t(), exp, m.get_mpz_t());
        peak_bits = std::max(peak_bits, 2 * mbits);
        return acc;
    }

    if (exp == 0) {
        acc = 1;
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        return acc;
    }

    Reducer red(m);
    acc = b;
    int top = 63 - std::countl_zero(exp);
    for (int i = top - 1; i >= 0; --i) {
        mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), acc.get_mpz_t());
        peak_bits = std::max(peak_bits, bit_length(acc));
        red.reduce(acc, peak_bits);
        if ((exp >> i) & 1u) {
            mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), b.get_mpz_t());
            peak_bits = std::max(peak_bits, bit_length(acc));
            red.reduce(acc, peak_bits);
        }
    }
    peak_bits = std::max(peak_bits, bit_length(acc));
    return acc;
}

}  // namespace aterm
