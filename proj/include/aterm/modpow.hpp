#pragma once

#include "aterm/term.hpp"

#include <cstdint>

namespace aterm {

/// base^exp mod m for m > 0, result in [0, m).
///
/// Small moduli go through mpz_powm. Above `kLazyThresholdBits` the product
/// is squared left-to-right and reduced only once it reaches m, so while
/// base^prefix < m the work stays below the modulus size. For the huge
/// moduli of the factor pipeline that avoids most full-size reductions.
///
/// Moduli of kBarrettThresholdBits or more reduce with a precomputed
/// reciprocal (Barrett), whose product may reach 2*bits(m)+2 bits.
///
/// `peak_bits` receives the largest intermediate bit length.
/// Throws BudgetExceeded if 2*bits(m) (+2 on the Barrett path) exceeds max_bits.
Integer modpow(const Integer& base, std::uint64_t exp, const Integer& m, std::uint64_t max_bits,
               std::uint64_t& peak_bits);

inline constexpr std::uint64_t kLazyThresholdBits = 1u << 16;
inline constexpr std::uint64_t kBarrettThresholdBits = 1u << 22;

}  // namespace aterm
