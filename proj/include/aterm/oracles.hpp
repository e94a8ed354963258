#pragma once

#include "aterm/term.hpp"

#include <cstdint>
#include <vector>

// Classical reference algorithms. These never build or evaluate Terms; they
// are the ground truth the closed forms are checked against.
namespace aterm::oracles {

/// Euclid's algorithm. Throws PreconditionError when a == b == 0 or either is negative.
Integer gcd_euclid(Integer a, Integer b);

/// floor(sqrt(n)) by Newton iteration. Throws PreconditionError for n < 0.
Integer isqrt(const Integer& n);

bool is_square(const Integer& n);

Integer factorial(std::uint64_t k);

/// C(r, k) by the running product prod_{i=1..k} (r-k+i)/i, exact at every step.
Integer binomial(const Integer& r, std::uint64_t k);

/// floor(r^k / C(r, k)) with r = (k+1)^(k+2); equals k! for k >= 2.
Integer factorial_matiyasevich(std::uint64_t k);

/// Prime factors of n >= 2 in non-decreasing order, with multiplicity.
std::vector<Integer> trial_division(const Integer& n);

bool is_prime(const Integer& n);
bool is_semiprime(const Integer& n);

/// Euler's totient from the trial-division factorization (n >= 1).
Integer totient(const Integer& n);

}  // namespace aterm::oracles
