#include "aterm/oracles.hpp"

#include "aterm/errors.hpp"

#include <algorithm>

namespace aterm::oracles {

Integer gcd_euclid(Integer a, Integer b) {
    if (sgn(a) < 0 || sgn(b) < 0)
        throw PreconditionError("gcd_euclid: arguments must be non-negative");
    if (sgn(a) == 0 && sgn(b) == 0)
        throw PreconditionError("gcd_euclid: gcd(0, 0) is undefined");
    while (sgn(b) != 0) {
        Integer r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0)
        throw PreconditionError("isqrt: negative argument");
    if (n < 2)
        return n;
    // Start above the root; Newton decreases monotonically to floor(sqrt(n)).
    Integer x = Integer(1) << ((bit_length(n) + 1) / 2);
    for (;;) {
        Integer y = (x + n / x) >> 1;
        if (y >= x)
            return x;
        x = std::move(y);
    }
}

bool is_square(const Integer& n) {
    if (sgn(n) < 0)
        return false;
    Integer r = isqrt(n);
    return r * r == n;
}

Integer factorial(std::uint64_t k) {
    Integer out = 1;
    for (std::uint64_t i = 2; i <= k; ++i)
        out *= static_cast<unsigned long>(i);
    return out;
}

Integer binomial(const Integer& r, std::uint64_t k) {
    if (sgn(r) < 0 || r < Integer(static_cast<unsigned long>(k)))
        throw PreconditionError("binomial: need 0 <= k <= r");
    Integer out = 1;
    Integer top = r - static_cast<unsigned long>(k);
    for (std::uint64_t i = 1; i <= k; ++i) {
        top += 1;
        out *= top;
        // out == i * C(r-k+i, i) here
        mpz_divexact_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return out;
}

Integer factorial_matiyasevich(std::uint64_t k) {
    if (k < 2)
        throw PreconditionError("factorial_matiyasevich: k >= 2");
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(k + 2));
    Integer rk;
    mpz_pow_ui(rk.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(k));
    return rk / binomial(r, k);
}

std::vector<Integer> trial_division(const Integer& n) {
    if (n < 2)
        throw PreconditionError("trial_division: n >= 2");
    std::vector<Integer> out;
    Integer rest = n;
    auto strip = [&](const Integer& d) {
        while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
        }
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel
    for (Integer d = 5; d * d <= rest; d += 6) {
        strip(d);
        Integer d2 = d + 2;
        strip(d2);
    }
    if (rest > 1)
        out.push_back(rest);
    return out;
}

bool is_prime(const Integer& n) {
    if (n < 2)
        return false;
    return trial_division(n).size() == 1;
}

bool is_semiprime(const Integer& n) {
    if (n < 4)
        return false;
    return trial_division(n).size() == 2;
}

Integer totient(const Integer& n) {
    if (n < 1)
        throw PreconditionError("totient: n >= 1");
    if (n == 1)
        return 1;
    auto f = trial_division(n);
    Integer out = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i > 0 && f[i] == f[i - 1])
            out *= f[i];
        else
            out *= f[i] - 1;
    }
    return out;
}

}  // namespace aterm::oracles
