#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace coindiff {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with positive denominator.
using Scalar = mpq_class;

/// Convention for the first Bernoulli number: B_1 = -1/2 or B_1 = +1/2.
/// All other Bernoulli numbers agree between the two conventions.
enum class BernoulliSign : std::uint8_t { Minus, Plus };

const char* to_string(BernoulliSign sign);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Bernoulli number b_n under the given convention. Memoized; safe to call
/// concurrently.
Scalar bernoulli(unsigned n, BernoulliSign sign);

/// Bernoulli number under the convention the path-integral engine was
/// calibrated to (see conventions.hpp).
Scalar bernoulli(unsigned n);

/// c(k, n) = sum_{k <= i <= n} b_{n-i} / (i! (n-i)!).
/// Throws std::domain_error when k > n.
Scalar c_coeff(unsigned k, unsigned n, BernoulliSign sign);
Scalar c_coeff(unsigned k, unsigned n);

bool is_zero(const Scalar& s);

/// Rational as "p" or "p/q".
std::string to_string(const Scalar& s);

/// Parses "p", "-p", "p/q"; throws std::invalid_argument on malformed input.
Scalar parse_scalar(const std::string& text);

} // namespace coindiff
