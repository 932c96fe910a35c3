#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace vhodge {

using Integer = mpz_class;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative dimension, p > n, torsion in a lattice, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// binom(n, k) for n >= 0; zero when k < 0 or k > n.
Integer binomial(std::int64_t n, std::int64_t k);

/// Coefficient of x^k in (1 - x)^{-c}, valid for every integer c:
/// binom(c + k - 1, k) when c > 0, (-1)^k binom(-c, k) when c <= 0.
Integer series_binomial(const Integer& c, std::int64_t k);

Integer pow(const Integer& base, std::uint64_t exponent);

std::string to_string(const Integer& value);

/// Narrowing conversion; throws DomainError when the value does not fit.
std::int64_t to_int64(const Integer& value);

bool fits_int64(const Integer& value);

}  // namespace vhodge
