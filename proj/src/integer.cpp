#include "vhodge/integer.hpp"

static_assert(sizeof(long) == sizeof(std::int64_t), "GMP si conversions assume LP64");

namespace vhodge {

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw DomainError("binomial: negative upper index");
  if (k < 0 || k > n) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

Integer series_binomial(const Integer& c, std::int64_t k) {
  if (k < 0) return 0;
  Integer a = 1;
  for (std::int64_t i = 1; i <= k && a != 0; ++i) {
    a *= c + static_cast<long>(i - 1);
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return a;
}

Integer pow(const Integer& base, std::uint64_t exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
  return result;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

bool fits_int64(const Integer& value) { return mpz_fits_slong_p(value.get_mpz_t()) != 0; }

std::int64_t to_int64(const Integer& value) {
  if (!fits_int64(value)) throw DomainError("integer does not fit in 64 bits: " + to_string(value));
  return value.get_si();
}

}  // namespace vhodge
