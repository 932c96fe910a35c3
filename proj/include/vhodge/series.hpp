#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "vhodge/epoly.hpp"
#include "vhodge/integer.hpp"

namespace vhodge {

using Exponents = std::vector<std::int64_t>;

/// Keeps x^e when 0 <= e_i <= max_exponent[i] for every variable.
struct PerVariableBound {
  std::vector<std::int64_t> max_exponent;
  friend bool operator==(const PerVariableBound&, const PerVariableBound&) = default;
};

/// Keeps x^e when 0 <= sum_i weights[i] * e_i <= max_degree. Exponents may
/// be negative as long as the weighted degree of every term stays
/// nonnegative; this is what lets a linear functional that is positive on a
/// set of lattice classes (but not on the coordinate axes) drive truncation.
struct WeightedBound {
  std::vector<std::int64_t> weights;
  std::int64_t max_degree = 0;
  friend bool operator==(const WeightedBound&, const WeightedBound&) = default;
};

using TruncationBound = std::variant<PerVariableBound, WeightedBound>;

class TruncSeries {
 public:
  using Terms = std::map<Exponents, Integer>;

  TruncSeries(std::size_t nvars, TruncationBound bound);

  /// The series 1 with the given shape.
  static TruncSeries one(std::size_t nvars, TruncationBound bound);

  std::size_t nvars() const { return nvars_; }
  const TruncationBound& bound() const { return bound_; }
  const Terms& terms() const { return terms_; }

  bool within_bound(std::span<const std::int64_t> exponents) const;
  /// Weighted degree for WeightedBound, total degree for PerVariableBound.
  std::int64_t degree(std::span<const std::int64_t> exponents) const;

  /// Adds c * x^e; silently drops terms outside the bound.
  void add_term(const Exponents& exponents, const Integer& coeff);
  Integer coefficient(const Exponents& exponents) const;

  bool same_shape(const TruncSeries& other) const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.same_shape(b) && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  TruncationBound bound_;
  Terms terms_;
};

/// Truncated product. Throws DomainError on mismatched shapes.
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

/// (1 - x^monomial)^{-c} truncated to `bound`.
TruncSeries geom_factor_expand(const Exponents& monomial, const Integer& c, std::size_t nvars,
                               const TruncationBound& bound);

struct GeometricFactor {
  Exponents monomial;
  Integer exponent;  // c in (1 - x^m)^{-c}
};

/// Product of the geometric factors, folded left to right.
TruncSeries product_expand(std::span<const GeometricFactor> factors, std::size_t nvars,
                           const TruncationBound& bound);

/// E-polynomials of the symmetric powers Sp^0(X), ..., Sp^dmax(X).
struct SymSeries {
  EPoly base;
  std::int64_t dmax = 0;
  std::vector<EPoly> coeffs;
};

/// Expands sum_d E(Sp^d X) t^d = prod_{(p,q)} (1 - u^p v^q t)^{-h(p,q)}
/// through t^dmax, where h(p,q) are the signed coefficients of `base`.
SymSeries sym_powers(const EPoly& base, std::int64_t dmax);

}  // namespace vhodge
