#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "vhodge/integer.hpp"

namespace vhodge {

/// Exponent pair (p, q) of the monomial u^p v^q.
struct Bidegree {
  std::int64_t p = 0;
  std::int64_t q = 0;
  auto operator<=>(const Bidegree&) const = default;
};

/// Univariate polynomial in t with exact coefficients, kept in canonical
/// sparse form (no zero coefficient is ever stored).
class UniPoly {
 public:
  using Terms = std::map<std::int64_t, Integer>;

  UniPoly() = default;
  UniPoly(long constant);  // NOLINT(google-explicit-constructor)

  static UniPoly monomial(std::int64_t k, Integer coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(std::int64_t k) const;
  /// Highest exponent with nonzero coefficient, -1 for the zero polynomial.
  std::int64_t degree() const;
  Integer evaluate(const Integer& t) const;

  void add_term(std::int64_t k, const Integer& coeff);

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Virtual Hodge polynomial H(u, v). The coefficient of u^p v^q is the
/// signed virtual Hodge number, stored exactly as it enters
/// sum (-1)^{p+q} dim H^q(X, Omega^p) u^p v^q.
class EPoly {
 public:
  using Terms = std::map<Bidegree, Integer>;

  EPoly() = default;
  EPoly(long constant);  // NOLINT(google-explicit-constructor)

  static EPoly monomial(std::int64_t p, std::int64_t q, Integer coeff = 1);
  /// (uv)^k
  static EPoly uv_power(std::int64_t k);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::int64_t p, std::int64_t q, const Integer& coeff);

  EPoly& operator+=(const EPoly& other);
  EPoly& operator-=(const EPoly& other);
  friend EPoly operator+(EPoly a, const EPoly& b) { return a += b; }
  friend EPoly operator-(EPoly a, const EPoly& b) { return a -= b; }
  friend EPoly operator-(const EPoly& a);
  friend EPoly operator*(const EPoly& a, const EPoly& b);
  friend bool operator==(const EPoly& a, const EPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

EPoly add(const EPoly& a, const EPoly& b);
EPoly mul(const EPoly& a, const EPoly& b);
EPoly pow(const EPoly& a, std::uint64_t k);

/// Signed virtual Hodge number: coefficient of u^p v^q (zero when absent).
Integer coefficient(const EPoly& a, std::int64_t p, std::int64_t q);

/// Virtual Poincare polynomial P(t) = H(-t, -t).
UniPoly poincare(const EPoly& a);

/// Virtual Betti number: coefficient of t^k in poincare(a).
Integer virtual_betti(const EPoly& a, std::int64_t k);

/// H(1, 1).
Integer euler_char(const EPoly& a);

/// Sum of coefficients over the terms with p - q == i.
Integer diagonal_sum(const EPoly& a, std::int64_t i);

/// Substitution u = x, v = y.
Integer evaluate(const EPoly& a, const Integer& u, const Integer& v);

// Atoms ---------------------------------------------------------------

enum class AtomKind { Point, Affine, Torus, Projective, Grassmannian, Curve };

/// A standard variety with a known E-polynomial. `first` and `second` carry
/// the parameters: affine/torus/projective(n) use `first`, curve(g) uses
/// `first`, grassmannian(k, n) uses both.
struct Atom {
  AtomKind kind = AtomKind::Point;
  std::int64_t first = 0;
  std::int64_t second = 0;

  static Atom point() { return {AtomKind::Point, 0, 0}; }
  static Atom affine(std::int64_t n) { return {AtomKind::Affine, n, 0}; }
  static Atom torus(std::int64_t n) { return {AtomKind::Torus, n, 0}; }
  static Atom projective(std::int64_t n) { return {AtomKind::Projective, n, 0}; }
  static Atom grassmannian(std::int64_t k, std::int64_t n) { return {AtomKind::Grassmannian, k, n}; }
  static Atom curve(std::int64_t genus) { return {AtomKind::Curve, genus, 0}; }

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Throws DomainError for negative parameters or k > n.
void validate(const Atom& atom);

EPoly atom_epoly(const Atom& atom);

/// Gaussian binomial [n choose k]_q as a polynomial in q.
const UniPoly& gaussian_binomial(std::int64_t n, std::int64_t k);

/// Substitutes q = uv.
EPoly from_uv_polynomial(const UniPoly& poly);

// Formatting ----------------------------------------------------------

/// Terms in lexicographically descending (p, q) order, e.g. "u^2v-uv^2+2uv+1".
std::string to_string(const EPoly& a);
/// Terms in descending order of k, e.g. "t^4+2t^3-2t+1".
std::string to_string(const UniPoly& a, char variable = 't');

}  // namespace vhodge
