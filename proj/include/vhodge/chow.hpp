#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vhodge/epoly.hpp"
#include "vhodge/integer.hpp"
#include "vhodge/variety_expr.hpp"

namespace vhodge::chow {

/// Indices of the Chow variety C_{p,d}(P^n) of effective p-cycles of
/// degree d in P^n.
struct ChowIndex {
  std::int64_t p = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;
};

/// Throws DomainError unless 0 <= p <= n and d >= 0.
void validate(const ChowIndex& index);

/// Number of torus-fixed p-planes in P^n: binom(n+1, p+1).
Integer v(std::int64_t p, std::int64_t n);

/// Closed form binom(v(p,n) + d - 1, d).
Integer chow_euler(std::int64_t p, std::int64_t d, std::int64_t n);

/// Euler characteristic through the recursion
///   chi(C_{p+1,d}(P^{n+1})) = chi(C_{p,d}(P^n))
///       + sum_{i=1}^{d} chi(C_{p+1,i}(P^n)) chi(C_{p,d-i}(P^n)),
/// with bases chi = 1 for d = 0 or p = n, and the p = 0 column taken from
/// the symmetric-power generating function of P^n. It never touches the
/// closed form, so the two are independent checks of each other.
Integer chow_euler_rec(std::int64_t p, std::int64_t d, std::int64_t n);

/// max{ d(p+1)(n-p), binom(d+p+1, p+1) - 1 + (p+2)(n-p-1) }; 0 when p == n.
Integer chow_dim(std::int64_t p, std::int64_t d, std::int64_t n);

/// max{ 2d(n-1), 3(n-2) + d(d+3)/2 } for curves, n >= 2, d >= 1.
Integer chow_dim_curves(std::int64_t d, std::int64_t n);

/// Exponent d binom(d+p-1, p) + binom(d+p-1, p-1) of the component bound.
Integer kollar_exponent(std::int64_t p, std::int64_t d);

/// binom(nd + d, n)^{kollar_exponent(p, d)}, an upper bound on the number
/// of irreducible components.
Integer kollar_bound(std::int64_t p, std::int64_t d, std::int64_t n);

/// C_{p,2}(P^n) = Sp^2(G(p+1,n+1)) plus a bundle over G(p+2,n+1) whose fibre
/// is the space of smooth quadrics P^{binom(p+3,2)-1} - Sp^2(P^{p+1}).
VarietyExpr chow2_expr(std::int64_t p, std::int64_t n);

struct ConstraintResult {
  std::string name;
  bool passed = false;
  std::string detail;  // offending values when failed
};

struct ConstraintReport {
  std::vector<ConstraintResult> results;
  bool all_passed() const;
};

/// Checks the linear relations the virtual Hodge numbers of C_{p,d}(P^n)
/// must satisfy: vanishing off-diagonal sums, diagonal sum equal to chi,
/// h^{0,0} = 1 and h^{r,0} = h^{0,r} = 0 for r > 0.
ConstraintReport check_chow_constraints(const EPoly& a, std::int64_t p, std::int64_t d, std::int64_t n);

/// True iff every coefficient off the diagonal p == q vanishes.
bool off_diagonal_vanishes(const EPoly& a);

}  // namespace vhodge::chow
