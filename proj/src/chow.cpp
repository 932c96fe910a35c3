#include "vhodge/chow.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "vhodge/series.hpp"

namespace vhodge::chow {

namespace {

Integer from_i64(std::int64_t x) { return Integer(static_cast<long>(x)); }

void require_pn(std::int64_t p, std::int64_t n) {
  if (p < 0 || n < 0 || p > n) throw DomainError("Chow index requires 0 <= p <= n");
}

}  // namespace

void validate(const ChowIndex& index) {
  require_pn(index.p, index.n);
  if (index.d < 0) throw DomainError("Chow index requires d >= 0");
}

Integer v(std::int64_t p, std::int64_t n) {
  require_pn(p, n);
  return binomial(n + 1, p + 1);
}

Integer chow_euler(std::int64_t p, std::int64_t d, std::int64_t n) {
  validate({p, d, n});
  if (d == 0) return 1;
  const Integer top = v(p, n) + static_cast<long>(d - 1);
  Integer result;
  mpz_bin_ui(result.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(d));
  return result;
}

namespace {

class EulerRecursion {
 public:
  Integer operator()(std::int64_t p, std::int64_t d, std::int64_t n) {
    const auto key = std::tuple{p, d, n};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Integer value;
    if (d == 0 || p == n) {
      value = 1;
    } else if (p == 0) {
      value = symmetric_power_euler(d, n);
    } else {
      // Shift (p, n) -> (p-1, n-1) and apply the recursion.
      value = (*this)(p - 1, d, n - 1);
      for (std::int64_t i = 1; i <= d; ++i) value += (*this)(p, i, n - 1) * (*this)(p - 1, d - i, n - 1);
    }
    memo_.emplace(key, value);
    return value;
  }

 private:
  // chi(C_{0,d}(P^n)) = chi(Sp^d(P^n)).
  Integer symmetric_power_euler(std::int64_t d, std::int64_t n) {
    auto it = sym_columns_.find(n);
    if (it == sym_columns_.end() || static_cast<std::int64_t>(it->second.size()) <= d) {
      const auto series = sym_powers(atom_epoly(Atom::projective(n)), std::max<std::int64_t>(d, 8));
      std::vector<Integer> column;
      for (const auto& entry : series.coeffs) column.push_back(euler_char(entry));
      it = sym_columns_.insert_or_assign(n, std::move(column)).first;
    }
    return it->second[static_cast<std::size_t>(d)];
  }

  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Integer> memo_;
  std::map<std::int64_t, std::vector<Integer>> sym_columns_;
};

}  // namespace

Integer chow_euler_rec(std::int64_t p, std::int64_t d, std::int64_t n) {
  validate({p, d, n});
  return EulerRecursion{}(p, d, n);
}

Integer chow_dim(std::int64_t p, std::int64_t d, std::int64_t n) {
  require_pn(p, n);
  if (d < 1) throw DomainError("chow_dim requires d >= 1");
  if (p == n) return 0;
  const Integer linear = from_i64(d) * from_i64(p + 1) * from_i64(n - p);
  const Integer hypersurface = binomial(d + p + 1, p + 1) - 1 + from_i64(p + 2) * from_i64(n - p - 1);
  return std::max(linear, hypersurface);
}

Integer chow_dim_curves(std::int64_t d, std::int64_t n) {
  if (n < 2 || d < 1) throw DomainError("chow_dim_curves requires n >= 2 and d >= 1");
  const Integer first = from_i64(2) * from_i64(d) * from_i64(n - 1);
  const Integer second = from_i64(3) * from_i64(n - 2) + from_i64(d) * from_i64(d + 3) / 2;
  return std::max(first, second);
}

Integer kollar_exponent(std::int64_t p, std::int64_t d) {
  if (p < 0 || d < 1) throw DomainError("kollar exponent requires p >= 0 and d >= 1");
  // binom(a, -1) = 0 covers p = 0.
  return from_i64(d) * binomial(d + p - 1, p) + binomial(d + p - 1, p - 1);
}

Integer kollar_bound(std::int64_t p, std::int64_t d, std::int64_t n) {
  require_pn(p, n);
  if (d < 1) throw DomainError("kollar_bound requires d >= 1");
  const Integer exponent = kollar_exponent(p, d);
  if (!exponent.fits_ulong_p()) throw DomainError("kollar_bound exponent too large");
  return pow(binomial(n * d + d, n), exponent.get_ui());
}

VarietyExpr chow2_expr(std::int64_t p, std::int64_t n) {
  if (n < 1 || p < 0 || p > n - 1) throw DomainError("chow2_expr requires 0 <= p <= n-1");
  const auto grass = [](std::int64_t k, std::int64_t m) { return VarietyExpr::atom(Atom::grassmannian(k, m)); };
  const auto proj = [](std::int64_t m) { return VarietyExpr::atom(Atom::projective(m)); };

  const auto quadric_space_dim = to_int64(binomial(p + 3, 2)) - 1;
  const auto smooth_quadrics = VarietyExpr::complement(proj(quadric_space_dim), VarietyExpr::sym_power(proj(p + 1), 2));
  return VarietyExpr::disjoint(VarietyExpr::sym_power(grass(p + 1, n + 1), 2),
                               VarietyExpr::product(grass(p + 2, n + 1), smooth_quadrics));
}

bool ConstraintReport::all_passed() const {
  return std::ranges::all_of(results, [](const auto& r) { return r.passed; });
}

ConstraintReport check_chow_constraints(const EPoly& a, std::int64_t p, std::int64_t d, std::int64_t n) {
  ConstraintReport report;

  {
    std::map<std::int64_t, Integer> sums;
    for (const auto& [m, c] : a.terms())
      if (m.p != m.q) sums[m.p - m.q] += c;
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [i, s] : sums) {
      if (s == 0) continue;
      detail << (ok ? "" : ", ") << "i=" << i << ": " << s.get_str();
      ok = false;
    }
    report.results.push_back({"off_diagonal_sums_vanish", ok, detail.str()});
  }
  {
    const Integer diagonal = diagonal_sum(a, 0);
    const Integer chi = chow_euler(p, d, n);
    report.results.push_back({"diagonal_sum_equals_chi", diagonal == chi,
                              diagonal == chi ? "" : "diagonal sum " + diagonal.get_str() + " vs chi " + chi.get_str()});
  }
  {
    const Integer h00 = coefficient(a, 0, 0);
    report.results.push_back({"h00_is_one", h00 == 1, h00 == 1 ? "" : "h^{0,0}=" + h00.get_str()});
  }
  for (const bool row : {true, false}) {
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [m, c] : a.terms()) {
      const bool hit = row ? (m.q == 0 && m.p > 0) : (m.p == 0 && m.q > 0);
      if (!hit) continue;
      if (!ok) detail << ", ";
      detail << "h^{" << m.p << ',' << m.q << "}=" << c.get_str();
      ok = false;
    }
    report.results.push_back({row ? "h_r0_vanish" : "h_0r_vanish", ok, detail.str()});
  }
  return report;
}

bool off_diagonal_vanishes(const EPoly& a) {
  return std::ranges::all_of(a.terms(), [](const auto& term) { return term.first.p == term.first.q; });
}

}  // namespace vhodge::chow
