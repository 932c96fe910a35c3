#include "vhodge/epoly.hpp"

#include <mutex>
#include <sstream>
#include <vector>

namespace vhodge {

// UniPoly -------------------------------------------------------------

UniPoly::UniPoly(long constant) {
  if (constant != 0) terms_.emplace(0, Integer(constant));
}

UniPoly UniPoly::monomial(std::int64_t k, Integer coeff) {
  UniPoly result;
  result.add_term(k, coeff);
  return result;
}

void UniPoly::add_term(std::int64_t k, const Integer& coeff) {
  if (k < 0) throw DomainError("negative exponent in univariate polynomial");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer UniPoly::coefficient(std::int64_t k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::int64_t UniPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

Integer UniPoly::evaluate(const Integer& t) const {
  Integer result = 0;
  for (const auto& [k, c] : terms_) result += c * vhodge::pow(t, static_cast<std::uint64_t>(k));
  return result;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  UniPoly result = a;
  for (const auto& [k, c] : b.terms_) result.add_term(k, c);
  return result;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  UniPoly result = a;
  for (const auto& [k, c] : b.terms_) result.add_term(k, -c);
  return result;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  UniPoly result;
  for (const auto& [i, x] : a.terms_)
    for (const auto& [j, y] : b.terms_) result.add_term(i + j, x * y);
  return result;
}

// EPoly ---------------------------------------------------------------

EPoly::EPoly(long constant) {
  if (constant != 0) terms_.emplace(Bidegree{0, 0}, Integer(constant));
}

EPoly EPoly::monomial(std::int64_t p, std::int64_t q, Integer coeff) {
  EPoly result;
  result.add_term(p, q, coeff);
  return result;
}

EPoly EPoly::uv_power(std::int64_t k) { return monomial(k, k); }

void EPoly::add_term(std::int64_t p, std::int64_t q, const Integer& coeff) {
  if (p < 0 || q < 0) throw DomainError("negative exponent in E-polynomial");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(Bidegree{p, q}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

EPoly& EPoly::operator+=(const EPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m.p, m.q, c);
  return *this;
}

EPoly& EPoly::operator-=(const EPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m.p, m.q, -c);
  return *this;
}

EPoly operator-(const EPoly& a) {
  EPoly result;
  for (const auto& [m, c] : a.terms_) result.terms_.emplace(m, -c);
  return result;
}

EPoly operator*(const EPoly& a, const EPoly& b) {
  EPoly result;
  for (const auto& [m1, c1] : a.terms_)
    for (const auto& [m2, c2] : b.terms_) result.add_term(m1.p + m2.p, m1.q + m2.q, c1 * c2);
  return result;
}

EPoly add(const EPoly& a, const EPoly& b) { return a + b; }
EPoly mul(const EPoly& a, const EPoly& b) { return a * b; }

EPoly pow(const EPoly& a, std::uint64_t k) {
  EPoly result = 1;
  EPoly base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Integer coefficient(const EPoly& a, std::int64_t p, std::int64_t q) {
  auto it = a.terms().find(Bidegree{p, q});
  return it == a.terms().end() ? Integer(0) : it->second;
}

UniPoly poincare(const EPoly& a) {
  UniPoly result;
  for (const auto& [m, c] : a.terms()) {
    const std::int64_t k = m.p + m.q;
    result.add_term(k, k % 2 == 0 ? c : Integer(-c));
  }
  return result;
}

Integer virtual_betti(const EPoly& a, std::int64_t k) { return poincare(a).coefficient(k); }

Integer euler_char(const EPoly& a) {
  Integer sum = 0;
  for (const auto& [m, c] : a.terms()) sum += c;
  return sum;
}

Integer diagonal_sum(const EPoly& a, std::int64_t i) {
  Integer sum = 0;
  for (const auto& [m, c] : a.terms())
    if (m.p - m.q == i) sum += c;
  return sum;
}

Integer evaluate(const EPoly& a, const Integer& u, const Integer& v) {
  Integer result = 0;
  for (const auto& [m, c] : a.terms())
    result += c * vhodge::pow(u, static_cast<std::uint64_t>(m.p)) *
              vhodge::pow(v, static_cast<std::uint64_t>(m.q));
  return result;
}

// Atoms ---------------------------------------------------------------

void validate(const Atom& atom) {
  switch (atom.kind) {
    case AtomKind::Point:
      return;
    case AtomKind::Affine:
    case AtomKind::Torus:
    case AtomKind::Projective:
      if (atom.first < 0) throw DomainError("dimension must be nonnegative");
      return;
    case AtomKind::Curve:
      if (atom.first < 0) throw DomainError("genus must be nonnegative");
      return;
    case AtomKind::Grassmannian:
      if (atom.first < 0 || atom.second < 0 || atom.first > atom.second)
        throw DomainError("grassmannian G(k,n) requires 0 <= k <= n");
      return;
  }
}

const UniPoly& gaussian_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("gaussian binomial requires 0 <= k <= n");
  // Entries are never erased, so references stay valid across insertions.
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, std::int64_t>, UniPoly> memo;

  std::lock_guard lock(mutex);
  // Build rows bottom-up: [m, j] = [m-1, j-1] + q^j [m-1, j].
  for (std::int64_t m = 0; m <= n; ++m) {
    for (std::int64_t j = 0; j <= std::min(m, k); ++j) {
      if (memo.contains({m, j})) continue;
      UniPoly value;
      if (j == 0 || j == m) {
        value = 1;
      } else {
        value = memo.at({m - 1, j - 1}) + UniPoly::monomial(j) * memo.at({m - 1, j});
      }
      memo.emplace(std::pair{m, j}, std::move(value));
    }
  }
  return memo.at({n, k});
}

EPoly from_uv_polynomial(const UniPoly& poly) {
  EPoly result;
  for (const auto& [k, c] : poly.terms()) result.add_term(k, k, c);
  return result;
}

EPoly atom_epoly(const Atom& atom) {
  validate(atom);
  switch (atom.kind) {
    case AtomKind::Point:
      return 1;
    case AtomKind::Affine:
      return EPoly::uv_power(atom.first);
    case AtomKind::Torus:
      return pow(EPoly::uv_power(1) - EPoly(1), static_cast<std::uint64_t>(atom.first));
    case AtomKind::Projective: {
      EPoly result;
      for (std::int64_t j = 0; j <= atom.first; ++j) result.add_term(j, j, 1);
      return result;
    }
    case AtomKind::Grassmannian:
      return from_uv_polynomial(gaussian_binomial(atom.second, atom.first));
    case AtomKind::Curve: {
      const Integer g(static_cast<long>(atom.first));
      EPoly result = 1;
      result.add_term(1, 0, -g);
      result.add_term(0, 1, -g);
      result.add_term(1, 1, 1);
      return result;
    }
  }
  return {};
}

// Formatting ----------------------------------------------------------

namespace {

void append_power(std::ostringstream& out, char variable, std::int64_t exponent) {
  if (exponent == 0) return;
  out << variable;
  if (exponent > 1) out << '^' << exponent;
}

void append_coefficient(std::ostringstream& out, const Integer& c, bool first, bool is_constant) {
  Integer magnitude = abs(c);
  if (c < 0) {
    out << '-';
  } else if (!first) {
    out << '+';
  }
  if (is_constant || magnitude != 1) out << magnitude.get_str();
}

}  // namespace

std::string to_string(const EPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    append_coefficient(out, c, first, m.p == 0 && m.q == 0);
    append_power(out, 'u', m.p);
    append_power(out, 'v', m.q);
    first = false;
  }
  return out.str();
}

std::string to_string(const UniPoly& a, char variable) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    append_coefficient(out, c, first, k == 0);
    append_power(out, variable, k);
    first = false;
  }
  return out.str();
}

}  // namespace vhodge
