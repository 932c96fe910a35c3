#include "vhodge/series.hpp"

#include <algorithm>

namespace vhodge {

namespace {

std::size_t bound_arity(const TruncationBound& bound) {
  return std::visit(
      [](const auto& b) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, PerVariableBound>)
          return b.max_exponent.size();
        else
          return b.weights.size();
      },
      bound);
}

}  // namespace

TruncSeries::TruncSeries(std::size_t nvars, TruncationBound bound) : nvars_(nvars), bound_(std::move(bound)) {
  if (nvars_ == 0) throw DomainError("series needs at least one variable");
  if (bound_arity(bound_) != nvars_) throw DomainError("truncation bound does not match variable count");
  if (const auto* pv = std::get_if<PerVariableBound>(&bound_)) {
    if (std::ranges::any_of(pv->max_exponent, [](auto b) { return b < 0; }))
      throw DomainError("truncation bound must be nonnegative");
  } else if (std::get<WeightedBound>(bound_).max_degree < 0) {
    throw DomainError("truncation bound must be nonnegative");
  }
}

TruncSeries TruncSeries::one(std::size_t nvars, TruncationBound bound) {
  TruncSeries s(nvars, std::move(bound));
  s.add_term(Exponents(nvars, 0), 1);
  return s;
}

std::int64_t TruncSeries::degree(std::span<const std::int64_t> exponents) const {
  std::int64_t total = 0;
  if (const auto* w = std::get_if<WeightedBound>(&bound_)) {
    for (std::size_t i = 0; i < nvars_; ++i) total += w->weights[i] * exponents[i];
  } else {
    for (auto e : exponents) total += e;
  }
  return total;
}

bool TruncSeries::within_bound(std::span<const std::int64_t> exponents) const {
  if (exponents.size() != nvars_) return false;
  if (const auto* pv = std::get_if<PerVariableBound>(&bound_)) {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exponents[i] < 0 || exponents[i] > pv->max_exponent[i]) return false;
    return true;
  }
  const auto d = degree(exponents);
  return d >= 0 && d <= std::get<WeightedBound>(bound_).max_degree;
}

void TruncSeries::add_term(const Exponents& exponents, const Integer& coeff) {
  if (exponents.size() != nvars_) throw DomainError("exponent vector has wrong length");
  if (coeff == 0 || !within_bound(exponents)) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer TruncSeries::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Integer(0) : it->second;
}

bool TruncSeries::same_shape(const TruncSeries& other) const {
  return nvars_ == other.nvars_ && bound_ == other.bound_;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  if (!a.same_shape(b)) throw DomainError("series_mul: operands have different shapes");
  TruncSeries result(a.nvars(), a.bound());
  Exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      result.add_term(e, ca * cb);
    }
  }
  return result;
}

TruncSeries geom_factor_expand(const Exponents& monomial, const Integer& c, std::size_t nvars,
                               const TruncationBound& bound) {
  TruncSeries result = TruncSeries::one(nvars, bound);
  if (monomial.size() != nvars) throw DomainError("monomial has wrong length");
  if (std::ranges::all_of(monomial, [](auto e) { return e == 0; }))
    throw DomainError("geometric factor needs a nonconstant monomial");
  if (std::holds_alternative<PerVariableBound>(bound)) {
    if (std::ranges::any_of(monomial, [](auto e) { return e < 0; }))
      throw DomainError("per-variable truncation needs nonnegative monomials");
  } else if (result.degree(monomial) <= 0) {
    throw DomainError("geometric factor monomial must have positive weighted degree");
  }
  if (c == 0) return result;

  Exponents power(nvars, 0);
  for (std::int64_t k = 1;; ++k) {
    for (std::size_t i = 0; i < nvars; ++i) power[i] += monomial[i];
    if (!result.within_bound(power)) break;
    Integer coeff = series_binomial(c, k);
    if (coeff == 0) break;  // (1 - m)^{|c|} has ended
    result.add_term(power, coeff);
  }
  return result;
}

TruncSeries product_expand(std::span<const GeometricFactor> factors, std::size_t nvars,
                           const TruncationBound& bound) {
  TruncSeries result = TruncSeries::one(nvars, bound);
  for (const auto& f : factors) result = series_mul(result, geom_factor_expand(f.monomial, f.exponent, nvars, bound));
  return result;
}

SymSeries sym_powers(const EPoly& base, std::int64_t dmax) {
  if (dmax < 0) throw DomainError("sym_powers: dmax must be nonnegative");
  const auto length = static_cast<std::size_t>(dmax) + 1;
  std::vector<EPoly> acc(length);
  acc[0] = 1;

  for (const auto& [m, c] : base.terms()) {
    // factor(t) = sum_k series_binomial(c, k) (u^p v^q)^k t^k
    std::vector<EPoly> factor(length);
    for (std::int64_t k = 0; k <= dmax; ++k) {
      Integer coeff = series_binomial(c, k);
      if (coeff == 0) break;
      factor[static_cast<std::size_t>(k)] = EPoly::monomial(m.p * k, m.q * k, coeff);
    }
    std::vector<EPoly> next(length);
    for (std::size_t i = 0; i < length; ++i) {
      if (acc[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < length; ++j) {
        if (factor[j].is_zero()) continue;
        next[i + j] += acc[i] * factor[j];
      }
    }
    acc = std::move(next);
  }
  return SymSeries{base, dmax, std::move(acc)};
}

}  // namespace vhodge
