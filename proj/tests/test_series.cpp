#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "vhodge/series.hpp"

using namespace vhodge;

namespace {

TruncationBound scalar(std::int64_t b) { return PerVariableBound{{b}}; }

TruncSeries univariate(std::initializer_list<long> coeffs, std::int64_t bound) {
  TruncSeries s(1, scalar(bound));
  std::int64_t k = 0;
  for (long c : coeffs) s.add_term({k++}, c);
  return s;
}

// Multisets of size d drawn from {0..n}, visited as nondecreasing sequences.
void for_each_multiset(int n, int d, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> seq;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(seq.size()) == d) {
      visit(seq);
      return;
    }
    for (int j = lo; j <= n; ++j) {
      seq.push_back(j);
      rec(j);
      seq.pop_back();
    }
  };
  rec(0);
}

// Coefficients of (1 - t)^{-chi} up to t^dmax by repeated multiplication.
std::vector<long> power_of_geometric(long chi, int dmax) {
  std::vector<long> acc(dmax + 1, 0);
  acc[0] = 1;
  for (long rep = 0; rep < std::abs(chi); ++rep) {
    std::vector<long> next(dmax + 1, 0);
    for (int i = 0; i <= dmax; ++i) {
      if (chi > 0) {
        for (int j = 0; i + j <= dmax; ++j) next[i + j] += acc[i];  // times 1/(1-t)
      } else {
        next[i] += acc[i];
        if (i + 1 <= dmax) next[i + 1] -= acc[i];  // times (1-t)
      }
    }
    acc = next;
  }
  return acc;
}

EPoly random_epoly(std::mt19937& rng) {
  std::uniform_int_distribution<int> exp(0, 2);
  std::uniform_int_distribution<int> coeff(-3, 3);
  EPoly r;
  for (int i = 0; i < 4; ++i) r.add_term(exp(rng), exp(rng), coeff(rng));
  return r;
}

}  // namespace

TEST_CASE("series_mul") {
  CHECK(series_mul(univariate({1, 1}, 2), univariate({1, 1}, 2)) == univariate({1, 2, 1}, 2));
  CHECK(series_mul(univariate({1, 1, 1}, 2), univariate({1, 1}, 2)) == univariate({1, 2, 2}, 2));
  CHECK(series_mul(univariate({1, 1, 1, 1}, 3), univariate({1, -1}, 3)) == univariate({1}, 3));
  CHECK_THROWS_AS(series_mul(univariate({1}, 2), univariate({1}, 3)), DomainError);
  CHECK_THROWS_AS(series_mul(TruncSeries::one(2, PerVariableBound{{1, 1}}), univariate({1}, 1)), DomainError);
}

TEST_CASE("truncation keeps the invariant") {
  TruncSeries s(2, PerVariableBound{{2, 1}});
  s.add_term({3, 0}, 5);
  s.add_term({1, 2}, 5);
  s.add_term({1, 1}, 0);
  CHECK(s.terms().empty());
  s.add_term({2, 1}, 4);
  s.add_term({2, 1}, -4);
  CHECK(s.terms().empty());

  TruncSeries w(2, WeightedBound{{1, 2}, 4});
  w.add_term({2, 1}, 1);
  w.add_term({1, 2}, 1);
  w.add_term({-1, 1}, 1);
  CHECK(w.terms().size() == 2);
  CHECK_THROWS_AS(TruncSeries(2, PerVariableBound{{1}}), DomainError);
  CHECK_THROWS_AS(TruncSeries(1, WeightedBound{{1}, -1}), DomainError);
}

TEST_CASE("geom_factor_expand") {
  CHECK(geom_factor_expand({1}, 1, 1, scalar(4)) == univariate({1, 1, 1, 1, 1}, 4));
  CHECK(geom_factor_expand({1}, 2, 1, scalar(3)) == univariate({1, 2, 3, 4}, 3));
  CHECK(geom_factor_expand({1}, -2, 1, scalar(3)) == univariate({1, -2, 1}, 3));
  CHECK(geom_factor_expand({1}, 0, 1, scalar(3)) == univariate({1}, 3));
  CHECK(geom_factor_expand({2}, 1, 1, scalar(5)) == univariate({1, 0, 1, 0, 1, 0}, 5));
  CHECK_THROWS_AS(geom_factor_expand({0}, 1, 1, scalar(3)), DomainError);
  CHECK_THROWS_AS(geom_factor_expand({0, 0}, 1, 2, PerVariableBound{{3, 3}}), DomainError);
  CHECK_THROWS_AS(geom_factor_expand({1, -1}, 1, 2, WeightedBound{{1, 1}, 3}), DomainError);
}

TEST_CASE("product_expand") {
  const std::vector<GeometricFactor> two = {{{1}, 1}, {{1}, 1}};
  CHECK(product_expand(two, 1, scalar(3)) == univariate({1, 2, 3, 4}, 3));
  CHECK(product_expand({}, 1, scalar(3)) == univariate({1}, 3));

  // P^1 has two torus-fixed points; coefficient of s^d is chi(Sp^d P^1) = d + 1.
  const auto p1 = product_expand(two, 1, scalar(10));
  for (std::int64_t d = 0; d <= 10; ++d) CHECK(p1.coefficient({d}) == d + 1);

  SUBCASE("independent of factor order") {
    std::vector<GeometricFactor> factors = {{{1, 0}, 1}, {{0, 1}, 2}, {{1, 1}, -1}, {{2, 1}, 3}, {{0, 2}, 1}};
    const TruncationBound bound = WeightedBound{{1, 2}, 9};
    const auto reference = product_expand(factors, 2, bound);
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.monomial < b.monomial; });
    do {
      CHECK(product_expand(factors, 2, bound) == reference);
    } while (std::next_permutation(factors.begin(), factors.end(),
                                   [](const auto& a, const auto& b) { return a.monomial < b.monomial; }));
  }
}

TEST_CASE("sym_powers examples") {
  const EPoly p1 = atom_epoly(Atom::projective(1));
  const auto s = sym_powers(p1, 2);
  REQUIRE(s.coeffs.size() == 3);
  CHECK(s.coeffs[0] == EPoly(1));
  CHECK(s.coeffs[1] == p1);
  CHECK(s.coeffs[2] == atom_epoly(Atom::projective(2)));
  CHECK(sym_powers(p1, 0).coeffs == std::vector<EPoly>{EPoly(1)});
  CHECK_THROWS_AS(sym_powers(p1, -1), DomainError);
}

TEST_CASE("sym_powers of P^n against multiset enumeration") {
  // Sp^d(P^n) has a cell of dimension sum(j) for every multiset {j_1..j_d}
  // of {0..n}; this is also the t^d x^k coefficient of prod (1 - t x^{2j})^{-1}.
  for (int n = 0; n <= 3; ++n) {
    const auto s = sym_powers(atom_epoly(Atom::projective(n)), 5);
    for (int d = 0; d <= 5; ++d) {
      EPoly expected;
      UniPoly expected_t;
      for_each_multiset(n, d, [&](const std::vector<int>& seq) {
        int total = 0;
        for (int j : seq) total += j;
        expected.add_term(total, total, 1);
        expected_t.add_term(2 * total, 1);
      });
      CHECK(s.coeffs[d] == expected);
      CHECK(poincare(s.coeffs[d]) == expected_t);
    }
  }
}

TEST_CASE("sym_powers of curves: Euler characteristic") {
  for (long g = 0; g <= 4; ++g) {
    const auto s = sym_powers(atom_epoly(Atom::curve(g)), 7);
    const auto expected = power_of_geometric(2 - 2 * g, 7);
    for (int d = 0; d <= 7; ++d) CHECK_MESSAGE(euler_char(s.coeffs[d]) == expected[d], "g=" << g << " d=" << d);
    if (g == 1)
      for (int d = 1; d <= 7; ++d) CHECK(euler_char(s.coeffs[d]) == 0);
  }
}

TEST_CASE("sym_powers properties on random bases") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const EPoly base = random_epoly(rng);
    const auto s = sym_powers(base, 5);
    CHECK(s.coeffs[0] == EPoly(1));
    CHECK(s.coeffs[1] == base);
    const auto chi = euler_char(base).get_si();
    const auto expected = power_of_geometric(chi, 5);
    for (int d = 0; d <= 5; ++d) CHECK(euler_char(s.coeffs[d]) == expected[d]);
  }
}
