#include <functional>
#include <random>

#include "doctest.h"
#include "vhodge/smith.hpp"

using namespace vhodge;

namespace {

Integer determinant(const IntMatrix& m) {
  // Laplace expansion; fine for the tiny minors used here.
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, out = 0; k < n; ++k)
        if (k != c) minor(r - 1, out++) = m(r, k);
    const Integer term = m(0, c) * determinant(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t lo) {
    if (pick.size() == k) {
      visit(pick);
      return;
    }
    for (std::size_t i = lo; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

// gcd of all k x k minors.
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      IntMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(rows[i], cols[j]);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), determinant(minor).get_mpz_t());
    });
  });
  return g;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int spread) {
  std::uniform_int_distribution<int> entry(-spread, spread);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

void check_smith(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(s.left * a * s.right == s.diagonal);
  CHECK(s.right * s.right_inverse == IntMatrix::identity(a.cols()));
  CHECK(determinant(s.left) * determinant(s.left) == 1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j || i >= s.rank) CHECK(s.diagonal(i, j) == 0);

  const auto factors = s.invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    CHECK(factors[i] > 0);
    if (i + 1 < factors.size()) CHECK(mpz_divisible_p(factors[i + 1].get_mpz_t(), factors[i].get_mpz_t()) != 0);
  }
  // d_1 ... d_k equals the k-th determinantal divisor.
  Integer running = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    const Integer expected = determinantal_divisor(a, k);
    if (k <= s.rank) {
      running *= factors[k - 1];
      CHECK(running == expected);
    } else {
      CHECK(expected == 0);
    }
  }
}

}  // namespace

TEST_CASE("known Smith forms") {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithForm s = smith_normal_form(a);
  CHECK(s.invariant_factors() == std::vector<Integer>{2, 6, 12});
  check_smith(a);

  const IntMatrix b{{1, 1, 0}, {0, 0, 0}};
  CHECK(smith_normal_form(b).rank == 1);
  check_smith(b);

  CHECK(smith_normal_form(IntMatrix(0, 3)).rank == 0);
  CHECK(smith_normal_form(IntMatrix(3, 0)).rank == 0);
  check_smith(IntMatrix(2, 2));
}

TEST_CASE("random matrices satisfy the Smith identities") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    check_smith(random_matrix(rng, dim(rng), dim(rng), trial % 2 == 0 ? 3 : 20));
  }
}

TEST_CASE("integer kernel") {
  const IntMatrix a{{1, 0, 0}, {0, 1, 0}};
  const auto kernel = integer_kernel(a);
  REQUIRE(kernel.size() == 1);
  CHECK(abs(kernel[0][2]) == 1);

  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix m = random_matrix(rng, 2, 4, 5);
    const auto basis = integer_kernel(m);
    CHECK(basis.size() == 4 - smith_normal_form(m).rank);
    for (const auto& x : basis)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer dot = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) dot += m(i, j) * x[j];
        CHECK(dot == 0);
      }
  }
  // Empty constraint set: the kernel is all of Z^n.
  CHECK(integer_kernel(IntMatrix(0, 3)).size() == 3);
}
