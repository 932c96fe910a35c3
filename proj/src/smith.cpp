#include "vhodge/smith.hpp"

#include <optional>
#include <utility>

namespace vhodge {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ragged matrix literal");
    for (long x : row) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) += factor * (*this)(source, c);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, target) += factor * (*this)(r, source);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix dimensions do not match");
  IntMatrix result(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) result(i, j) += a(i, k) * b(k, j);
    }
  return result;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < rank; ++i) factors.push_back(diagonal(i, i));
  return factors;
}

namespace {

// Tracks D = L * A * R together with R^{-1}.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& input)
      : d_(input),
        l_(IntMatrix::identity(input.rows())),
        r_(IntMatrix::identity(input.cols())),
        r_inv_(IntMatrix::identity(input.cols())) {}

  SmithForm run() {
    const std::size_t limit = std::min(d_.rows(), d_.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      if (!reduce_at(t)) break;
    }
    return SmithForm{std::move(d_), std::move(l_), std::move(r_), std::move(r_inv_), t};
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    l_.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    r_.swap_cols(a, b);
    r_inv_.swap_rows(a, b);
  }
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& f) {
    d_.add_row_multiple(target, source, f);
    l_.add_row_multiple(target, source, f);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& f) {
    d_.add_col_multiple(target, source, f);
    r_.add_col_multiple(target, source, f);
    r_inv_.add_row_multiple(source, target, -f);
  }

  std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        if (d_(i, j) == 0) continue;
        if (!best || abs(d_(i, j)) < abs(d_(best->first, best->second))) best = {i, j};
      }
    return best;
  }

  // Returns false when the remaining submatrix is zero.
  bool reduce_at(std::size_t t) {
    for (;;) {
      auto pivot = min_entry(t);
      if (!pivot) return false;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
        add_row_multiple(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
        add_col_multiple(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder becomes the next pivot

      // Enforce divisibility of the rest by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < d_.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < d_.cols(); ++j) {
          if (mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t()) == 0) {
            add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      if (!divisible) continue;

      if (d_(t, t) < 0) {
        d_.negate_row(t);
        l_.negate_row(t);
      }
      return true;
    }
  }

  IntMatrix d_, l_, r_, r_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) { return SmithReducer(input).run(); }

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& input) {
  const SmithForm snf = smith_normal_form(input);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = snf.rank; j < input.cols(); ++j) {
    std::vector<Integer> v(input.cols());
    for (std::size_t i = 0; i < input.cols(); ++i) v[i] = snf.right(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace vhodge
