#pragma once

#include <cstddef>
#include <vector>

#include "vhodge/integer.hpp"

namespace vhodge {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// left * input * right == diagonal, with left and right unimodular and
/// right_inverse * right == identity. The diagonal entries d_0 | d_1 | ...
/// are nonnegative; `rank` counts the nonzero ones.
struct SmithForm {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
  IntMatrix right_inverse;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const;
};

/// Smith normal form, pivoting on the entry of least absolute value.
SmithForm smith_normal_form(const IntMatrix& input);

/// Basis of the integer kernel {x in Z^cols : input * x = 0}, one vector per
/// entry.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& input);

}  // namespace vhodge
