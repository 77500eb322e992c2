#pragma once

#include "k3lab/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace k3lab {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major integer matrix. Sizes here never exceed a few dozen.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  /// All rows must share one length.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_list() const;
  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

Integer dot(const IntVector& x, const IntVector& y);
RatVector to_rational(const IntVector& x);
/// Throws std::domain_error when some entry is not integral.
IntVector to_integral(const RatVector& x);
bool is_integral(const RatVector& x);
bool is_zero(const IntVector& x);

/// Brings rows to echelon form in place with unimodular row operations,
/// choosing pivots among the first `pivot_cols` columns only. Returns the
/// number of pivot rows; rows past that are zero on those columns.
std::size_t row_echelon(std::vector<IntVector>& rows, std::size_t pivot_cols);

/// Row-style Hermite normal form of the row span: zero rows dropped, pivots
/// positive, entries above each pivot reduced into [0, pivot).
std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows);

/// Z-basis (in Hermite normal form) of {x in Z^n : A x = 0}, n = A.cols().
/// The result is always a primitive sublattice of Z^n.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Unique rational solution c of sum_i c_i basis_i = v, if v lies in the
/// rational span. Basis vectors must be linearly independent.
std::optional<RatVector> solve_in_span(const std::vector<IntVector>& basis, const IntVector& v);

}  // namespace k3lab
