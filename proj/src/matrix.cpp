#include "k3lab/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace k3lab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix p(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) p(i, j) += x(i, k) * y(k, j);
    }
  return p;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Integer dot(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

RatVector to_rational(const IntVector& x) { return RatVector(x.begin(), x.end()); }

IntVector to_integral(const RatVector& x) {
  IntVector out;
  out.reserve(x.size());
  for (const auto& q : x) out.push_back(to_integer(q));
  return out;
}

bool is_integral(const RatVector& x) {
  for (const auto& q : x)
    if (!q.is_integer()) return false;
  return true;
}

bool is_zero(const IntVector& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

namespace {

void axpy(IntVector& target, const Integer& factor, const IntVector& source) {
  for (std::size_t j = 0; j < target.size(); ++j) target[j] -= factor * source[j];
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

std::size_t row_echelon(std::vector<IntVector>& rows, std::size_t pivot_cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < pivot_cols && rank < rows.size(); ++col) {
    bool have_pivot = false;
    while (true) {
      // Smallest nonzero entry in this column becomes the pivot candidate.
      std::size_t best = rows.size();
      for (std::size_t i = rank; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs_int(rows[i][col]) < abs_int(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      have_pivot = true;
      std::swap(rows[rank], rows[best]);
      bool cleared = true;
      for (std::size_t i = rank + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        axpy(rows[i], floor_div(rows[i][col], rows[rank][col]), rows[rank]);
        if (rows[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!have_pivot) continue;
    if (rows[rank][col] < 0)
      for (auto& v : rows[rank]) v = -v;
    ++rank;
  }
  return rank;
}

std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t rank = row_echelon(rows, n);
  rows.resize(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    std::size_t pivot = 0;
    while (rows[k][pivot] == 0) ++pivot;
    for (std::size_t i = 0; i < k; ++i) {
      Integer q = floor_div(rows[i][pivot], rows[k][pivot]);
      if (q != 0) axpy(rows[i], q, rows[k]);
    }
  }
  return rows;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Row i = (column i of A, e_i); reduce the first m coordinates.
  std::vector<IntVector> rows(n, IntVector(m + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) rows[i][j] = a(j, i);
    rows[i][m + i] = 1;
  }
  std::size_t rank = row_echelon(rows, m);
  std::vector<IntVector> kernel;
  for (std::size_t i = rank; i < n; ++i)
    kernel.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(m), rows[i].end());
  return hermite_normal_form(std::move(kernel));
}

std::optional<RatVector> solve_in_span(const std::vector<IntVector>& basis, const IntVector& v) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  // Augmented n x (k+1) system [basis^T | v], Gaussian elimination over Q.
  std::vector<RatVector> rows(n, RatVector(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (basis[j].size() != n) throw std::invalid_argument("vector dimension mismatch");
      rows[i][j] = Rational(basis[j][i]);
    }
    rows[i][k] = Rational(v[i]);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < k && r < n; ++col) {
    std::size_t p = r;
    while (p < n && rows[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Rational f = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j <= k; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (r != k) throw std::invalid_argument("basis vectors are linearly dependent");
  for (std::size_t i = r; i < n; ++i)
    if (!rows[i][k].is_zero()) return std::nullopt;
  RatVector c(k);
  for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = rows[i][k] / rows[i][pivot_col[i]];
  return c;
}

}  // namespace k3lab
