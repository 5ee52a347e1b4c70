#include <numeric>

#include "dq/polyring.hpp"

namespace dq {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
    : rows_(rows), cols_(cols), arity_(arity), entries_(rows * cols, Poly(arity)) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows,
                                 std::span<const std::size_t> cols) const {
  PolyMatrix r(rows.size(), cols.size(), arity_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
  return r;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: inner dimensions differ");
  if (a.arity_ != b.arity_) throw ArityError(a.arity_, b.arity_, "matrix product");
  PolyMatrix r(a.rows_, b.cols_, a.arity_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) r(i, j) += a(i, k) * b(k, j);
  return r;
}

PolyMatrix jacobian_matrix(std::span<const Poly> fs) {
  if (fs.empty()) throw DomainError("jacobian_matrix: empty generator list");
  const auto n = fs.front().arity();
  for (const auto& f : fs)
    if (f.arity() != n) throw ArityError(n, f.arity(), "jacobian_matrix");
  PolyMatrix j(fs.size(), n, n);
  for (std::size_t s = 0; s < fs.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) j(s, i) = partial_derivative(fs[s], i);
  return j;
}

namespace {

// Laplace expansion along the first of `rows`, restricted to `cols`.
Poly cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  const std::size_t r0 = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  Poly total(m.arity());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Poly& a = m(r0, cols[k]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != k) sub_cols.push_back(cols[t]);
    Poly minor = cofactor_det(m, sub_rows, sub_cols);
    if (minor.is_zero()) continue;
    if (k % 2 == 0)
      total += a * minor;
    else
      total -= a * minor;
  }
  return total;
}

Poly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.rows();
  Poly prev = Poly::constant(m.arity(), Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return Poly(m.arity());
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = exact_quotient(num, prev);
      }
      m(i, k) = Poly(m.arity());
    }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

}  // namespace

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols())
    throw DomainError("determinant of non-square " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " matrix");
  if (m.rows() <= 5) {
    std::vector<std::size_t> idx(m.rows());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto cols = idx;
    return cofactor_det(m, idx, cols);
  }
  return bareiss_det(m);
}

}  // namespace dq
