#pragma once

// Exact sparse linear systems over Q, solved by incremental elimination.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "dq/rational.hpp"

namespace dq {

class SparseLinearSystem {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseLinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds the equation sum_j row[j] x_j = rhs. Returns false if it is
  /// inconsistent with the equations added so far; the residual is then
  /// available from last_residual().
  bool add_equation(Row row, Rational rhs);

  [[nodiscard]] std::size_t unknowns() const { return unknowns_; }
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
  [[nodiscard]] bool consistent() const { return consistent_; }
  [[nodiscard]] const Rational& last_residual() const { return last_residual_; }

  /// Particular solution with all free unknowns set to zero; nullopt when
  /// the system is inconsistent.
  [[nodiscard]] std::optional<std::vector<Rational>> solve() const;

 private:
  struct Pivot {
    Row row;  // normalized: row[pivot column] == 1, all columns >= pivot
    Rational rhs;
  };

  std::size_t unknowns_;
  std::map<std::size_t, Pivot> pivots_;
  bool consistent_ = true;
  Rational last_residual_;
};

}  // namespace dq
