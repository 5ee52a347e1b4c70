#include "dq/linear_system.hpp"

#include "dq/error.hpp"

namespace dq {

bool SparseLinearSystem::add_equation(Row row, Rational rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns_) throw DomainError("linear system: unknown index out of range");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  while (!row.empty()) {
    auto lead = row.begin();
    const std::size_t col = lead->first;
    auto piv = pivots_.find(col);
    if (piv == pivots_.end()) {
      Rational inv = Rational(1) / lead->second;
      for (auto& [j, v] : row) v *= inv;
      rhs *= inv;
      pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
      return true;
    }
    const Rational factor = lead->second;
    for (const auto& [j, v] : piv->second.row) {
      auto [it, inserted] = row.try_emplace(j, -(factor * v));
      if (!inserted) {
        it->second -= factor * v;
        if (it->second.is_zero()) row.erase(it);
      }
    }
    rhs -= factor * piv->second.rhs;
  }
  if (!rhs.is_zero()) {
    consistent_ = false;
    last_residual_ = rhs;
    return false;
  }
  return true;
}

std::optional<std::vector<Rational>> SparseLinearSystem::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<Rational> x(unknowns_, Rational(0));
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [col, piv] = *it;
    Rational v = piv.rhs;
    for (const auto& [j, a] : piv.row)
      if (j != col) v -= a * x[j];
    x[col] = v;
  }
  return x;
}

}  // namespace dq
