#include <algorithm>
#include <functional>

#include "dq/hochschild.hpp"
#include "dq/linear_system.hpp"

namespace dq {

namespace {

// All exponent vectors in n variables with total degree <= d.
std::vector<MultiIndex> indices_up_to(std::size_t n, std::uint32_t d) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t v, std::uint32_t left) {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[v] = e;
      rec(v + 1, left - e);
    }
    cur[v] = 0;
  };
  rec(0, d);
  return out;
}

bool is_standard(const Monomial& m, const GroebnerBasis& g) {
  return std::none_of(g.leading_monomials().begin(), g.leading_monomials().end(),
                      [&](const Monomial& lt) { return lt.divides(m); });
}

using EquationKey = std::pair<PolyDiffOp::Key, Monomial>;

}  // namespace

SolveP2Result solve_p2(const PolyDiffOp& p, const GroebnerBasis& g, const SolveP2Options& options) {
  if (p.arity() != 2) throw DomainError("solve_p2: p must be an arity-2 operator");
  const std::size_t n = p.ring_arity();
  if (g.arity() != n) throw ArityError(n, g.arity(), "solve_p2");
  if (!sym_skew_decompose(p).symmetric.is_zero()) throw DomainError("solve_p2: p is not skew-symmetric");
  if (!vanishes_mod_ideal(bar_differential(p), g)) throw DomainError("solve_p2: p is not a 2-cocycle mod the ideal");
  if (!vanishes_mod_ideal(cyclic_jacobi_operator(p), g))
    throw DomainError("solve_p2: the Jacobi sum of p does not vanish mod the ideal");

  SolveP2Result result;
  result.max_order = options.max_order;
  result.max_coeff_degree = options.max_coeff_degree.value_or(
      static_cast<std::uint32_t>(std::max(p.coefficient_degree(), 0)) + 2);

  // Ansatz: standard monomial times a symmetrized pair of derivative indices.
  std::vector<Monomial> monomials;
  for (auto& e : indices_up_to(n, result.max_coeff_degree)) {
    Monomial m(std::move(e));
    if (is_standard(m, g)) monomials.push_back(std::move(m));
  }
  const auto derivs = indices_up_to(n, result.max_order);
  std::vector<PolyDiffOp> shapes;
  for (std::size_t a = 0; a < derivs.size(); ++a)
    for (std::size_t b = a; b < derivs.size(); ++b) {
      PolyDiffOp op(2, n);
      const Poly one = Poly::constant(n, Rational(1));
      op.add_term({derivs[a], derivs[b]}, one);
      if (a != b) op.add_term({derivs[b], derivs[a]}, one);
      shapes.push_back(std::move(op));
    }

  std::vector<PolyDiffOp> unknowns;
  for (const auto& m : monomials)
    for (const auto& s : shapes) unknowns.push_back(Poly::term(m, Rational(1)) * s);
  result.unknowns = unknowns.size();

  std::map<EquationKey, SparseLinearSystem::Row> rows;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    PolyDiffOp col = reduce_mod_ideal(bar_differential(unknowns[u]), g);
    for (const auto& [key, coef] : col.terms())
      for (const auto& [mono, c] : coef.terms()) rows[{key, mono}][u] = c;
  }
  std::map<EquationKey, Rational> rhs;
  const PolyDiffOp square = reduce_mod_ideal(gerstenhaber_square(p), g);
  for (const auto& [key, coef] : square.terms())
    for (const auto& [mono, c] : coef.terms()) {
      rhs[{key, mono}] = c;
      rows.try_emplace({key, mono});
    }
  result.equations = rows.size();

  SparseLinearSystem system(unknowns.size());
  for (auto& [ek, row] : rows) {
    auto it = rhs.find(ek);
    Rational b = it == rhs.end() ? Rational(0) : it->second;
    if (!system.add_equation(std::move(row), b))
      result.unsatisfied.push_back(UnsatisfiedEquation{ek.first, ek.second, system.last_residual()});
  }
  result.rank = system.rank();

  auto solution = system.solve();
  if (!solution) {
    result.message = "no solution within bounds (order " + std::to_string(result.max_order) +
                     ", coefficient degree " + std::to_string(result.max_coeff_degree) + "): " +
                     std::to_string(result.unsatisfied.size()) + " unsatisfiable coefficient equations";
    return result;
  }

  PolyDiffOp p2(2, n);
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!(*solution)[u].is_zero()) p2 += (*solution)[u] * unknowns[u];
  result.defect_vanishes = vanishes_mod_ideal(star_assoc_defect(StarTruncation{{p, p2}}, 2), g);
  result.p2 = std::move(p2);
  result.message = result.defect_vanishes ? "solved" : "solution failed self-certification";
  return result;
}

}  // namespace dq
