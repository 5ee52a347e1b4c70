#pragma once

// Groebner-basis calculus over Q[x1..xn].

#include <cstddef>
#include <span>
#include <vector>

#include "dq/polyring.hpp"

namespace dq {

class GroebnerBasis {
 public:
  /// Original generators, in the order given.
  [[nodiscard]] const std::vector<Poly>& generators() const { return generators_; }
  /// Reduced, monic basis sorted by ascending leading monomial.
  [[nodiscard]] const std::vector<Poly>& basis() const { return basis_; }
  [[nodiscard]] const MonomialOrder& order() const { return order_; }
  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::vector<Monomial>& leading_monomials() const { return leads_; }

  /// certificate()[k][s] is the cofactor of generator s in basis element k:
  /// basis()[k] == sum_s certificate()[k][s] * generators()[s]. Empty when
  /// certificate tracking was disabled.
  [[nodiscard]] const std::vector<std::vector<Poly>>& certificate() const { return certificate_; }

  [[nodiscard]] bool is_unit_ideal() const;
  [[nodiscard]] bool is_zero_ideal() const { return basis_.empty(); }

 private:
  friend GroebnerBasis buchberger(std::span<const Poly>, const MonomialOrder&, bool);
  friend GroebnerBasis zero_ideal(std::size_t, const MonomialOrder&);

  std::size_t arity_ = 0;
  MonomialOrder order_ = MonomialOrder::degrevlex(0);
  std::vector<Poly> generators_;
  std::vector<Poly> basis_;
  std::vector<Monomial> leads_;
  std::vector<std::vector<Poly>> certificate_;
};

/// Reduced Groebner basis by Buchberger's algorithm with normal pair
/// selection and the product and chain criteria. Zero generators are
/// ignored. With `track_certificate` every basis element carries its
/// expression in the original generators.
GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order,
                         bool track_certificate = true);
GroebnerBasis buchberger(std::span<const Poly> gens);

/// The zero ideal of Q[x1..xn] (empty basis).
GroebnerBasis zero_ideal(std::size_t arity, const MonomialOrder& order);

struct DivisionResult {
  std::vector<Poly> quotients;  // one per basis element
  Poly remainder;
};

/// Multivariate division by the basis: p == sum q_k * basis[k] + remainder,
/// and no term of remainder is divisible by a leading monomial.
DivisionResult divide(const Poly& p, const GroebnerBasis& g);
Poly normal_form(const Poly& p, const GroebnerBasis& g);
bool ideal_member(const Poly& p, const GroebnerBasis& g);

/// S-polynomial of two polynomials under `order`.
Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order);

/// Krull dimension of Q[x]/I: the largest variable subset S such that no
/// leading monomial lies in Q[S]. Throws DomainError("empty variety") for
/// the unit ideal.
std::size_t dimension(const GroebnerBasis& g);

/// dimension(G) == n - gens.size().
bool is_complete_intersection(std::span<const Poly> gens, const GroebnerBasis& g);

/// Q[x1..xn]/I with normal forms as residue-class representatives.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(GroebnerBasis ideal) : ideal_(std::move(ideal)) {}

  [[nodiscard]] std::size_t ambient_arity() const { return ideal_.arity(); }
  [[nodiscard]] const GroebnerBasis& ideal() const { return ideal_; }

  [[nodiscard]] Poly reduce(const Poly& p) const { return normal_form(p, ideal_); }
  [[nodiscard]] Poly multiply(const Poly& a, const Poly& b) const { return reduce(a * b); }
  [[nodiscard]] bool equal(const Poly& a, const Poly& b) const { return ideal_member(a - b, ideal_); }

 private:
  GroebnerBasis ideal_;
};

}  // namespace dq
