#pragma once

// Bivector fields on Q[x1..xn] and the Jacobian / minor Poisson brackets.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dq/ideal.hpp"
#include "dq/polyring.hpp"

namespace dq {

/// q(a, b) = sum_{i<j} q^{ij} (d_i a d_j b - d_j a d_i b).
/// Only i < j is stored; q^{ji} = -q^{ij} and q^{ii} = 0.
class Bivector {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  explicit Bivector(std::size_t arity) : arity_(arity) {}

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::map<Key, Poly>& components() const { return components_; }
  [[nodiscard]] bool is_zero() const { return components_.empty(); }

  /// q^{ij} with the antisymmetric extension.
  [[nodiscard]] Poly component(std::size_t i, std::size_t j) const;
  /// Sets q^{ij} (and implicitly q^{ji} = -value). Requires i != j.
  void set(std::size_t i, std::size_t j, const Poly& value);

  Bivector& operator+=(const Bivector& o);
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator*(const Poly& e, const Bivector& q);
  friend Bivector operator*(const Rational& c, const Bivector& q);
  friend bool operator==(const Bivector&, const Bivector&) = default;

 private:
  void check_index(std::size_t i) const;

  std::size_t arity_;
  std::map<Key, Poly> components_;
};

/// Fully antisymmetric 3-vector; only i < j < k is stored.
class TriVector {
 public:
  using Key = std::array<std::size_t, 3>;

  explicit TriVector(std::size_t arity) : arity_(arity) {}

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::map<Key, Poly>& components() const { return components_; }
  [[nodiscard]] bool is_zero() const { return components_.empty(); }
  [[nodiscard]] Poly component(std::size_t i, std::size_t j, std::size_t k) const;
  void set(std::size_t i, std::size_t j, std::size_t k, const Poly& value);

  friend bool operator==(const TriVector&, const TriVector&) = default;

 private:
  std::size_t arity_;
  std::map<Key, Poly> components_;
};

Poly apply_bivector(const Bivector& q, const Poly& a, const Poly& b);

/// Bivector of P_f(a, b) = det(grad f; grad a; grad b) in three variables:
/// q^{jk} = sum_i eps_{ijk} d_i f.
Bivector jacobian_bracket(const Poly& f);

/// Bivector of P_K(a, b) = J_K(f_1..f_m, a, b), the (m+2)-minor of the
/// bordered Jacobian on the sorted column set K. For i < j in K the
/// component is (-1)^{1 + pos(i) + pos(j)} times the m x m minor of the
/// generator rows on K \ {i, j} (Laplace expansion along the last two rows,
/// positions 1-based within K).
Bivector minor_bracket(std::span<const Poly> fs, std::span<const std::size_t> columns);

/// Jacobiator component (i,j,k) = sum_l q^{li} d_l q^{jk} + q^{lj} d_l q^{ki} + q^{lk} d_l q^{ij},
/// which equals the cyclic Jacobi sum on (x_i, x_j, x_k).
TriVector jacobiator(const Bivector& q);

/// True iff sum_j q^{ij} d_j f_s lies in the ideal for every generator and i,
/// i.e. the bivector descends to the quotient algebra.
bool lift_check(const Bivector& q, const GroebnerBasis& g, std::span<const Poly> gens);

struct PoissonVerdict {
  bool poisson = true;
  /// First failing triple and the nonzero normal form of its component.
  std::optional<TriVector::Key> failing_triple;
  std::optional<Poly> residue;

  explicit operator bool() const { return poisson; }
};

PoissonVerdict is_poisson_mod_ideal(const Bivector& q, const GroebnerBasis& g);

/// sum_k coeffs[k] * brackets[k] componentwise.
Bivector combine(std::span<const Poly> coeffs, std::span<const Bivector> brackets);
Bivector combine(std::span<const Rational> coeffs, std::span<const Bivector> brackets);

}  // namespace dq
