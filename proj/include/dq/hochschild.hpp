#pragma once

// Polydifferential Hochschild cochains on Q[x1..xn] (and on quotients via
// coefficientwise normal forms).

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dq/brackets.hpp"
#include "dq/ideal.hpp"
#include "dq/polyring.hpp"

namespace dq {

/// Derivative multi-index, one exponent per ring variable.
using MultiIndex = std::vector<std::uint32_t>;

/// sum over keys (alpha_1..alpha_k) of coeff * d^{alpha_1} a_1 ... d^{alpha_k} a_k.
class PolyDiffOp {
 public:
  using Key = std::vector<MultiIndex>;

  PolyDiffOp(std::size_t arity_k, std::size_t ring_arity) : arity_k_(arity_k), ring_arity_(ring_arity) {}

  /// mu(a, b) = a b.
  static PolyDiffOp multiplication(std::size_t ring_arity);
  /// q(a, b) = sum_{i<j} q^{ij} (d_i a d_j b - d_j a d_i b).
  static PolyDiffOp from_bivector(const Bivector& q);
  /// c * d^{alpha_1} a_1 ... as a single term.
  static PolyDiffOp monomial_op(const Key& key, const Poly& coefficient);

  [[nodiscard]] std::size_t arity() const { return arity_k_; }
  [[nodiscard]] std::size_t ring_arity() const { return ring_arity_; }
  [[nodiscard]] const std::map<Key, Poly>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Largest total derivative order in any slot; 0 for the zero operator.
  [[nodiscard]] std::uint32_t order() const;
  /// Largest coefficient degree; -1 for the zero operator.
  [[nodiscard]] int coefficient_degree() const;

  void add_term(const Key& key, const Poly& coefficient);

  /// (sigma . h)(a_0, .., a_{k-1}) = h(a_{sigma[0]}, .., a_{sigma[k-1]}).
  [[nodiscard]] PolyDiffOp permuted(std::span<const std::size_t> sigma) const;

  PolyDiffOp& operator+=(const PolyDiffOp& o);
  PolyDiffOp& operator-=(const PolyDiffOp& o);
  PolyDiffOp& operator*=(const Rational& c);
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator*(const Rational& c, PolyDiffOp a) { return a *= c; }
  friend PolyDiffOp operator*(const Poly& c, const PolyDiffOp& a);
  friend bool operator==(const PolyDiffOp&, const PolyDiffOp&) = default;

 private:
  void check_compatible(const PolyDiffOp& o, const char* where) const;

  std::size_t arity_k_;
  std::size_t ring_arity_;
  std::map<Key, Poly> terms_;
};

Poly apply_op(const PolyDiffOp& op, std::span<const Poly> args);

/// outer(a.., inner(b..), c..) with inner plugged into `slot`, expanded by
/// the Leibniz rule into a single polydifferential operator of arity
/// outer.arity() + inner.arity() - 1.
PolyDiffOp compose(const PolyDiffOp& outer, std::size_t slot, const PolyDiffOp& inner);

/// Hochschild differential: (dh)(a_0..a_k) = a_0 h(a_1..a_k)
///   + sum_i (-1)^{i+1} h(.., a_i a_{i+1}, ..) + (-1)^{k+1} h(a_0..a_{k-1}) a_k.
PolyDiffOp bar_differential(const PolyDiffOp& op);

/// Replaces every coefficient by its normal form.
PolyDiffOp reduce_mod_ideal(const PolyDiffOp& op, const GroebnerBasis& g);
/// True iff every coefficient lies in the ideal.
bool vanishes_mod_ideal(const PolyDiffOp& op, const GroebnerBasis& g);

struct SymSkewParts {
  PolyDiffOp symmetric;
  PolyDiffOp skew;
};
SymSkewParts sym_skew_decompose(const PolyDiffOp& op);

/// Element of the rational group algebra of S3. A permutation s stands for
/// the argument reordering h(a, b, c) -> h(a_{s[0]}, a_{s[1]}, a_{s[2]}).
class S3Element {
 public:
  using Perm = std::array<std::size_t, 3>;

  S3Element() = default;
  static S3Element identity();
  /// All six permutations in a fixed order (basis of the group algebra).
  static const std::array<Perm, 6>& basis();

  void add(const Perm& s, const Rational& c);
  [[nodiscard]] Rational coefficient(const Perm& s) const;
  [[nodiscard]] const std::map<Perm, Rational>& terms() const { return terms_; }

  /// Product consistent with the action: (x * y) . h == x . (y . h).
  friend S3Element operator*(const S3Element& x, const S3Element& y);
  friend S3Element operator+(const S3Element& x, const S3Element& y);
  friend bool operator==(const S3Element&, const S3Element&) = default;

  /// Left-multiplication matrix on the basis() ordering.
  [[nodiscard]] std::vector<std::vector<Rational>> left_regular_matrix() const;

  [[nodiscard]] PolyDiffOp act(const PolyDiffOp& op) const;

 private:
  std::map<Perm, Rational> terms_;
};

class CochainProjector {
 public:
  enum class Which { E1, E2, E3 };

  static CochainProjector e1();
  static CochainProjector e2();
  static CochainProjector e3();
  static CochainProjector of(Which w);

  [[nodiscard]] Which which() const { return which_; }
  [[nodiscard]] const S3Element& table() const { return table_; }

 private:
  CochainProjector(Which w, S3Element t) : which_(w), table_(std::move(t)) {}

  Which which_;
  S3Element table_;
};

PolyDiffOp apply_projector(const CochainProjector& e, const PolyDiffOp& op);

/// [p, p](a, b, c) = p(p(a, b), c) - p(a, p(b, c)).
PolyDiffOp gerstenhaber_square(const PolyDiffOp& p);
/// p(p(a, b), c) + p(p(b, c), a) + p(p(c, a), b).
PolyDiffOp cyclic_jacobi_operator(const PolyDiffOp& p);

/// a * b = ab + sum_{i=1..L} lambda^i p_i(a, b).
struct StarTruncation {
  std::vector<PolyDiffOp> terms;
  [[nodiscard]] std::size_t order() const { return terms.size(); }
};

/// Coefficient of lambda^power in (a*b)*c - a*(b*c). Power must be in
/// [1, order + 1].
PolyDiffOp star_assoc_defect(const StarTruncation& star, std::size_t lambda_power);

/// Signed (Harrison) shuffle sums of arity 3.
S3Element shuffle_sum_1_2();
S3Element shuffle_sum_2_1();
/// True iff op vanishes mod G on both shuffle sums.
bool shuffle_vanishing_check(const PolyDiffOp& op, const GroebnerBasis& g);

struct SolveP2Options {
  std::uint32_t max_order = 2;
  /// Defaults to (max coefficient degree of p) + 2.
  std::optional<std::uint32_t> max_coeff_degree;
};

struct UnsatisfiedEquation {
  PolyDiffOp::Key key;
  Monomial monomial;
  Rational residual;
};

struct SolveP2Result {
  std::optional<PolyDiffOp> p2;
  /// star_assoc_defect({p, p2}, 2) vanishes mod G (self-certification).
  bool defect_vanishes = false;
  std::uint32_t max_order = 0;
  std::uint32_t max_coeff_degree = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  /// Equations found inconsistent with earlier ones, in assembly order.
  std::vector<UnsatisfiedEquation> unsatisfied;
  std::string message;

  [[nodiscard]] bool solved() const { return p2.has_value(); }
};

/// Searches symmetric arity-2 operators with order <= max_order and
/// coefficient degree <= max_coeff_degree for p2 with dp2 = [p, p]
/// coefficientwise mod G. Throws DomainError if p is not a skew 2-cocycle
/// whose Jacobi sum vanishes mod G.
SolveP2Result solve_p2(const PolyDiffOp& p, const GroebnerBasis& g, const SolveP2Options& options = {});

}  // namespace dq
