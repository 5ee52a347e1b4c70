#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dq/error.hpp"
#include "dq/rational.hpp"

namespace dq {

/// Exponent vector; its length is the number of ring variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t arity, std::size_t index, std::uint32_t power = 1);

  [[nodiscard]] std::size_t arity() const { return exps_.size(); }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  [[nodiscard]] const std::vector<std::uint32_t>& exponents() const { return exps_; }
  [[nodiscard]] std::uint32_t degree() const;
  [[nodiscard]] bool is_one() const;

  [[nodiscard]] bool divides(const Monomial& other) const;
  /// other / *this; requires divides(other).
  [[nodiscard]] Monomial quotient_of(const Monomial& other) const;
  [[nodiscard]] Monomial lcm(const Monomial& other) const;
  [[nodiscard]] bool coprime(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Total well-order on monomials. `permutation` lists variable indices from
/// most significant to least significant.
class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex };

  MonomialOrder(Kind kind, std::vector<std::size_t> permutation);
  static MonomialOrder lex(std::size_t arity);
  static MonomialOrder degrevlex(std::size_t arity);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::vector<std::size_t>& permutation() const { return perm_; }
  [[nodiscard]] std::size_t arity() const { return perm_.size(); }

  /// Negative, zero or positive as a <, ==, > b.
  [[nodiscard]] int compare(const Monomial& a, const Monomial& b) const;
  [[nodiscard]] bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  [[nodiscard]] std::string name() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  Kind kind_;
  std::vector<std::size_t> perm_;
};

/// Comparator adapter so ordered containers can sort by a MonomialOrder.
struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->less(a, b); }
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(std::size_t arity) : arity_(arity) {}
  static Poly constant(std::size_t arity, const Rational& c);
  static Poly variable(std::size_t arity, std::size_t index);
  static Poly term(const Monomial& m, const Rational& c);

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  /// Constant coefficient (coefficient of the unit monomial).
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  /// Maximum total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool is_homogeneous() const;

  /// Leading monomial/coefficient under `order`; requires a nonzero poly.
  [[nodiscard]] const Monomial& leading_monomial(const MonomialOrder& order) const;
  [[nodiscard]] Rational leading_coefficient(const MonomialOrder& order) const;

  /// Adds c*m to the polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator-(const Poly& a);

  [[nodiscard]] Poly pow(std::uint32_t e) const;
  /// Multiplies every term by the monomial m.
  [[nodiscard]] Poly shifted(const Monomial& m) const;

  [[nodiscard]] Rational evaluate(std::span<const Rational> point) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_arity(const Poly& o, const char* where) const;

  std::size_t arity_ = 0;
  TermMap terms_;
};

/// d/dx_{var} p. Throws DomainError on an out-of-range index.
Poly partial_derivative(const Poly& p, std::size_t var);
/// Higher derivative by a multi-index (one exponent per variable).
Poly partial_derivative(const Poly& p, const std::vector<std::uint32_t>& multi_index);

/// Exact quotient a / b; throws DomainError when b does not divide a.
Poly exact_quotient(const Poly& a, const Poly& b);

/// Re-embeds p into a ring of `target_arity` variables; variable i goes to
/// slot mapping[i].
Poly embed(const Poly& p, std::size_t target_arity, std::span<const std::size_t> mapping);

/// Sets variable `var` to `value` and drops it from the ring; remaining
/// variables keep their relative order.
Poly specialize_drop(const Poly& p, std::size_t var, const Rational& value);

class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t arity);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t arity() const { return arity_; }

  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  [[nodiscard]] PolyMatrix submatrix(std::span<const std::size_t> rows,
                                     std::span<const std::size_t> cols) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t arity_;
  std::vector<Poly> entries_;
};

/// m x n matrix with entry (s, i) = d f_s / d x_i.
PolyMatrix jacobian_matrix(std::span<const Poly> fs);

/// Cofactor expansion up to 5x5, fraction-free (Bareiss) elimination above.
Poly determinant(const PolyMatrix& m);

/// Variable names for parsing and printing.
class VariableNames {
 public:
  VariableNames() = default;
  explicit VariableNames(std::vector<std::string> names);
  /// x1..xn (1-based) or z0..z{n-1} when `zero_based`.
  static VariableNames numbered(std::string_view prefix, std::size_t n, bool zero_based = false);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return names_[i]; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  /// Index of name, or -1.
  [[nodiscard]] long find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

/// Named polynomials that expressions may reference in addition to variables.
using PolyBindings = std::map<std::string, Poly, std::less<>>;

/// Parses +, -, *, /, ^, parentheses, rational literals and declared names.
/// Division is only allowed by nonzero constants.
Poly parse_poly(std::string_view text, const VariableNames& vars, const PolyBindings* bindings = nullptr);

/// Canonical text: terms descending in `order`, coefficients as num/den.
std::string format_poly(const Poly& p, const VariableNames& vars, const MonomialOrder& order);
std::string format_poly(const Poly& p, const VariableNames& vars);

}  // namespace dq
