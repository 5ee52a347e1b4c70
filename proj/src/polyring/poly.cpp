#include <algorithm>
#include <numeric>

#include "dq/polyring.hpp"

namespace dq {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t arity, std::size_t index, std::uint32_t power) {
  Monomial m(arity);
  m.exps_.at(index) = power;
  return m;
}

std::uint32_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial q(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = other.exps_[i] - exps_[i];
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.exps_.size());
  for (std::size_t i = 0; i < a.exps_.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
  return r;
}

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> permutation)
    : kind_(kind), perm_(std::move(permutation)) {
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) throw DomainError("monomial order permutation is not a bijection");
    seen[p] = true;
  }
}

MonomialOrder MonomialOrder::lex(std::size_t arity) {
  std::vector<std::size_t> p(arity);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return {Kind::Lex, std::move(p)};
}

MonomialOrder MonomialOrder::degrevlex(std::size_t arity) {
  std::vector<std::size_t> p(arity);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return {Kind::DegRevLex, std::move(p)};
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == Kind::Lex) {
    for (auto v : perm_) {
      if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
    }
    return 0;
  }
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (auto it = perm_.rbegin(); it != perm_.rend(); ++it) {
    auto v = *it;
    if (a[v] != b[v]) return a[v] > b[v] ? -1 : 1;
  }
  return 0;
}

std::string MonomialOrder::name() const {
  return kind_ == Kind::Lex ? "lex" : "degrevlex";
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(std::size_t arity, const Rational& c) {
  Poly p(arity);
  p.add_term(Monomial(arity), c);
  return p;
}

Poly Poly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw DomainError("variable index out of range");
  Poly p(arity);
  p.add_term(Monomial::variable(arity, index), Rational(1));
  return p;
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p(m.arity());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coefficient(Monomial(arity_)); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

const Monomial& Poly::leading_monomial(const MonomialOrder& order) const {
  if (terms_.empty()) throw DomainError("leading monomial of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (order.less(best->first, it->first)) best = it;
  return best->first;
}

Rational Poly::leading_coefficient(const MonomialOrder& order) const {
  return terms_.at(leading_monomial(order));
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (m.arity() != arity_) throw ArityError(arity_, m.arity(), "add_term");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::require_same_arity(const Poly& o, const char* where) const {
  if (arity_ != o.arity_) throw ArityError(arity_, o.arity_, where);
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_arity(o, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_arity(o, "sub");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_arity(b, "mul");
  Poly r(a.arity_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly result = constant(arity_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly r(arity_);
  for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
  return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity_) throw ArityError(arity_, point.size(), "evaluate");
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < arity_; ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Poly partial_derivative(const Poly& p, std::size_t var) {
  if (var >= p.arity())
    throw DomainError("partial derivative index " + std::to_string(var) + " out of range for " +
                      std::to_string(p.arity()) + " variables");
  Poly r(p.arity());
  for (const auto& [m, c] : p.terms()) {
    auto e = m[var];
    if (e == 0) continue;
    auto exps = m.exponents();
    exps[var] = e - 1;
    r.add_term(Monomial(std::move(exps)), c * Rational(static_cast<long>(e)));
  }
  return r;
}

Poly partial_derivative(const Poly& p, const std::vector<std::uint32_t>& multi_index) {
  if (multi_index.size() != p.arity()) throw ArityError(p.arity(), multi_index.size(), "partial_derivative");
  Poly r(p.arity());
  for (const auto& [m, c] : p.terms()) {
    Rational coef = c;
    std::vector<std::uint32_t> exps = m.exponents();
    bool zero = false;
    for (std::size_t i = 0; i < exps.size() && !zero; ++i) {
      auto k = multi_index[i];
      if (k > exps[i]) {
        zero = true;
        break;
      }
      for (std::uint32_t t = 0; t < k; ++t) coef *= Rational(static_cast<long>(exps[i] - t));
      exps[i] -= k;
    }
    if (!zero) r.add_term(Monomial(std::move(exps)), coef);
  }
  return r;
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  if (a.arity() != b.arity()) throw ArityError(a.arity(), b.arity(), "exact_quotient");
  if (b.is_zero()) throw DomainError("exact_quotient by zero");
  auto order = MonomialOrder::lex(a.arity());
  const Monomial& lb = b.leading_monomial(order);
  Rational cb = b.coefficient(lb);
  Poly rem = a;
  Poly q(a.arity());
  while (!rem.is_zero()) {
    const Monomial lr = rem.leading_monomial(order);
    if (!lb.divides(lr)) throw DomainError("exact_quotient: divisor does not divide dividend");
    Monomial qm = lb.quotient_of(lr);
    Rational qc = rem.coefficient(lr) / cb;
    q.add_term(qm, qc);
    rem -= b.shifted(qm) * qc;
  }
  return q;
}

Poly embed(const Poly& p, std::size_t target_arity, std::span<const std::size_t> mapping) {
  if (mapping.size() != p.arity()) throw ArityError(p.arity(), mapping.size(), "embed");
  Poly r(target_arity);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> exps(target_arity, 0);
    for (std::size_t i = 0; i < m.arity(); ++i) exps.at(mapping[i]) += m[i];
    r.add_term(Monomial(std::move(exps)), c);
  }
  return r;
}

Poly specialize_drop(const Poly& p, std::size_t var, const Rational& value) {
  if (var >= p.arity()) throw DomainError("specialize_drop: index out of range");
  Poly r(p.arity() - 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> exps;
    exps.reserve(p.arity() - 1);
    for (std::size_t i = 0; i < m.arity(); ++i)
      if (i != var) exps.push_back(m[i]);
    Rational coef = c;
    for (std::uint32_t k = 0; k < m[var]; ++k) coef *= value;
    r.add_term(Monomial(std::move(exps)), coef);
  }
  return r;
}

}  // namespace dq
