#include <algorithm>

#include "dq/brackets.hpp"

namespace dq {

void Bivector::check_index(std::size_t i) const {
  if (i >= arity_)
    throw DomainError("bivector index " + std::to_string(i) + " out of range for " + std::to_string(arity_) +
                      " variables");
}

Poly Bivector::component(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  if (i == j) return Poly(arity_);
  bool swapped = i > j;
  auto it = components_.find(swapped ? Key{j, i} : Key{i, j});
  if (it == components_.end()) return Poly(arity_);
  return swapped ? -it->second : it->second;
}

void Bivector::set(std::size_t i, std::size_t j, const Poly& value) {
  check_index(i);
  check_index(j);
  if (i == j) throw DomainError("bivector diagonal component must vanish");
  if (value.arity() != arity_) throw ArityError(arity_, value.arity(), "Bivector::set");
  Key key = i < j ? Key{i, j} : Key{j, i};
  Poly v = i < j ? value : -value;
  if (v.is_zero())
    components_.erase(key);
  else
    components_[key] = std::move(v);
}

Bivector& Bivector::operator+=(const Bivector& o) {
  if (o.arity_ != arity_) throw ArityError(arity_, o.arity_, "Bivector::operator+=");
  for (const auto& [key, v] : o.components_) set(key.first, key.second, component(key.first, key.second) + v);
  return *this;
}

Bivector operator*(const Poly& e, const Bivector& q) {
  if (e.arity() != q.arity_) throw ArityError(e.arity(), q.arity_, "Bivector scaling");
  Bivector r(q.arity_);
  for (const auto& [key, v] : q.components_) r.set(key.first, key.second, e * v);
  return r;
}

Bivector operator*(const Rational& c, const Bivector& q) {
  return Poly::constant(q.arity_, c) * q;
}

Poly TriVector::component(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j || j == k || i == k) return Poly(arity_);
  std::array<std::size_t, 3> idx{i, j, k};
  // Sort while tracking the permutation sign.
  int sign = 1;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b + 1 < 3 - a; ++b)
      if (idx[b] > idx[b + 1]) {
        std::swap(idx[b], idx[b + 1]);
        sign = -sign;
      }
  auto it = components_.find(idx);
  if (it == components_.end()) return Poly(arity_);
  return sign > 0 ? it->second : -it->second;
}

void TriVector::set(std::size_t i, std::size_t j, std::size_t k, const Poly& value) {
  if (!(i < j && j < k)) throw DomainError("TriVector::set expects i < j < k");
  if (k >= arity_) throw DomainError("trivector index out of range");
  if (value.is_zero())
    components_.erase(Key{i, j, k});
  else
    components_[Key{i, j, k}] = value;
}

Poly apply_bivector(const Bivector& q, const Poly& a, const Poly& b) {
  if (a.arity() != q.arity()) throw ArityError(q.arity(), a.arity(), "apply_bivector");
  if (b.arity() != q.arity()) throw ArityError(q.arity(), b.arity(), "apply_bivector");
  const std::size_t n = q.arity();
  std::vector<Poly> da, db;
  da.reserve(n);
  db.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    da.push_back(partial_derivative(a, i));
    db.push_back(partial_derivative(b, i));
  }
  Poly r(n);
  for (const auto& [key, coef] : q.components()) {
    auto [i, j] = key;
    Poly w = da[i] * db[j] - da[j] * db[i];
    if (!w.is_zero()) r += coef * w;
  }
  return r;
}

Bivector jacobian_bracket(const Poly& f) {
  if (f.arity() != 3) throw DomainError("jacobian_bracket requires exactly 3 variables, got " +
                                        std::to_string(f.arity()));
  Bivector q(3);
  // q^{12} = d_3 f, q^{13} = -d_2 f, q^{23} = d_1 f (0-based below).
  q.set(0, 1, partial_derivative(f, 2));
  q.set(0, 2, -partial_derivative(f, 1));
  q.set(1, 2, partial_derivative(f, 0));
  return q;
}

Bivector minor_bracket(std::span<const Poly> fs, std::span<const std::size_t> columns) {
  if (fs.empty()) throw DomainError("minor_bracket: empty generator list");
  const std::size_t n = fs.front().arity();
  const std::size_t m = fs.size();
  for (const auto& f : fs)
    if (f.arity() != n) throw ArityError(n, f.arity(), "minor_bracket");
  if (columns.size() != m + 2)
    throw DomainError("minor_bracket: column set must have m+2 = " + std::to_string(m + 2) + " elements, got " +
                      std::to_string(columns.size()));
  for (std::size_t t = 0; t < columns.size(); ++t) {
    if (columns[t] >= n) throw DomainError("minor_bracket: column index out of range");
    if (t > 0 && columns[t] <= columns[t - 1]) throw DomainError("minor_bracket: column set must be strictly increasing");
  }

  PolyMatrix jac = jacobian_matrix(fs);
  std::vector<std::size_t> rows(m);
  for (std::size_t s = 0; s < m; ++s) rows[s] = s;

  Bivector q(n);
  for (std::size_t pi = 0; pi < columns.size(); ++pi) {
    for (std::size_t pj = pi + 1; pj < columns.size(); ++pj) {
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < columns.size(); ++t)
        if (t != pi && t != pj) rest.push_back(columns[t]);
      Poly minor = m == 0 ? Poly::constant(n, Rational(1)) : determinant(jac.submatrix(rows, rest));
      // 1-based positions p_i = pi+1, p_j = pj+1: sign (-1)^{1 + p_i + p_j} = (-1)^{1 + pi + pj}.
      if ((pi + pj + 1) % 2 == 1) minor = -minor;
      q.set(columns[pi], columns[pj], minor);
    }
  }
  return q;
}

TriVector jacobiator(const Bivector& q) {
  const std::size_t n = q.arity();
  // d_l q^{ij} for all stored components.
  std::map<Bivector::Key, std::vector<Poly>> grads;
  for (const auto& [key, v] : q.components()) {
    std::vector<Poly> g;
    g.reserve(n);
    for (std::size_t l = 0; l < n; ++l) g.push_back(partial_derivative(v, l));
    grads.emplace(key, std::move(g));
  }
  auto dq = [&](std::size_t l, std::size_t i, std::size_t j) -> Poly {
    if (i == j) return Poly(n);
    bool swapped = i > j;
    auto it = grads.find(swapped ? Bivector::Key{j, i} : Bivector::Key{i, j});
    if (it == grads.end()) return Poly(n);
    return swapped ? -it->second[l] : it->second[l];
  };

  TriVector t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Poly sum(n);
        for (std::size_t l = 0; l < n; ++l) {
          sum += q.component(l, i) * dq(l, j, k);
          sum += q.component(l, j) * dq(l, k, i);
          sum += q.component(l, k) * dq(l, i, j);
        }
        t.set(i, j, k, sum);
      }
  return t;
}

bool lift_check(const Bivector& q, const GroebnerBasis& g, std::span<const Poly> gens) {
  const std::size_t n = q.arity();
  if (g.arity() != n) throw ArityError(n, g.arity(), "lift_check");
  for (const auto& f : gens) {
    if (f.arity() != n) throw ArityError(n, f.arity(), "lift_check");
    std::vector<Poly> grad;
    for (std::size_t j = 0; j < n; ++j) grad.push_back(partial_derivative(f, j));
    for (std::size_t i = 0; i < n; ++i) {
      Poly sum(n);
      for (std::size_t j = 0; j < n; ++j)
        if (!grad[j].is_zero()) sum += q.component(i, j) * grad[j];
      if (!ideal_member(sum, g)) return false;
    }
  }
  return true;
}

PoissonVerdict is_poisson_mod_ideal(const Bivector& q, const GroebnerBasis& g) {
  if (g.arity() != q.arity()) throw ArityError(q.arity(), g.arity(), "is_poisson_mod_ideal");
  PoissonVerdict v;
  const TriVector jac = jacobiator(q);
  for (const auto& [key, comp] : jac.components()) {
    Poly nf = normal_form(comp, g);
    if (!nf.is_zero()) {
      v.poisson = false;
      v.failing_triple = key;
      v.residue = std::move(nf);
      return v;
    }
  }
  return v;
}

Bivector combine(std::span<const Poly> coeffs, std::span<const Bivector> brackets) {
  if (coeffs.size() != brackets.size())
    throw DomainError("combine: " + std::to_string(coeffs.size()) + " coefficients for " +
                      std::to_string(brackets.size()) + " brackets");
  if (brackets.empty()) throw DomainError("combine: empty bracket list");
  Bivector r(brackets.front().arity());
  for (std::size_t k = 0; k < brackets.size(); ++k) {
    if (brackets[k].arity() != r.arity()) throw ArityError(r.arity(), brackets[k].arity(), "combine");
    r += coeffs[k] * brackets[k];
  }
  return r;
}

Bivector combine(std::span<const Rational> coeffs, std::span<const Bivector> brackets) {
  if (coeffs.size() != brackets.size())
    throw DomainError("combine: " + std::to_string(coeffs.size()) + " coefficients for " +
                      std::to_string(brackets.size()) + " brackets");
  std::vector<Poly> polys;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    polys.push_back(Poly::constant(brackets[k].arity(), coeffs[k]));
  return combine(std::span<const Poly>(polys), brackets);
}

}  // namespace dq
