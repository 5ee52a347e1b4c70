#include <algorithm>
#include <functional>
#include <numeric>

#include "dq/hochschild.hpp"

namespace dq {

namespace {

MultiIndex zero_index(std::size_t n) { return MultiIndex(n, 0); }

std::uint32_t total(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), std::uint32_t{0}); }

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Rational factorial(std::uint32_t k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return Rational(r, mpz_class(1));
}

// Calls visit(parts, multinomial) for every way of writing `alpha` as an
// ordered sum of `count` multi-indices.
void for_each_split(const MultiIndex& alpha, std::size_t count,
                    const std::function<void(const std::vector<MultiIndex>&, const Rational&)>& visit) {
  const std::size_t n = alpha.size();
  std::vector<MultiIndex> parts(count, MultiIndex(n, 0));
  Rational numerator(1);
  for (auto a : alpha) numerator *= factorial(a);

  // Recurse over (variable, part) distributing alpha[v] among the parts.
  std::function<void(std::size_t, std::size_t, std::uint32_t, Rational)> rec =
      [&](std::size_t v, std::size_t part, std::uint32_t left, Rational denom) {
        if (v == n) {
          visit(parts, numerator / denom);
          return;
        }
        if (part + 1 == count) {
          parts[part][v] = left;
          rec(v + 1, 0, v + 1 < n ? alpha[v + 1] : 0, denom * factorial(left));
          parts[part][v] = 0;
          return;
        }
        for (std::uint32_t t = 0; t <= left; ++t) {
          parts[part][v] = t;
          rec(v, part + 1, left - t, denom * factorial(t));
        }
        parts[part][v] = 0;
      };
  rec(0, 0, n > 0 ? alpha[0] : 0, Rational(1));
}

}  // namespace

PolyDiffOp PolyDiffOp::multiplication(std::size_t ring_arity) {
  PolyDiffOp mu(2, ring_arity);
  mu.add_term({zero_index(ring_arity), zero_index(ring_arity)}, Poly::constant(ring_arity, Rational(1)));
  return mu;
}

PolyDiffOp PolyDiffOp::from_bivector(const Bivector& q) {
  const std::size_t n = q.arity();
  PolyDiffOp op(2, n);
  for (const auto& [key, coef] : q.components()) {
    auto [i, j] = key;
    MultiIndex ei = zero_index(n), ej = zero_index(n);
    ei[i] = 1;
    ej[j] = 1;
    op.add_term({ei, ej}, coef);
    op.add_term({ej, ei}, -coef);
  }
  return op;
}

PolyDiffOp PolyDiffOp::monomial_op(const Key& key, const Poly& coefficient) {
  PolyDiffOp op(key.size(), coefficient.arity());
  op.add_term(key, coefficient);
  return op;
}

std::uint32_t PolyDiffOp::order() const {
  std::uint32_t r = 0;
  for (const auto& [key, c] : terms_)
    for (const auto& a : key) r = std::max(r, total(a));
  return r;
}

int PolyDiffOp::coefficient_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, c.degree());
  return d;
}

void PolyDiffOp::add_term(const Key& key, const Poly& coefficient) {
  if (key.size() != arity_k_) throw DomainError("PolyDiffOp term has wrong number of slots");
  for (const auto& a : key)
    if (a.size() != ring_arity_) throw ArityError(ring_arity_, a.size(), "PolyDiffOp multi-index");
  if (coefficient.arity() != ring_arity_) throw ArityError(ring_arity_, coefficient.arity(), "PolyDiffOp coefficient");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PolyDiffOp::check_compatible(const PolyDiffOp& o, const char* where) const {
  if (o.ring_arity_ != ring_arity_) throw ArityError(ring_arity_, o.ring_arity_, where);
  if (o.arity_k_ != arity_k_) throw DomainError(std::string(where) + ": operator arities differ");
}

PolyDiffOp PolyDiffOp::permuted(std::span<const std::size_t> sigma) const {
  if (sigma.size() != arity_k_) throw DomainError("permutation size does not match operator arity");
  PolyDiffOp r(arity_k_, ring_arity_);
  for (const auto& [key, c] : terms_) {
    Key k(arity_k_);
    for (std::size_t t = 0; t < arity_k_; ++t) k.at(sigma[t]) = key[t];
    r.add_term(k, c);
  }
  return r;
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o) {
  check_compatible(o, "PolyDiffOp +");
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator-=(const PolyDiffOp& o) {
  check_compatible(o, "PolyDiffOp -");
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

PolyDiffOp operator*(const Poly& c, const PolyDiffOp& a) {
  PolyDiffOp r(a.arity_k_, a.ring_arity_);
  for (const auto& [key, v] : a.terms_) r.add_term(key, c * v);
  return r;
}

Poly apply_op(const PolyDiffOp& op, std::span<const Poly> args) {
  if (args.size() != op.arity())
    throw DomainError("apply_op: expected " + std::to_string(op.arity()) + " arguments, got " +
                      std::to_string(args.size()));
  for (const auto& a : args)
    if (a.arity() != op.ring_arity()) throw ArityError(op.ring_arity(), a.arity(), "apply_op");
  std::vector<std::map<MultiIndex, Poly>> cache(args.size());
  auto deriv = [&](std::size_t slot, const MultiIndex& alpha) -> const Poly& {
    auto it = cache[slot].find(alpha);
    if (it == cache[slot].end()) it = cache[slot].emplace(alpha, partial_derivative(args[slot], alpha)).first;
    return it->second;
  };
  Poly r(op.ring_arity());
  for (const auto& [key, c] : op.terms()) {
    Poly t = c;
    for (std::size_t s = 0; s < key.size() && !t.is_zero(); ++s) t *= deriv(s, key[s]);
    r += t;
  }
  return r;
}

PolyDiffOp compose(const PolyDiffOp& outer, std::size_t slot, const PolyDiffOp& inner) {
  if (outer.ring_arity() != inner.ring_arity()) throw ArityError(outer.ring_arity(), inner.ring_arity(), "compose");
  if (slot >= outer.arity()) throw DomainError("compose: slot out of range");
  const std::size_t k = outer.arity();
  const std::size_t m = inner.arity();
  PolyDiffOp r(k + m - 1, outer.ring_arity());
  std::map<std::pair<const Poly*, MultiIndex>, Poly> dcache;
  for (const auto& [okey, oc] : outer.terms()) {
    const MultiIndex& alpha = okey[slot];
    for (const auto& [ikey, ic] : inner.terms()) {
      for_each_split(alpha, m + 1, [&](const std::vector<MultiIndex>& parts, const Rational& mult) {
        auto ck = std::make_pair(&ic, parts[0]);
        auto it = dcache.find(ck);
        if (it == dcache.end()) it = dcache.emplace(ck, partial_derivative(ic, parts[0])).first;
        if (it->second.is_zero()) return;
        PolyDiffOp::Key key;
        key.reserve(k + m - 1);
        for (std::size_t t = 0; t < slot; ++t) key.push_back(okey[t]);
        for (std::size_t t = 0; t < m; ++t) key.push_back(add(ikey[t], parts[t + 1]));
        for (std::size_t t = slot + 1; t < k; ++t) key.push_back(okey[t]);
        r.add_term(key, (oc * it->second) * mult);
      });
    }
  }
  return r;
}

PolyDiffOp bar_differential(const PolyDiffOp& op) {
  const std::size_t k = op.arity();
  if (k == 0) throw DomainError("bar_differential: operator arity must be at least 1");
  const PolyDiffOp mu = PolyDiffOp::multiplication(op.ring_arity());
  PolyDiffOp r = compose(mu, 1, op);
  for (std::size_t i = 0; i < k; ++i) {
    PolyDiffOp t = compose(op, i, mu);
    if (i % 2 == 0) r -= t; else r += t;
  }
  PolyDiffOp last = compose(mu, 0, op);
  if ((k + 1) % 2 == 0) r += last; else r -= last;
  return r;
}

PolyDiffOp reduce_mod_ideal(const PolyDiffOp& op, const GroebnerBasis& g) {
  if (g.arity() != op.ring_arity()) throw ArityError(op.ring_arity(), g.arity(), "reduce_mod_ideal");
  PolyDiffOp r(op.arity(), op.ring_arity());
  for (const auto& [key, c] : op.terms()) r.add_term(key, normal_form(c, g));
  return r;
}

bool vanishes_mod_ideal(const PolyDiffOp& op, const GroebnerBasis& g) {
  if (g.arity() != op.ring_arity()) throw ArityError(op.ring_arity(), g.arity(), "vanishes_mod_ideal");
  return std::all_of(op.terms().begin(), op.terms().end(),
                     [&](const auto& t) { return ideal_member(t.second, g); });
}

SymSkewParts sym_skew_decompose(const PolyDiffOp& op) {
  if (op.arity() != 2) throw DomainError("sym_skew_decompose expects an arity-2 operator");
  const std::array<std::size_t, 2> swap{1, 0};
  PolyDiffOp swapped = op.permuted(swap);
  const Rational half(1, 2);
  return SymSkewParts{half * (op + swapped), half * (op - swapped)};
}

PolyDiffOp gerstenhaber_square(const PolyDiffOp& p) {
  if (p.arity() != 2) throw DomainError("gerstenhaber_square expects an arity-2 operator");
  return compose(p, 0, p) - compose(p, 1, p);
}

PolyDiffOp cyclic_jacobi_operator(const PolyDiffOp& p) {
  if (p.arity() != 2) throw DomainError("cyclic_jacobi_operator expects an arity-2 operator");
  PolyDiffOp t = compose(p, 0, p);
  const std::array<std::size_t, 3> bca{1, 2, 0};
  const std::array<std::size_t, 3> cab{2, 0, 1};
  return t + t.permuted(bca) + t.permuted(cab);
}

PolyDiffOp star_assoc_defect(const StarTruncation& star, std::size_t lambda_power) {
  const std::size_t order = star.order();
  if (lambda_power < 1 || lambda_power > order + 1)
    throw DomainError("star_assoc_defect: lambda power " + std::to_string(lambda_power) + " outside [1, " +
                      std::to_string(order + 1) + "]");
  std::size_t n = 0;
  if (!star.terms.empty()) n = star.terms.front().ring_arity();
  for (const auto& t : star.terms) {
    if (t.arity() != 2) throw DomainError("star-product terms must be arity-2 operators");
    if (t.ring_arity() != n) throw ArityError(n, t.ring_arity(), "star_assoc_defect");
  }
  const PolyDiffOp mu = PolyDiffOp::multiplication(n);
  auto term = [&](std::size_t i) -> const PolyDiffOp& { return i == 0 ? mu : star.terms[i - 1]; };
  PolyDiffOp r(3, n);
  for (std::size_t i = 0; i <= lambda_power; ++i) {
    std::size_t j = lambda_power - i;
    if (i > order || j > order) continue;
    r += compose(term(i), 0, term(j));
    r -= compose(term(i), 1, term(j));
  }
  return r;
}

}  // namespace dq
