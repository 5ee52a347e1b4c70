#include <algorithm>

#include "dq/hochschild.hpp"

namespace dq {

namespace {

using Perm = S3Element::Perm;

// Argument orders written as words in a, b, c.
constexpr Perm kAbc{0, 1, 2};
constexpr Perm kCba{2, 1, 0};
constexpr Perm kAcb{0, 2, 1};
constexpr Perm kBca{1, 2, 0};
constexpr Perm kBac{1, 0, 2};
constexpr Perm kCab{2, 0, 1};

S3Element make_element(std::initializer_list<std::pair<Perm, long>> entries, long denominator) {
  S3Element x;
  for (const auto& [s, c] : entries) x.add(s, Rational(c, denominator));
  return x;
}

}  // namespace

S3Element S3Element::identity() {
  S3Element x;
  x.add(kAbc, Rational(1));
  return x;
}

const std::array<S3Element::Perm, 6>& S3Element::basis() {
  static const std::array<Perm, 6> b{kAbc, kAcb, kBac, kBca, kCab, kCba};
  return b;
}

void S3Element::add(const Perm& s, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational S3Element::coefficient(const Perm& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

S3Element operator*(const S3Element& x, const S3Element& y) {
  S3Element r;
  for (const auto& [s, a] : x.terms_)
    for (const auto& [t, b] : y.terms_) {
      Perm u{s[t[0]], s[t[1]], s[t[2]]};
      r.add(u, a * b);
    }
  return r;
}

S3Element operator+(const S3Element& x, const S3Element& y) {
  S3Element r = x;
  for (const auto& [s, c] : y.terms_) r.add(s, c);
  return r;
}

std::vector<std::vector<Rational>> S3Element::left_regular_matrix() const {
  const auto& b = basis();
  std::vector<std::vector<Rational>> m(6, std::vector<Rational>(6, Rational(0)));
  for (std::size_t c = 0; c < 6; ++c) {
    S3Element e;
    e.add(b[c], Rational(1));
    S3Element prod = *this * e;
    for (std::size_t r = 0; r < 6; ++r) m[r][c] = prod.coefficient(b[r]);
  }
  return m;
}

PolyDiffOp S3Element::act(const PolyDiffOp& op) const {
  if (op.arity() != 3) throw DomainError("S3 action requires an arity-3 operator, got arity " +
                                         std::to_string(op.arity()));
  PolyDiffOp r(3, op.ring_arity());
  for (const auto& [s, c] : terms_) r += c * op.permuted(s);
  return r;
}

CochainProjector CochainProjector::e1() {
  return {Which::E1, make_element({{kAbc, 2}, {kCba, -2}, {kAcb, 1}, {kBca, -1}, {kBac, 1}, {kCab, -1}}, 6)};
}

CochainProjector CochainProjector::e2() { return {Which::E2, make_element({{kAbc, 1}, {kCba, 1}}, 2)}; }

CochainProjector CochainProjector::e3() {
  return {Which::E3, make_element({{kAbc, 1}, {kCba, -1}, {kAcb, -1}, {kBca, 1}, {kBac, -1}, {kCab, 1}}, 6)};
}

CochainProjector CochainProjector::of(Which w) {
  switch (w) {
    case Which::E1: return e1();
    case Which::E2: return e2();
    case Which::E3: return e3();
  }
  throw DomainError("unknown projector");
}

PolyDiffOp apply_projector(const CochainProjector& e, const PolyDiffOp& op) { return e.table().act(op); }

// Signed shuffles: a permutation enters with the sign it carries as a
// reordering of the arguments.
S3Element shuffle_sum_1_2() { return make_element({{kAbc, 1}, {kBac, -1}, {kBca, 1}}, 1); }

S3Element shuffle_sum_2_1() { return make_element({{kAbc, 1}, {kAcb, -1}, {kCab, 1}}, 1); }

bool shuffle_vanishing_check(const PolyDiffOp& op, const GroebnerBasis& g) {
  if (op.arity() != 3) throw DomainError("shuffle_vanishing_check requires an arity-3 operator");
  return vanishes_mod_ideal(shuffle_sum_1_2().act(op), g) && vanishes_mod_ideal(shuffle_sum_2_1().act(op), g);
}

}  // namespace dq
