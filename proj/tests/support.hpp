#pragma once

// Seeded generators and independent oracles shared by the unit tests and
// the acceptance suite. Oracles here deliberately avoid the library's own
// algorithms: they evaluate at points, expand by hand, or brute-force.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "dq/brackets.hpp"
#include "dq/hochschild.hpp"
#include "dq/ideal.hpp"
#include "dq/polyring.hpp"

namespace dqtest {

using namespace dq;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational() {
    long den = range(1, 4);
    return Rational(range(-9, 9), den);
  }

  Monomial monomial(std::size_t n, std::uint32_t max_degree) {
    std::vector<std::uint32_t> e(n, 0);
    auto d = static_cast<std::uint32_t>(range(0, max_degree));
    for (std::uint32_t k = 0; k < d; ++k) ++e[static_cast<std::size_t>(range(0, static_cast<long>(n) - 1))];
    return Monomial(std::move(e));
  }

  Poly poly(std::size_t n, std::uint32_t max_degree, int terms = 3) {
    Poly p(n);
    for (int t = 0; t < terms; ++t) {
      Rational c = rational();
      if (!c.is_zero()) p.add_term(monomial(n, max_degree), c);
    }
    return p;
  }

  Poly nonconstant(std::size_t n, std::uint32_t max_degree, int terms = 3) {
    for (;;) {
      Poly p = poly(n, max_degree, terms);
      if (p.degree() >= 1) return p;
    }
  }

  Bivector bivector(std::size_t n, std::uint32_t max_degree) {
    Bivector q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) q.set(i, j, poly(n, max_degree, 2));
    return q;
  }

  MultiIndex index(std::size_t n, std::uint32_t max_order) { return monomial(n, max_order).exponents(); }

  PolyDiffOp op(std::size_t arity, std::size_t n, std::uint32_t max_order, std::uint32_t coeff_degree,
                int terms = 3) {
    PolyDiffOp r(arity, n);
    for (int t = 0; t < terms; ++t) {
      PolyDiffOp::Key key;
      for (std::size_t s = 0; s < arity; ++s) key.push_back(index(n, max_order));
      r.add_term(key, poly(n, coeff_degree, 2));
    }
    return r;
  }

  std::vector<Rational> point(std::size_t n) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(rational());
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
inline Poly cst(std::size_t n, const Rational& c) { return Poly::constant(n, c); }

/// Evaluation by summing c * prod x_i^{e_i} directly.
inline Rational eval(const Poly& p, const std::vector<Rational>& x) {
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

/// Determinant of a rational matrix by Gaussian elimination.
inline Rational numeric_det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Leibniz-formula determinant of a small polynomial matrix.
inline Poly leibniz_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Poly sum(m.arity());
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Poly t = cst(m.arity(), Rational(sign));
    for (std::size_t i = 0; i < n; ++i) t *= m(i, perm[i]);
    sum += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

/// Textbook multivariate division by an ordered list: returns the remainder.
inline Poly naive_remainder(Poly p, const std::vector<Poly>& divisors, const MonomialOrder& order) {
  Poly rem(p.arity());
  while (!p.is_zero()) {
    Monomial lt = p.leading_monomial(order);
    Rational lc = p.leading_coefficient(order);
    bool divided = false;
    for (const auto& d : divisors) {
      const Monomial& dl = d.leading_monomial(order);
      if (dl.divides(lt)) {
        Poly q = Poly::term(dl.quotient_of(lt), lc / d.leading_coefficient(order));
        p -= q * d;
        divided = true;
        break;
      }
    }
    if (!divided) {
      rem.add_term(lt, lc);
      p -= Poly::term(lt, lc);
    }
  }
  return rem;
}

/// Krull dimension by brute force over all variable subsets.
inline std::size_t brute_dimension(const std::vector<Monomial>& leads, std::size_t n) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = std::none_of(leads.begin(), leads.end(), [&](const Monomial& m) {
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] > 0 && !(mask & (1u << i))) return false;
      return true;
    });
    if (independent) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

/// All monomials in n variables of total degree <= d, as polynomials.
inline std::vector<Poly> monomials_up_to(std::size_t n, std::uint32_t d) {
  std::vector<Poly> out;
  std::vector<std::uint32_t> e(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t v, std::uint32_t left) {
    if (v == n) {
      out.push_back(Poly::term(Monomial(e), Rational(1)));
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, d);
  return out;
}

/// Hochschild differential evaluated directly from its defining formula.
inline Poly direct_bar(const PolyDiffOp& h, const std::vector<Poly>& a) {
  const std::size_t k = h.arity();
  Poly r = a[0] * apply_op(h, std::vector<Poly>(a.begin() + 1, a.end()));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Poly> args;
    for (std::size_t t = 0; t < i; ++t) args.push_back(a[t]);
    args.push_back(a[i] * a[i + 1]);
    for (std::size_t t = i + 2; t <= k; ++t) args.push_back(a[t]);
    Poly v = apply_op(h, args);
    if (i % 2 == 0) r -= v; else r += v;
  }
  Poly last = apply_op(h, std::vector<Poly>(a.begin(), a.begin() + static_cast<long>(k))) * a[k];
  if ((k + 1) % 2 == 0) r += last; else r -= last;
  return r;
}

/// p(p(a, b), c) - p(a, p(b, c)) by nested evaluation.
inline Poly nested_square(const PolyDiffOp& p, const Poly& a, const Poly& b, const Poly& c) {
  return apply_op(p, std::vector<Poly>{apply_op(p, std::vector<Poly>{a, b}), c}) -
         apply_op(p, std::vector<Poly>{a, apply_op(p, std::vector<Poly>{b, c})});
}

}  // namespace dqtest
