#include <doctest.h>

#include "support.hpp"

using namespace dq;
using namespace dqtest;

namespace {

const VariableNames X3 = VariableNames::numbered("x", 3);

Poly P(const char* s) { return parse_poly(s, X3); }

// det(grad f; grad a; grad b) from explicit 3x3 matrices.
Poly det_bracket(const Poly& f, const Poly& a, const Poly& b) {
  PolyMatrix m(3, 3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    m(0, c) = partial_derivative(f, c);
    m(1, c) = partial_derivative(a, c);
    m(2, c) = partial_derivative(b, c);
  }
  return leibniz_det(m);
}

// Bordered minor: rows grad f_s, grad a, grad b on the given columns.
Poly bordered_minor(const std::vector<Poly>& fs, const std::vector<std::size_t>& cols, const Poly& a,
                    const Poly& b) {
  const std::size_t k = cols.size();
  PolyMatrix m(k, k, a.arity());
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t s = 0; s < fs.size(); ++s) m(s, c) = partial_derivative(fs[s], cols[c]);
    m(k - 2, c) = partial_derivative(a, cols[c]);
    m(k - 1, c) = partial_derivative(b, cols[c]);
  }
  return leibniz_det(m);
}

Poly nested_jacobi(const Bivector& q, const Poly& a, const Poly& b, const Poly& c) {
  return apply_bivector(q, apply_bivector(q, a, b), c) + apply_bivector(q, apply_bivector(q, b, c), a) +
         apply_bivector(q, apply_bivector(q, c, a), b);
}

}  // namespace

TEST_CASE("bivector storage") {
  Bivector q(3);
  q.set(2, 0, P("x1"));
  CHECK(q.component(0, 2) == P("-x1"));
  CHECK(q.component(2, 0) == P("x1"));
  CHECK(q.component(1, 1).is_zero());
  CHECK(q.components().size() == 1);
  CHECK_THROWS_AS(q.set(1, 1, P("1")), DomainError);
  CHECK_THROWS_AS(q.set(0, 3, P("1")), DomainError);
  q.set(0, 2, Poly(3));
  CHECK(q.is_zero());
}

TEST_CASE("so(3) bracket from the sphere function") {
  Poly f = P("1/2*(x1^2+x2^2+x3^2)");
  Bivector q = jacobian_bracket(f);
  CHECK(q.component(0, 1) == P("x3"));
  CHECK(q.component(0, 2) == P("-x2"));
  CHECK(q.component(1, 2) == P("x1"));
  CHECK(apply_bivector(q, P("x1"), P("x2")) == P("x3"));
  CHECK(apply_bivector(q, P("x1"), P("x2")) == det_bracket(f, P("x1"), P("x2")));
  CHECK(apply_bivector(q, P("x2"), P("x3")) == P("x1"));
  CHECK(apply_bivector(q, P("x3"), P("x1")) == P("x2"));
  CHECK(jacobiator(q).is_zero());
}

TEST_CASE("jacobian bracket small cases") {
  CHECK(jacobian_bracket(P("7")).is_zero());
  Bivector q = jacobian_bracket(P("x1"));
  CHECK(q.components().size() == 1);
  CHECK(q.component(1, 2) == P("1"));
  CHECK(apply_bivector(q, P("x2"), P("x3")) == det_bracket(P("x1"), P("x2"), P("x3")));
  CHECK_THROWS_AS(jacobian_bracket(var(4, 0)), DomainError);
}

TEST_CASE("apply_bivector matches the determinant and is a skew biderivation") {
  Gen gen(31);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = gen.poly(3, 3), a = gen.poly(3, 2), b = gen.poly(3, 2), c = gen.poly(3, 2);
    Bivector q = jacobian_bracket(f);
    CHECK(apply_bivector(q, a, b) == det_bracket(f, a, b));
    CHECK(apply_bivector(q, a, a).is_zero());
    CHECK(apply_bivector(q, cst(3, gen.rational()), b).is_zero());
    CHECK(apply_bivector(q, a, b) == -apply_bivector(q, b, a));
    CHECK(apply_bivector(q, a * c, b) == a * apply_bivector(q, c, b) + c * apply_bivector(q, a, b));
  }
}

TEST_CASE("minor brackets") {
  // One generator in three variables: the minor bracket is the Jacobian bracket.
  Gen gen(12);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = gen.nonconstant(3, 3);
    std::vector<Poly> fs{f};
    std::vector<std::size_t> cols{0, 1, 2};
    CHECK(minor_bracket(fs, cols) == jacobian_bracket(f));
  }
  // A generator missing a variable gives a zero column in its minors.
  VariableNames x4 = VariableNames::numbered("x", 4);
  std::vector<Poly> fs{parse_poly("x1^2 + x2^2", x4), parse_poly("x1*x2 - x4", x4)};
  std::vector<std::size_t> cols{0, 1, 2, 3};
  Bivector q = minor_bracket(fs, cols);
  Poly a = parse_poly("x3", x4), b = parse_poly("x1 + x4^2", x4);
  CHECK(apply_bivector(q, a, b) == bordered_minor(fs, cols, a, b));

  CHECK_THROWS_AS(minor_bracket(fs, std::vector<std::size_t>{0, 1, 2}), DomainError);
  CHECK_THROWS_AS(minor_bracket(fs, std::vector<std::size_t>{0, 2, 1, 3}), DomainError);
}

TEST_CASE("minor brackets reproduce the bordered determinant and lift") {
  Gen gen(1001);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t m = static_cast<std::size_t>(gen.range(1, 3));
    std::size_t n = m + 2 + static_cast<std::size_t>(gen.range(0, 1));
    std::vector<Poly> fs;
    for (std::size_t s = 0; s < m; ++s) fs.push_back(gen.nonconstant(n, 2));
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
    if (cols.size() > m + 2) cols.erase(cols.begin() + gen.range(0, static_cast<long>(n) - 1));
    Bivector q = minor_bracket(fs, cols);
    Poly a = gen.poly(n, 2), b = gen.poly(n, 2);
    CHECK(apply_bivector(q, a, b) == bordered_minor(fs, cols, a, b));
    for (const auto& f : fs) CHECK((apply_bivector(q, f * a, b) - f * apply_bivector(q, a, b)).is_zero());
    GroebnerBasis g = buchberger(fs, MonomialOrder::degrevlex(n));
    CHECK(lift_check(q, g, fs));
  }
}

TEST_CASE("jacobiator agrees with nested brackets of coordinates") {
  Gen gen(55);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = trial % 2 ? 3 : 4;
    Bivector q = gen.bivector(n, 2);
    TriVector t = jacobiator(q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          CHECK(t.component(i, j, k) == nested_jacobi(q, var(n, i), var(n, j), var(n, k)));
  }
}

TEST_CASE("rescaled Jacobian brackets are Poisson mod f") {
  Gen gen(606);
  for (int trial = 0; trial < 10; ++trial) {
    Poly e = gen.poly(3, 2), f = gen.nonconstant(3, 3);
    Bivector q = e * jacobian_bracket(f);
    std::vector<Poly> gens{f};
    GroebnerBasis g = buchberger(gens);
    PoissonVerdict v = is_poisson_mod_ideal(q, g);
    CHECK(v.poisson);
    CHECK(jacobiator(q).is_zero());
    CHECK(lift_check(q, g, gens));
  }
}

TEST_CASE("non-Poisson bivectors are caught with a residue") {
  Bivector q(3);
  q.set(0, 1, P("x3"));
  q.set(1, 2, P("x3"));
  q.set(0, 2, P("x2"));
  TriVector t = jacobiator(q);
  CHECK_FALSE(t.is_zero());
  PoissonVerdict v = is_poisson_mod_ideal(q, zero_ideal(3, MonomialOrder::degrevlex(3)));
  CHECK_FALSE(v.poisson);
  REQUIRE(v.residue);
  CHECK(*v.residue == t.component(0, 1, 2));
}

TEST_CASE("lift_check agrees with sampled membership") {
  Gen gen(8080);
  int lifted = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Poly f = gen.nonconstant(3, 3);
    std::vector<Poly> gens{f};
    GroebnerBasis g = buchberger(gens);
    Bivector q = trial % 2 ? gen.poly(3, 1) * jacobian_bracket(f) : gen.bivector(3, 2);
    Poly a = gen.nonconstant(3, 2);
    bool sampled = true;
    for (const Poly& mult : {cst(3, 1), a})
      for (std::size_t j = 0; j < 3; ++j) sampled = sampled && ideal_member(apply_bivector(q, f * mult, var(3, j)), g);
    bool lift = lift_check(q, g, gens);
    CHECK(lift == sampled);
    lifted += lift;
  }
  CHECK(lifted >= 15);
}

TEST_CASE("combine") {
  Poly f = P("x1*x2*x3");
  Bivector p = jacobian_bracket(f), q = jacobian_bracket(P("x1^2"));
  std::vector<Bivector> qs{p, q};
  std::vector<Rational> cs{Rational(2), Rational(-1)};
  Bivector r = combine(cs, qs);
  CHECK(apply_bivector(r, P("x2"), P("x3")) ==
        Rational(2) * apply_bivector(p, P("x2"), P("x3")) - apply_bivector(q, P("x2"), P("x3")));
  CHECK_THROWS_AS(combine(std::vector<Rational>{Rational(1)}, qs), DomainError);
}
