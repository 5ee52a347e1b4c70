// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "dq/k3atlas.hpp"
#include "support.hpp"

using namespace dq;
using namespace dqtest;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

Poly P3(const char* s) { return parse_poly(s, VariableNames::numbered("x", 3)); }

Poly ap(const PolyDiffOp& op, std::vector<Poly> args) { return apply_op(op, args); }

Outcome bar_nilpotence() {
  Outcome o;
  Gen gen(101);
  for (int t = 0; t < 100; ++t) {
    auto k = static_cast<std::size_t>(gen.range(1, 2));
    auto n = static_cast<std::size_t>(gen.range(1, 4));
    PolyDiffOp h = gen.op(k, n, 2, 3);
    PolyDiffOp dh = bar_differential(h);
    o.require(bar_differential(dh).is_zero(), "d^2 != 0 at instance " + std::to_string(t));
    std::vector<Poly> a;
    for (std::size_t i = 0; i <= k; ++i) a.push_back(gen.poly(n, 2));
    o.require(ap(dh, a) == direct_bar(h, a), "dh disagrees with the defining formula at instance " + std::to_string(t));
  }
  return o;
}

Outcome projector_suite() {
  Outcome o;
  const std::array<CochainProjector, 3> es{CochainProjector::e1(), CochainProjector::e2(), CochainProjector::e3()};
  Gen gen(202);
  for (int t = 0; t < 50; ++t) {
    PolyDiffOp h = gen.op(3, 3, 2, 2);
    PolyDiffOp sum(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      PolyDiffOp ei = apply_projector(es[i], h);
      sum += ei;
      for (std::size_t j = 0; j < 3; ++j) {
        PolyDiffOp eij = apply_projector(es[i], apply_projector(es[j], h));
        o.require(i == j ? eij == ei : eij.is_zero(), "e_i e_j != delta_ij e_i on instance " + std::to_string(t));
      }
    }
    o.require(sum == h, "e1 + e2 + e3 != id on instance " + std::to_string(t));
  }
  // Matrix identities in the regular representation.
  using Matrix = std::vector<std::vector<Rational>>;
  auto mul = [](const Matrix& a, const Matrix& b) {
    Matrix c(6, std::vector<Rational>(6, Rational(0)));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  std::array<Matrix, 3> m;
  for (std::size_t i = 0; i < 3; ++i) m[i] = es[i].table().left_regular_matrix();
  Matrix zero(6, std::vector<Rational>(6, Rational(0)));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      o.require(m[0][r][c] + m[1][r][c] + m[2][r][c] == Rational(r == c ? 1 : 0), "matrix sum != identity");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) o.require(mul(m[i], m[j]) == (i == j ? m[i] : zero), "matrix products");
  return o;
}

Outcome obstruction_decomposition() {
  Outcome o;
  Gen gen(303);
  for (int t = 0; t < 25; ++t) {
    PolyDiffOp p = PolyDiffOp::from_bivector(gen.bivector(3, 2));
    PolyDiffOp sq = gerstenhaber_square(p);
    auto a = std::vector<Poly>{gen.poly(3, 2), gen.poly(3, 2), gen.poly(3, 2)};
    o.require(ap(sq, a) == nested_square(p, a[0], a[1], a[2]), "square disagrees with nested evaluation");
    o.require(apply_projector(CochainProjector::e2(), sq).is_zero(), "e2 [p,p] != 0");
    o.require(apply_projector(CochainProjector::e3(), sq) == Rational(2, 3) * cyclic_jacobi_operator(p),
              "e3 [p,p] != 2/3 Jacobi sum");
  }
  return o;
}

Outcome so3_and_cone() {
  Outcome o;
  for (int sign : {1, -1}) {
    Poly f = Rational(1, 2) * (P3("x1^2 + x2^2") + Rational(sign) * P3("x3^2"));
    Bivector q = jacobian_bracket(f);
    // Expected values and the determinant det(grad f; grad a; grad b).
    auto det = [&](const Poly& a, const Poly& b) {
      PolyMatrix m(3, 3, 3);
      for (std::size_t c = 0; c < 3; ++c) {
        m(0, c) = partial_derivative(f, c);
        m(1, c) = partial_derivative(a, c);
        m(2, c) = partial_derivative(b, c);
      }
      return leibniz_det(m);
    };
    Poly x1 = P3("x1"), x2 = P3("x2"), x3 = P3("x3");
    o.require(apply_bivector(q, x1, x2) == Rational(sign) * x3, "P(x1, x2)");
    o.require(apply_bivector(q, x2, x3) == x1, "P(x2, x3)");
    o.require(apply_bivector(q, x3, x1) == x2, "P(x3, x1)");
    o.require(apply_bivector(q, x1, x2) == det(x1, x2), "determinant oracle");
    o.require(jacobiator(q).is_zero(), "jacobiator");
    std::vector<Poly> gens{f};
    o.require(lift_check(q, buchberger(gens), gens), "lift_check");
  }
  return o;
}

Outcome minor_lifting() {
  Outcome o;
  Gen gen(505);
  int done = 0;
  while (done < 20) {
    auto m = static_cast<std::size_t>(gen.range(1, 3));
    auto n = static_cast<std::size_t>(gen.range(static_cast<long>(m) + 2, 6));
    std::vector<Poly> fs;
    for (std::size_t s = 0; s < m; ++s) fs.push_back(gen.nonconstant(n, 2));
    GroebnerBasis g = buchberger(fs, MonomialOrder::degrevlex(n));
    if (g.is_unit_ideal() || !is_complete_intersection(fs, g)) continue;
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    std::shuffle(cols.begin(), cols.end(), gen.engine());
    cols.resize(m + 2);
    std::sort(cols.begin(), cols.end());
    Bivector q = minor_bracket(fs, cols);
    Poly a = gen.poly(n, 2), b = gen.poly(n, 2);
    for (const auto& f : fs)
      o.require((apply_bivector(q, f * a, b) - f * apply_bivector(q, a, b)).is_zero(),
                "P_K(f a, b) != f P_K(a, b) at instance " + std::to_string(done));
    ++done;
  }
  return o;
}

Outcome jacobian_poisson() {
  Outcome o;
  Gen gen(606);
  for (int t = 0; t < 10; ++t) {
    Poly e = gen.poly(3, 2), f = gen.nonconstant(3, 3);
    Bivector q = e * jacobian_bracket(f);
    std::vector<Poly> gens{f};
    GroebnerBasis g = buchberger(gens);
    for (const auto& [key, c] : jacobiator(q).components())
      o.require(normal_form(c, g).is_zero(), "jacobiator component does not reduce to 0");
    o.require(is_poisson_mod_ideal(q, g).poisson, "is_poisson_mod_ideal");
  }
  return o;
}

PolyDiffOp moyal_term(std::uint32_t k) {
  PolyDiffOp op(2, 2);
  Rational fact(1);
  for (std::uint32_t t = 2; t <= k; ++t) fact *= Rational(t);
  for (std::uint32_t j = 0; j <= k; ++j) {
    Rational c = binomial(k, j) / fact;
    if (j % 2) c = -c;
    op.add_term({{k - j, j}, {j, k - j}}, cst(2, c));
  }
  return op;
}

Outcome moyal_second_order() {
  Outcome o;
  Bivector w(2);
  w.set(0, 1, cst(2, 1));
  PolyDiffOp p = PolyDiffOp::from_bivector(w);
  GroebnerBasis g = zero_ideal(2, MonomialOrder::degrevlex(2));
  SolveP2Result r = solve_p2(p, g, {2, 0});
  o.require(r.solved(), "no solution: " + r.message);
  if (!r.solved()) return o;
  o.require(star_assoc_defect(StarTruncation{{p, *r.p2}}, 2).is_zero(), "defect of the solution");
  o.require(star_assoc_defect(StarTruncation{{p, moyal_term(2)}}, 2).is_zero(), "defect of the Moyal term");
  return o;
}

Outcome hypersurface_p2() {
  Outcome o;
  Poly f = P3("1/2*(x1^2+x2^2+x3^2)");
  std::vector<Poly> gens{f};
  GroebnerBasis g = buchberger(gens);
  PolyDiffOp p = PolyDiffOp::from_bivector(jacobian_bracket(f));
  SolveP2Result r = solve_p2(p, g, {2, 2});
  o.require(r.solved(), "no solution: " + r.message);
  if (!r.solved()) return o;
  o.require(vanishes_mod_ideal(star_assoc_defect(StarTruncation{{p, *r.p2}}, 2), g), "reduced defect");
  return o;
}

Outcome k3_global() {
  Outcome o;
  VariableNames z4 = VariableNames::numbered("z", 4, true), z5 = VariableNames::numbered("z", 5, true),
                z6 = VariableNames::numbered("z", 6, true);
  std::vector<std::pair<std::string, SurfaceSpec>> cases{
      {"Fermat quartic", make_surface(K3Family::X4, {parse_poly("z0^4 + z1^4 + z2^4 + z3^4", z4)})},
      {"X32", make_surface(K3Family::X32, {parse_poly("z0^3 + z1^3 + z2^3 + z3^3 + z4^3", z5),
                                            parse_poly("z0^2 + z1^2 + z2^2 + z3^2 + z4^2", z5)})},
      {"X222", make_surface(K3Family::X222, {parse_poly("z0^2 + z1^2 + z2^2 + z3^2 + z4^2 + z5^2", z6),
                                              parse_poly("z1^2 + 2*z2^2 + 3*z3^2 + 4*z4^2 + 5*z5^2", z6),
                                              parse_poly("z1^2 + 4*z2^2 + 9*z3^2 + 16*z4^2 + 25*z5^2", z6)})},
      {"singular quartic", make_surface(K3Family::X4, {parse_poly("z0^2*z1^2 + z2^4 + z3^4", z4)})}};
  for (const auto& [name, spec] : cases) {
    SurfaceReport r = verify_surface(spec);
    const std::size_t N = spec.homogeneous_arity();
    o.require(r.charts.size() == N && r.overlaps.size() == N * (N - 1) / 2, name + ": chart/overlap count");
    o.require(r.pass, name + ": verification failed");
    RelationIdeal rel = relation_ideal(spec);
    auto charts = all_charts(spec);
    for (std::size_t a = 0; a < charts.size(); ++a)
      for (std::size_t b = a + 1; b < charts.size(); ++b) {
        AgreementCertificate c = agreement_certificate(spec, rel, charts[a], charts[b]);
        o.require(normal_form(c.cleared_difference, *rel.basis).is_zero(), name + ": certificate residue");
      }
  }
  return o;
}

Outcome cross_oracles() {
  Outcome o;
  Gen gen(1010);
  int lifted = 0;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = t % 4 == 3 ? 4 : 3;
    std::vector<Poly> gens;
    Bivector q(n);
    if (n == 4) {
      gens = {gen.nonconstant(4, 2), gen.nonconstant(4, 2)};
      q = t % 8 == 3 ? minor_bracket(gens, std::vector<std::size_t>{0, 1, 2, 3}) : gen.bivector(4, 1);
    } else {
      gens = {gen.nonconstant(3, 3)};
      q = t % 2 ? gen.poly(3, 1) * jacobian_bracket(gens[0]) : gen.bivector(3, 2);
    }
    GroebnerBasis g = buchberger(gens, MonomialOrder::degrevlex(n));
    bool sampled = true;
    Poly a = gen.nonconstant(n, 2);
    for (const auto& f : gens)
      for (const Poly& mult : {cst(n, 1), a})
        for (std::size_t j = 0; j < n; ++j)
          sampled = sampled && ideal_member(apply_bivector(q, f * mult, var(n, j)), g);
    bool lift = lift_check(q, g, gens);
    lifted += lift;
    o.require(lift == sampled, "lift_check disagrees with sampling at instance " + std::to_string(t));
  }
  o.require(lifted > 0 && lifted < 50, "sampling covered only one verdict");
  for (int t = 0; t < 50; ++t) {
    std::size_t n = t % 2 ? 3 : 4;
    Bivector q = gen.bivector(n, 2);
    TriVector jac = jacobiator(q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Poly xi = var(n, i), xj = var(n, j), xk = var(n, k);
          Poly nested = apply_bivector(q, apply_bivector(q, xi, xj), xk) +
                        apply_bivector(q, apply_bivector(q, xj, xk), xi) +
                        apply_bivector(q, apply_bivector(q, xk, xi), xj);
          o.require(jac.component(i, j, k) == nested, "jacobiator disagrees with nested brackets");
        }
  }
  return o;
}

Outcome groebner_layer() {
  Outcome o;
  Gen gen(1111);
  for (int t = 0; t < 15; ++t) {
    std::vector<Poly> gens{gen.nonconstant(3, 2), gen.nonconstant(3, 2), gen.nonconstant(3, 2)};
    GroebnerBasis g = buchberger(gens, MonomialOrder::degrevlex(3));
    std::vector<Poly> perm{gens[2], gens[0], gens[1]};
    GroebnerBasis h = buchberger(perm, MonomialOrder::degrevlex(3));
    o.require(g.basis() == h.basis(), "reduced basis depends on generator order");
    for (std::size_t i = 0; i < g.basis().size(); ++i)
      for (std::size_t j = i + 1; j < g.basis().size(); ++j)
        o.require(normal_form(s_polynomial(g.basis()[i], g.basis()[j], g.order()), g).is_zero(),
                  "S-polynomial does not reduce to 0");
    Poly p = gen.poly(3, 4, 5);
    Poly nf = normal_form(p, g);
    o.require(normal_form(nf, g) == nf, "normal form is not idempotent");
  }
  auto dim = [](std::vector<Poly> gens) {
    GroebnerBasis g = buchberger(gens, MonomialOrder::degrevlex(3));
    std::size_t d = dimension(g);
    return d == brute_dimension(g.leading_monomials(), 3) ? static_cast<long>(d) : -1L;
  };
  o.require(dim({P3("x1")}) == 2, "dim (x1)");
  o.require(dim({P3("x1"), P3("x2")}) == 1, "dim (x1, x2)");
  o.require(dim({P3("x1^2+x2^2+x3^2")}) == 2, "dim (x1^2+x2^2+x3^2)");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bar-differential nilpotence", 30, bar_nilpotence},
      {2, "projector suite", 10, projector_suite},
      {3, "obstruction decomposition", 60, obstruction_decomposition},
      {4, "so(3) and cone brackets", 1, so3_and_cone},
      {5, "minor-bracket lifting", 60, minor_lifting},
      {6, "rescaled Jacobian brackets are Poisson", 60, jacobian_poisson},
      {7, "Moyal second order", 10, moyal_second_order},
      {8, "hypersurface p2", 300, hypersurface_p2},
      {9, "K3 global bracket", 600, k3_global},
      {10, "cross-oracle consistency", 60, cross_oracles},
      {11, "Groebner layer", 60, groebner_layer},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.note = "over the time limit of " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    std::printf("[%s] %2d %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.note.empty() ? "" : ": ", o.note.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
