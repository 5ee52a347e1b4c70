#include <doctest.h>

#include "dq/k3atlas.hpp"
#include "support.hpp"

using namespace dq;
using namespace dqtest;

namespace {

VariableNames zvars(std::size_t count) { return VariableNames::numbered("z", count, true); }

SurfaceSpec fermat() {
  return make_surface(K3Family::X4, {parse_poly("z0^4 + z1^4 + z2^4 + z3^4", zvars(4))});
}

SurfaceSpec singular_quartic() {
  return make_surface(K3Family::X4, {parse_poly("z0^2*z1^2 + z2^4 + z3^4", zvars(4))});
}

SurfaceSpec x32() {
  VariableNames z = zvars(5);
  return make_surface(K3Family::X32, {parse_poly("z0^3 + z1^3 + z2^3 + z3^3 + z4^3", z),
                                      parse_poly("z0^2 + z1^2 + z2^2 + z3^2 + z4^2", z)});
}

SurfaceSpec x222() {
  VariableNames z = zvars(6);
  return make_surface(K3Family::X222,
                      {parse_poly("z0^2 + z1^2 + z2^2 + z3^2 + z4^2 + z5^2", z),
                       parse_poly("z1^2 + 2*z2^2 + 3*z3^2 + 4*z4^2 + 5*z5^2", z),
                       parse_poly("z1^2 + 4*z2^2 + 9*z3^2 + 16*z4^2 + 25*z5^2", z)});
}

// Replaces every variable of p by the corresponding image polynomial.
Poly substitute(const Poly& p, const std::vector<Poly>& images) {
  const std::size_t m = images.front().arity();
  Poly out(m);
  for (const auto& [mono, c] : p.terms()) {
    Poly t = cst(m, c);
    for (std::size_t v = 0; v < images.size(); ++v)
      if (mono[v] > 0) t *= images[v].pow(mono[v]);
    out += t;
  }
  return out;
}

// Koszul vectors z_p e_q - z_q e_p span the solutions of sum z_j v_j = 0,
// so testing the cleared difference on every pair of them decides agreement
// without the relation ideal. Checks membership in the surface ideal only.
bool koszul_agreement(const SurfaceSpec& spec, const Poly& cleared) {
  const std::size_t N = spec.homogeneous_arity();
  GroebnerBasis surface = buchberger(spec.polys, MonomialOrder::degrevlex(N));
  std::vector<std::vector<Poly>> vectors;
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q) {
      std::vector<Poly> v(N, Poly(N));
      v[q] = var(N, p);
      v[p] = -var(N, q);
      vectors.push_back(v);
    }
  for (const auto& a : vectors)
    for (const auto& b : vectors) {
      std::vector<Poly> images;
      for (std::size_t j = 0; j < N; ++j) images.push_back(var(N, j));
      images.insert(images.end(), a.begin(), a.end());
      images.insert(images.end(), b.begin(), b.end());
      if (!ideal_member(substitute(cleared, images), surface)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("surface validation") {
  CHECK(parse_family("X32") == K3Family::X32);
  CHECK(family_name(K3Family::X222) == "X222");
  CHECK_THROWS_AS(parse_family("X5"), DomainError);
  VariableNames z4 = zvars(4), z5 = zvars(5);
  CHECK_THROWS_AS(make_surface(K3Family::X4, {parse_poly("z0^4 + z1^3", z4)}), DomainError);
  CHECK_THROWS_AS(make_surface(K3Family::X4, {parse_poly("z0^4", z5)}), DomainError);
  CHECK_THROWS_AS(make_surface(K3Family::X4, {Poly(4)}), DomainError);
  CHECK_THROWS_AS(make_surface(K3Family::X32, {parse_poly("z0^3", z5)}), DomainError);
  CHECK_THROWS_AS(make_surface(K3Family::X32, {parse_poly("z0^2", z5), parse_poly("z0^3", z5)}), DomainError);
  try {
    make_surface(K3Family::X4, {parse_poly("z0^4 + z1", z4)});
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("Euler") != std::string::npos);
  }
}

TEST_CASE("charts") {
  SurfaceSpec s = fermat();
  auto charts = all_charts(s);
  REQUIRE(charts.size() == 4);
  for (std::size_t l = 0; l < 4; ++l) {
    CHECK(charts[l].omitted == l);
    CHECK(charts[l].sign == ((3 - l) % 2 ? -1 : 1));
    CHECK(charts[l].kept.size() == 3);
  }
  CHECK(charts[0].label() == "l=0 (1,2,3)");
  CHECK(charts[2].kept == std::vector<std::size_t>{0, 1, 3});
  CHECK_THROWS_AS(make_chart(s, 4), DomainError);
  CHECK(all_charts(x222()).size() == 6);
}

TEST_CASE("Fermat chart brackets are signed Jacobian brackets") {
  SurfaceSpec s = fermat();
  VariableNames x = VariableNames::numbered("x", 3);
  for (const Chart& c : all_charts(s)) {
    auto f = dehomogenize(s, c);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == parse_poly("1 + x1^4 + x2^4 + x3^4", x));
    Bivector q = chart_bracket(s, c);
    CHECK(q == Rational(c.sign) * jacobian_bracket(f[0]));
    GroebnerBasis g = buchberger(f);
    CHECK(lift_check(q, g, f));
    CHECK(is_poisson_mod_ideal(q, g).poisson);
  }
}

TEST_CASE("X32 and X222 chart brackets descend to the chart quotient") {
  for (const SurfaceSpec& s : {x32(), x222()}) {
    for (const Chart& c : all_charts(s)) {
      auto f = dehomogenize(s, c);
      Bivector q = chart_bracket(s, c);
      GroebnerBasis g = buchberger(f, MonomialOrder::degrevlex(q.arity()));
      CHECK(lift_check(q, g, f));
      CHECK(is_poisson_mod_ideal(q, g).poisson);
      // Dehomogenization is the substitution z_l = 1.
      for (std::size_t k = 0; k < f.size(); ++k) CHECK(f[k] == specialize_drop(s.polys[k], c.omitted, Rational(1)));
    }
  }
}

TEST_CASE("overlap certificates agree with the Koszul spot check") {
  for (const SurfaceSpec& s : {fermat(), singular_quartic(), x32(), x222()}) {
    RelationIdeal rel = relation_ideal(s);
    auto charts = all_charts(s);
    for (std::size_t a = 0; a < charts.size(); ++a)
      for (std::size_t b = a + 1; b < charts.size(); ++b) {
        AgreementCertificate cert = agreement_certificate(s, rel, charts[a], charts[b]);
        CHECK(cert.verdict);
        CHECK(cert.residue.is_zero());
        CHECK(koszul_agreement(s, cert.cleared_difference));
        // Cleared difference assembled from the chart minors by hand.
        Poly d1 = chart_minor(s, rel, charts[a]), d2 = chart_minor(s, rel, charts[b]);
        const std::size_t N = rel.arity();
        Poly expect = Rational(charts[a].sign) * var(N, rel.z(charts[b].omitted)) * d1 -
                      Rational(charts[b].sign) * var(N, rel.z(charts[a].omitted)) * d2;
        CHECK(cert.cleared_difference == expect);
        // Swapping the charts negates the difference.
        CHECK(agreement_certificate(s, rel, charts[b], charts[a]).cleared_difference == -expect);
        // Negative control: the wrong relative sign does not glue.
        Poly wrong = Rational(charts[a].sign) * var(N, rel.z(charts[b].omitted)) * d1 +
                     Rational(charts[b].sign) * var(N, rel.z(charts[a].omitted)) * d2;
        CHECK_FALSE(ideal_member(wrong, *rel.basis));
        CHECK_FALSE(koszul_agreement(s, wrong));
      }
  }
  SurfaceSpec s = fermat();
  CHECK_THROWS_AS(agreement_certificate(s, make_chart(s, 1), make_chart(s, 1)), DomainError);
}

TEST_CASE("verify_surface on the four model surfaces") {
  struct Case {
    SurfaceSpec spec;
    std::size_t charts, overlaps;
  };
  for (const Case& c : {Case{fermat(), 4, 6}, Case{singular_quartic(), 4, 6}, Case{x32(), 5, 10},
                        Case{x222(), 6, 15}}) {
    SurfaceReport r = verify_surface(c.spec);
    CHECK(r.pass);
    CHECK(r.charts.size() == c.charts);
    CHECK(r.overlaps.size() == c.overlaps);
    for (const auto& ch : r.charts) CHECK((ch.lift && ch.poisson));
    for (const auto& ov : r.overlaps) CHECK(ov.verdict);
  }
}
