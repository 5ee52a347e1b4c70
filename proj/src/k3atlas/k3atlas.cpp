#include "dq/k3atlas.hpp"

#include "dq/error.hpp"

namespace dq {

namespace {

struct FamilyShape {
  std::size_t vars;
  std::vector<std::uint32_t> degrees;
};

FamilyShape shape(K3Family f) {
  switch (f) {
    case K3Family::X4: return {4, {4}};
    case K3Family::X32: return {5, {3, 2}};
    case K3Family::X222: return {6, {2, 2, 2}};
  }
  throw DomainError("unknown surface family");
}

Poly euler_sum(const Poly& f) {
  Poly r(f.arity());
  for (std::size_t j = 0; j < f.arity(); ++j) r += Poly::variable(f.arity(), j) * partial_derivative(f, j);
  return r;
}

}  // namespace

std::string family_name(K3Family f) {
  switch (f) {
    case K3Family::X4: return "X4";
    case K3Family::X32: return "X32";
    case K3Family::X222: return "X222";
  }
  return "?";
}

K3Family parse_family(const std::string& name) {
  if (name == "X4") return K3Family::X4;
  if (name == "X32") return K3Family::X32;
  if (name == "X222") return K3Family::X222;
  throw DomainError("unknown surface family '" + name + "' (expected X4, X32 or X222)");
}

SurfaceSpec make_surface(K3Family family, std::vector<Poly> polys) {
  const FamilyShape s = shape(family);
  const std::string fam = family_name(family);
  if (polys.size() != s.degrees.size())
    throw DomainError(fam + " needs " + std::to_string(s.degrees.size()) + " generators, got " +
                      std::to_string(polys.size()));
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const Poly& f = polys[k];
    const std::string which = fam + " generator " + std::to_string(k + 1);
    if (f.arity() != s.vars)
      throw DomainError(which + " must live in " + std::to_string(s.vars) + " variables, got " +
                        std::to_string(f.arity()));
    if (f.is_zero()) throw DomainError(which + " is zero");
    if (euler_sum(f) != Rational(static_cast<long>(s.degrees[k])) * f)
      throw DomainError(which + " is not homogeneous of degree " + std::to_string(s.degrees[k]) +
                        " (Euler identity fails)");
  }
  return SurfaceSpec{family, std::move(polys), s.degrees};
}

std::string Chart::label() const {
  std::string s = "l=" + std::to_string(omitted) + " (";
  for (std::size_t t = 0; t < kept.size(); ++t) s += (t ? "," : "") + std::to_string(kept[t]);
  return s + ")";
}

Chart make_chart(const SurfaceSpec& spec, std::size_t omitted) {
  const std::size_t n1 = spec.homogeneous_arity();
  if (omitted >= n1)
    throw DomainError("chart index " + std::to_string(omitted) + " out of range for " + family_name(spec.family));
  Chart c;
  c.omitted = omitted;
  for (std::size_t j = 0; j < n1; ++j)
    if (j != omitted) c.kept.push_back(j);
  c.sign = ((n1 - 1 - omitted) % 2 == 0) ? 1 : -1;
  return c;
}

std::vector<Chart> all_charts(const SurfaceSpec& spec) {
  std::vector<Chart> r;
  for (std::size_t l = 0; l < spec.homogeneous_arity(); ++l) r.push_back(make_chart(spec, l));
  return r;
}

std::vector<Poly> dehomogenize(const SurfaceSpec& spec, const Chart& chart) {
  std::vector<Poly> r;
  for (const auto& f : spec.polys) r.push_back(specialize_drop(f, chart.omitted, Rational(1)));
  return r;
}

Bivector chart_bracket(const SurfaceSpec& spec, const Chart& chart) {
  auto fs = dehomogenize(spec, chart);
  std::vector<std::size_t> cols(chart.kept.size());
  for (std::size_t t = 0; t < cols.size(); ++t) cols[t] = t;
  Bivector q = minor_bracket(fs, cols);
  return chart.sign > 0 ? q : Rational(-1) * q;
}

RelationIdeal relation_ideal(const SurfaceSpec& spec) {
  RelationIdeal rel;
  const std::size_t n1 = spec.homogeneous_arity();
  rel.z_count = n1;
  std::vector<std::string> names;
  for (const char* prefix : {"z", "ga", "gb"})
    for (std::size_t j = 0; j < n1; ++j) names.push_back(prefix + std::to_string(j));
  rel.names = VariableNames(std::move(names));

  const std::size_t N = rel.arity();
  std::vector<std::size_t> zmap(n1);
  for (std::size_t j = 0; j < n1; ++j) zmap[j] = rel.z(j);
  std::vector<Poly> gens;
  for (const auto& f : spec.polys) gens.push_back(embed(f, N, zmap));
  Poly ea(N), eb(N);
  for (std::size_t j = 0; j < n1; ++j) {
    ea += Poly::variable(N, rel.z(j)) * Poly::variable(N, rel.ga(j));
    eb += Poly::variable(N, rel.z(j)) * Poly::variable(N, rel.gb(j));
  }
  gens.push_back(ea);
  gens.push_back(eb);

  // Degrevlex with ga_0 and gb_1 most significant and the remaining gradient
  // variables least significant: the Euler relations then lead with the
  // coprime terms z_0 ga_0 and z_1 gb_1, which keeps the basis small.
  std::vector<std::size_t> perm{rel.ga(0), rel.gb(1)};
  for (std::size_t j = 0; j < n1; ++j) perm.push_back(rel.z(j));
  for (std::size_t j = 0; j < n1; ++j)
    if (j != 1) perm.push_back(rel.gb(j));
  for (std::size_t j = 1; j < n1; ++j) perm.push_back(rel.ga(j));
  MonomialOrder order(MonomialOrder::Kind::DegRevLex, perm);
  rel.basis = std::make_shared<const GroebnerBasis>(buchberger(gens, order, false));
  return rel;
}

Poly chart_minor(const SurfaceSpec& spec, const RelationIdeal& rel, const Chart& chart) {
  const std::size_t N = rel.arity();
  const std::size_t m = spec.polys.size();
  const std::size_t k = chart.kept.size();
  if (k != m + 2) throw DomainError("chart has " + std::to_string(k) + " columns, expected " + std::to_string(m + 2));
  std::vector<std::size_t> zmap(rel.z_count);
  for (std::size_t j = 0; j < rel.z_count; ++j) zmap[j] = rel.z(j);
  PolyMatrix M(m + 2, k, N);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t c = 0; c < k; ++c) M(s, c) = embed(partial_derivative(spec.polys[s], chart.kept[c]), N, zmap);
  for (std::size_t c = 0; c < k; ++c) {
    M(m, c) = Poly::variable(N, rel.ga(chart.kept[c]));
    M(m + 1, c) = Poly::variable(N, rel.gb(chart.kept[c]));
  }
  return determinant(M);
}

AgreementCertificate agreement_certificate(const SurfaceSpec& spec, const RelationIdeal& rel, const Chart& c1,
                                           const Chart& c2) {
  if (c1.omitted == c2.omitted) throw DomainError("agreement_certificate needs two different charts");
  const std::size_t N = rel.arity();
  Poly d1 = chart_minor(spec, rel, c1);
  Poly d2 = chart_minor(spec, rel, c2);
  AgreementCertificate cert;
  cert.chart_pair = {c1.omitted, c2.omitted};
  cert.cleared_difference = Rational(c1.sign) * Poly::variable(N, rel.z(c2.omitted)) * d1 -
                            Rational(c2.sign) * Poly::variable(N, rel.z(c1.omitted)) * d2;
  cert.residue = normal_form(cert.cleared_difference, *rel.basis);
  cert.relation_ideal = rel.basis;
  cert.verdict = cert.residue.is_zero();
  return cert;
}

AgreementCertificate agreement_certificate(const SurfaceSpec& spec, const Chart& c1, const Chart& c2) {
  if (c1.omitted == c2.omitted) throw DomainError("agreement_certificate needs two different charts");
  return agreement_certificate(spec, relation_ideal(spec), c1, c2);
}

SurfaceReport verify_surface(const SurfaceSpec& spec) {
  SurfaceReport report;
  report.pass = true;
  const auto charts = all_charts(spec);
  for (const auto& c : charts) {
    auto fs = dehomogenize(spec, c);
    GroebnerBasis g = buchberger(fs, MonomialOrder::degrevlex(c.kept.size()), false);
    Bivector q = chart_bracket(spec, c);
    ChartCheck check{c, lift_check(q, g, fs), is_poisson_mod_ideal(q, g).poisson};
    report.pass = report.pass && check.lift && check.poisson;
    report.charts.push_back(std::move(check));
  }
  const RelationIdeal rel = relation_ideal(spec);
  for (std::size_t a = 0; a < charts.size(); ++a)
    for (std::size_t b = a + 1; b < charts.size(); ++b) {
      bool v = agreement_certificate(spec, rel, charts[a], charts[b]).verdict;
      report.overlaps.push_back(OverlapCheck{{a, b}, v});
      report.pass = report.pass && v;
    }
  return report;
}

}  // namespace dq
