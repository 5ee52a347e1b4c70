#pragma once

// Chart brackets on the projective complete-intersection K3 models X4, X32,
// X222 and the certificates that they glue to a global Poisson bracket.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dq/brackets.hpp"
#include "dq/ideal.hpp"
#include "dq/polyring.hpp"

namespace dq {

enum class K3Family { X4, X32, X222 };

std::string family_name(K3Family f);
/// Accepts "X4", "X32", "X222". Throws DomainError otherwise.
K3Family parse_family(const std::string& name);

struct SurfaceSpec {
  K3Family family;
  /// Homogeneous generators in z_0..z_n.
  std::vector<Poly> polys;
  std::vector<std::uint32_t> degrees;

  [[nodiscard]] std::size_t homogeneous_arity() const { return polys.front().arity(); }
};

/// Checks generator count, variable count and the Euler identity
/// sum_j z_j d_j f = deg(f) f for each generator. Throws DomainError.
SurfaceSpec make_surface(K3Family family, std::vector<Poly> polys);

/// Affine chart z_l = 1. The remaining variables keep their original order;
/// sign = (-1)^{n-l}, which for X4 is the sign of (i, j, k, l).
struct Chart {
  std::size_t omitted = 0;
  std::vector<std::size_t> kept;
  int sign = 1;

  [[nodiscard]] std::string label() const;
  friend bool operator==(const Chart&, const Chart&) = default;
};

Chart make_chart(const SurfaceSpec& spec, std::size_t omitted);
std::vector<Chart> all_charts(const SurfaceSpec& spec);

/// Generators with z_l set to 1, in the chart's n variables.
std::vector<Poly> dehomogenize(const SurfaceSpec& spec, const Chart& chart);
Bivector chart_bracket(const SurfaceSpec& spec, const Chart& chart);

/// Surface equations plus the Euler relations E_a = sum z_j ga_j and
/// E_b = sum z_j gb_j, in the ring z_0..z_n, ga_0..ga_n, gb_0..gb_n.
struct RelationIdeal {
  std::size_t z_count = 0;
  VariableNames names;
  std::shared_ptr<const GroebnerBasis> basis;

  [[nodiscard]] std::size_t arity() const { return 3 * z_count; }
  [[nodiscard]] std::size_t z(std::size_t j) const { return j; }
  [[nodiscard]] std::size_t ga(std::size_t j) const { return z_count + j; }
  [[nodiscard]] std::size_t gb(std::size_t j) const { return 2 * z_count + j; }
};

RelationIdeal relation_ideal(const SurfaceSpec& spec);

struct AgreementCertificate {
  std::pair<std::size_t, std::size_t> chart_pair;
  /// sign1 z_{l2} D_{c1} - sign2 z_{l1} D_{c2}.
  Poly cleared_difference;
  Poly residue;
  std::shared_ptr<const GroebnerBasis> relation_ideal;
  bool verdict = false;
};

/// Homogeneous minor with rows (grad f_s, ga, gb) restricted to the chart's
/// kept columns.
Poly chart_minor(const SurfaceSpec& spec, const RelationIdeal& rel, const Chart& chart);

AgreementCertificate agreement_certificate(const SurfaceSpec& spec, const RelationIdeal& rel, const Chart& c1,
                                           const Chart& c2);
AgreementCertificate agreement_certificate(const SurfaceSpec& spec, const Chart& c1, const Chart& c2);

struct ChartCheck {
  Chart chart;
  bool lift = false;
  bool poisson = false;
};

struct OverlapCheck {
  std::pair<std::size_t, std::size_t> pair;
  bool verdict = false;
};

struct SurfaceReport {
  std::vector<ChartCheck> charts;
  std::vector<OverlapCheck> overlaps;
  bool pass = false;
};

SurfaceReport verify_surface(const SurfaceSpec& spec);

}  // namespace dq
