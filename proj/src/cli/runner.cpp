#include <chrono>
#include <random>

#include "dq/runner.hpp"

namespace dq {

namespace {

// Small seeded generators for the random-check task.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Monomial monomial(std::size_t n, std::uint32_t max_degree) {
    std::vector<std::uint32_t> e(n, 0);
    auto d = static_cast<std::uint32_t>(range(0, max_degree));
    for (std::uint32_t k = 0; k < d; ++k) ++e[static_cast<std::size_t>(range(0, static_cast<long>(n) - 1))];
    return Monomial(std::move(e));
  }

  Poly poly(std::size_t n, std::uint32_t max_degree, int terms) {
    Poly p(n);
    for (int t = 0; t < terms; ++t) {
      long c = range(-5, 5);
      if (c != 0) p.add_term(monomial(n, max_degree), Rational(c));
    }
    return p;
  }

  Poly nonconstant(std::size_t n, std::uint32_t max_degree, int terms) {
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

  PolyDiffOp op(std::size_t arity, std::size_t n, std::uint32_t max_order, std::uint32_t coeff_degree, int terms) {
    PolyDiffOp r(arity, n);
    for (int t = 0; t < terms; ++t) {
      PolyDiffOp::Key key;
      for (std::size_t s = 0; s < arity; ++s) key.push_back(monomial(n, max_order).exponents());
      r.add_term(key, poly(n, coeff_degree, 2));
    }
    return r;
  }

 private:
  std::mt19937_64 rng_;
};

struct Context {
  const Session& session;
  const RunOptions& options;
  MonomialOrder order;
  std::map<std::string, GroebnerBasis> bases;

  const GroebnerBasis& ideal(const std::string& name) {
    auto it = bases.find(name);
    if (it != bases.end()) return it->second;
    if (name.empty()) return bases.emplace(name, zero_ideal(session.vars.size(), order)).first->second;
    return bases.emplace(name, buchberger(session.ideals.at(name), order)).first->second;
  }

  PolyDiffOp op(const std::string& name) const {
    if (auto it = session.ops.find(name); it != session.ops.end()) return it->second;
    return PolyDiffOp::from_bivector(session.bivectors.at(name));
  }

  Json poly(const Poly& p) const { return poly_json(p, session.vars, order); }
};

Json gb_json(const GroebnerBasis& g, const VariableNames& vars) {
  Json basis = Json::array();
  for (const auto& b : g.basis()) basis.push_back(format_poly(b, vars, g.order()));
  return Json{{"order", g.order().name()}, {"basis", basis}};
}

bool random_check(const std::string& kind, std::size_t count, std::uint64_t seed, Json& value) {
  Gen gen(seed);
  std::size_t failures = 0;
  for (std::size_t k = 0; k < count; ++k) {
    bool ok = true;
    if (kind == "d-squared") {
      PolyDiffOp h = gen.op(static_cast<std::size_t>(gen.range(1, 2)), 3, 2, 3, 3);
      ok = bar_differential(bar_differential(h)).is_zero();
    } else if (kind == "projectors") {
      PolyDiffOp h = gen.op(3, 2, 1, 1, 3);
      const auto ids = {CochainProjector::Which::E1, CochainProjector::Which::E2, CochainProjector::Which::E3};
      PolyDiffOp sum(3, 2);
      for (auto i : ids) {
        PolyDiffOp ei = apply_projector(CochainProjector::of(i), h);
        sum += ei;
        for (auto j : ids) {
          PolyDiffOp eij = apply_projector(CochainProjector::of(i), apply_projector(CochainProjector::of(j), h));
          ok = ok && (i == j ? eij == ei : eij.is_zero());
        }
      }
      ok = ok && sum == h;
    } else if (kind == "obstruction") {
      PolyDiffOp p = PolyDiffOp::from_bivector(gen.bivector(3, 2));
      PolyDiffOp sq = gerstenhaber_square(p);
      ok = apply_projector(CochainProjector::e2(), sq).is_zero() &&
           apply_projector(CochainProjector::e3(), sq) == Rational(2, 3) * cyclic_jacobi_operator(p);
    } else if (kind == "minor-lift") {
      auto m = static_cast<std::size_t>(gen.range(1, 3));
      std::size_t n = m + 2 + static_cast<std::size_t>(gen.range(0, 1));
      std::vector<Poly> fs;
      for (std::size_t s = 0; s < m; ++s) fs.push_back(gen.nonconstant(n, 2, 3));
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
      while (cols.size() > m + 2) cols.erase(cols.begin() + gen.range(0, static_cast<long>(cols.size()) - 1));
      Bivector q = minor_bracket(fs, cols);
      Poly a = gen.poly(n, 2, 3), b = gen.poly(n, 2, 3);
      for (const auto& f : fs) ok = ok && (apply_bivector(q, f * a, b) - f * apply_bivector(q, a, b)).is_zero();
    } else if (kind == "cross-oracle") {
      Poly f = gen.nonconstant(3, 3, 3);
      std::vector<Poly> gens{f};
      GroebnerBasis g = buchberger(gens);
      Bivector q = gen.range(0, 1) ? gen.poly(3, 2, 2) * jacobian_bracket(f) : gen.bivector(3, 2);
      bool sampled = true;
      for (std::size_t j = 0; j < 3; ++j) sampled = sampled && ideal_member(apply_bivector(q, f, Poly::variable(3, j)), g);
      ok = lift_check(q, g, gens) == sampled;
      TriVector t = jacobiator(q);
      auto x = [](std::size_t i) { return Poly::variable(3, i); };
      Poly nested = apply_bivector(q, apply_bivector(q, x(0), x(1)), x(2)) +
                    apply_bivector(q, apply_bivector(q, x(1), x(2)), x(0)) +
                    apply_bivector(q, apply_bivector(q, x(2), x(0)), x(1));
      ok = ok && nested == t.component(0, 1, 2);
    }
    if (!ok) ++failures;
  }
  value = Json{{"kind", kind}, {"count", count}, {"seed", seed}, {"failures", failures}};
  return failures == 0;
}

// Runs one task; sets outcome for assertion tasks.
void execute(Context& ctx, const Task& t, TaskResult& r) {
  const auto& s = ctx.session;
  const auto& vars = s.vars;
  auto assert_bool = [&](bool v) {
    r.assertion = true;
    r.expected = t.expect_bool.value_or(true);
    r.outcome = v;
  };
  switch (t.kind) {
    case TaskKind::Groebner: {
      const auto& g = ctx.ideal(t.ideal);
      r.value = gb_json(g, vars);
      r.summary = std::to_string(g.basis().size()) + " basis elements";
      break;
    }
    case TaskKind::NormalForm: {
      Poly nf = normal_form(t.polys[0], ctx.ideal(t.ideal));
      r.value = Json{{"normal_form", ctx.poly(nf)}};
      r.summary = format_poly(nf, vars, ctx.order);
      if (t.expect_poly) {
        r.assertion = true;
        r.outcome = nf == *t.expect_poly;
      }
      break;
    }
    case TaskKind::Member: {
      bool v = ideal_member(t.polys[0], ctx.ideal(t.ideal));
      assert_bool(v);
      r.value = Json{{"member", v}};
      break;
    }
    case TaskKind::Dimension: {
      std::size_t d = dimension(ctx.ideal(t.ideal));
      r.value = Json{{"dimension", d}};
      r.summary = "dimension " + std::to_string(d);
      if (t.expect_int) {
        r.assertion = true;
        r.outcome = static_cast<long>(d) == *t.expect_int;
      }
      break;
    }
    case TaskKind::CompleteIntersection: {
      const auto& gens = s.ideals.at(t.ideal);
      const auto& g = ctx.ideal(t.ideal);
      bool v = is_complete_intersection(gens, g);
      assert_bool(v);
      r.value = Json{{"complete_intersection", v}, {"dimension", dimension(g)}, {"generators", gens.size()}};
      break;
    }
    case TaskKind::BracketOf: {
      const auto& q = s.bivectors.at(t.names[0]);
      r.value = Json{{"components", bivector_json(q, vars, ctx.order)}};
      r.summary = std::to_string(q.components().size()) + " nonzero components";
      break;
    }
    case TaskKind::Apply: {
      Poly v = s.bivectors.count(t.names[0]) && t.polys.size() == 2
                   ? apply_bivector(s.bivectors.at(t.names[0]), t.polys[0], t.polys[1])
                   : apply_op(ctx.op(t.names[0]), t.polys);
      r.value = Json{{"result", ctx.poly(v)}};
      r.summary = format_poly(v, vars, ctx.order);
      if (t.expect_poly) {
        r.assertion = true;
        r.outcome = v == *t.expect_poly;
      }
      break;
    }
    case TaskKind::Jacobiator: {
      const auto& g = ctx.ideal(t.ideal);
      TriVector jac = jacobiator(s.bivectors.at(t.names[0]));
      TriVector reduced(jac.arity());
      for (const auto& [key, c] : jac.components()) reduced.set(key[0], key[1], key[2], normal_form(c, g));
      assert_bool(reduced.is_zero());
      r.value = Json{{"components", trivector_json(reduced, vars, ctx.order)}};
      break;
    }
    case TaskKind::LiftCheck: {
      bool v = lift_check(s.bivectors.at(t.names[0]), ctx.ideal(t.ideal), s.ideals.at(t.ideal));
      assert_bool(v);
      r.value = Json{{"lift", v}};
      break;
    }
    case TaskKind::PoissonCheck: {
      PoissonVerdict v = is_poisson_mod_ideal(s.bivectors.at(t.names[0]), ctx.ideal(t.ideal));
      assert_bool(v.poisson);
      r.value = Json{{"poisson", v.poisson}};
      if (!v.poisson) {
        const auto& key = *v.failing_triple;
        r.value["failing_triple"] = Json::array({key[0], key[1], key[2]});
        r.value["residue"] = ctx.poly(*v.residue);
      }
      break;
    }
    case TaskKind::Decompose3: {
      const auto& g = ctx.ideal(t.ideal);
      PolyDiffOp p = ctx.op(t.names[0]);
      const bool from_square = p.arity() == 2;
      PolyDiffOp h = from_square ? gerstenhaber_square(p) : p;
      if (h.arity() != 3) throw DomainError("decompose3 needs an arity-2 or arity-3 operator");
      PolyDiffOp sum(3, h.ring_arity());
      r.value = Json{{"source", from_square ? "square" : "op"}};
      std::vector<PolyDiffOp> parts;
      for (auto w : {CochainProjector::Which::E1, CochainProjector::Which::E2, CochainProjector::Which::E3}) {
        parts.push_back(apply_projector(CochainProjector::of(w), h));
        sum += parts.back();
      }
      const char* labels[] = {"e1", "e2", "e3"};
      for (std::size_t i = 0; i < 3; ++i) {
        PolyDiffOp red = reduce_mod_ideal(parts[i], g);
        r.value[labels[i]] = Json{{"zero", red.is_zero()}, {"terms", red.terms().size()}};
      }
      bool ok = sum == h;
      if (from_square && sym_skew_decompose(p).symmetric.is_zero()) {
        bool e2_zero = parts[1].is_zero();
        bool e3_jacobi = parts[2] == Rational(2, 3) * cyclic_jacobi_operator(p);
        r.value["e2_vanishes"] = e2_zero;
        r.value["e3_is_two_thirds_jacobi"] = e3_jacobi;
        ok = ok && e2_zero && e3_jacobi;
      }
      r.value["reconstructs"] = sum == h;
      assert_bool(ok);
      break;
    }
    case TaskKind::CocycleCheck: {
      bool v = vanishes_mod_ideal(bar_differential(ctx.op(t.names[0])), ctx.ideal(t.ideal));
      assert_bool(v);
      r.value = Json{{"cocycle", v}};
      break;
    }
    case TaskKind::Square: {
      PolyDiffOp sq = reduce_mod_ideal(gerstenhaber_square(ctx.op(t.names[0])), ctx.ideal(t.ideal));
      r.value = Json{{"square", op_json(sq, vars, ctx.order)}};
      r.summary = std::to_string(sq.terms().size()) + " terms";
      if (t.expect_bool) assert_bool(sq.is_zero());
      break;
    }
    case TaskKind::AssocDefect: {
      StarTruncation star;
      for (const auto& n : t.names) star.terms.push_back(ctx.op(n));
      PolyDiffOp d = reduce_mod_ideal(star_assoc_defect(star, t.power), ctx.ideal(t.ideal));
      assert_bool(d.is_zero());
      r.value = Json{{"power", t.power}, {"defect_terms", d.terms().size()}};
      if (!d.is_zero()) r.value["defect"] = op_json(d, vars, ctx.order);
      break;
    }
    case TaskKind::SolveP2: {
      SolveP2Options opt;
      opt.max_order = ctx.options.max_order.value_or(t.max_order.value_or(opt.max_order));
      if (ctx.options.max_coeff_degree)
        opt.max_coeff_degree = ctx.options.max_coeff_degree;
      else
        opt.max_coeff_degree = t.max_coeff_degree;
      SolveP2Result res = solve_p2(ctx.op(t.names[0]), ctx.ideal(t.ideal), opt);
      bool ok = res.solved() && res.defect_vanishes;
      assert_bool(ok);
      r.summary = res.message;
      r.value = Json{{"solved", res.solved()},
                     {"defect_vanishes", res.defect_vanishes},
                     {"max_order", res.max_order},
                     {"max_coeff_degree", res.max_coeff_degree},
                     {"unknowns", res.unknowns},
                     {"equations", res.equations},
                     {"rank", res.rank},
                     {"message", res.message}};
      if (res.p2) r.value["p2"] = op_json(*res.p2, vars, ctx.order);
      Json bad = Json::array();
      for (const auto& u : res.unsatisfied) {
        Json idx = Json::array();
        for (const auto& a : u.key) idx.push_back(a);
        bad.push_back(Json{{"multi_indices", idx},
                           {"monomial", ctx.poly(Poly::term(u.monomial, Rational(1)))},
                           {"residual", u.residual.to_string()}});
      }
      if (!res.solved()) r.value["unsatisfied"] = bad;
      break;
    }
    case TaskKind::ShuffleCheck: {
      bool v = shuffle_vanishing_check(ctx.op(t.names[0]), ctx.ideal(t.ideal));
      assert_bool(v);
      r.value = Json{{"shuffle_vanishing", v}};
      break;
    }
    case TaskKind::K3Verify: {
      const auto& b = s.surfaces.at(t.names[0]);
      SurfaceReport rep = verify_surface(b.spec);
      Json charts = Json::array(), overlaps = Json::array();
      for (const auto& c : rep.charts)
        charts.push_back(Json{{"chart", c.chart.label()}, {"lift", c.lift}, {"poisson", c.poisson}});
      for (const auto& o : rep.overlaps)
        overlaps.push_back(Json{{"pair", Json::array({o.pair.first, o.pair.second})}, {"verdict", o.verdict}});
      r.value = Json{{"family", family_name(b.spec.family)}, {"charts", charts}, {"overlaps", overlaps}, {"pass", rep.pass}};
      r.summary = std::to_string(rep.charts.size()) + " charts, " + std::to_string(rep.overlaps.size()) + " overlaps";
      assert_bool(rep.pass);
      break;
    }
    case TaskKind::RandomCheck: {
      // Mixing in the line keeps separate random-check tasks independent.
      std::uint64_t seed = ctx.options.seed * 1000003ULL + t.line;
      bool v = random_check(t.check, t.count, seed, r.value);
      assert_bool(v);
      r.summary = std::to_string(t.count) + " instances";
      break;
    }
  }
  if (r.assertion) r.passed = *r.outcome == r.expected;
}

}  // namespace

Json poly_json(const Poly& p, const VariableNames& vars, const MonomialOrder& order) {
  if (p.arity() != vars.size()) return format_poly(p, VariableNames::numbered("x", p.arity()), order);
  return format_poly(p, vars, order);
}

Json bivector_json(const Bivector& q, const VariableNames& vars, const MonomialOrder& order) {
  Json out = Json::object();
  for (const auto& [key, c] : q.components())
    out["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] = poly_json(c, vars, order);
  return out;
}

Json trivector_json(const TriVector& t, const VariableNames& vars, const MonomialOrder& order) {
  Json out = Json::object();
  for (const auto& [key, c] : t.components())
    out["(" + std::to_string(key[0]) + "," + std::to_string(key[1]) + "," + std::to_string(key[2]) + ")"] =
        poly_json(c, vars, order);
  return out;
}

Json op_json(const PolyDiffOp& op, const VariableNames& vars, const MonomialOrder& order) {
  Json out = Json::array();
  for (const auto& [key, c] : op.terms()) {
    Json idx = Json::array();
    for (const auto& a : key) idx.push_back(a);
    out.push_back(Json{{"multi_indices", idx}, {"coefficient", poly_json(c, vars, order)}});
  }
  return out;
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const TaskResult& r) { return !r.passed; }));
}

std::size_t Report::assertions() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const TaskResult& r) { return r.assertion; }));
}

int Report::status() const { return failures() == 0 ? 0 : 1; }

Report run_session(const Session& session, const RunOptions& options) {
  const std::string order_name = options.order.value_or(session.order);
  const std::size_t n = session.vars.size();
  MonomialOrder order = order_name == "lex" ? MonomialOrder::lex(n) : MonomialOrder::degrevlex(n);
  Context ctx{session, options, order, {}};
  Report report{session.source, order_name, options.seed, {}};
  bool stop = false;
  for (const auto& t : session.tasks) {
    TaskResult r;
    r.line = t.line;
    r.task = task_name(t.kind);
    r.command = t.text;
    if (stop) {
      r.skipped = true;
      r.summary = "skipped after earlier failure";
      report.results.push_back(std::move(r));
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      execute(ctx, t, r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.passed && options.fail_fast) stop = true;
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace dq
