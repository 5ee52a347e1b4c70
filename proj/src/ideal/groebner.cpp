#include <algorithm>
#include <bit>
#include <cstdint>

#include "dq/ideal.hpp"

namespace dq {

namespace {

using WorkMap = std::map<Monomial, Rational, OrderLess>;

struct Element {
  Poly poly;               // monic
  Monomial lead;
  std::vector<Poly> cof;   // expression in the original generators (may be empty)
};

struct ElemRef {
  const Poly* poly;
  const Monomial* lead;
  const std::vector<Poly>* cof;
};

void check_arity(const Poly& p, std::size_t n, const char* where) {
  if (p.arity() != n) throw ArityError(p.arity(), n, where);
}

// Full reduction of `p` by `elems`. Quotient bookkeeping goes to `quotients`
// (indexed like elems) when non-null.
Poly reduce(const Poly& p, const std::vector<ElemRef>& elems, const MonomialOrder& order,
            std::vector<Poly>* quotients) {
  WorkMap work(OrderLess{&order});
  for (const auto& [m, c] : p.terms()) work.emplace(m, c);
  Poly remainder(p.arity());
  while (!work.empty()) {
    auto top = std::prev(work.end());
    const Monomial m = top->first;
    const Rational c = top->second;
    work.erase(top);
    const ElemRef* hit = nullptr;
    std::size_t hit_index = 0;
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (elems[k].lead->divides(m)) {
        hit = &elems[k];
        hit_index = k;
        break;
      }
    }
    if (hit == nullptr) {
      remainder.add_term(m, c);
      continue;
    }
    const Monomial shift = hit->lead->quotient_of(m);
    if (quotients != nullptr) (*quotients)[hit_index].add_term(shift, c);
    for (const auto& [gm, gc] : hit->poly->terms()) {
      if (gm == *hit->lead) continue;
      Monomial t = gm * shift;
      Rational delta = -(c * gc);
      auto [it, inserted] = work.try_emplace(std::move(t), delta);
      if (!inserted) {
        it->second += delta;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return remainder;
}

std::vector<ElemRef> pointers(const std::vector<Element>& elems, std::size_t skip = SIZE_MAX) {
  std::vector<ElemRef> out;
  out.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (i != skip) out.push_back(ElemRef{&elems[i].poly, &elems[i].lead, &elems[i].cof});
  return out;
}

std::vector<ElemRef> pointers(const GroebnerBasis& g) {
  std::vector<ElemRef> out;
  out.reserve(g.basis().size());
  for (std::size_t k = 0; k < g.basis().size(); ++k)
    out.push_back(ElemRef{&g.basis()[k], &g.leading_monomials()[k], nullptr});
  return out;
}

// Cofactor bookkeeping: target -= sum_k q_k * cof(elems[k]).
void subtract_cofactors(std::vector<Poly>& target, const std::vector<Poly>& quotients,
                        const std::vector<ElemRef>& elems) {
  for (std::size_t k = 0; k < elems.size(); ++k) {
    if (quotients[k].is_zero()) continue;
    const auto& cof = *elems[k].cof;
    for (std::size_t s = 0; s < target.size(); ++s)
      if (!cof[s].is_zero()) target[s] -= quotients[k] * cof[s];
  }
}

Element make_monic(Poly p, std::vector<Poly> cof, const MonomialOrder& order) {
  Monomial lead = p.leading_monomial(order);
  Rational inv = Rational(1) / p.coefficient(lead);
  p *= inv;
  for (auto& c : cof) c *= inv;
  return Element{std::move(p), std::move(lead), std::move(cof)};
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

bool GroebnerBasis::is_unit_ideal() const {
  return basis_.size() == 1 && basis_.front().is_constant() && !basis_.front().is_zero();
}

GroebnerBasis zero_ideal(std::size_t arity, const MonomialOrder& order) {
  if (order.arity() != arity) throw ArityError(arity, order.arity(), "zero_ideal");
  GroebnerBasis g;
  g.arity_ = arity;
  g.order_ = order;
  return g;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order) {
  const Monomial& lf = f.leading_monomial(order);
  const Monomial& lg = g.leading_monomial(order);
  Monomial l = lf.lcm(lg);
  Poly a = f.shifted(lf.quotient_of(l)) * (Rational(1) / f.coefficient(lf));
  Poly b = g.shifted(lg.quotient_of(l)) * (Rational(1) / g.coefficient(lg));
  return a - b;
}

GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order, bool track_certificate) {
  if (gens.empty()) throw DomainError("buchberger: empty generator list");
  const std::size_t n = gens.front().arity();
  for (const auto& g : gens) check_arity(g, n, "buchberger");
  if (order.arity() != n) throw ArityError(n, order.arity(), "buchberger (monomial order)");
  const std::size_t m = gens.size();

  std::vector<Element> elems;
  std::vector<Pair> pairs;

  auto add_element = [&](Poly h, std::vector<Poly> cof) {
    Element e = make_monic(std::move(h), std::move(cof), order);
    const std::size_t t = elems.size();
    for (std::size_t i = 0; i < t; ++i) pairs.push_back(Pair{i, t, elems[i].lead.lcm(e.lead)});
    elems.push_back(std::move(e));
  };

  auto reduce_with_cof = [&](const Poly& p, std::vector<Poly> cof) {
    auto ptrs = pointers(elems);
    std::vector<Poly> quotients;
    if (track_certificate) quotients.assign(ptrs.size(), Poly(n));
    Poly h = reduce(p, ptrs, order, track_certificate ? &quotients : nullptr);
    if (track_certificate) subtract_cofactors(cof, quotients, ptrs);
    return std::make_pair(std::move(h), std::move(cof));
  };

  for (std::size_t s = 0; s < m; ++s) {
    if (gens[s].is_zero()) continue;
    std::vector<Poly> cof;
    if (track_certificate) {
      cof.assign(m, Poly(n));
      cof[s] = Poly::constant(n, Rational(1));
    }
    auto [h, hc] = reduce_with_cof(gens[s], std::move(cof));
    if (!h.is_zero()) add_element(std::move(h), std::move(hc));
  }

  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);

    const Element& ei = elems[pr.i];
    const Element& ej = elems[pr.j];
    if (ei.lead.coprime(ej.lead)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < elems.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (elems[k].lead.divides(pr.lcm) && !pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;

    const Monomial si = ei.lead.quotient_of(pr.lcm);
    const Monomial sj = ej.lead.quotient_of(pr.lcm);
    Poly s = ei.poly.shifted(si) - ej.poly.shifted(sj);
    std::vector<Poly> cof;
    if (track_certificate) {
      cof.assign(m, Poly(n));
      Poly mi = Poly::term(si, Rational(1));
      Poly mj = Poly::term(sj, Rational(1));
      for (std::size_t t = 0; t < m; ++t) cof[t] = mi * ei.cof[t] - mj * ej.cof[t];
    }
    auto [h, hc] = reduce_with_cof(s, std::move(cof));
    if (!h.is_zero()) add_element(std::move(h), std::move(hc));
  }

  // Minimalize: drop elements whose lead is divisible by another lead.
  std::vector<bool> keep(elems.size(), true);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size() && keep[i]; ++j) {
      if (i == j) continue;
      if (elems[j].lead.divides(elems[i].lead) && (elems[j].lead != elems[i].lead || j < i)) keep[i] = false;
    }
  }
  std::vector<Element> minimal;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(elems[i]));

  // Interreduce tails; leads are fixed because the set is minimal.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    auto ptrs = pointers(minimal, i);
    Poly tail = minimal[i].poly;
    tail.add_term(minimal[i].lead, -Rational(1));
    std::vector<Poly> quotients;
    if (track_certificate) quotients.assign(ptrs.size(), Poly(n));
    Poly reduced_tail = reduce(tail, ptrs, order, track_certificate ? &quotients : nullptr);
    if (track_certificate) subtract_cofactors(minimal[i].cof, quotients, ptrs);
    reduced_tail.add_term(minimal[i].lead, Rational(1));
    minimal[i].poly = std::move(reduced_tail);
  }

  std::sort(minimal.begin(), minimal.end(),
            [&](const Element& a, const Element& b) { return order.less(a.lead, b.lead); });

  GroebnerBasis g;
  g.arity_ = n;
  g.order_ = order;
  g.generators_.assign(gens.begin(), gens.end());
  for (auto& e : minimal) {
    g.basis_.push_back(std::move(e.poly));
    g.leads_.push_back(std::move(e.lead));
    if (track_certificate) g.certificate_.push_back(std::move(e.cof));
  }
  return g;
}

GroebnerBasis buchberger(std::span<const Poly> gens) {
  if (gens.empty()) throw DomainError("buchberger: empty generator list");
  return buchberger(gens, MonomialOrder::degrevlex(gens.front().arity()));
}

DivisionResult divide(const Poly& p, const GroebnerBasis& g) {
  check_arity(p, g.arity(), "divide");
  auto refs = pointers(g);
  DivisionResult r{std::vector<Poly>(refs.size(), Poly(g.arity())), Poly(g.arity())};
  r.remainder = reduce(p, refs, g.order(), &r.quotients);
  return r;
}

Poly normal_form(const Poly& p, const GroebnerBasis& g) {
  check_arity(p, g.arity(), "normal_form");
  if (g.is_zero_ideal() || p.is_zero()) return p;
  return reduce(p, pointers(g), g.order(), nullptr);
}

bool ideal_member(const Poly& p, const GroebnerBasis& g) { return normal_form(p, g).is_zero(); }

std::size_t dimension(const GroebnerBasis& g) {
  if (g.is_unit_ideal()) throw DomainError("empty variety");
  const std::size_t n = g.arity();
  if (n > 30) throw DomainError("dimension: too many variables for subset enumeration");
  std::vector<std::uint32_t> supports;
  for (const auto& lead : g.leading_monomials()) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lead[i] != 0) s |= (1U << i);
    supports.push_back(s);
  }
  std::size_t best = 0;
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1U);
  for (std::uint32_t mask = 0;; ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > best) {
      bool independent = std::all_of(supports.begin(), supports.end(),
                                     [mask](std::uint32_t s) { return (s & ~mask) != 0; });
      if (independent) best = size;
    }
    if (mask == full) break;
  }
  return best;
}

bool is_complete_intersection(std::span<const Poly> gens, const GroebnerBasis& g) {
  const std::size_t d = dimension(g);
  return gens.size() <= g.arity() && d == g.arity() - gens.size();
}

}  // namespace dq
