#include "dgda/koszul_tate.hpp"

#include <algorithm>

#include "dgda/errors.hpp"

namespace dgda {

namespace {

void check_window(const Dga& a, const AlgElem& f) {
  for (const auto& [m, c] : f.terms())
    for (const auto& o : m.factors()) {
      auto cap = a.order_cap(o.gen);
      if (cap && o.order() > *cap)
        throw WindowExit("jet order " + std::to_string(o.order()) + " of " + o.gen.name() +
                         " exceeds the window " + std::to_string(*cap) + "; raise the order bound");
    }
}

int max_cap(const Dga& a) {
  int r = 0;
  for (const auto& [g, c] : a.order_caps()) r = std::max(r, c);
  return r;
}

std::string antifield_label(const std::string& base, std::size_t i, std::size_t count) {
  return count == 1 ? base : base + std::to_string(i + 1);
}

}  // namespace

DgaPtr jet_algebra(const JetSpec& spec) {
  if (spec.dim < 1) throw PreconditionError("jet algebras need at least one base variable");
  if (spec.order < 0) throw PreconditionError("jet order must be non-negative");
  DgaBuilder b(spec.dim, "J");
  for (const auto& name : spec.fields) {
    GenId g = make_generator(GenKind::Sphere, 0, name);
    b.add_generator(g);
    b.set_order_cap(g, spec.order);
  }
  return b.build();
}

std::vector<GenId> jet_fields(const Dga& jets) {
  std::vector<GenId> out;
  for (const auto& g : jets.generators())
    if (g.degree == 0) out.push_back(g);
  return out;
}

AlgElem jet_coordinate(const Dga& jets, std::size_t field, const MultiIndex& alpha) {
  auto fields = jet_fields(jets);
  if (field >= fields.size()) throw PreconditionError("no such field");
  AlgElem c = jets.gen(fields[field], alpha);
  check_window(jets, c);
  return c;
}

AlgElem total_derivative(const Dga& a, int k, const AlgElem& f) {
  AlgElem r = a.partial(k, f);
  check_window(a, r);
  return r;
}

AlgElem total_derivative(const Dga& a, const MultiIndex& alpha, const AlgElem& f) {
  AlgElem r = f;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    for (int e = 0; e < alpha[k]; ++e) r = total_derivative(a, static_cast<int>(k), r);
  return r;
}

std::vector<AlgElem> prolong(const Dga& a, const AlgElem& f, int up_to) {
  std::vector<AlgElem> out;
  for (const auto& alpha : indices_up_to(a.dim(), up_to)) out.push_back(total_derivative(a, alpha, f));
  return out;
}

AlgElem noether_residue(const Dga& jets, const std::vector<AlgElem>& eqs, const NoetherIdentity& g) {
  if (g.coeffs.size() != eqs.size()) throw PreconditionError("Noether identity needs one coefficient family per equation");
  AlgElem r(jets.dim());
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (const auto& [alpha, coef] : g.coeffs[i]) r += jets.mul(coef, total_derivative(jets, alpha, eqs[i]));
  return r;
}

DgaPtr koszul_resolution(const DgaPtr& base, const std::vector<AlgElem>& elems, const std::string& name) {
  DgaBuilder b(base->dim(), name);
  b.include(*base);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    AlgElem e = base->reduce(elems[i]);
    if (!base->contains(e)) throw PreconditionError("Koszul element is not in the base", {}, to_string(e));
    if (!e.is_zero() && *e.degree() != 0) throw PreconditionError("Koszul elements must have degree 0", {}, to_string(e));
    GenId g = make_generator(GenKind::Antifield, 1, antifield_label("phi*", i, elems.size()), serialize(e), 1);
    b.add_generator(g, e);
    b.set_order_cap(g, 0);
  }
  return b.build();
}

KTComplex koszul_tate(const DgaPtr& jets, const std::vector<AlgElem>& eqs, const std::vector<NoetherIdentity>& noether,
                      bool validate) {
  KTComplex kt;
  kt.jets = jets;
  kt.noether = noether;
  const int r = max_cap(*jets);
  const int p = jets->dim();
  DgaBuilder b(p, "KT");
  b.include(*jets);
  std::vector<int> caps;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    AlgElem f = jets->reduce(eqs[i]);
    if (!jets->contains(f)) throw PreconditionError("equation is not in the jet algebra", {}, to_string(f));
    if (!f.is_zero() && *f.degree() != 0) throw PreconditionError("equations must have degree 0", {}, to_string(f));
    check_window(*jets, f);
    int cap = r - std::max(f.max_order(), 0);
    GenId g = make_generator(GenKind::Antifield, 1, antifield_label("phi*", i, eqs.size()), serialize(f), 1);
    b.add_generator(g, f);
    b.set_order_cap(g, cap);
    kt.equations.push_back(f);
    kt.antifields.push_back(g);
    caps.push_back(cap);
  }
  for (std::size_t j = 0; j < noether.size(); ++j) {
    const NoetherIdentity& id = noether[j];
    if (id.coeffs.size() != eqs.size())
      throw PreconditionError("Noether identity needs one coefficient family per equation");
    AlgElem d(p);
    int cap = r;
    for (std::size_t i = 0; i < eqs.size(); ++i)
      for (const auto& [alpha, coef] : id.coeffs[i]) {
        AlgElem c = jets->reduce(coef);
        if (c.is_zero()) continue;
        check_window(*jets, c);
        cap = std::min({cap, caps[i] - total_degree(alpha), r - std::max(c.max_order(), 0)});
        d += free_mul(c, AlgElem::generator(p, kt.antifields[i], alpha));
      }
    if (cap < 0) throw WindowExit("Noether identity needs antifield orders beyond the window; raise the order bound");
    std::string label = antifield_label("C*", j, noether.size());
    if (validate) {
      AlgElem residue = noether_residue(*jets, kt.equations, id);
      if (!residue.is_zero()) throw PreconditionError("Noether identity does not hold", label, to_string(residue));
    }
    GenId g = make_generator(GenKind::Antifield, 2, label, serialize(d), 2);
    b.add_generator(g, d);
    b.set_order_cap(g, cap);
    kt.ghosts.push_back(g);
  }
  kt.algebra = b.build(validate);
  return kt;
}

QuotientResult jet_quotient(const DgaPtr& jets, const std::vector<AlgElem>& eqs, const std::vector<int>& prolong_orders) {
  QuotientResult out;
  std::map<Monomial, AlgElem> rules;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (const auto& alpha : indices_up_to(jets->dim(), prolong_orders.at(i))) {
      AlgElem pr = total_derivative(*jets, alpha, jets->reduce(eqs[i]));
      if (pr.is_zero()) continue;
      std::optional<OGen> lead;
      for (const auto& [m, c] : pr.terms())
        for (const auto& o : m.factors())
          if (!lead || *lead < o) lead = o;
      Monomial lhs;
      Scalar c = 0;
      bool solitary = lead.has_value();
      for (const auto& [m, coef] : pr.terms()) {
        bool has = std::find(m.factors().begin(), m.factors().end(), *lead) != m.factors().end();
        if (!has) continue;
        if (m.size() != 1 || !coef.is_constant()) solitary = false;
        lhs = m;
        c = coef.constant_term();
      }
      if (!solitary) {
        out.skipped = "prolonged equation has no solitary leading jet coordinate: " + to_string(pr);
        return out;
      }
      AlgElem rhs = AlgElem::term(lhs, Poly::constant(jets->dim(), c)) - pr;
      rhs *= Scalar(1) / c;
      auto [it, inserted] = rules.emplace(lhs, rhs);
      if (!inserted && it->second != rhs) {
        out.skipped = "conflicting rewrite rules for " + to_string(lhs);
        return out;
      }
    }
  }
  DgaBuilder b(jets->dim(), "J/(F)");
  b.include(*jets);
  for (const auto& [lhs, rhs] : rules) b.add_relation(lhs, rhs);
  out.algebra = b.build();
  return out;
}

KTVerifyReport kt_verify(const KTComplex& kt, const Truncation& t) {
  KTVerifyReport rep;
  rep.homology = homology(kt.algebra, t);
  std::vector<int> orders;
  for (const auto& g : kt.antifields) orders.push_back(kt.algebra->order_cap(g).value_or(0));
  QuotientResult q = jet_quotient(kt.jets, kt.equations, orders);
  if (!q.algebra) {
    rep.skipped = q.skipped;
    return rep;
  }
  rep.compared = true;
  std::size_t prev_h = 0, prev_q = 0;
  for (int d = 0; d <= t.poly_degree; ++d) {
    Truncation td = t;
    td.N = 0;
    td.poly_degree = d;
    HomologyOptions opt;
    opt.parallel = false;
    std::size_t h = homology(kt.algebra, td, opt).at(0).h;
    std::size_t n = enumerate_basis(*q.algebra, 0, td).size();
    rep.h0_slices.push_back(h - prev_h);
    rep.quotient_slices.push_back(n - prev_q);
    prev_h = h;
    prev_q = n;
  }
  rep.h0_matches = rep.h0_slices == rep.quotient_slices;
  return rep;
}

FactorizationResult kt_as_undercategory_replacement(const DgaPtr& jets, const std::vector<AlgElem>& eqs,
                                                    const EnumerationBudget& budget) {
  const int r = max_cap(*jets);
  std::vector<int> orders;
  for (const auto& f : eqs) orders.push_back(r - std::max(jets->reduce(f).max_order(), 0));
  QuotientResult q = jet_quotient(jets, eqs, orders);
  if (!q.algebra) throw PreconditionError("cannot present the on-shell algebra: " + q.skipped);
  std::map<GenId, AlgElem> pi;
  for (const auto& g : jets->generators()) pi[g] = q.algebra->gen(g);
  DgaMorphism proj(jets, q.algebra, pi);
  if (budget.elements.empty() && budget.cycles.empty())
    return cof_trivfib(proj, default_budget(q.algebra, budget.window, budget.stages));
  return cof_trivfib(proj, budget);
}

}  // namespace dgda
