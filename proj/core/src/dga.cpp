#include "dgda/dga.hpp"

#include <algorithm>
#include <set>

#include "dgda/errors.hpp"

namespace dgda {

namespace {

AlgElem monomial_elem(int dim, const Monomial& m) { return AlgElem::term(m, Poly::constant(dim, 1)); }

Monomial word_slice(const Monomial& m, std::size_t from, std::size_t to) {
  std::vector<OGen> w(m.factors().begin() + from, m.factors().begin() + to);
  return Monomial::normalize(std::move(w)).second;
}

std::string describe(const AlgElem& a) { return to_string(a); }

}  // namespace

// ---------------------------------------------------------------- Dga

const AlgElem& Dga::differential(const GenId& g) const {
  auto it = d_.find(g);
  if (it == d_.end()) throw PreconditionError("generator does not belong to " + name_, g.name());
  return it->second;
}

std::optional<int> Dga::order_cap(const GenId& g) const {
  auto it = caps_.find(g);
  if (it == caps_.end()) return std::nullopt;
  return it->second;
}

AlgElem Dga::gen(const GenId& g, const MultiIndex& deco) const {
  if (!has_generator(g)) throw PreconditionError("generator does not belong to " + name_, g.name());
  return AlgElem::generator(dim_, g, deco);
}

AlgElem Dga::mul(const AlgElem& a, const AlgElem& b) const { return reduce(free_mul(a, b)); }

bool Dga::is_reducible(const Monomial& m) const {
  if (rules_.empty()) return false;
  for (const auto& o : m.factors()) {
    auto it = rule_index_.find(o);
    if (it == rule_index_.end()) continue;
    for (std::size_t r : it->second)
      if (m.contains(rules_[r].lhs)) return true;
  }
  return false;
}

AlgElem Dga::reduce(const AlgElem& a) const {
  if (rules_.empty()) return a;
  AlgElem result(a.dim());
  std::map<Monomial, Poly> pending(a.terms().begin(), a.terms().end());
  while (!pending.empty()) {
    auto node = pending.extract(std::prev(pending.end()));
    const Monomial& m = node.key();
    const Poly& f = node.mapped();
    const RewriteRule* rule = nullptr;
    for (const auto& o : m.factors()) {
      auto it = rule_index_.find(o);
      if (it == rule_index_.end()) continue;
      for (std::size_t r : it->second)
        if (m.contains(rules_[r].lhs)) {
          rule = &rules_[r];
          break;
        }
      if (rule) break;
    }
    if (!rule) {
      result.add_term(m, f);
      continue;
    }
    Monomial rest = m.without(rule->lhs);
    int sign = monomial_product(rule->lhs, rest).first;
    AlgElem replaced = free_mul(rule->rhs, monomial_elem(a.dim(), rest));
    for (const auto& [rm, rf] : replaced.terms()) {
      Poly c = poly_mul(rf, f);
      if (sign < 0) c *= Scalar(-1);
      auto [it, inserted] = pending.try_emplace(rm, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) pending.erase(it);
      }
    }
  }
  return result;
}

AlgElem Dga::d_ogen(const OGen& o) const {
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = d_cache_.find(o);
    if (it != d_cache_.end()) return it->second;
  }
  const AlgElem& dv = differential(o.gen);
  AlgElem r = total_degree(o.deco) == 0 ? dv : act(WeylOp::term(dim_, zero_index(dim_), o.deco), dv);
  std::lock_guard<std::mutex> lock(cache_mu_);
  d_cache_.emplace(o, r);
  return r;
}

AlgElem Dga::d(const AlgElem& a) const {
  AlgElem r(dim_);
  for (const auto& [m, f] : a.terms()) {
    const auto& fs = m.factors();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      AlgElem dv = d_ogen(fs[i]);
      if (!dv.is_zero()) {
        AlgElem left = monomial_elem(dim_, word_slice(m, 0, i));
        AlgElem right = monomial_elem(dim_, word_slice(m, i + 1, fs.size()));
        AlgElem piece = free_mul(free_mul(left, dv), right);
        piece *= f;
        if (prefix_degree & 1) piece *= Scalar(-1);
        r += piece;
      }
      prefix_degree += fs[i].degree();
    }
  }
  return reduce(r);
}

AlgElem Dga::act(const WeylOp& op, const AlgElem& a) const { return reduce(theta_free(op, a)); }

AlgElem Dga::partial(int k, const AlgElem& a) const { return reduce(theta_partial(k, a)); }

bool Dga::contains(const AlgElem& a) const {
  return a.dim() == dim_ && a.uses_only([this](const GenId& g) { return has_generator(g); });
}

AlgElem Dga::d_squared_residue(const GenId& g) const { return d(differential(g)); }

// ---------------------------------------------------------------- DgaBuilder

DgaBuilder::DgaBuilder(int dim, std::string name) : dim_(dim), name_(std::move(name)) {}

DgaBuilder& DgaBuilder::include(const Dga& a) {
  if (a.dim() != dim_) throw DimensionMismatch("including an algebra over a different base");
  for (const auto& g : a.generators()) {
    if (d_.count(g)) throw PreconditionError("generator included twice", g.name());
    gens_.push_back(g);
    d_[g] = a.differential(g);
  }
  for (const auto& r : a.relations()) rules_.push_back(r);
  for (const auto& [g, c] : a.order_caps()) caps_[g] = c;
  return *this;
}

DgaBuilder& DgaBuilder::add_generator(const GenId& g, const AlgElem& d) {
  if (d_.count(g)) throw PreconditionError("generator added twice", g.name());
  gens_.push_back(g);
  d_[g] = d.dim() == dim_ ? d : AlgElem(dim_);
  return *this;
}

DgaBuilder& DgaBuilder::add_generator(const GenId& g) { return add_generator(g, AlgElem(dim_)); }

DgaBuilder& DgaBuilder::set_differential(const GenId& g, const AlgElem& d) {
  if (!d_.count(g)) throw PreconditionError("differential for unknown generator", g.name());
  d_[g] = d;
  return *this;
}

DgaBuilder& DgaBuilder::add_relation(const Monomial& lhs, const AlgElem& rhs) {
  if (lhs.empty()) throw PreconditionError("rewrite rule with empty left side");
  rules_.push_back({lhs, rhs});
  return *this;
}

DgaBuilder& DgaBuilder::set_order_cap(const GenId& g, int cap) {
  caps_[g] = cap;
  return *this;
}

DgaPtr DgaBuilder::build(bool validate) const {
  std::shared_ptr<Dga> a(new Dga());
  a->dim_ = dim_;
  a->name_ = name_;
  a->gens_ = canonical_well_order(gens_);
  a->d_ = d_;
  a->rules_ = rules_;
  a->caps_ = caps_;
  for (std::size_t i = 0; i < a->rules_.size(); ++i) {
    std::set<OGen> seen;
    for (const auto& o : a->rules_[i].lhs.factors())
      if (seen.insert(o).second) a->rule_index_[o].push_back(i);
  }
  if (!validate) return a;

  auto member = [&](const GenId& g) { return a->has_generator(g); };
  for (const auto& g : a->gens_) {
    const AlgElem& dv = a->d_.at(g);
    if (dv.dim() != dim_) throw DimensionMismatch("differential over a different base");
    if (!dv.uses_only(member))
      throw PreconditionError("differential refers to a generator outside " + name_, g.name(),
                              describe(dv));
    if (!dv.is_homogeneous() || (!dv.is_zero() && *dv.degree() != g.degree - 1))
      throw PreconditionError("differential must lower degree by one", g.name(), describe(dv));
  }
  for (const auto& r : a->rules_) {
    if (!r.lhs.factors().empty())
      for (const auto& o : r.lhs.factors())
        if (!member(o.gen)) throw PreconditionError("rule uses a foreign generator", o.gen.name());
    if (!r.rhs.uses_only(member)) throw PreconditionError("rule right side uses a foreign generator");
    for (const auto& [m, f] : r.rhs.terms()) {
      if (m.degree() != r.lhs.degree())
        throw PreconditionError("rewrite rule is not homogeneous", to_string(r.lhs), describe(r.rhs));
      if (!multiset_less(m, r.lhs))
        throw PreconditionError("rewrite rule does not decrease the monomial order", to_string(r.lhs),
                                describe(r.rhs));
    }
  }
  for (const auto& r : a->rules_) {
    AlgElem lhs = AlgElem::term(r.lhs, Poly::constant(dim_, 1));
    AlgElem residue = a->d(lhs) - a->d(r.rhs);
    residue = a->reduce(residue);
    if (!residue.is_zero())
      throw PreconditionError("rewrite rule is not compatible with the differential", to_string(r.lhs),
                              describe(residue));
  }
  for (const auto& g : a->gens_) {
    AlgElem dd = a->d_squared_residue(g);
    if (!dd.is_zero()) throw PreconditionError("d^2 is not zero", g.name(), describe(dd));
  }
  return a;
}

// ---------------------------------------------------------------- DgaMorphism

DgaMorphism::DgaMorphism(DgaPtr source, DgaPtr target, std::map<GenId, AlgElem> assignment,
                         bool validate)
    : source_(std::move(source)),
      target_(std::move(target)),
      assign_(std::move(assignment)),
      cache_(std::make_shared<Cache>()) {
  if (source_->dim() != target_->dim()) throw DimensionMismatch("morphism between different bases");
  for (const auto& g : source_->generators()) {
    auto it = assign_.find(g);
    if (it == assign_.end()) throw PreconditionError("morphism has no value on generator", g.name());
    it->second = target_->reduce(it->second);
  }
  if (assign_.size() != source_->generators().size()) {
    for (const auto& [g, v] : assign_)
      if (!source_->has_generator(g))
        throw PreconditionError("morphism assigns a value to a foreign generator", g.name());
  }
  if (!validate) return;
  for (const auto& g : source_->generators()) {
    const AlgElem& v = assign_.at(g);
    if (!target_->contains(v))
      throw PreconditionError("morphism value is not in the target", g.name(), describe(v));
    if (!v.is_homogeneous() || (!v.is_zero() && *v.degree() != g.degree))
      throw PreconditionError("morphism must preserve degree", g.name(), describe(v));
  }
  for (const auto& g : source_->generators()) {
    AlgElem residue = chain_residue(g);
    if (!residue.is_zero())
      throw PreconditionError("morphism does not commute with differentials", g.name(),
                              describe(residue));
  }
  for (const auto& r : source_->relations()) {
    AlgElem residue = apply(AlgElem::term(r.lhs, Poly::constant(source_->dim(), 1))) - apply(r.rhs);
    residue = target_->reduce(residue);
    if (!residue.is_zero())
      throw PreconditionError("morphism does not respect a relation", to_string(r.lhs), describe(residue));
  }
}

const AlgElem& DgaMorphism::on_generator(const GenId& g) const {
  auto it = assign_.find(g);
  if (it == assign_.end()) throw PreconditionError("morphism has no value on generator", g.name());
  return it->second;
}

AlgElem DgaMorphism::image(const OGen& o) const {
  if (total_degree(o.deco) == 0) return on_generator(o.gen);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->images.find(o);
    if (it != cache_->images.end()) return it->second;
  }
  AlgElem r = target_->act(WeylOp::term(target_->dim(), zero_index(target_->dim()), o.deco),
                           on_generator(o.gen));
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->images.emplace(o, r);
  return r;
}

AlgElem DgaMorphism::apply(const AlgElem& a) const {
  const int p = target_->dim();
  AlgElem r(p);
  for (const auto& [m, f] : a.terms()) {
    AlgElem cur = AlgElem::from_poly(f);
    for (const auto& o : m.factors()) {
      cur = free_mul(cur, image(o));
      if (cur.is_zero()) break;
    }
    r += cur;
  }
  return target_->reduce(r);
}

AlgElem DgaMorphism::chain_residue(const GenId& g) const {
  return target_->d(on_generator(g)) - apply(source_->differential(g));
}

// ---------------------------------------------------------------- constructions

AlgElem sym_mul(const Dga& ambient, const AlgElem& a, const AlgElem& b) {
  if (!ambient.contains(a) || !ambient.contains(b))
    throw PreconditionError("product of elements from different algebras");
  return ambient.mul(a, b);
}

AlgElem module_to_algebra(const ModElem& e) {
  AlgElem r(e.dim());
  for (const auto& [g, op] : e.terms()) r += theta_free(op, AlgElem::generator(e.dim(), g));
  return r;
}

DgaPtr free_algebra(const FreeDgModule& v, const std::string& name) {
  DgaBuilder b(v.dim(), name);
  for (const auto& g : v.generators()) b.add_generator(g, module_to_algebra(v.d(g)));
  return b.build();
}

DgaPtr base_algebra(int dim, const std::string& name) { return DgaBuilder(dim, name).build(); }

DgaPtr tensor_algebra(const Dga& a, const Dga& b, const std::string& name) {
  DgaBuilder t(a.dim(), name.empty() ? a.name() + "(x)" + b.name() : name);
  t.include(a);
  t.include(b);
  return t.build();
}

DgaMorphism identity_morphism(const DgaPtr& a) { return inclusion_morphism(a, a); }

DgaMorphism inclusion_morphism(const DgaPtr& a, const DgaPtr& m) {
  std::map<GenId, AlgElem> assign;
  for (const auto& g : a->generators()) {
    if (!m->has_generator(g)) throw PreconditionError("inclusion target lacks generator", g.name());
    assign[g] = AlgElem::generator(a->dim(), g);
  }
  return DgaMorphism(a, m, std::move(assign));
}

DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f) {
  if (!f.target()->same_generators(*g.source()))
    throw PreconditionError("composition of non-composable morphisms");
  std::map<GenId, AlgElem> assign;
  for (const auto& [gen, v] : f.assignment()) assign[gen] = g.apply(v);
  return DgaMorphism(f.source(), g.target(), std::move(assign), false);
}

DgaMorphism unit_morphism(const DgaPtr& b) {
  return DgaMorphism(base_algebra(b->dim()), b, {});
}

DgaMorphism product_morphism(const DgaMorphism& phi, const DgaMorphism& psi, DgaPtr source) {
  if (!phi.target()->same_generators(*psi.target()))
    throw PreconditionError("product morphism needs a common target");
  if (!source) source = tensor_algebra(*phi.source(), *psi.source());
  std::map<GenId, AlgElem> assign = phi.assignment();
  for (const auto& [g, v] : psi.assignment()) assign[g] = v;
  return DgaMorphism(source, phi.target(), std::move(assign));
}

DgaPtr rsda_extend_differential(const DgaPtr& t, const std::vector<GenId>& new_gens,
                                const std::map<GenId, AlgElem>& dvals, const std::string& name) {
  DgaBuilder b(t->dim(), name.empty() ? t->name() + "+" : name);
  b.include(*t);
  for (const auto& g : new_gens) {
    auto it = dvals.find(g);
    AlgElem v = it == dvals.end() ? AlgElem(t->dim()) : t->reduce(it->second);
    if (!t->contains(v)) throw PreconditionError("extension value is not in the base algebra", g.name(), describe(v));
    if (!v.is_homogeneous() || (!v.is_zero() && *v.degree() != g.degree - 1))
      throw PreconditionError("extension value has the wrong degree", g.name(), describe(v));
    AlgElem dv = t->d(v);
    if (!dv.is_zero()) throw PreconditionError("extension value is not a cycle", g.name(), describe(dv));
    b.add_generator(g, v);
  }
  return b.build();
}

DgaMorphism rsda_extend_morphism(const DgaMorphism& p, const DgaPtr& m,
                                 const std::map<GenId, AlgElem>& qvals) {
  const Dga& t = *p.source();
  const Dga& target = *p.target();
  std::map<GenId, AlgElem> assign = p.assignment();
  for (const auto& g : m->generators()) {
    if (t.has_generator(g)) continue;
    auto it = qvals.find(g);
    if (it == qvals.end()) throw PreconditionError("extension morphism lacks a value", g.name());
    assign[g] = target.reduce(it->second);
  }
  // The chain condition only involves values on T and on g itself.
  DgaMorphism q(m, p.target(), assign, false);
  for (const auto& g : m->generators()) {
    if (t.has_generator(g)) continue;
    const AlgElem& v = assign[g];
    if (!target.contains(v)) throw PreconditionError("extension morphism value is not in the target", g.name(), describe(v));
    if (!v.is_homogeneous() || (!v.is_zero() && *v.degree() != g.degree))
      throw PreconditionError("extension morphism value has the wrong degree", g.name(), describe(v));
    AlgElem residue = q.chain_residue(g);
    if (!residue.is_zero())
      throw PreconditionError("extension morphism violates d q = p d", g.name(), describe(residue));
  }
  return q;
}

std::optional<GenId> first_disagreement(const DgaMorphism& f, const DgaMorphism& g) {
  for (const auto& gen : f.source()->generators()) {
    if (f.on_generator(gen) != g.on_generator(gen)) return gen;
  }
  return std::nullopt;
}

}  // namespace dgda
