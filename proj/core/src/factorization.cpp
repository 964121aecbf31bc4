#include "dgda/factorization.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "dgda/errors.hpp"

namespace dgda {

namespace {

AlgElem key_elem(const BasisKey& k, int dim) { return AlgElem::term(k.m, Poly::monomial(dim, k.x)); }

AlgElem combination(const RatVec& coeffs, const std::vector<AlgElem>& elems, int dim) {
  AlgElem out(dim);
  for (const auto& [i, c] : coeffs) out += elems[i] * c;
  return out;
}

// Coordinates over a growing set of basis keys.
struct KeySpace {
  std::map<BasisKey, std::size_t> index;

  RatVec vectorize(const LinComb& v) {
    std::map<std::size_t, Scalar> entries;
    for (const auto& [k, c] : v) {
      if (c == 0) continue;
      auto it = index.try_emplace(k, index.size()).first;
      entries[it->second] += c;
    }
    return make_ratvec(std::move(entries));
  }
};

// Exact cycles spanning the kernel of d on the window slice of degree n.
std::vector<AlgElem> window_cycles(const DgaPtr& a, int n, const Truncation& t) {
  std::vector<AlgElem> out;
  const int p = a->dim();
  if (n == 0) {
    for (const auto& k : enumerate_basis(*a, 0, t)) out.push_back(key_elem(k, p));
    return out;
  }
  QMat m = matrix_of_d(a, n, t);
  std::vector<AlgElem> cols;
  for (const auto& k : m.cols) cols.push_back(key_elem(k, p));
  for (const auto& comb : kernel_basis(m.columns)) out.push_back(combination(comb, cols, p));
  return out;
}

struct PairCandidate {
  AlgElem sigma;
  AlgElem witness;
};

// Pairs (sigma, b) with sigma a window cycle of degree n and d_B b = q sigma,
// found by eliminating [d_B w_j | q z_i] with history. Cycles already present
// in `older` are skipped; the minimal variant also skips boundaries.
std::vector<PairCandidate> find_pairs(const DgaPtr& r, const DgaPtr& older, const DgaMorphism& q,
                                      const Truncation& t, int n, bool modulo_boundaries) {
  const Dga& b = *q.target();
  const int p = r->dim();
  std::vector<AlgElem> z = window_cycles(r, n, t);
  std::vector<AlgElem> w;
  for (const auto& k : enumerate_basis(b, n + 1, t)) w.push_back(key_elem(k, p));

  KeySpace ks;
  Eliminator e(true);
  for (const auto& wj : w) e.insert(ks.vectorize(to_lincomb(b.d(wj))));
  const std::size_t J = w.size();
  std::vector<PairCandidate> out;
  for (const auto& zi : z) {
    if (e.insert(ks.vectorize(to_lincomb(q.apply(zi))))) continue;
    PairCandidate c{AlgElem(p), AlgElem(p)};
    for (const auto& [idx, s] : e.last_relation()) {
      if (idx < J)
        c.witness -= w[idx] * s;
      else
        c.sigma += z[idx - J] * s;
    }
    out.push_back(std::move(c));
  }
  if (!older && !modulo_boundaries) return out;

  KeySpace rs;
  Eliminator bd;
  if (older)
    for (const auto& z_old : window_cycles(older, n, t)) bd.insert(rs.vectorize(to_lincomb(z_old)));
  if (modulo_boundaries)
    for (const auto& k : enumerate_basis(*r, n + 1, t)) bd.insert(rs.vectorize(to_lincomb(r->d(key_elem(k, p)))));
  std::vector<PairCandidate> kept;
  for (auto& c : out)
    if (bd.insert(rs.vectorize(to_lincomb(c.sigma)))) kept.push_back(std::move(c));
  return kept;
}

std::string describe(const AlgElem& a) { return to_string(a); }

// Generators of each stage in construction order: stage 0 also holds the
// generators of the source of phi.
std::vector<std::vector<GenId>> stage_generators(const FactorizationResult& f, int upto) {
  std::vector<std::vector<GenId>> out;
  for (int s = 0; s <= upto && s < static_cast<int>(f.stages.size()); ++s) {
    std::vector<GenId> gens;
    if (s == 0) gens = f.phi.source()->generators();
    for (const auto& g : f.stages[s].added) gens.push_back(g);
    out.push_back(std::move(gens));
  }
  return out;
}

const PairCertificate& certificate(const FactorizationResult& f, const GenId& g) {
  for (const auto& c : f.stages.at(g.stage).pairs)
    if (c.generator == g) return c;
  throw PreconditionError("pair generator without certificate", g.name());
}

// Assigns omega on the generators of f up to a stage, looking indices up in
// the (possibly partial) factorization fp whose algebra so far is target.
void extend_omega(std::map<GenId, AlgElem>& assign, const FactorizationResult& f, int upto,
                  const DgaMorphism& u, const DgaMorphism& v, const FactorizationResult& fp,
                  const DgaPtr& target) {
  const Dga& bp = *v.target();
  const int p = target->dim();
  auto lookup = [&](const GenId& g, GenKind kind, int stage, const AlgElem& shown,
                    const std::string& payload) {
    auto hit = fp.lookup(kind, stage, payload);
    if (!hit)
      throw PreconditionError("budget is not closed under the square: missing index for " + g.name(), g.name(),
                              describe(shown));
    return target->gen(*hit);
  };
  auto gens = stage_generators(f, upto);
  for (int s = 0; s < static_cast<int>(gens.size()); ++s) {
    std::optional<DgaMorphism> lower;
    for (const auto& g : gens[s]) {
      if (assign.count(g)) continue;
      if (f.phi.source()->has_generator(g)) {
        assign[g] = u.on_generator(g);
        continue;
      }
      if (g.kind == GenKind::PairGen) {
        if (!lower) {
          std::map<GenId, AlgElem> sub;
          const DgaPtr& prev = f.stages.at(s - 1).algebra;
          for (const auto& h : prev->generators()) sub[h] = assign.at(h);
          lower.emplace(prev, target, std::move(sub), false);
        }
        const PairCertificate& c = certificate(f, g);
        AlgElem ws = target->reduce(lower->apply(c.sigma));
        AlgElem vb = bp.reduce(v.apply(c.witness));
        if (ws.is_zero() && vb.is_zero()) {
          assign[g] = AlgElem(p);
          continue;
        }
        assign[g] = lookup(g, GenKind::PairGen, g.stage, ws, pair_payload(ws, vb));
        continue;
      }
      AlgElem ve = bp.reduce(v.apply(f.element_of.at(g)));
      assign[g] = ve.is_zero() ? AlgElem(p) : lookup(g, g.kind, 0, ve, serialize(ve));
    }
  }
}

void check_square(const DgaMorphism& u, const DgaMorphism& v, const DgaMorphism& phi, const DgaMorphism& phi_p) {
  for (const auto& g : phi.source()->generators()) {
    AlgElem lhs = v.target()->reduce(v.apply(phi.on_generator(g)));
    AlgElem rhs = phi_p.apply(u.on_generator(g));
    if (lhs != rhs) throw PreconditionError("square does not commute: v phi != phi' u", g.name(), describe(lhs - rhs));
  }
}

class Construction {
 public:
  Construction(const DgaMorphism& phi, FactorizationKind kind) : b_(*phi.target()) {
    res_.kind = kind;
    res_.phi = phi;
    cur_ = phi.source();
    q_ = phi;
  }

  // Stage 0: discs on the listed elements and cycle generators on the cycles.
  void stage_zero(const std::vector<AlgElem>& elements, const std::vector<AlgElem>& cycles) {
    const int p = b_.dim();
    StageRecord rec;
    std::vector<GenId> lower, tops;
    std::map<GenId, AlgElem> dv, qv;
    for (const auto& raw : elements) {
      AlgElem e = b_.reduce(raw);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || *e.degree() < 1)
        throw PreconditionError("budget element must be homogeneous of positive degree", {}, describe(e));
      if (!b_.contains(e)) throw PreconditionError("budget element is not in the target", {}, describe(e));
      std::string payload = serialize(e);
      if (res_.index.count(index_key(GenKind::DiscTop, 0, payload))) continue;
      int n = *e.degree();
      std::string label = "b" + std::to_string(++discs_);
      GenId top = make_generator(GenKind::DiscTop, n, label, payload);
      GenId bottom = make_generator(GenKind::DiscBottom, n - 1, "s" + label, payload);
      res_.index[index_key(GenKind::DiscTop, 0, payload)] = top;
      res_.index[index_key(GenKind::DiscBottom, 0, payload)] = bottom;
      res_.element_of[top] = e;
      res_.element_of[bottom] = e;
      lower.push_back(bottom);
      tops.push_back(top);
      dv[top] = AlgElem::generator(p, bottom);
      qv[top] = e;
      qv[bottom] = b_.d(e);
    }
    for (const auto& raw : cycles) {
      AlgElem c = b_.reduce(raw);
      if (c.is_zero()) continue;
      if (!c.is_homogeneous()) throw PreconditionError("budget cycle must be homogeneous", {}, describe(c));
      if (!b_.d(c).is_zero()) throw PreconditionError("budget cycle is not a cycle", {}, describe(b_.d(c)));
      std::string payload = serialize(c);
      if (res_.index.count(index_key(GenKind::CycleGen, 0, payload))) continue;
      GenId g = make_generator(GenKind::CycleGen, *c.degree(), "z" + std::to_string(++cycles_), payload);
      res_.index[index_key(GenKind::CycleGen, 0, payload)] = g;
      res_.element_of[g] = c;
      lower.push_back(g);
      qv[g] = c;
    }
    extend(lower, dv, qv, "R0");
    extend(tops, dv, qv, "R0");
    rec.k = 0;
    rec.algebra = cur_;
    rec.q = q_;
    rec.added = lower;
    rec.added.insert(rec.added.end(), tops.begin(), tops.end());
    res_.stages.push_back(std::move(rec));
  }

  // Stage k: one generator per pair, dropping duplicates and trivial pairs.
  void stage(int k, const std::vector<PairCandidate>& pairs) {
    StageRecord rec;
    rec.k = k;
    std::vector<GenId> gens;
    std::map<GenId, AlgElem> dv, qv;
    for (const auto& c : pairs) {
      AlgElem sigma = cur_->reduce(c.sigma);
      AlgElem w = b_.reduce(c.witness);
      if (sigma.is_zero() && w.is_zero()) continue;
      std::string payload = pair_payload(sigma, w);
      std::string key = index_key(GenKind::PairGen, k, payload);
      if (res_.index.count(key)) continue;
      int n = sigma.is_zero() ? *w.degree() - 1 : *sigma.degree();
      GenId g = make_generator(GenKind::PairGen, n + 1, "e" + std::to_string(k) + "." + std::to_string(gens.size() + 1),
                               payload, k);
      res_.index[key] = g;
      gens.push_back(g);
      dv[g] = sigma;
      qv[g] = w;
      rec.pairs.push_back(PairCertificate{sigma, w, g});
    }
    extend(gens, dv, qv, "R" + std::to_string(k));
    rec.algebra = cur_;
    rec.q = q_;
    rec.added = gens;
    res_.stages.push_back(std::move(rec));
  }

  const DgaPtr& current() const { return cur_; }
  const DgaMorphism& q() const { return q_; }
  FactorizationResult& result() { return res_; }

  FactorizationResult finish() {
    res_.middle = cur_;
    res_.left = inclusion_morphism(res_.phi.source(), cur_);
    res_.right = q_;
    return std::move(res_);
  }

 private:
  void extend(const std::vector<GenId>& gens, const std::map<GenId, AlgElem>& dv, const std::map<GenId, AlgElem>& qv,
              const std::string& name) {
    std::map<GenId, AlgElem> d, q;
    for (const auto& g : gens) {
      if (auto it = dv.find(g); it != dv.end()) d[g] = it->second;
      q[g] = qv.at(g);
    }
    cur_ = rsda_extend_differential(cur_, gens, d, name);
    q_ = rsda_extend_morphism(q_, cur_, q);
  }

  const Dga& b_;
  FactorizationResult res_;
  DgaPtr cur_;
  DgaMorphism q_;
  int discs_ = 0;
  int cycles_ = 0;
};

std::vector<AlgElem> flatten(const std::map<int, std::vector<AlgElem>>& m) {
  std::vector<AlgElem> out;
  for (const auto& [n, v] : m) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Seeded stage-0 indices: v-images of the source factorization's indices.
void seed_stage_zero(const FunctorialSeed& seed, std::vector<AlgElem>& elements, std::vector<AlgElem>& cycles) {
  const FactorizationResult& f = *seed.source;
  for (const auto& [g, e] : f.element_of) {
    if (g.kind == GenKind::DiscBottom) continue;
    AlgElem ve = seed.v.apply(e);
    (g.kind == GenKind::DiscTop ? elements : cycles).push_back(ve);
  }
}

FactorizationResult build_sullivan(const DgaMorphism& phi, const EnumerationBudget& budget,
                                   const FunctorialSeed* seed, FactorizationKind kind) {
  Construction c(phi, kind);
  std::vector<AlgElem> elements = flatten(budget.elements);
  std::vector<AlgElem> cycles;
  if (kind == FactorizationKind::Minimal) {
    HomologyOptions opt;
    opt.representatives = true;
    auto rep = homology(phi.target(), budget.window, opt);
    for (const auto& d : rep.degrees)
      for (const auto& r : d.representatives) cycles.push_back(to_algelem(r, phi.target()->dim()));
  } else {
    cycles = flatten(budget.cycles);
  }
  int stages = budget.stages;
  if (seed) {
    check_square(seed->u, seed->v, seed->source->phi, phi);
    seed_stage_zero(*seed, elements, cycles);
    stages = std::max(stages, static_cast<int>(seed->source->stages.size()) - 1);
  }
  c.stage_zero(elements, cycles);

  const Truncation& t = budget.window;
  const bool minimal = kind == FactorizationKind::Minimal;
  for (int k = 1; k <= stages; ++k) {
    DgaPtr older = k >= 2 ? c.result().stages[k - 2].algebra : nullptr;
    std::vector<std::future<std::vector<PairCandidate>>> jobs;
    for (int n = 0; n < t.N; ++n)
      jobs.push_back(std::async(std::launch::async, find_pairs, c.current(), older, c.q(), t, n, minimal));
    std::vector<PairCandidate> pairs;
    for (auto& j : jobs)
      for (auto& pc : j.get()) pairs.push_back(std::move(pc));
    if (seed && k < static_cast<int>(seed->source->stages.size())) {
      std::map<GenId, AlgElem> assign;
      extend_omega(assign, *seed->source, k - 1, seed->u, seed->v, c.result(), c.current());
      const DgaPtr& prev = seed->source->stages[k - 1].algebra;
      std::map<GenId, AlgElem> sub;
      for (const auto& h : prev->generators()) sub[h] = assign.at(h);
      DgaMorphism omega(prev, c.current(), std::move(sub), false);
      for (const auto& cert : seed->source->stages[k].pairs)
        pairs.push_back(PairCandidate{omega.apply(cert.sigma), seed->v.apply(cert.witness)});
    }
    c.stage(k, pairs);
  }
  return c.finish();
}

}  // namespace

std::string kind_name(FactorizationKind k) {
  switch (k) {
    case FactorizationKind::TrivCofFib: return "trivcof-fib";
    case FactorizationKind::CofTrivFib: return "cof-trivfib";
    case FactorizationKind::Minimal: return "minimal";
  }
  return "?";
}

std::string index_key(GenKind kind, int stage, const std::string& payload) {
  return std::string(kind_name(kind)) + "/" + std::to_string(stage) + "/" + payload;
}

std::string pair_payload(const AlgElem& sigma, const AlgElem& b) { return serialize(sigma) + "|" + serialize(b); }

std::optional<GenId> FactorizationResult::lookup(GenKind kind, int stage, const std::string& payload) const {
  auto it = index.find(index_key(kind, stage, payload));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

EnumerationBudget default_budget(const DgaPtr& b, const Truncation& t, int stages) {
  EnumerationBudget budget;
  budget.window = t;
  budget.stages = stages;
  const int p = b->dim();
  // O-multiples come from the module structure of the new generators.
  Truncation flat = t;
  flat.poly_degree = 0;
  for (int n = 1; n <= t.N; ++n)
    for (const auto& k : enumerate_basis(*b, n, flat)) budget.elements[n].push_back(key_elem(k, p));
  for (int n = 0; n <= t.N; ++n) budget.cycles[n] = window_cycles(b, n, flat);
  return budget;
}

FactorizationResult trivcof_fib(const DgaMorphism& phi, const EnumerationBudget& budget, const FunctorialSeed* seed) {
  Construction c(phi, FactorizationKind::TrivCofFib);
  std::vector<AlgElem> elements = flatten(budget.elements);
  if (seed) {
    check_square(seed->u, seed->v, seed->source->phi, phi);
    std::vector<AlgElem> unused;
    seed_stage_zero(*seed, elements, unused);
  }
  c.stage_zero(elements, {});
  return c.finish();
}

FactorizationResult cof_trivfib(const DgaMorphism& phi, const EnumerationBudget& budget, const FunctorialSeed* seed) {
  return build_sullivan(phi, budget, seed, FactorizationKind::CofTrivFib);
}

FactorizationResult minimal_variant(const DgaMorphism& phi, const EnumerationBudget& budget) {
  return build_sullivan(phi, budget, nullptr, FactorizationKind::Minimal);
}

FactorizationResult cofibrant_replacement(const DgaPtr& b, const EnumerationBudget& budget) {
  return cof_trivfib(unit_morphism(b), budget);
}

std::optional<GenId> composition_mismatch(const FactorizationResult& f) {
  for (const auto& g : f.phi.source()->generators())
    if (f.right.apply(f.left.on_generator(g)) != f.phi.on_generator(g)) return g;
  return std::nullopt;
}

PushoutData pushout_gen_cof(int n, const DgaPtr& t, const AlgElem& kappa) {
  if (n < 0) throw PreconditionError("pushout degree must be non-negative");
  const int p = t->dim();
  AlgElem k = t->reduce(kappa);
  if (n == 0 && !k.is_zero()) throw PreconditionError("kappa must vanish in degree -1", {}, describe(k));
  PushoutData data;
  data.n = n;
  data.base = t;
  data.kappa = k;
  data.disc = free_algebra(disc(p, n, "I"), "S(D" + std::to_string(n) + ")");
  data.new_gen = make_generator(GenKind::Sphere, n, "1_" + std::to_string(n));
  data.result = rsda_extend_differential(t, {data.new_gen}, {{data.new_gen, k}}, t->name() + "+S" + std::to_string(n));
  data.i = inclusion_morphism(t, data.result);
  std::map<GenId, AlgElem> jv;
  for (const auto& g : data.disc->generators())
    jv[g] = g.kind == GenKind::DiscBottom ? k : data.result->gen(data.new_gen);
  data.j = DgaMorphism(data.disc, data.result, jv);
  return data;
}

DgaMorphism pushout_universal(const DgaMorphism& i_prime, const DgaMorphism& j_prime, const PushoutData& data) {
  if (!i_prime.source()->same_generators(*data.base))
    throw PreconditionError("i' must start at the pushout base");
  if (!j_prime.source()->same_generators(*data.disc)) throw PreconditionError("j' must start at the disc algebra");
  if (i_prime.target() != j_prime.target() && !i_prime.target()->same_generators(*j_prime.target()))
    throw PreconditionError("i' and j' need a common target");
  const Dga& b = *i_prime.target();
  AlgElem top_value(b.dim());
  for (const auto& g : data.disc->generators()) {
    if (g.kind == GenKind::DiscBottom) {
      AlgElem residue = b.reduce(j_prime.on_generator(g) - i_prime.apply(data.kappa));
      if (!residue.is_zero())
        throw PreconditionError("j' and i' disagree on the attaching sphere", g.name(), describe(residue));
    } else {
      top_value = j_prime.on_generator(g);
    }
  }
  return rsda_extend_morphism(i_prime, data.result, {{data.new_gen, top_value}});
}

RsdaReport verify_rsda(const DgaMorphism& iota, const std::vector<GenId>& order) {
  RsdaReport rep;
  const Dga& a = *iota.source();
  const Dga& m = *iota.target();
  for (const auto& g : a.generators()) {
    if (!m.has_generator(g)) {
      rep.inclusion = false;
      rep.violations.push_back("generator " + g.name() + " of the base is missing from the extension");
    } else if (iota.on_generator(g) != m.gen(g)) {
      rep.inclusion = false;
      rep.violations.push_back("base generator " + g.name() + " is not sent to itself");
    }
  }
  std::vector<GenId> fresh;
  for (const auto& g : m.generators())
    if (!a.has_generator(g)) fresh.push_back(g);
  std::vector<GenId> ord = order.empty() ? canonical_well_order(fresh) : order;
  {
    std::vector<GenId> x = ord, y = fresh;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y || std::adjacent_find(x.begin(), x.end()) != x.end()) {
      rep.well_ordered = false;
      rep.violations.push_back("order is not a permutation of the new generators");
    }
  }
  std::map<GenId, std::size_t> pos;
  for (std::size_t i = 0; i < ord.size(); ++i) pos.emplace(ord[i], i);
  for (std::size_t i = 0; i < ord.size(); ++i) {
    if (!m.has_generator(ord[i])) continue;
    for (const auto& h : m.differential(ord[i]).generators_used()) {
      if (a.has_generator(h)) continue;
      auto it = pos.find(h);
      if (it == pos.end() || it->second >= i) {
        rep.lowering = false;
        rep.violations.push_back("d(" + ord[i].name() + ") involves " + h.name() + ", which is not below it");
      }
    }
  }
  rep.pass = rep.inclusion && rep.well_ordered && rep.lowering;
  return rep;
}

DgaMorphism functorial_square(const DgaMorphism& u, const DgaMorphism& v, const FactorizationResult& f,
                              const FactorizationResult& f_prime) {
  check_square(u, v, f.phi, f_prime.phi);
  std::map<GenId, AlgElem> assign;
  extend_omega(assign, f, static_cast<int>(f.stages.size()) - 1, u, v, f_prime, f_prime.middle);
  DgaMorphism omega(f.middle, f_prime.middle, assign);
  for (const auto& g : f.middle->generators()) {
    AlgElem lhs = f_prime.right.apply(omega.on_generator(g));
    AlgElem rhs = v.target()->reduce(v.apply(f.right.on_generator(g)));
    if (lhs != rhs) throw PreconditionError("q' omega != v q", g.name(), describe(lhs - rhs));
  }
  return omega;
}

}  // namespace dgda
