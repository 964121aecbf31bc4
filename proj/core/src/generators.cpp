#include "dgda/generators.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_set>

#include "dgda/errors.hpp"

namespace dgda {

namespace {

std::atomic<std::uint64_t> g_next_ordinal{1};

struct InternPool {
  std::mutex mu;
  std::unordered_set<std::string> pool;
};

InternPool& pool() {
  static InternPool* p = new InternPool();
  return *p;
}

const std::string& empty_string() {
  static const std::string* e = intern("");
  return *e;
}

}  // namespace

std::string_view kind_name(GenKind k) {
  switch (k) {
    case GenKind::Sphere: return "sphere";
    case GenKind::DiscBottom: return "disc-bottom";
    case GenKind::DiscTop: return "disc-top";
    case GenKind::CycleGen: return "cycle";
    case GenKind::PairGen: return "pair";
    case GenKind::Antifield: return "antifield";
  }
  return "?";
}

const std::string* intern(std::string_view s) {
  auto& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  auto it = p.pool.emplace(s).first;
  return &*it;
}

int GenId::kind_rank() const {
  switch (kind) {
    case GenKind::Sphere: return 0;
    case GenKind::DiscBottom: return 1;
    case GenKind::DiscTop: return 2;
    case GenKind::CycleGen: return 3;
    case GenKind::PairGen: return 10 + stage;
    case GenKind::Antifield: return 1000000 + stage;
  }
  return 0;
}

const std::string& GenId::name() const { return label ? *label : empty_string(); }
const std::string& GenId::payload_str() const { return payload ? *payload : empty_string(); }

std::strong_ordering operator<=>(const GenId& a, const GenId& b) {
  if (auto c = a.degree <=> b.degree; c != 0) return c;
  if (auto c = a.kind_rank() <=> b.kind_rank(); c != 0) return c;
  return a.ordinal <=> b.ordinal;
}

GenId make_generator(GenKind kind, int degree, std::string_view label, std::string_view payload,
                     int stage) {
  if (degree < 0) throw PreconditionError("generator degree must be non-negative", std::string(label));
  GenId g;
  g.kind = kind;
  g.stage = stage;
  g.degree = degree;
  g.ordinal = g_next_ordinal.fetch_add(1);
  g.payload = intern(payload);
  g.label = intern(label);
  return g;
}

std::vector<GenId> canonical_well_order(std::vector<GenId> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

// ---------------------------------------------------------------- ModElem

ModElem ModElem::generator(int dim, const GenId& g) {
  ModElem e(dim);
  e.add(g, WeylOp::identity(dim));
  return e;
}

void ModElem::add(const GenId& g, const WeylOp& op) {
  if (op.dim() != dim_) throw DimensionMismatch("module element dimension mismatch");
  if (op.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, op);
  if (!inserted) {
    it->second += op;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ModElem& ModElem::operator+=(const ModElem& o) {
  for (const auto& [g, op] : o.terms_) add(g, op);
  return *this;
}

ModElem& ModElem::operator-=(const ModElem& o) {
  for (const auto& [g, op] : o.terms_) {
    WeylOp neg = op;
    neg *= Scalar(-1);
    add(g, neg);
  }
  return *this;
}

ModElem ModElem::act(const WeylOp& op) const {
  ModElem r(dim_);
  for (const auto& [g, e] : terms_) r.add(g, weyl_mul(op, e));
  return r;
}

std::string ModElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, op] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + op.to_string() + ")*" + g.name();
  }
  return out;
}

// ---------------------------------------------------------------- FreeDgModule

const ModElem& FreeDgModule::d(const GenId& g) const {
  auto it = d_.find(g);
  if (it == d_.end()) throw PreconditionError("generator not in module", g.name());
  return it->second;
}

ModElem FreeDgModule::apply_d(const ModElem& e) const {
  ModElem r(dim_);
  for (const auto& [g, op] : e.terms()) r += d(g).act(op);
  return r;
}

FreeDgModule extend_differential(int dim, const std::vector<GenId>& gens,
                                 const std::map<GenId, ModElem>& assignment) {
  FreeDgModule m(dim);
  m.gens_ = canonical_well_order(gens);
  for (const auto& g : m.gens_) {
    auto it = assignment.find(g);
    ModElem v = it == assignment.end() ? ModElem(dim) : it->second;
    for (const auto& [h, op] : v.terms()) {
      if (std::find(m.gens_.begin(), m.gens_.end(), h) == m.gens_.end())
        throw PreconditionError("differential refers to a foreign generator", g.name(), v.to_string());
      if (h.degree != g.degree - 1)
        throw PreconditionError("differential must lower degree by one", g.name(), v.to_string());
    }
    m.d_[g] = v;
  }
  for (const auto& [g, v] : assignment)
    if (!m.d_.count(g)) throw PreconditionError("assignment for unknown generator", g.name());
  for (const auto& g : m.gens_) {
    ModElem dd = m.apply_d(m.d_[g]);
    if (!dd.is_zero()) throw PreconditionError("d^2 is not zero", g.name(), dd.to_string());
  }
  return m;
}

FreeDgModule direct_sum(const FreeDgModule& a, const FreeDgModule& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("direct sum of modules over different bases");
  std::vector<GenId> gens = a.generators();
  std::map<GenId, ModElem> d;
  for (const auto& g : a.generators()) d[g] = a.d(g);
  for (const auto& g : b.generators()) {
    if (d.count(g)) throw PreconditionError("direct sum summands share a generator", g.name());
    gens.push_back(g);
    d[g] = b.d(g);
  }
  return extend_differential(a.dim(), gens, d);
}

FreeDgModule disc(int dim, int n, std::string_view label) {
  if (n < 0) throw PreconditionError("disc degree must be non-negative");
  if (n == 0) return sphere(dim, 0, label);
  GenId top = make_generator(GenKind::DiscTop, n, label);
  GenId bottom = make_generator(GenKind::DiscBottom, n - 1, "s" + std::string(label));
  std::map<GenId, ModElem> d;
  d[top] = ModElem::generator(dim, bottom);
  return extend_differential(dim, {top, bottom}, d);
}

FreeDgModule sphere(int dim, int n, std::string_view label) {
  if (n < -1) throw PreconditionError("sphere degree must be at least -1");
  if (n == -1) return FreeDgModule(dim);
  GenId g = make_generator(GenKind::Sphere, n, label);
  return extend_differential(dim, {g}, {});
}

ModElem ModuleMap::apply(const ModElem& e) const {
  ModElem r(target.dim());
  for (const auto& [g, op] : e.terms()) {
    auto it = assignment.find(g);
    if (it == assignment.end()) throw PreconditionError("module map has no value on generator", g.name());
    r += it->second.act(op);
  }
  return r;
}

}  // namespace dgda
