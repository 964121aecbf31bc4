#include "dgda/homology.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "dgda/errors.hpp"

namespace dgda {

Truncation Truncation::enlarged(int by) const {
  Truncation e = *this;
  e.poly_degree += by;
  e.order += by;
  e.word_length += by;
  return e;
}

LinComb to_lincomb(const AlgElem& a, int part) {
  LinComb v;
  for (const auto& [m, f] : a.terms())
    for (const auto& [e, c] : f.terms()) v[BasisKey{part, e, m}] += c;
  return v;
}

AlgElem to_algelem(const LinComb& v, int dim, int part) {
  AlgElem a(dim);
  for (const auto& [k, c] : v)
    if (k.part == part) a.add_term(k.m, Poly::monomial(dim, k.x, c));
  return a;
}

std::string to_string(const BasisKey& k) {
  std::string xs;
  for (std::size_t i = 0; i < k.x.size(); ++i)
    if (k.x[i]) xs += "x" + std::to_string(i + 1) + (k.x[i] > 1 ? "^" + std::to_string(k.x[i]) : "") + "*";
  std::string ms = to_string(k.m);
  std::string s = xs + (ms.empty() ? "1" : ms);
  if (k.part) s = "[" + std::to_string(k.part) + "]" + s;
  return s;
}

// ---------------------------------------------------------------- enumeration

std::vector<Monomial> enumerate_monomials(const Dga& a, int n, const Truncation& t) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<OGen> ogens;
  for (const auto& g : a.generators()) {
    if (g.degree > n) continue;
    int cap = t.order;
    if (auto c = a.order_cap(g)) cap = std::min(cap, *c);
    if (cap < 0) continue;
    if (a.dim() == 0) {
      ogens.push_back(OGen{g, {}});
    } else {
      for (const auto& beta : indices_up_to(a.dim(), cap)) ogens.push_back(OGen{g, beta});
    }
  }
  std::sort(ogens.begin(), ogens.end());
  int maxdeg = 0;
  for (const auto& o : ogens) maxdeg = std::max(maxdeg, o.degree());
  const int L = t.word_length;

  std::vector<OGen> cur;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      auto [sign, m] = Monomial::normalize(cur);
      if (sign != 0 && !a.is_reducible(m)) out.push_back(std::move(m));
    }
    int room = L - static_cast<int>(cur.size());
    if (room <= 0 || remaining > maxdeg * room) return;
    for (std::size_t j = start; j < ogens.size(); ++j) {
      const OGen& o = ogens[j];
      if (o.degree() > remaining) continue;
      cur.push_back(o);
      self(self, o.odd() ? j + 1 : j, remaining - o.degree());
      cur.pop_back();
    }
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BasisKey> enumerate_basis(const Dga& a, int n, const Truncation& t) {
  std::vector<BasisKey> keys;
  auto monos = enumerate_monomials(a, n, t);
  auto xs = indices_up_to(a.dim(), t.poly_degree);
  keys.reserve(monos.size() * xs.size());
  for (const auto& x : xs)
    for (const auto& m : monos) keys.push_back(BasisKey{0, x, m});
  std::sort(keys.begin(), keys.end());
  return keys;
}

// ---------------------------------------------------------------- complexes

std::vector<BasisKey> DgaComplex::basis(int n, const Truncation& t) const {
  return enumerate_basis(*a_, n, t);
}

LinComb DgaComplex::d(const BasisKey& k) const {
  return to_lincomb(a_->d(AlgElem::term(k.m, Poly::monomial(a_->dim(), k.x))));
}

std::vector<BasisKey> ConeComplex::basis(int n, const Truncation& t) const {
  std::vector<BasisKey> keys;
  if (n >= 1)
    for (auto k : enumerate_basis(*f_.source(), n - 1, t)) {
      k.part = 0;
      keys.push_back(std::move(k));
    }
  for (auto k : enumerate_basis(*f_.target(), n, t)) {
    k.part = 1;
    keys.push_back(std::move(k));
  }
  return keys;
}

LinComb ConeComplex::d(const BasisKey& k) const {
  const int p = dim();
  AlgElem a = AlgElem::term(k.m, Poly::monomial(p, k.x));
  if (k.part == 1) return to_lincomb(f_.target()->d(a), 1);
  LinComb v = to_lincomb(-f_.source()->d(a), 0);
  for (const auto& [key, c] : to_lincomb(f_.apply(a), 1)) v[key] += c;
  return v;
}

std::vector<BasisKey> ModuleComplex::generator_keys(const GenId& g, int dim, const Truncation& t) {
  std::vector<BasisKey> keys;
  auto xs = indices_up_to(dim, t.poly_degree);
  auto ds = dim == 0 ? std::vector<MultiIndex>{MultiIndex{}} : indices_up_to(dim, t.order);
  for (const auto& x : xs)
    for (const auto& b : ds) keys.push_back(BasisKey{0, x, Monomial::single(OGen{g, b})});
  return keys;
}

LinComb ModuleComplex::expand(const ModElem& e) {
  LinComb v;
  for (const auto& [g, op] : e.terms())
    for (const auto& [key, c] : op.terms())
      v[BasisKey{0, key.first, Monomial::single(OGen{g, key.second})}] += c;
  for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
  return v;
}

std::vector<BasisKey> ModuleComplex::basis(int n, const Truncation& t) const {
  std::vector<BasisKey> keys;
  for (const auto& g : m_.generators())
    if (g.degree == n)
      for (auto& k : generator_keys(g, m_.dim(), t)) keys.push_back(std::move(k));
  std::sort(keys.begin(), keys.end());
  return keys;
}

LinComb ModuleComplex::d(const BasisKey& k) const {
  const OGen& o = k.m.factors().front();
  ModElem e = ModElem::generator(m_.dim(), o.gen).act(WeylOp::term(m_.dim(), k.x, o.deco));
  return expand(m_.apply_d(e));
}

// ---------------------------------------------------------------- matrices

namespace {

struct Indexer {
  std::map<BasisKey, std::size_t> index;
  std::size_t window = 0;
  std::vector<BasisKey> outside;

  explicit Indexer(const std::vector<BasisKey>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) index.emplace(rows[i], i);
    window = rows.size();
  }
  RatVec vectorize(const LinComb& v) {
    std::map<std::size_t, Scalar> entries;
    for (const auto& [k, c] : v) {
      if (c == 0) continue;
      auto it = index.find(k);
      if (it == index.end()) {
        it = index.emplace(k, window + outside.size()).first;
        outside.push_back(k);
      }
      entries[it->second] += c;
    }
    return make_ratvec(std::move(entries));
  }
};

RatVec outside_part(const RatVec& v, std::size_t window) {
  RatVec r;
  for (const auto& e : v)
    if (e.first >= window) r.push_back(e);
  return r;
}

RatVec inside_part(const RatVec& v, std::size_t window) {
  RatVec r;
  for (const auto& e : v)
    if (e.first < window) r.push_back(e);
  return r;
}

struct RankPair {
  std::size_t full = 0;
  std::size_t out = 0;
};

RankPair rank_pair(const std::vector<RatVec>& cols, std::size_t window) {
  Eliminator full, out;
  for (const auto& c : cols) {
    full.insert(c);
    RatVec o = outside_part(c, window);
    if (!o.empty()) out.insert(o);
  }
  return {full.rank(), out.rank()};
}

}  // namespace

bool QMat::any_leaky() const { return std::find(leaky.begin(), leaky.end(), true) != leaky.end(); }

Scalar QMat::at(std::size_t row, std::size_t col) const {
  for (const auto& [i, c] : columns.at(col))
    if (i == row) return c;
  return 0;
}

QMat matrix_of_d(const LinearComplex& c, int n, const Truncation& t) {
  if (n < 1) throw PreconditionError("matrix_of_d needs degree at least 1");
  QMat q;
  q.rows = c.basis(n - 1, t);
  q.cols = c.basis(n, t);
  Indexer idx(q.rows);
  for (const auto& k : q.cols) {
    RatVec v = idx.vectorize(c.d(k));
    q.leaky.push_back(!outside_part(v, idx.window).empty());
    q.columns.push_back(std::move(v));
  }
  q.outside = idx.outside;
  return q;
}

QMat matrix_of_d(const DgaPtr& a, int n, const Truncation& t) { return matrix_of_d(DgaComplex(a), n, t); }

// ---------------------------------------------------------------- homology

bool HomologyReport::any_flagged() const {
  for (const auto& d : degrees)
    if (d.flagged) return true;
  return false;
}

const DegreeReport& HomologyReport::at(int n) const {
  for (const auto& d : degrees)
    if (d.degree == n) return d;
  throw PreconditionError("degree outside the homology report");
}

bool HomologyReport::acyclic_between(int from, int to) const {
  for (const auto& d : degrees)
    if (d.degree >= from && d.degree <= to && d.h != 0) return false;
  return true;
}

HomologyReport homology(const LinearComplex& c, const Truncation& t, const HomologyOptions& opt) {
  const int N = t.N;
  const Truncation tp = t.enlarged(t.probe_margin);
  const bool probe = t.probe_margin > 0;

  std::vector<std::vector<BasisKey>> bases(N + 2);
  for (int n = 0; n <= N + 1; ++n) bases[n] = c.basis(n, t);

  struct Stage {
    RankPair window;
    RankPair probe;
    std::vector<RatVec> cols;  // D_m on the window basis
    std::size_t rows = 0;
  };

  // D_m for m = 1..N+1, relative to the window basis in degree m-1.
  auto job = [&](int m) {
    Stage s;
    Indexer idx(bases[m - 1]);
    s.rows = idx.window;
    std::map<BasisKey, LinComb> images;
    for (const auto& k : bases[m]) images.emplace(k, c.d(k));
    for (const auto& k : bases[m]) s.cols.push_back(idx.vectorize(images.at(k)));
    s.window = rank_pair(s.cols, idx.window);
    if (probe) {
      std::vector<RatVec> pcols;
      for (const auto& k : c.basis(m, tp)) {
        auto it = images.find(k);
        pcols.push_back(idx.vectorize(it != images.end() ? it->second : c.d(k)));
      }
      s.probe = rank_pair(pcols, idx.window);
    } else {
      s.probe = s.window;
    }
    if (!opt.representatives) s.cols.clear();
    return s;
  };

  std::vector<Stage> stages(N + 2);
  if (opt.parallel) {
    std::vector<std::future<Stage>> futures;
    for (int m = 1; m <= N + 1; ++m) futures.push_back(std::async(std::launch::async, job, m));
    for (int m = 1; m <= N + 1; ++m) stages[m] = futures[m - 1].get();
  } else {
    for (int m = 1; m <= N + 1; ++m) stages[m] = job(m);
  }

  HomologyReport rep;
  rep.window = t;
  for (int n = 0; n <= N; ++n) {
    DegreeReport d;
    d.degree = n;
    d.slice = bases[n].size();
    std::size_t rank_in = n >= 1 ? stages[n].window.full : 0;
    d.ker = d.slice - rank_in;
    d.im = stages[n + 1].window.full - stages[n + 1].window.out;
    std::size_t im_probe = stages[n + 1].probe.full - stages[n + 1].probe.out;
    d.flagged = im_probe > d.im;
    d.h = d.ker - d.im;

    if (opt.representatives && d.h > 0) {
      Eliminator reps;
      const auto& up = stages[n + 1];
      std::vector<RatVec> outs;
      for (const auto& col : up.cols) outs.push_back(outside_part(col, up.rows));
      for (const auto& comb : kernel_basis(outs)) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& [j, cj] : comb)
          for (const auto& [i, v] : inside_part(up.cols[j], up.rows)) acc[i] += cj * v;
        reps.insert(make_ratvec(std::move(acc)));
      }
      std::vector<RatVec> kernel;
      if (n >= 1) {
        kernel = kernel_basis(stages[n].cols);
      } else {
        for (std::size_t i = 0; i < bases[0].size(); ++i) kernel.push_back(RatVec{{i, Scalar(1)}});
      }
      for (const auto& z : kernel) {
        if (!reps.insert(z)) continue;
        LinComb v;
        for (const auto& [i, cz] : z) v[bases[n][i]] = cz;
        d.representatives.push_back(std::move(v));
      }
    }
    rep.degrees.push_back(std::move(d));
  }
  return rep;
}

HomologyReport homology(const DgaPtr& a, const Truncation& t, const HomologyOptions& opt) {
  return homology(DgaComplex(a), t, opt);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

FibrationReport is_fibration(const DgaMorphism& f, const Truncation& t) {
  FibrationReport rep;
  const int p = f.source()->dim();
  for (int n = 1; n <= t.N; ++n) {
    auto target_keys = enumerate_basis(*f.target(), n, t);
    if (target_keys.empty()) continue;
    Indexer idx(target_keys);
    Eliminator e;
    for (const auto& k : enumerate_basis(*f.source(), n, t))
      e.insert(idx.vectorize(to_lincomb(f.apply(AlgElem::term(k.m, Poly::monomial(p, k.x))))));
    bool ok = true;
    for (std::size_t i = 0; i < target_keys.size() && ok; ++i)
      ok = e.in_span(RatVec{{i, Scalar(1)}});
    if (!ok) {
      rep.pass = false;
      rep.failing_degrees.push_back(n);
    }
  }
  return rep;
}

WeakEquivalenceReport is_weak_equivalence(const DgaMorphism& f, const Truncation& t) {
  WeakEquivalenceReport rep;
  if (t.N < 1) return rep;
  Truncation tc = t;
  tc.N = t.N - 1;
  rep.cone = homology(ConeComplex(f), tc);
  for (const auto& d : rep.cone.degrees) {
    if (d.h == 0) continue;
    if (d.flagged)
      rep.inconclusive_degrees.push_back(d.degree);
    else
      rep.failing_degrees.push_back(d.degree);
  }
  if (!rep.failing_degrees.empty())
    rep.verdict = Verdict::Fail;
  else if (!rep.inconclusive_degrees.empty())
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

CofibrationReport is_cofibration_module(const ModuleMap& f, const Truncation& t) {
  CofibrationReport rep;
  const int p = f.target.dim();
  for (const auto& g : f.source.generators()) {
    ModElem lhs = f.apply(f.source.d(g));
    ModElem rhs = f.target.apply_d(f.apply(ModElem::generator(p, g)));
    if (!(lhs == rhs)) rep.chain_map = false;
  }
  ModuleComplex src(f.source), tgt(f.target);
  for (int n = 0; n <= t.N; ++n) {
    auto skeys = src.basis(n, t);
    auto tkeys = tgt.basis(n, t);
    Indexer idx(tkeys);
    Eliminator e;
    for (const auto& k : skeys) {
      const OGen& o = k.m.factors().front();
      ModElem img = f.apply(ModElem::generator(p, o.gen).act(WeylOp::term(p, k.x, o.deco)));
      e.insert(idx.vectorize(ModuleComplex::expand(img)));
    }
    if (e.rank() != skeys.size()) rep.injective = false;
    for (const auto& g : f.target.generators()) {
      if (g.degree != n) continue;
      Eliminator trial = e;
      bool independent = true;
      for (const auto& k : ModuleComplex::generator_keys(g, p, t))
        if (!trial.insert(idx.vectorize(LinComb{{k, Scalar(1)}}))) {
          independent = false;
          break;
        }
      if (independent) {
        e = std::move(trial);
        rep.complement.push_back(g);
      }
    }
    for (std::size_t i = 0; i < tkeys.size(); ++i)
      if (!e.in_span(RatVec{{i, Scalar(1)}})) rep.free_cokernel = false;
  }
  rep.pass = rep.chain_map && rep.injective && rep.free_cokernel;
  return rep;
}

}  // namespace dgda
