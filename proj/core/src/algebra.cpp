#include "dgda/algebra.hpp"

#include <algorithm>

#include "dgda/errors.hpp"

namespace dgda {

std::strong_ordering operator<=>(const OGen& a, const OGen& b) {
  if (auto c = a.gen <=> b.gen; c != 0) return c;
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return a.deco <=> b.deco;
}

// ---------------------------------------------------------------- Monomial

int Monomial::degree() const {
  int d = 0;
  for (const auto& o : factors_) d += o.degree();
  return d;
}

std::pair<int, Monomial> Monomial::normalize(std::vector<OGen> word) {
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!word[i].odd()) continue;
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      if (!word[j].odd()) continue;
      auto c = word[j] <=> word[i];
      if (c == 0) return {0, Monomial()};
      if (c < 0) ++inversions;
    }
  }
  std::stable_sort(word.begin(), word.end());
  Monomial m;
  m.factors_ = std::move(word);
  return {(inversions & 1) ? -1 : 1, std::move(m)};
}

Monomial Monomial::single(const OGen& o) {
  Monomial m;
  m.factors_.push_back(o);
  return m;
}

bool Monomial::contains(const Monomial& sub) const {
  std::size_t i = 0;
  for (const auto& s : sub.factors_) {
    while (i < factors_.size() && factors_[i] < s) ++i;
    if (i == factors_.size() || !(factors_[i] == s)) return false;
    ++i;
  }
  return true;
}

Monomial Monomial::without(const Monomial& sub) const {
  Monomial r;
  std::size_t j = 0;
  for (const auto& f : factors_) {
    if (j < sub.factors_.size() && f == sub.factors_[j]) {
      ++j;
      continue;
    }
    r.factors_.push_back(f);
  }
  if (j != sub.factors_.size()) throw DgdaError("monomial does not contain the submonomial");
  return r;
}

std::pair<int, Monomial> monomial_product(const Monomial& a, const Monomial& b) {
  std::vector<OGen> word = a.factors();
  word.insert(word.end(), b.factors().begin(), b.factors().end());
  return Monomial::normalize(std::move(word));
}

bool multiset_less(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.rbegin();
  auto ib = fb.rbegin();
  for (; ia != fa.rend() && ib != fb.rend(); ++ia, ++ib) {
    auto c = *ia <=> *ib;
    if (c < 0) return true;
    if (c > 0) return false;
  }
  return ia == fa.rend() && ib != fb.rend();
}

// ---------------------------------------------------------------- AlgElem

AlgElem AlgElem::one(int dim) { return scalar(dim, 1); }

AlgElem AlgElem::from_poly(const Poly& f) {
  AlgElem a(f.dim());
  a.add_term(Monomial(), f);
  return a;
}

AlgElem AlgElem::scalar(int dim, const Scalar& c) { return from_poly(Poly::constant(dim, c)); }

AlgElem AlgElem::generator(int dim, const GenId& g, const MultiIndex& deco) {
  return from_ogen(dim, OGen{g, deco.empty() ? zero_index(dim) : deco});
}

AlgElem AlgElem::from_ogen(int dim, const OGen& o) {
  if (static_cast<int>(o.deco.size()) != dim)
    throw DimensionMismatch("decoration length differs from base dimension");
  AlgElem a(dim);
  a.add_term(Monomial::single(o), Poly::constant(dim, 1));
  return a;
}

AlgElem AlgElem::term(const Monomial& m, const Poly& coeff) {
  AlgElem a(coeff.dim());
  a.add_term(m, coeff);
  return a;
}

std::optional<int> AlgElem::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, f] : terms_)
    if (m.degree() != d) throw PreconditionError("element is not homogeneous", {}, to_string(*this));
  return d;
}

bool AlgElem::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, f] : terms_)
    if (m.degree() != d) return false;
  return true;
}

bool AlgElem::is_scalar() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_constant());
}

int AlgElem::max_order() const {
  int r = -1;
  for (const auto& [m, f] : terms_)
    for (const auto& o : m.factors()) r = std::max(r, o.order());
  return r;
}

int AlgElem::poly_degree() const {
  int r = -1;
  for (const auto& [m, f] : terms_) r = std::max(r, f.degree());
  return r;
}

void AlgElem::add_term(const Monomial& m, const Poly& coeff) {
  if (coeff.dim() != dim_) throw DimensionMismatch("coefficient dimension differs from element");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("adding elements over different bases");
  for (const auto& [m, f] : o.terms_) add_term(m, f);
  return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("subtracting elements over different bases");
  for (const auto& [m, f] : o.terms_) add_term(m, -f);
  return *this;
}

AlgElem& AlgElem::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, f] : terms_) f *= c;
  return *this;
}

AlgElem& AlgElem::operator*=(const Poly& g) {
  Terms old;
  old.swap(terms_);
  for (const auto& [m, f] : old) add_term(m, poly_mul(f, g));
  return *this;
}

AlgElem AlgElem::operator-() const {
  AlgElem r(*this);
  r *= Scalar(-1);
  return r;
}

std::vector<GenId> AlgElem::generators_used() const {
  std::vector<GenId> gens;
  for (const auto& [m, f] : terms_)
    for (const auto& o : m.factors()) gens.push_back(o.gen);
  return canonical_well_order(std::move(gens));
}

bool AlgElem::uses_only(const std::function<bool(const GenId&)>& pred) const {
  for (const auto& [m, f] : terms_)
    for (const auto& o : m.factors())
      if (!pred(o.gen)) return false;
  return true;
}

AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
AlgElem operator*(AlgElem a, const Scalar& c) { return a *= c; }

AlgElem free_mul(const AlgElem& a, const AlgElem& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("multiplying elements over different bases");
  AlgElem r(a.dim());
  for (const auto& [ma, fa] : a.terms()) {
    for (const auto& [mb, fb] : b.terms()) {
      auto [sign, m] = monomial_product(ma, mb);
      if (sign == 0) continue;
      Poly f = poly_mul(fa, fb);
      if (sign < 0) f *= Scalar(-1);
      r.add_term(m, f);
    }
  }
  return r;
}

AlgElem theta_partial(int k, const AlgElem& a, const std::function<bool(const GenId&)>& acts_on) {
  const int p = a.dim();
  if (k < 0 || k >= p) throw DimensionMismatch("vector field index outside base dimension");
  AlgElem r(p);
  for (const auto& [m, f] : a.terms()) {
    Poly df = f.derivative(k);
    if (!df.is_zero()) r.add_term(m, df);
    const auto& fs = m.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (acts_on && !acts_on(fs[i].gen)) continue;
      std::vector<OGen> word = fs;
      ++word[i].deco[k];
      auto [sign, nm] = Monomial::normalize(std::move(word));
      if (sign == 0) continue;
      r.add_term(nm, sign > 0 ? f : -f);
    }
  }
  return r;
}

AlgElem theta_free(const WeylOp& op, const AlgElem& a) {
  if (op.dim() != a.dim()) throw DimensionMismatch("operator and element over different bases");
  AlgElem r(a.dim());
  for (const auto& [key, c] : op.terms()) {
    const auto& [xs, ds] = key;
    AlgElem cur = a;
    for (int k = 0; k < a.dim() && !cur.is_zero(); ++k)
      for (int j = 0; j < ds[k]; ++j) cur = theta_partial(k, cur);
    cur *= Poly::monomial(a.dim(), xs, c);
    r += cur;
  }
  return r;
}

// ---------------------------------------------------------------- printing

std::string ogen_to_string(const OGen& o) {
  std::string s = o.gen.name();
  if (o.order() > 0) s += "[" + index_to_string(o.deco) + "]";
  return s;
}

std::string to_string(const Monomial& m) {
  std::string s;
  for (const auto& o : m.factors()) {
    if (!s.empty()) s += "*";
    s += ogen_to_string(o);
  }
  return s;
}

std::string to_string(const AlgElem& a, const PrintNames& names) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, f] : a.terms()) {
    std::string mono = to_string(m);
    std::string piece;
    bool negative = false;
    if (f.terms().size() == 1) {
      const auto& [e, c] = *f.terms().begin();
      negative = sgn(c) < 0;
      Scalar mag = abs(c);
      std::string xs = Poly::monomial(f.dim(), e).to_string(names.vars);
      if (xs == "1") xs.clear();
      std::vector<std::string> parts;
      if (mag != 1 || (xs.empty() && mono.empty())) parts.push_back(scalar_to_string(mag));
      if (!xs.empty()) parts.push_back(xs);
      if (!mono.empty()) parts.push_back(mono);
      for (std::size_t i = 0; i < parts.size(); ++i) piece += (i ? "*" : "") + parts[i];
    } else {
      piece = "(" + f.to_string(names.vars) + ")";
      if (!mono.empty()) piece += "*" + mono;
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += piece;
    first = false;
  }
  return out;
}

std::string serialize(const OGen& o) {
  return "g" + std::to_string(o.gen.ordinal) + "^" + index_to_string(o.deco);
}

std::string serialize(const AlgElem& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, f] : a.terms()) {
    for (const auto& [e, c] : f.terms()) {
      if (!out.empty()) out += ";";
      out += scalar_to_string(c) + ":" + index_to_string(e) + ":";
      bool first = true;
      for (const auto& o : m.factors()) {
        if (!first) out += ".";
        out += serialize(o);
        first = false;
      }
    }
  }
  return out;
}

}  // namespace dgda
