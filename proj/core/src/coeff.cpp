#include "dgda/coeff.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dgda/errors.hpp"

namespace dgda {

namespace {

void check_dim(int a, int b) {
  if (a != b)
    throw DimensionMismatch("base dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
}

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// n (n-1) ... (n-k+1)
mpz_class falling(int n, int k) {
  mpz_class r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

void for_each_box(const MultiIndex& bound, const std::function<void(const MultiIndex&)>& f) {
  MultiIndex k(bound.size(), 0);
  while (true) {
    f(k);
    std::size_t i = 0;
    while (i < k.size()) {
      if (k[i] < bound[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
      ++i;
    }
    if (i == k.size()) return;
  }
}

std::string monomial_string(const MultiIndex& a, const std::vector<std::string>& names,
                            const char* fallback) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < names.size() ? names[i] : std::string(fallback) + std::to_string(i + 1);
    if (a[i] > 1) out += "^" + std::to_string(a[i]);
  }
  return out;
}

std::string join_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, mono] : terms) {
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += scalar_to_string(mag);
    } else {
      if (mag != 1) out += scalar_to_string(mag) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace

int total_degree(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

MultiIndex index_add(const MultiIndex& a, const MultiIndex& b) {
  check_dim(static_cast<int>(a.size()), static_cast<int>(b.size()));
  MultiIndex r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

MultiIndex index_sub(const MultiIndex& a, const MultiIndex& b) {
  check_dim(static_cast<int>(a.size()), static_cast<int>(b.size()));
  MultiIndex r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool index_dominates(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

MultiIndex unit_index(int dim, int k) {
  MultiIndex r(dim, 0);
  r.at(k) = 1;
  return r;
}

MultiIndex zero_index(int dim) { return MultiIndex(dim, 0); }

std::vector<MultiIndex> indices_up_to(int dim, int max_deg) {
  std::vector<MultiIndex> out;
  if (max_deg < 0) return out;
  for (int deg = 0; deg <= max_deg; ++deg) {
    std::vector<MultiIndex> layer;
    MultiIndex cur(dim, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == dim - 1 || dim == 0) {
        if (dim == 0) {
          if (left == 0) layer.push_back(cur);
          return;
        }
        cur[pos] = left;
        layer.push_back(cur);
        cur[pos] = 0;
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[pos] = v;
        rec(pos + 1, left - v);
      }
      cur[pos] = 0;
    };
    rec(0, deg);
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::string scalar_to_string(const Scalar& c) {
  Scalar v = c;
  v.canonicalize();
  return v.get_str();
}

std::string index_to_string(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s;
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(int dim, const Scalar& c) { return monomial(dim, zero_index(dim), c); }

Poly Poly::monomial(int dim, const MultiIndex& a, const Scalar& c) {
  check_dim(dim, static_cast<int>(a.size()));
  Poly p(dim);
  p.add_term(a, c);
  return p;
}

Poly Poly::variable(int dim, int k) { return monomial(dim, unit_index(dim, k)); }

int Poly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
  return d;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Scalar Poly::constant_term() const {
  auto it = terms_.find(zero_index(dim_));
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Poly::add_term(const MultiIndex& a, const Scalar& c) {
  check_dim(dim_, static_cast<int>(a.size()));
  if (c == 0) return;
  Scalar v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(a, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_dim(dim_, o.dim_);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_dim(dim_, o.dim_);
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Scalar k = c;
  k.canonicalize();
  for (auto& [a, v] : terms_) v *= k;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  r *= Scalar(-1);
  return r;
}

Poly Poly::derivative(int k) const {
  Poly r(dim_);
  for (const auto& [a, c] : terms_) {
    if (a.at(k) == 0) continue;
    MultiIndex b = a;
    --b[k];
    r.add_term(b, c * a[k]);
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (const auto& [a, c] : terms_) parts.emplace_back(c, monomial_string(a, names, "x"));
  return join_terms(parts);
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, const Scalar& c) { return a *= c; }

Poly poly_mul(const Poly& a, const Poly& b) {
  check_dim(a.dim(), b.dim());
  Poly r(a.dim());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term(index_add(ea, eb), ca * cb);
  return r;
}

// ---------------------------------------------------------------- WeylOp

WeylOp WeylOp::identity(int dim) { return term(dim, zero_index(dim), zero_index(dim)); }

WeylOp WeylOp::term(int dim, const MultiIndex& x, const MultiIndex& d, const Scalar& c) {
  WeylOp r(dim);
  r.add_term(x, d, c);
  return r;
}

WeylOp WeylOp::x(int dim, int k) { return term(dim, unit_index(dim, k), zero_index(dim)); }

WeylOp WeylOp::partial(int dim, int k) { return term(dim, zero_index(dim), unit_index(dim, k)); }

WeylOp WeylOp::from_poly(const Poly& f) {
  WeylOp r(f.dim());
  for (const auto& [a, c] : f.terms()) r.add_term(a, zero_index(f.dim()), c);
  return r;
}

int WeylOp::order() const {
  int o = -1;
  for (const auto& [k, c] : terms_) o = std::max(o, total_degree(k.second));
  return o;
}

void WeylOp::add_term(const MultiIndex& x, const MultiIndex& d, const Scalar& c) {
  check_dim(dim_, static_cast<int>(x.size()));
  check_dim(dim_, static_cast<int>(d.size()));
  if (c == 0) return;
  Scalar v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(Key{x, d}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  check_dim(dim_, o.dim_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  check_dim(dim_, o.dim_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

WeylOp& WeylOp::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Scalar s = c;
  s.canonicalize();
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

std::string WeylOp::to_string() const {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (const auto& [k, c] : terms_) {
    std::string xs = monomial_string(k.first, {}, "x");
    std::string ds = monomial_string(k.second, {}, "d");
    std::string mono = xs;
    if (!ds.empty()) mono += (mono.empty() ? "" : "*") + ds;
    parts.emplace_back(c, mono);
  }
  return join_terms(parts);
}

WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }

WeylOp weyl_mul(const WeylOp& a, const WeylOp& b) {
  check_dim(a.dim(), b.dim());
  const int p = a.dim();
  WeylOp r(p);
  for (const auto& [ka, ca] : a.terms()) {
    const auto& [xa, da] = ka;
    for (const auto& [kb, cb] : b.terms()) {
      const auto& [xb, db] = kb;
      // d^da x^xb = sum_k prod_i C(da_i,k_i) xb_i!/(xb_i-k_i)! x^(xb-k) d^(da-k)
      MultiIndex bound(p);
      for (int i = 0; i < p; ++i) bound[i] = std::min(da[i], xb[i]);
      for_each_box(bound, [&](const MultiIndex& k) {
        mpz_class w = 1;
        for (int i = 0; i < p; ++i) w *= binomial(da[i], k[i]) * falling(xb[i], k[i]);
        MultiIndex xs = index_add(xa, index_sub(xb, k));
        MultiIndex ds = index_add(index_sub(da, k), db);
        r.add_term(xs, ds, ca * cb * Scalar(w));
      });
    }
  }
  return r;
}

Poly weyl_apply(const WeylOp& op, const Poly& f) {
  check_dim(op.dim(), f.dim());
  Poly r(f.dim());
  for (const auto& [k, c] : op.terms()) {
    const auto& [xs, ds] = k;
    for (const auto& [e, cf] : f.terms()) {
      if (!index_dominates(e, ds)) continue;
      mpz_class w = 1;
      for (std::size_t i = 0; i < e.size(); ++i) w *= falling(e[i], ds[i]);
      r.add_term(index_add(xs, index_sub(e, ds)), c * cf * Scalar(w));
    }
  }
  return r;
}

}  // namespace dgda
