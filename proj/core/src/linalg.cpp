#include "dgda/linalg.hpp"

#include <algorithm>

namespace dgda {

namespace {

// a*x - b*y
IntVec combine(const mpz_class& a, const IntVec& x, const mpz_class& b, const IntVec& y) {
  IntVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

mpz_class content(const IntVec& v, mpz_class g = 0) {
  for (const auto& [i, c] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void divide(IntVec& v, const mpz_class& g) {
  for (auto& [i, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

RatVec make_ratvec(std::map<std::size_t, Scalar> entries) {
  RatVec v;
  for (auto& [i, c] : entries)
    if (c != 0) v.emplace_back(i, std::move(c));
  return v;
}

namespace {

std::pair<IntVec, Scalar> primitive_with_scale(const RatVec& v) {
  mpz_class l = 1;
  for (const auto& [i, c] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) {
    mpz_class num = c.get_num() * (l / c.get_den());
    if (num != 0) out.emplace_back(i, std::move(num));
  }
  mpz_class g = content(out);
  if (g > 1) divide(out, g);
  Scalar scale(l, g > 1 ? g : mpz_class(1));
  scale.canonicalize();
  if (!out.empty() && out.front().second < 0) {
    for (auto& [i, c] : out) c = -c;
    scale = -scale;
  }
  return {std::move(out), scale};
}

}  // namespace

IntVec primitive_integer(const RatVec& v) { return primitive_with_scale(v).first; }

RatVec to_rational(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) out.emplace_back(i, Scalar(c));
  return out;
}

void Eliminator::reduce(Row& row, bool history) const {
  while (!row.vec.empty()) {
    auto it = pivots_.find(row.vec.front().first);
    if (it == pivots_.end()) return;
    const Row& piv = it->second;
    mpz_class a = piv.vec.front().second;
    mpz_class b = row.vec.front().second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    row.vec = combine(a, row.vec, b, piv.vec);
    if (history) row.hist = combine(a, row.hist, b, piv.hist);
    mpz_class c = content(row.vec);
    if (history) c = content(row.hist, c);
    if (c > 1) {
      divide(row.vec, c);
      if (history) divide(row.hist, c);
    }
  }
}

bool Eliminator::insert(const RatVec& v) {
  auto [iv, scale] = primitive_with_scale(v);
  bool independent = insert(iv);
  scale_.back() = scale;
  return independent;
}

bool Eliminator::insert(const IntVec& v) {
  scale_.push_back(Scalar(1));
  Row row;
  row.vec = v;
  if (track_) row.hist.emplace_back(count_, 1);
  ++count_;
  reduce(row, track_);
  if (row.vec.empty()) {
    relation_ = std::move(row.hist);
    return false;
  }
  std::size_t lead = row.vec.front().first;
  pivots_.emplace(lead, std::move(row));
  return true;
}

RatVec Eliminator::last_relation() const {
  RatVec out;
  for (const auto& [i, c] : relation_) {
    Scalar x = Scalar(c) * scale_[i];
    x.canonicalize();
    out.emplace_back(i, std::move(x));
  }
  return out;
}

bool Eliminator::in_span(const RatVec& v) const {
  Row row;
  row.vec = primitive_integer(v);
  reduce(row, false);
  return row.vec.empty();
}

std::size_t matrix_rank(const std::vector<RatVec>& columns) {
  Eliminator e;
  for (const auto& c : columns) e.insert(c);
  return e.rank();
}

std::vector<RatVec> kernel_basis(const std::vector<RatVec>& columns) {
  Eliminator e(true);
  std::vector<RatVec> out;
  for (const auto& c : columns)
    if (!e.insert(c)) out.push_back(e.last_relation());
  return out;
}

std::optional<RatVec> solve(const std::vector<RatVec>& columns, const RatVec& y) {
  Eliminator e(true);
  for (const auto& c : columns) e.insert(c);
  if (e.insert(y)) return std::nullopt;
  const RatVec rel = e.last_relation();
  const std::size_t yid = columns.size();
  Scalar ycoef = 0;
  for (const auto& [i, c] : rel)
    if (i == yid) ycoef = c;
  if (ycoef == 0) return std::nullopt;
  RatVec x;
  for (const auto& [i, c] : rel)
    if (i != yid) x.emplace_back(i, -c / ycoef);
  return x;
}

}  // namespace dgda
