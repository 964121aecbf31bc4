#include "dgda/symmetrizer.hpp"

#include <algorithm>
#include <numeric>

#include "dgda/linalg.hpp"

namespace dgda {

namespace {

void accumulate(TensorElem& t, const TensorWord& w, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

template <class F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do f(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
}

RatVec as_vector(const TensorElem& t, const std::map<TensorWord, std::size_t>& index) {
  std::map<std::size_t, Scalar> entries;
  for (const auto& [w, c] : t) entries[index.at(w)] += c;
  return make_ratvec(std::move(entries));
}

}  // namespace

std::pair<int, TensorWord> permute_word(const TensorWord& w, const std::vector<int>& perm) {
  TensorWord out(w.size());
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out[i] = w[perm[i]];
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && w[perm[i]].odd() && w[perm[j]].odd()) ++inversions;
  }
  return {(inversions & 1) ? -1 : 1, std::move(out)};
}

TensorElem symmetrize(const TensorWord& w) {
  TensorElem out;
  const int n = static_cast<int>(w.size());
  mpz_class fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  Scalar weight(mpz_class(1), fact);
  for_each_permutation(n, [&](const std::vector<int>& perm) {
    auto [sign, pw] = permute_word(w, perm);
    accumulate(out, pw, sign > 0 ? weight : Scalar(-weight));
  });
  return out;
}

TensorElem symmetrize(const TensorElem& t) {
  TensorElem out;
  for (const auto& [w, c] : t)
    for (const auto& [sw, sc] : symmetrize(w)) accumulate(out, sw, c * sc);
  return out;
}

std::vector<TensorWord> tensor_words(const std::vector<OGen>& basis, int n) {
  std::vector<TensorWord> out{TensorWord{}};
  for (int k = 0; k < n; ++k) {
    std::vector<TensorWord> next;
    for (const auto& w : out)
      for (const auto& b : basis) {
        TensorWord nw = w;
        nw.push_back(b);
        next.push_back(std::move(nw));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t invariants_dimension(const std::vector<OGen>& basis, int n) {
  auto words = tensor_words(basis, n);
  std::map<TensorWord, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  Eliminator e;
  for (const auto& w : words) e.insert(as_vector(symmetrize(w), index));
  return e.rank();
}

std::size_t coinvariants_dimension(const std::vector<OGen>& basis, int n) {
  auto words = tensor_words(basis, n);
  std::map<TensorWord, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  Eliminator e;
  for (const auto& w : words) {
    for_each_permutation(n, [&](const std::vector<int>& perm) {
      auto [sign, pw] = permute_word(w, perm);
      TensorElem diff;
      accumulate(diff, w, 1);
      accumulate(diff, pw, Scalar(-sign));
      if (!diff.empty()) e.insert(as_vector(diff, index));
    });
  }
  return words.size() - e.rank();
}

std::size_t symmetric_monomial_count(const std::vector<OGen>& basis, int n) {
  std::vector<OGen> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t start, int left, bool last_odd_used, std::size_t last) -> void {
    if (left == 0) {
      ++count;
      return;
    }
    for (std::size_t i = start; i < sorted.size(); ++i) {
      if (sorted[i].odd() && last_odd_used && i == last) continue;
      self(self, i, left - 1, sorted[i].odd(), i);
    }
  };
  rec(rec, 0, n, false, sorted.size());
  return count;
}

}  // namespace dgda
