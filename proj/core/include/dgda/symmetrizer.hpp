#pragma once

#include <map>
#include <vector>

#include "dgda/algebra.hpp"

namespace dgda {

using TensorWord = std::vector<OGen>;
using TensorElem = std::map<TensorWord, Scalar>;

// sigma . w with the Koszul sign: entry i of the result is w[perm[i]].
std::pair<int, TensorWord> permute_word(const TensorWord& w, const std::vector<int>& perm);

// Graded averaging operator (1/n!) sum_sigma sigma . T.
TensorElem symmetrize(const TensorWord& w);
TensorElem symmetrize(const TensorElem& t);

std::vector<TensorWord> tensor_words(const std::vector<OGen>& basis, int n);
// Rank of the averaging operator on the n-th tensor power.
std::size_t invariants_dimension(const std::vector<OGen>& basis, int n);
// Dimension of the quotient by all T - sigma.T.
std::size_t coinvariants_dimension(const std::vector<OGen>& basis, int n);
// Count of graded-symmetric monomials of length n.
std::size_t symmetric_monomial_count(const std::vector<OGen>& basis, int n);

}  // namespace dgda
