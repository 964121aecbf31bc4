#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dgda/coeff.hpp"

namespace dgda {

// Sparse vectors sorted by index, without zero entries.
using IntVec = std::vector<std::pair<std::size_t, mpz_class>>;
using RatVec = std::vector<std::pair<std::size_t, Scalar>>;

RatVec make_ratvec(std::map<std::size_t, Scalar> entries);
// Clears denominators and divides by the content; leading entry made positive.
IntVec primitive_integer(const RatVec& v);
RatVec to_rational(const IntVec& v);

// Incremental fraction-free elimination. Vectors are reduced against pivots
// keyed by their leading index; with history enabled every row remembers its
// integer combination of inserted vectors.
class Eliminator {
 public:
  explicit Eliminator(bool track_history = false) : track_(track_history) {}

  // Returns true when v is independent of everything inserted so far.
  bool insert(const RatVec& v);
  bool insert(const IntVec& v);
  bool in_span(const RatVec& v) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t inserted() const { return count_; }
  // Relation sum c_i v_i = 0 among the inserted vectors (as given) found by
  // the last dependent insert.
  RatVec last_relation() const;

 private:
  struct Row {
    IntVec vec;
    IntVec hist;
  };
  void reduce(Row& row, bool history) const;

  bool track_;
  std::map<std::size_t, Row> pivots_;
  std::size_t count_ = 0;
  std::vector<Scalar> scale_;  // integer row = scale * inserted vector
  IntVec relation_;
};

std::size_t matrix_rank(const std::vector<RatVec>& columns);
// Basis of {c : sum c_i col_i = 0}, one vector per dependent column.
std::vector<RatVec> kernel_basis(const std::vector<RatVec>& columns);
// Some x with sum x_i col_i = y (first in column order), or nullopt.
std::optional<RatVec> solve(const std::vector<RatVec>& columns, const RatVec& y);

}  // namespace dgda
