#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgda {

using Scalar = mpq_class;
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);
MultiIndex index_add(const MultiIndex& a, const MultiIndex& b);
MultiIndex index_sub(const MultiIndex& a, const MultiIndex& b);
bool index_dominates(const MultiIndex& a, const MultiIndex& b);  // a >= b componentwise
MultiIndex unit_index(int dim, int k);
MultiIndex zero_index(int dim);
// All multi-indices of length dim with total degree <= max_deg, graded then lex.
std::vector<MultiIndex> indices_up_to(int dim, int max_deg);

std::string scalar_to_string(const Scalar& c);
std::string index_to_string(const MultiIndex& a);

// Polynomials in O = Q[x_1..x_p].
class Poly {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  Poly() = default;
  explicit Poly(int dim) : dim_(dim) {}

  static Poly constant(int dim, const Scalar& c);
  static Poly monomial(int dim, const MultiIndex& a, const Scalar& c = 1);
  static Poly variable(int dim, int k);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_constant() const;
  Scalar constant_term() const;

  void add_term(const MultiIndex& a, const Scalar& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  Poly operator-() const;

  Poly derivative(int k) const;

  bool operator==(const Poly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const { return terms_ < o.terms_; }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int dim_ = 0;
  Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(Poly a, const Scalar& c);
Poly poly_mul(const Poly& a, const Poly& b);
inline Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

// Normal-ordered Weyl algebra element: sum of c * x^alpha d^beta.
class WeylOp {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, Scalar>;

  WeylOp() = default;
  explicit WeylOp(int dim) : dim_(dim) {}

  static WeylOp identity(int dim);
  static WeylOp term(int dim, const MultiIndex& x, const MultiIndex& d, const Scalar& c = 1);
  static WeylOp x(int dim, int k);
  static WeylOp partial(int dim, int k);
  static WeylOp from_poly(const Poly& f);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  int order() const;  // max |beta|, -1 for zero

  void add_term(const MultiIndex& x, const MultiIndex& d, const Scalar& c);

  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  WeylOp& operator*=(const Scalar& c);

  bool operator==(const WeylOp& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const WeylOp& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  int dim_ = 0;
  Terms terms_;
};

WeylOp operator+(WeylOp a, const WeylOp& b);
WeylOp operator-(WeylOp a, const WeylOp& b);
WeylOp weyl_mul(const WeylOp& a, const WeylOp& b);
inline WeylOp operator*(const WeylOp& a, const WeylOp& b) { return weyl_mul(a, b); }
Poly weyl_apply(const WeylOp& op, const Poly& f);

}  // namespace dgda
