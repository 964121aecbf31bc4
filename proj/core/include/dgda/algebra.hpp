#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgda/coeff.hpp"
#include "dgda/generators.hpp"

namespace dgda {

// O-basis vector d^deco . gen of the free D-module on gen.
struct OGen {
  GenId gen;
  MultiIndex deco;

  int degree() const { return gen.degree; }
  bool odd() const { return gen.odd(); }
  int order() const { return total_degree(deco); }
  bool operator==(const OGen& o) const { return gen == o.gen && deco == o.deco; }
};

std::strong_ordering operator<=>(const OGen& a, const OGen& b);

// Sorted word of O-basis vectors; odd factors occur at most once.
class Monomial {
 public:
  Monomial() = default;

  const std::vector<OGen>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  int degree() const;
  bool odd() const { return (degree() & 1) != 0; }

  // Sorts an arbitrary word; returns 0 when an odd factor repeats.
  static std::pair<int, Monomial> normalize(std::vector<OGen> word);
  static Monomial single(const OGen& o);

  bool contains(const Monomial& sub) const;
  Monomial without(const Monomial& sub) const;

  auto operator<=>(const Monomial& o) const = default;
  bool operator==(const Monomial& o) const = default;

 private:
  std::vector<OGen> factors_;
};

// Sign and product of two sorted monomials.
std::pair<int, Monomial> monomial_product(const Monomial& a, const Monomial& b);

// Multiset extension of the OGen order; used to certify rewrite termination.
bool multiset_less(const Monomial& a, const Monomial& b);

class AlgElem {
 public:
  using Terms = std::map<Monomial, Poly>;

  AlgElem() = default;
  explicit AlgElem(int dim) : dim_(dim) {}

  static AlgElem one(int dim);
  static AlgElem from_poly(const Poly& f);
  static AlgElem scalar(int dim, const Scalar& c);
  static AlgElem generator(int dim, const GenId& g, const MultiIndex& deco = {});
  static AlgElem from_ogen(int dim, const OGen& o);
  static AlgElem term(const Monomial& m, const Poly& coeff);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  // Degree of a homogeneous element; nullopt for zero. Throws if inhomogeneous.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  bool is_scalar() const;
  int max_order() const;  // largest decoration order, -1 if none
  int poly_degree() const;

  void add_term(const Monomial& m, const Poly& coeff);
  AlgElem& operator+=(const AlgElem& o);
  AlgElem& operator-=(const AlgElem& o);
  AlgElem& operator*=(const Scalar& c);
  AlgElem& operator*=(const Poly& f);
  AlgElem operator-() const;

  // Every generator appearing, in canonical order.
  std::vector<GenId> generators_used() const;
  bool uses_only(const std::function<bool(const GenId&)>& pred) const;

  bool operator==(const AlgElem& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const AlgElem& o) const { return !(*this == o); }
  bool operator<(const AlgElem& o) const { return terms_ < o.terms_; }

 private:
  int dim_ = 0;
  Terms terms_;
};

AlgElem operator+(AlgElem a, const AlgElem& b);
AlgElem operator-(AlgElem a, const AlgElem& b);
AlgElem operator*(AlgElem a, const Scalar& c);

// Graded-commutative product in the free algebra (no relations).
AlgElem free_mul(const AlgElem& a, const AlgElem& b);

// Vector field d/dx_k acting as a degree-0 derivation; filter selects which
// generators receive the decoration shift (all when empty).
AlgElem theta_partial(int k, const AlgElem& a,
                      const std::function<bool(const GenId&)>& acts_on = nullptr);
// Free action of a Weyl operator.
AlgElem theta_free(const WeylOp& op, const AlgElem& a);

// Printing with base-variable names; generator labels come from GenId.
struct PrintNames {
  std::vector<std::string> vars;
};
std::string ogen_to_string(const OGen& o);
std::string to_string(const Monomial& m);
std::string to_string(const AlgElem& a, const PrintNames& names = {});

// Deterministic byte serialization used for payload interning and golden tests.
std::string serialize(const AlgElem& a);
std::string serialize(const OGen& o);

}  // namespace dgda
