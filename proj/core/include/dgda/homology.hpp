#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dgda/dga.hpp"
#include "dgda/linalg.hpp"

namespace dgda {

struct Truncation {
  int N = 3;            // max homological degree
  int poly_degree = 0;  // max total degree in the base variables
  int order = 0;        // max decoration (jet) order per factor
  int word_length = 3;  // max number of factors in a monomial
  int probe_margin = 1;

  Truncation enlarged(int by) const;
  bool operator==(const Truncation&) const = default;
};

// Basis vector x^x * m of a window slice; part separates cone summands.
struct BasisKey {
  int part = 0;
  MultiIndex x;
  Monomial m;

  auto operator<=>(const BasisKey&) const = default;
  bool operator==(const BasisKey&) const = default;
};
using LinComb = std::map<BasisKey, Scalar>;

LinComb to_lincomb(const AlgElem& a, int part = 0);
AlgElem to_algelem(const LinComb& v, int dim, int part = 0);
std::string to_string(const BasisKey& k);

// Normal-form monomials of degree n within the bounds (no poly factor).
std::vector<Monomial> enumerate_monomials(const Dga& a, int n, const Truncation& t);
std::vector<BasisKey> enumerate_basis(const Dga& a, int n, const Truncation& t);

class LinearComplex {
 public:
  virtual ~LinearComplex() = default;
  virtual int dim() const = 0;
  virtual std::vector<BasisKey> basis(int n, const Truncation& t) const = 0;
  virtual LinComb d(const BasisKey& k) const = 0;
};

class DgaComplex : public LinearComplex {
 public:
  explicit DgaComplex(DgaPtr a) : a_(std::move(a)) {}
  int dim() const override { return a_->dim(); }
  std::vector<BasisKey> basis(int n, const Truncation& t) const override;
  LinComb d(const BasisKey& k) const override;

 private:
  DgaPtr a_;
};

// Cone_n = X_{n-1} (part 0) + Y_n (part 1), d(x, y) = (-dx, f x + dy).
class ConeComplex : public LinearComplex {
 public:
  explicit ConeComplex(DgaMorphism f) : f_(std::move(f)) {}
  int dim() const override { return f_.source()->dim(); }
  std::vector<BasisKey> basis(int n, const Truncation& t) const override;
  LinComb d(const BasisKey& k) const override;

 private:
  DgaMorphism f_;
};

// O-basis x^a d^b v of a free D-module.
class ModuleComplex : public LinearComplex {
 public:
  explicit ModuleComplex(FreeDgModule m) : m_(std::move(m)) {}
  int dim() const override { return m_.dim(); }
  std::vector<BasisKey> basis(int n, const Truncation& t) const override;
  LinComb d(const BasisKey& k) const override;
  static std::vector<BasisKey> generator_keys(const GenId& g, int dim, const Truncation& t);
  static LinComb expand(const ModElem& e);

 private:
  FreeDgModule m_;
};

struct QMat {
  std::vector<BasisKey> rows;      // window basis in degree n-1
  std::vector<BasisKey> cols;      // window basis in degree n
  std::vector<BasisKey> outside;   // rows outside the window, indexed after `rows`
  std::vector<RatVec> columns;
  std::vector<bool> leaky;         // column image leaves the window

  bool any_leaky() const;
  Scalar at(std::size_t row, std::size_t col) const;
};

QMat matrix_of_d(const LinearComplex& c, int n, const Truncation& t);
QMat matrix_of_d(const DgaPtr& a, int n, const Truncation& t);

struct DegreeReport {
  int degree = 0;
  std::size_t slice = 0;
  std::size_t ker = 0;
  std::size_t im = 0;  // boundaries inside the window
  std::size_t h = 0;
  bool flagged = false;
  std::vector<LinComb> representatives;
};

struct HomologyReport {
  Truncation window;
  std::vector<DegreeReport> degrees;

  bool any_flagged() const;
  const DegreeReport& at(int n) const;
  // All H_n = 0 for n in [from, to], ignoring flagged degrees only when h = 0.
  bool acyclic_between(int from, int to) const;
};

struct HomologyOptions {
  bool representatives = false;
  bool parallel = true;
};

HomologyReport homology(const LinearComplex& c, const Truncation& t, const HomologyOptions& opt = {});
HomologyReport homology(const DgaPtr& a, const Truncation& t, const HomologyOptions& opt = {});

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct FibrationReport {
  bool pass = true;
  std::vector<int> failing_degrees;
};
FibrationReport is_fibration(const DgaMorphism& f, const Truncation& t);

struct WeakEquivalenceReport {
  Verdict verdict = Verdict::Pass;
  HomologyReport cone;
  std::vector<int> failing_degrees;
  std::vector<int> inconclusive_degrees;
};
// Cone homology must vanish in degrees 0..N-1.
WeakEquivalenceReport is_weak_equivalence(const DgaMorphism& f, const Truncation& t);

struct CofibrationReport {
  bool pass = true;
  bool chain_map = true;
  bool injective = true;
  bool free_cokernel = true;
  std::vector<GenId> complement;
};
CofibrationReport is_cofibration_module(const ModuleMap& f, const Truncation& t);

}  // namespace dgda
