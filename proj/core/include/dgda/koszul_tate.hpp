#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgda/dga.hpp"
#include "dgda/factorization.hpp"
#include "dgda/homology.hpp"

namespace dgda {

// Fields phi^i over p base variables; jet coordinates phi^i_alpha are the
// decorated generators d^alpha phi^i with |alpha| <= order.
struct JetSpec {
  int dim = 1;
  std::vector<std::string> fields{"phi"};
  int order = 2;
};

DgaPtr jet_algebra(const JetSpec& spec);
// Degree-0 generators of a jet algebra, in canonical order.
std::vector<GenId> jet_fields(const Dga& jets);
AlgElem jet_coordinate(const Dga& jets, std::size_t field, const MultiIndex& alpha);

// D_{x^k} acting on every generator, antifields included. Throws WindowExit
// when a decoration exceeds its generator's order cap.
AlgElem total_derivative(const Dga& a, int k, const AlgElem& f);
AlgElem total_derivative(const Dga& a, const MultiIndex& alpha, const AlgElem& f);

// D^alpha F for all |alpha| <= up_to, graded then lexicographic in alpha.
std::vector<AlgElem> prolong(const Dga& a, const AlgElem& f, int up_to);

// Coefficients G^i_alpha of one identity sum_i,alpha G^i_alpha D^alpha F_i = 0.
struct NoetherIdentity {
  std::vector<std::map<MultiIndex, AlgElem>> coeffs;  // one map per equation
};

AlgElem noether_residue(const Dga& jets, const std::vector<AlgElem>& eqs, const NoetherIdentity& g);

struct KTComplex {
  DgaPtr jets;
  DgaPtr algebra;
  std::vector<AlgElem> equations;
  std::vector<GenId> antifields;  // phi*_i, degree 1
  std::vector<GenId> ghosts;      // C*_j, degree 2
  std::vector<NoetherIdentity> noether;
};

// Classical Koszul complex: one odd generator per element with d = element.
DgaPtr koszul_resolution(const DgaPtr& base, const std::vector<AlgElem>& elems, const std::string& name = "K");

// With validate, a failing Noether identity raises PreconditionError carrying
// the residue; without it the complex is built anyway.
KTComplex koszul_tate(const DgaPtr& jets, const std::vector<AlgElem>& eqs,
                      const std::vector<NoetherIdentity>& noether = {}, bool validate = true);

// Jet algebra modulo the prolonged equations as rewrite rules. Requires each
// prolongation to have a solitary leading jet coordinate.
struct QuotientResult {
  DgaPtr algebra;
  std::string skipped;  // reason when no quotient could be formed
};
QuotientResult jet_quotient(const DgaPtr& jets, const std::vector<AlgElem>& eqs, const std::vector<int>& prolong_orders);

struct KTVerifyReport {
  HomologyReport homology;
  bool compared = false;
  std::string skipped;
  // H_0 of the complex and normal forms of the quotient, per polynomial degree.
  std::vector<std::size_t> h0_slices;
  std::vector<std::size_t> quotient_slices;
  bool h0_matches = false;
};
KTVerifyReport kt_verify(const KTComplex& kt, const Truncation& t);

FactorizationResult kt_as_undercategory_replacement(const DgaPtr& jets, const std::vector<AlgElem>& eqs,
                                                    const EnumerationBudget& budget);

}  // namespace dgda
