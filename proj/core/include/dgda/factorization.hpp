#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgda/dga.hpp"
#include "dgda/homology.hpp"

namespace dgda {

// Finite surrogate for the index families of the factorizations. Elements and
// cycles are listed per degree; the window drives default enumeration and the
// search for pairs (sigma, b).
struct EnumerationBudget {
  std::map<int, std::vector<AlgElem>> elements;  // b_n, n >= 1
  std::map<int, std::vector<AlgElem>> cycles;    // beta_n with d beta_n = 0
  int stages = 1;
  Truncation window;
};

// Window monomials of B_n for 1 <= n <= N and window cycles for 0 <= n <= N,
// both without base-variable factors.
EnumerationBudget default_budget(const DgaPtr& b, const Truncation& t, int stages);

struct PairCertificate {
  AlgElem sigma;
  AlgElem witness;  // b with d_B b = q sigma
  GenId generator;
};

struct StageRecord {
  int k = 0;
  DgaPtr algebra;
  DgaMorphism q;
  std::vector<GenId> added;
  std::vector<PairCertificate> pairs;
};

enum class FactorizationKind { TrivCofFib, CofTrivFib, Minimal };
std::string kind_name(FactorizationKind k);

struct FactorizationResult {
  FactorizationKind kind = FactorizationKind::TrivCofFib;
  DgaMorphism phi;
  DgaPtr middle;
  DgaMorphism left;
  DgaMorphism right;
  std::vector<StageRecord> stages;
  // Generator lookup by species, stage and payload.
  std::map<std::string, GenId> index;
  // Indexing element of every disc and cycle generator.
  std::map<GenId, AlgElem> element_of;

  std::optional<GenId> lookup(GenKind kind, int stage, const std::string& payload) const;
};

std::string index_key(GenKind kind, int stage, const std::string& payload);
std::string pair_payload(const AlgElem& sigma, const AlgElem& b);

// Indices of an existing factorization transported along a square, so that
// the new factorization is closed under the functoriality maps.
struct FunctorialSeed {
  const FactorizationResult* source = nullptr;
  DgaMorphism u;  // A -> A'
  DgaMorphism v;  // B -> B'
};

FactorizationResult trivcof_fib(const DgaMorphism& phi, const EnumerationBudget& budget,
                                const FunctorialSeed* seed = nullptr);
FactorizationResult cof_trivfib(const DgaMorphism& phi, const EnumerationBudget& budget,
                                const FunctorialSeed* seed = nullptr);
// One generator per homology class and per new critical cycle; not functorial.
FactorizationResult minimal_variant(const DgaMorphism& phi, const EnumerationBudget& budget);

FactorizationResult cofibrant_replacement(const DgaPtr& b, const EnumerationBudget& budget);

// Composite right o left agrees with phi on every generator of the source.
std::optional<GenId> composition_mismatch(const FactorizationResult& f);

struct PushoutData {
  int n = 0;
  DgaPtr base;       // T
  DgaPtr disc;       // S(D^n)
  DgaPtr result;     // T (x) S(S^n) with d(1_n) = kappa
  GenId new_gen;     // 1_n
  AlgElem kappa;
  DgaMorphism i;     // T -> result
  DgaMorphism j;     // S(D^n) -> result
};

PushoutData pushout_gen_cof(int n, const DgaPtr& t, const AlgElem& kappa);
DgaMorphism pushout_universal(const DgaMorphism& i_prime, const DgaMorphism& j_prime,
                              const PushoutData& data);

struct RsdaReport {
  bool pass = true;
  bool inclusion = true;
  bool well_ordered = true;
  bool lowering = true;
  std::vector<std::string> violations;
};
// With an explicit order, lowering is checked against it instead of the
// canonical order of the new generators.
RsdaReport verify_rsda(const DgaMorphism& iota, const std::vector<GenId>& order = {});

// omega: middle -> middle' with omega j = j' u and q' omega = v q. Throws
// PreconditionError naming the missing index when budgets are not closed.
DgaMorphism functorial_square(const DgaMorphism& u, const DgaMorphism& v,
                              const FactorizationResult& f, const FactorizationResult& f_prime);

}  // namespace dgda
