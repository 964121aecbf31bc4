#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dgda/algebra.hpp"
#include "dgda/generators.hpp"

namespace dgda {

struct RewriteRule {
  Monomial lhs;
  AlgElem rhs;
};

class Dga;
using DgaPtr = std::shared_ptr<const Dga>;

// Finitely presented differential graded D-algebra: free graded-commutative
// O-algebra on D-generators, modulo monomial-headed rewrite rules.
class Dga {
 public:
  Dga(const Dga&) = delete;
  Dga& operator=(const Dga&) = delete;

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<GenId>& generators() const { return gens_; }
  bool has_generator(const GenId& g) const { return d_.count(g) != 0; }
  const AlgElem& differential(const GenId& g) const;
  const std::vector<RewriteRule>& relations() const { return rules_; }
  const std::map<GenId, int>& order_caps() const { return caps_; }
  std::optional<int> order_cap(const GenId& g) const;

  AlgElem one() const { return AlgElem::one(dim_); }
  AlgElem gen(const GenId& g, const MultiIndex& deco = {}) const;

  AlgElem mul(const AlgElem& a, const AlgElem& b) const;
  AlgElem reduce(const AlgElem& a) const;
  bool is_reducible(const Monomial& m) const;
  AlgElem d(const AlgElem& a) const;
  AlgElem d_ogen(const OGen& o) const;
  AlgElem act(const WeylOp& op, const AlgElem& a) const;
  AlgElem partial(int k, const AlgElem& a) const;

  bool contains(const AlgElem& a) const;
  bool same_generators(const Dga& o) const { return gens_ == o.gens_; }

  // Residue of d^2 on a generator (zero for a valid algebra).
  AlgElem d_squared_residue(const GenId& g) const;

 private:
  friend class DgaBuilder;
  Dga() = default;

  int dim_ = 0;
  std::string name_;
  std::vector<GenId> gens_;
  std::map<GenId, AlgElem> d_;
  std::vector<RewriteRule> rules_;
  std::map<OGen, std::vector<std::size_t>> rule_index_;
  std::map<GenId, int> caps_;

  mutable std::mutex cache_mu_;
  mutable std::map<OGen, AlgElem> d_cache_;
};

class DgaBuilder {
 public:
  explicit DgaBuilder(int dim, std::string name = {});

  int dim() const { return dim_; }
  DgaBuilder& include(const Dga& a);
  DgaBuilder& add_generator(const GenId& g, const AlgElem& d);
  DgaBuilder& add_generator(const GenId& g);
  DgaBuilder& set_differential(const GenId& g, const AlgElem& d);
  DgaBuilder& add_relation(const Monomial& lhs, const AlgElem& rhs);
  DgaBuilder& set_order_cap(const GenId& g, int cap);
  bool has_generator(const GenId& g) const { return d_.count(g) != 0; }

  // With validate, checks degrees, membership, rule termination and
  // d-compatibility, and d^2 = 0 on generators (PreconditionError otherwise).
  DgaPtr build(bool validate = true) const;

 private:
  int dim_;
  std::string name_;
  std::vector<GenId> gens_;
  std::map<GenId, AlgElem> d_;
  std::vector<RewriteRule> rules_;
  std::map<GenId, int> caps_;
};

// Multiplicative, unital, D-linear map determined by generator values.
class DgaMorphism {
 public:
  DgaMorphism() = default;
  DgaMorphism(DgaPtr source, DgaPtr target, std::map<GenId, AlgElem> assignment,
              bool validate = true);

  const DgaPtr& source() const { return source_; }
  const DgaPtr& target() const { return target_; }
  const std::map<GenId, AlgElem>& assignment() const { return assign_; }
  const AlgElem& on_generator(const GenId& g) const;

  AlgElem image(const OGen& o) const;
  AlgElem apply(const AlgElem& a) const;
  // d f(g) - f(d g)
  AlgElem chain_residue(const GenId& g) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<OGen, AlgElem> images;
  };
  DgaPtr source_;
  DgaPtr target_;
  std::map<GenId, AlgElem> assign_;
  std::shared_ptr<Cache> cache_;
};

AlgElem sym_mul(const Dga& ambient, const AlgElem& a, const AlgElem& b);

AlgElem module_to_algebra(const ModElem& e);

DgaPtr free_algebra(const FreeDgModule& v, const std::string& name = "S(V)");
DgaPtr base_algebra(int dim, const std::string& name = "O");
DgaPtr tensor_algebra(const Dga& a, const Dga& b, const std::string& name = {});

DgaMorphism identity_morphism(const DgaPtr& a);
DgaMorphism inclusion_morphism(const DgaPtr& a, const DgaPtr& m);
DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f);
DgaMorphism unit_morphism(const DgaPtr& b);  // O -> B
// chi(a b) = phi(a) psi(b) on the tensor product of the sources.
DgaMorphism product_morphism(const DgaMorphism& phi, const DgaMorphism& psi,
                             DgaPtr source = nullptr);

// T (x) S(V) with d(v) = dvals(v); each value must be a cycle of T.
DgaPtr rsda_extend_differential(const DgaPtr& t, const std::vector<GenId>& new_gens,
                                const std::map<GenId, AlgElem>& dvals,
                                const std::string& name = {});
// Extends p: T -> B over an extension M of T by q(v) = qvals(v).
DgaMorphism rsda_extend_morphism(const DgaMorphism& p, const DgaPtr& m,
                                 const std::map<GenId, AlgElem>& qvals);

// First generator where two morphisms with common source disagree.
std::optional<GenId> first_disagreement(const DgaMorphism& f, const DgaMorphism& g);

}  // namespace dgda
