#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dgda/coeff.hpp"

namespace dgda {

// Sphere covers user, base and jet-field generators.
enum class GenKind : std::uint8_t { Sphere, DiscBottom, DiscTop, CycleGen, PairGen, Antifield };

std::string_view kind_name(GenKind k);

// Interned strings have stable addresses for the lifetime of the process.
const std::string* intern(std::string_view s);

struct GenId {
  GenKind kind = GenKind::Sphere;
  int stage = 0;  // PairGen stage, or Antifield level
  int degree = 0;
  std::uint64_t ordinal = 0;
  const std::string* payload = nullptr;
  const std::string* label = nullptr;

  bool odd() const { return (degree & 1) != 0; }
  int kind_rank() const;
  const std::string& name() const;
  const std::string& payload_str() const;

  bool operator==(const GenId& o) const {
    return ordinal == o.ordinal && kind == o.kind && stage == o.stage && degree == o.degree &&
           payload == o.payload && label == o.label;
  }
};

// Canonical well order: degree, kind rank, insertion ordinal.
std::strong_ordering operator<=>(const GenId& a, const GenId& b);

// Allocates a fresh generator with the next global ordinal.
GenId make_generator(GenKind kind, int degree, std::string_view label,
                     std::string_view payload = {}, int stage = 0);

std::vector<GenId> canonical_well_order(std::vector<GenId> gens);

// Element sum D_a v_a of a free D-module.
class ModElem {
 public:
  using Terms = std::map<GenId, WeylOp>;

  ModElem() = default;
  explicit ModElem(int dim) : dim_(dim) {}
  static ModElem generator(int dim, const GenId& g);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  void add(const GenId& g, const WeylOp& op);
  ModElem& operator+=(const ModElem& o);
  ModElem& operator-=(const ModElem& o);
  // Left multiplication by a differential operator.
  ModElem act(const WeylOp& op) const;

  bool operator==(const ModElem& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  int dim_ = 0;
  Terms terms_;
};

class FreeDgModule {
 public:
  FreeDgModule() = default;
  explicit FreeDgModule(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<GenId>& generators() const { return gens_; }
  const ModElem& d(const GenId& g) const;
  // D-linear extension of the differential.
  ModElem apply_d(const ModElem& e) const;
  bool contains(const GenId& g) const { return d_.count(g) != 0; }

  friend FreeDgModule extend_differential(int dim, const std::vector<GenId>& gens,
                                          const std::map<GenId, ModElem>& assignment);

 private:
  int dim_ = 0;
  std::vector<GenId> gens_;
  std::map<GenId, ModElem> d_;
};

// Checks degrees and d^2 = 0 on every generator; throws PreconditionError.
FreeDgModule extend_differential(int dim, const std::vector<GenId>& gens,
                                 const std::map<GenId, ModElem>& assignment);

FreeDgModule direct_sum(const FreeDgModule& a, const FreeDgModule& b);

FreeDgModule disc(int dim, int n, std::string_view label = "I");
FreeDgModule sphere(int dim, int n, std::string_view label = "S");

// Chain map between free modules given on generators.
struct ModuleMap {
  FreeDgModule source;
  FreeDgModule target;
  std::map<GenId, ModElem> assignment;

  ModElem apply(const ModElem& e) const;
};

}  // namespace dgda
