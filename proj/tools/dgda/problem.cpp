#include "problem.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "dgda/errors.hpp"

namespace dgda::cli {

namespace {

int get_int(const Json& obj, const std::string& key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + " must be an integer");
  return v.get<int>();
}

bool valid_label(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

std::string as_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(where + " must be an expression string");
}

}  // namespace

void check_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == k;
    if (!ok) throw ParseError("unknown field \"" + k + "\" in " + where);
  }
}

Json load_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Problem::Problem(Json doc, const Overrides& ov) : doc_(std::move(doc)) {
  check_keys(doc_,
             {"description", "dim", "variables", "algebras", "morphisms", "truncation", "budget", "factorize",
              "homology", "koszul", "koszul_tate", "cofibrant", "verify"},
             "problem");
  dim_ = get_int(doc_, "dim", 0, "problem");
  if (dim_ < 0 || dim_ > 8) throw ParseError("dim must be between 0 and 8");
  if (doc_.contains("variables")) {
    const Json& v = doc_.at("variables");
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim_))
      throw ParseError("variables must list one name per base variable");
    for (const auto& n : v) {
      if (!n.is_string() || !valid_label(n.get<std::string>())) throw ParseError("bad variable name");
      print_.vars.push_back(n.get<std::string>());
    }
  }
  if (doc_.contains("truncation")) {
    const Json& t = doc_.at("truncation");
    check_keys(t, {"N", "poly_degree", "order", "word_length", "probe_margin"}, "truncation");
    window_.N = get_int(t, "N", window_.N, "truncation");
    window_.poly_degree = get_int(t, "poly_degree", window_.poly_degree, "truncation");
    window_.order = get_int(t, "order", window_.order, "truncation");
    window_.word_length = get_int(t, "word_length", window_.word_length, "truncation");
    window_.probe_margin = get_int(t, "probe_margin", window_.probe_margin, "truncation");
  }
  if (doc_.contains("budget")) {
    check_keys(doc_.at("budget"), {"stages", "elements", "cycles"}, "budget");
    stages_ = get_int(doc_.at("budget"), "stages", stages_, "budget");
  }
  if (ov.N) window_.N = *ov.N;
  if (ov.poly_degree) window_.poly_degree = *ov.poly_degree;
  if (ov.order) window_.order = *ov.order;
  if (ov.word_length) window_.word_length = *ov.word_length;
  if (ov.stages) stages_ = *ov.stages;
  if (window_.N < 0 || window_.poly_degree < 0 || window_.order < 0 || window_.word_length < 1 ||
      window_.probe_margin < 0 || stages_ < 1)
    throw ParseError("truncation bounds out of range");
  if (dim_ == 0 && (window_.poly_degree != 0 || window_.order != 0))
    throw ParseError("field mode (dim 0) needs poly_degree = order = 0");
}

const Json& Problem::section(const std::string& key) const {
  if (!doc_.contains(key)) throw ParseError("problem has no \"" + key + "\" section");
  return doc_.at(key);
}

std::string Problem::default_morphism() const {
  if (!doc_.contains("morphisms") || doc_.at("morphisms").size() != 1)
    throw ParseError("name the morphism: the problem does not define exactly one");
  return doc_.at("morphisms").begin().key();
}

std::string Problem::default_algebra() const {
  if (!doc_.contains("algebras") || doc_.at("algebras").size() != 1)
    throw ParseError("name the algebra: the problem does not define exactly one");
  return doc_.at("algebras").begin().key();
}

const Scope& Problem::scope_of(const std::string& name) {
  algebra(name);
  return scopes_.at(name);
}

DgaPtr Problem::algebra(const std::string& name, bool validate) {
  if (validate)
    if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
  if (name == "O") {
    Scope s;
    s.dim = dim_;
    s.vars = print_.vars;
    scopes_[name] = s;
    return algebras_[name] = base_algebra(dim_);
  }
  if (!doc_.contains("algebras") || !doc_.at("algebras").contains(name))
    throw ParseError("unknown algebra \"" + name + "\"");
  if (building_.count(name)) throw ParseError("algebra \"" + name + "\" includes itself");
  building_.insert(name);
  const Json& spec = doc_.at("algebras").at(name);
  const std::string where = "algebra " + name;
  check_keys(spec, {"include", "generators", "relations"}, where);

  Scope scope;
  scope.dim = dim_;
  scope.vars = print_.vars;
  DgaBuilder b(dim_, name);
  if (spec.contains("include")) {
    Json inc = spec.at("include");
    if (inc.is_string()) inc = Json::array({inc});
    if (!inc.is_array()) throw ParseError(where + ".include must name algebras");
    for (const auto& n : inc) {
      if (!n.is_string()) throw ParseError(where + ".include must name algebras");
      DgaPtr a = algebra(n.get<std::string>());
      b.include(*a);
      for (const auto& [label, g] : scopes_.at(n.get<std::string>()).gens) {
        auto [it, fresh] = scope.gens.emplace(label, g);
        if (!fresh && !(it->second == g)) throw ParseError(where + ": generator name " + label + " is ambiguous");
      }
    }
  }

  std::vector<std::pair<GenId, Json>> own;
  if (spec.contains("generators")) {
    const Json& gens = spec.at("generators");
    if (!gens.is_array()) throw ParseError(where + ".generators must be a list");
    for (const auto& g : gens) {
      check_keys(g, {"name", "degree", "d", "order_cap"}, where + " generator");
      if (!g.contains("name") || !g.at("name").is_string()) throw ParseError(where + ": generator needs a name");
      std::string label = g.at("name").get<std::string>();
      if (!valid_label(label)) throw ParseError(where + ": bad generator name " + label);
      Scope probe;
      probe.dim = dim_;
      probe.vars = print_.vars;
      bool is_var = true;
      try {
        parse_expr(label, probe);
      } catch (const ParseError&) {
        is_var = false;
      }
      if (is_var) throw ParseError(where + ": generator name " + label + " shadows a base variable");
      if (scope.gens.count(label)) throw ParseError(where + ": duplicate generator " + label);
      if (!g.contains("degree")) throw ParseError(where + ": generator " + label + " needs a degree");
      int deg = get_int(g, "degree", 0, where + " generator");
      if (deg < 0) throw ParseError(where + ": negative degree for " + label);
      GenId id = make_generator(GenKind::Sphere, deg, label);
      scope.gens.emplace(label, id);
      b.add_generator(id);
      if (g.contains("order_cap")) b.set_order_cap(id, get_int(g, "order_cap", 0, where + " generator"));
      own.emplace_back(id, g.contains("d") ? g.at("d") : Json("0"));
    }
  }
  for (const auto& [id, dtext] : own) {
    AlgElem d = parse_expr(as_text(dtext, where + " differential"), scope);
    b.set_differential(id, d);
  }
  if (spec.contains("relations")) {
    const Json& rels = spec.at("relations");
    if (!rels.is_array()) throw ParseError(where + ".relations must be a list");
    for (const auto& r : rels) {
      check_keys(r, {"lhs", "rhs"}, where + " relation");
      if (!r.contains("lhs") || !r.contains("rhs")) throw ParseError(where + ": relation needs lhs and rhs");
      AlgElem lhs = parse_expr(as_text(r.at("lhs"), where + " relation"), scope);
      if (lhs.terms().size() != 1 || lhs.terms().begin()->second != Poly::constant(dim_, 1))
        throw ParseError(where + ": relation lhs must be a single monomial");
      b.add_relation(lhs.terms().begin()->first, parse_expr(as_text(r.at("rhs"), where + " relation"), scope));
    }
  }
  building_.erase(name);
  DgaPtr a = b.build(validate);
  scopes_[name] = scope;
  if (validate) algebras_[name] = a;
  return a;
}

AlgElem Problem::expr_in(const DgaPtr& a, const Scope& base_scope, const Json& text) const {
  Scope s = base_scope;
  s.mul = [a](const AlgElem& x, const AlgElem& y) { return a->mul(x, y); };
  AlgElem e = a->reduce(parse_expr(as_text(text, "expression"), s));
  if (!a->contains(e)) throw ParseError("expression leaves algebra " + a->name());
  return e;
}

AlgElem Problem::expr(const std::string& algebra_name, const Json& text) {
  DgaPtr a = algebra(algebra_name);
  return expr_in(a, scopes_.at(algebra_name), text);
}

DgaMorphism Problem::morphism(const std::string& name) {
  if (!doc_.contains("morphisms") || !doc_.at("morphisms").contains(name))
    throw ParseError("unknown morphism \"" + name + "\"");
  const Json& spec = doc_.at("morphisms").at(name);
  const std::string where = "morphism " + name;
  check_keys(spec, {"source", "target", "images"}, where);
  if (!spec.contains("source") || !spec.contains("target")) throw ParseError(where + " needs source and target");
  std::string src = spec.at("source").get<std::string>();
  std::string tgt = spec.at("target").get<std::string>();
  DgaPtr s = algebra(src);
  DgaPtr t = algebra(tgt);
  std::map<GenId, AlgElem> assign;
  const Scope& ss = scopes_.at(src);
  if (spec.contains("images")) {
    const Json& imgs = spec.at("images");
    if (!imgs.is_object()) throw ParseError(where + ".images must be an object");
    for (const auto& [label, text] : imgs.items()) {
      auto it = ss.gens.find(label);
      if (it == ss.gens.end()) throw ParseError(where + ": " + label + " is not a generator of " + src);
      assign[it->second] = expr(tgt, text);
    }
  }
  for (const auto& g : s->generators()) {
    if (assign.count(g)) continue;
    if (!t->has_generator(g)) throw ParseError(where + ": missing image for " + g.name());
    assign[g] = t->gen(g);
  }
  return DgaMorphism(s, t, assign);
}

EnumerationBudget Problem::budget(const std::string& target) {
  DgaPtr b = algebra(target);
  const Json spec = doc_.contains("budget") ? doc_.at("budget") : Json::object();
  if (!spec.contains("elements") && !spec.contains("cycles")) return default_budget(b, window_, stages_);
  EnumerationBudget out;
  out.stages = stages_;
  out.window = window_;
  auto read = [&](const char* key, std::map<int, std::vector<AlgElem>>& into) {
    if (!spec.contains(key)) return;
    const Json& by_degree = spec.at(key);
    if (!by_degree.is_object()) throw ParseError(std::string("budget.") + key + " must map degrees to lists");
    for (const auto& [deg, list] : by_degree.items()) {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(deg, &used);
        if (used != deg.size()) throw std::invalid_argument(deg);
      } catch (const std::exception&) {
        throw ParseError(std::string("budget.") + key + ": bad degree " + deg);
      }
      if (!list.is_array()) throw ParseError(std::string("budget.") + key + " entries must be lists");
      for (const auto& e : list) into[n].push_back(expr(target, e));
    }
  };
  read("elements", out.elements);
  read("cycles", out.cycles);
  return out;
}

}  // namespace dgda::cli
