#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "dgda/errors.hpp"

namespace dgda::cli {

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string str_field(const Json& sec, const std::string& key, const std::string& fallback) {
  if (!sec.contains(key)) return fallback;
  if (!sec.at(key).is_string()) throw ParseError("\"" + key + "\" must be a string");
  return sec.at(key).get<std::string>();
}

std::string morphism_target(Problem& p, const std::string& name) {
  p.morphism(name);
  return p.section("morphisms").at(name).at("target").get<std::string>();
}

FactorizationResult factor(const std::string& mode, const DgaMorphism& phi, const EnumerationBudget& budget,
                           const FunctorialSeed* seed = nullptr) {
  if (mode == "trivcof-fib") return trivcof_fib(phi, budget, seed);
  if (mode == "cof-trivfib") return cof_trivfib(phi, budget, seed);
  if (mode == "minimal") {
    if (seed) throw ParseError("the minimal variant is not functorial");
    return minimal_variant(phi, budget);
  }
  throw ParseError("unknown factorization mode " + mode);
}

void record_stages(const FactorizationResult& f, RunReport& rep) {
  for (const auto& s : f.stages) {
    Json j;
    j["k"] = s.k;
    j["added"] = s.added.size();
    if (s.k > 0) j["pairs"] = s.pairs.size();
    rep.stages.push_back(j);
  }
}

void weq_check(const std::string& name, const DgaMorphism& m, const Truncation& t, RunReport& rep) {
  auto we = is_weak_equivalence(m, t);
  rep.tables.push_back({"H(cone of " + name + ")", we.cone});
  std::string detail;
  if (!we.failing_degrees.empty()) detail = "failing degrees " + join(we.failing_degrees);
  if (!we.inconclusive_degrees.empty())
    detail += (detail.empty() ? "" : "; ") + std::string("flagged degrees ") + join(we.inconclusive_degrees);
  rep.check("weak equivalence " + name, we.verdict, detail);
}

void factorization_checks(const FactorizationResult& f, Problem& p, RunReport& rep) {
  rep.objects.push_back(summarize(*f.middle, p.names()));
  record_stages(f, rep);
  auto bad = composition_mismatch(f);
  rep.check("composition right o left = phi", !bad, bad ? "differs on " + bad->name() : "");
  auto rs = verify_rsda(f.left);
  rep.check("left is relative Sullivan", rs.pass, rs.violations.empty() ? "" : rs.violations.front());
  auto fib = is_fibration(f.right, p.window());
  rep.check("right is a fibration", fib.pass, fib.pass ? "" : "not onto in degrees " + join(fib.failing_degrees));
  if (f.kind == FactorizationKind::TrivCofFib)
    weq_check("left", f.left, p.window(), rep);
  else
    weq_check("right", f.right, p.window(), rep);
}

void higher_homology_check(const HomologyReport& h, RunReport& rep) {
  Verdict v = Verdict::Pass;
  std::vector<int> nonzero, flagged;
  for (const auto& d : h.degrees) {
    if (d.degree < 1) continue;
    if (d.flagged) {
      flagged.push_back(d.degree);
      if (v == Verdict::Pass) v = Verdict::Inconclusive;
    } else if (d.h != 0) {
      nonzero.push_back(d.degree);
      v = Verdict::Fail;
    }
  }
  std::string detail;
  if (!nonzero.empty()) detail = "nonzero in degrees " + join(nonzero);
  if (!flagged.empty()) detail += (detail.empty() ? "" : "; ") + std::string("flagged degrees ") + join(flagged);
  rep.check("homology concentrated in degree 0", v, detail);
}

}  // namespace

void cmd_factorize(Problem& p, const std::string& mode, RunReport& rep) {
  Json sec = p.has_section("factorize") ? p.section("factorize") : Json::object();
  check_keys(sec, {"morphism"}, "factorize");
  std::string name = str_field(sec, "morphism", "");
  if (name.empty()) name = p.default_morphism();
  DgaMorphism phi = p.morphism(name);
  FactorizationResult f = factor(mode, phi, p.budget(morphism_target(p, name)));
  factorization_checks(f, p, rep);
}

void cmd_homology(Problem& p, RunReport& rep) {
  Json sec = p.has_section("homology") ? p.section("homology") : Json::object();
  check_keys(sec, {"algebra"}, "homology");
  std::string name = str_field(sec, "algebra", "");
  if (name.empty()) name = p.default_algebra();
  DgaPtr a = p.algebra(name);
  rep.objects.push_back(summarize(*a, p.names()));
  HomologyReport h = homology(a, p.window());
  rep.tables.push_back({"H(" + name + ")", h});
  std::vector<int> flagged;
  for (const auto& d : h.degrees)
    if (d.flagged) flagged.push_back(d.degree);
  rep.check("window homology exact", flagged.empty() ? Verdict::Pass : Verdict::Inconclusive,
            flagged.empty() ? "" : "flagged degrees " + join(flagged));
}

void cmd_resolve(Problem& p, const std::string& kind, RunReport& rep) {
  if (kind == "koszul") {
    const Json& sec = p.section("koszul");
    check_keys(sec, {"base", "elements"}, "koszul");
    std::string base = str_field(sec, "base", "O");
    if (!sec.contains("elements") || !sec.at("elements").is_array()) throw ParseError("koszul.elements must be a list");
    std::vector<AlgElem> elems;
    for (const auto& e : sec.at("elements")) elems.push_back(p.expr(base, e));
    DgaPtr k = koszul_resolution(p.algebra(base), elems);
    rep.objects.push_back(summarize(*k, p.names()));
    HomologyReport h = homology(k, p.window());
    rep.tables.push_back({"H(K)", h});
    higher_homology_check(h, rep);
    return;
  }
  if (kind == "koszul-tate") {
    const Json& sec = p.section("koszul_tate");
    check_keys(sec, {"fields", "order", "equations", "noether"}, "koszul_tate");
    JetSpec js;
    js.dim = p.dim();
    js.fields.clear();
    if (!sec.contains("fields") || !sec.at("fields").is_array()) throw ParseError("koszul_tate.fields must be a list");
    for (const auto& f : sec.at("fields")) {
      if (!f.is_string()) throw ParseError("field names must be strings");
      js.fields.push_back(f.get<std::string>());
    }
    if (!sec.contains("order") || !sec.at("order").is_number_integer())
      throw ParseError("koszul_tate.order must be an integer");
    js.order = sec.at("order").get<int>();
    DgaPtr jets = jet_algebra(js);
    Scope scope;
    scope.dim = p.dim();
    scope.vars = p.names().vars;
    for (const auto& g : jets->generators()) scope.gens.emplace(g.name(), g);
    std::vector<AlgElem> eqs;
    if (sec.contains("equations")) {
      if (!sec.at("equations").is_array()) throw ParseError("koszul_tate.equations must be a list");
      for (const auto& e : sec.at("equations")) eqs.push_back(p.expr_in(jets, scope, e));
    }
    std::vector<NoetherIdentity> noether;
    if (sec.contains("noether")) {
      if (!sec.at("noether").is_array()) throw ParseError("koszul_tate.noether must be a list");
      for (const auto& ident : sec.at("noether")) {
        if (!ident.is_array()) throw ParseError("each Noether identity is a list of terms");
        NoetherIdentity id;
        id.coeffs.resize(eqs.size());
        for (const auto& term : ident) {
          check_keys(term, {"equation", "alpha", "coeff"}, "Noether term");
          if (!term.contains("equation") || !term.contains("coeff")) throw ParseError("Noether term needs equation and coeff");
          int i = term.at("equation").get<int>();
          if (i < 0 || i >= static_cast<int>(eqs.size())) throw ParseError("Noether term names a missing equation");
          MultiIndex alpha(p.dim(), 0);
          if (term.contains("alpha")) alpha = term.at("alpha").get<MultiIndex>();
          if (static_cast<int>(alpha.size()) != p.dim()) throw ParseError("Noether alpha needs dim entries");
          id.coeffs[i].try_emplace(alpha, AlgElem(p.dim())).first->second += p.expr_in(jets, scope, term.at("coeff"));
        }
        noether.push_back(id);
      }
    }
    KTComplex kt = koszul_tate(jets, eqs, noether);
    rep.objects.push_back(summarize(*kt.algebra, p.names()));
    bool dsq = true;
    for (const auto& g : kt.algebra->generators()) dsq = dsq && kt.algebra->d_squared_residue(g).is_zero();
    rep.check("d^2 = 0 on generators", dsq);
    KTVerifyReport v = kt_verify(kt, p.window());
    rep.tables.push_back({"H(KT)", v.homology});
    higher_homology_check(v.homology, rep);
    if (!v.compared) {
      rep.check("H_0 matches on-shell quotient", Verdict::Inconclusive, v.skipped);
    } else {
      std::string detail = "slices";
      for (std::size_t d = 0; d < v.h0_slices.size(); ++d)
        detail += " " + std::to_string(v.h0_slices[d]) + "/" + std::to_string(v.quotient_slices[d]);
      rep.check("H_0 matches on-shell quotient", v.h0_matches, detail);
    }
    return;
  }
  if (kind == "cofibrant") {
    Json sec = p.has_section("cofibrant") ? p.section("cofibrant") : Json::object();
    check_keys(sec, {"algebra"}, "cofibrant");
    std::string name = str_field(sec, "algebra", "");
    if (name.empty()) name = p.default_algebra();
    FactorizationResult f = cofibrant_replacement(p.algebra(name), p.budget(name));
    factorization_checks(f, p, rep);
    return;
  }
  throw ParseError("unknown resolution kind " + kind);
}

void cmd_verify(Problem& p, const std::string& check, RunReport& rep) {
  const Json& sec = p.section("verify");
  check_keys(sec, {"morphism", "factor", "algebra", "pushout", "square"}, "verify");
  if (check == "rsda") {
    std::string name = str_field(sec, "morphism", "");
    if (name.empty()) name = p.default_morphism();
    DgaMorphism m = p.morphism(name);
    std::string mode = str_field(sec, "factor", "");
    if (!mode.empty()) {
      FactorizationResult f = factor(mode, m, p.budget(morphism_target(p, name)));
      rep.objects.push_back(summarize(*f.middle, p.names()));
      m = f.left;
    }
    auto r = verify_rsda(m);
    std::string detail;
    for (const auto& v : r.violations) detail += (detail.empty() ? "" : "; ") + v;
    rep.check("inclusion", r.inclusion);
    rep.check("well ordered", r.well_ordered);
    rep.check("lowering", r.lowering, detail);
    return;
  }
  if (check == "pushout") {
    if (!sec.contains("pushout")) throw ParseError("verify.pushout is missing");
    const Json& po = sec.at("pushout");
    check_keys(po, {"n", "base", "kappa", "i_prime", "top", "bottom"}, "verify.pushout");
    if (!po.contains("n") || !po.contains("base") || !po.contains("i_prime") || !po.contains("top"))
      throw ParseError("verify.pushout needs n, base, i_prime and top");
    int n = po.at("n").get<int>();
    std::string base = po.at("base").get<std::string>();
    DgaPtr t = p.algebra(base);
    AlgElem kappa = po.contains("kappa") ? p.expr(base, po.at("kappa")) : AlgElem(p.dim());
    std::string ip_name = po.at("i_prime").get<std::string>();
    DgaMorphism ip = p.morphism(ip_name);
    std::string target = morphism_target(p, ip_name);
    PushoutData data = pushout_gen_cof(n, t, kappa);
    rep.objects.push_back(summarize(*data.result, p.names()));
    std::map<GenId, AlgElem> jv;
    for (const auto& g : data.disc->generators()) {
      if (g.kind == GenKind::DiscBottom)
        jv[g] = po.contains("bottom") ? p.expr(target, po.at("bottom")) : ip.apply(data.kappa);
      else
        jv[g] = p.expr(target, po.at("top"));
    }
    DgaMorphism jp(data.disc, ip.target(), jv);
    DgaMorphism chi = pushout_universal(ip, jp, data);
    DgaMorphism again = pushout_universal(ip, jp, data);
    bool ci = true, cj = true;
    for (const auto& g : t->generators()) ci = ci && chi.apply(data.i.on_generator(g)) == ip.on_generator(g);
    for (const auto& g : data.disc->generators()) cj = cj && chi.apply(data.j.on_generator(g)) == jp.on_generator(g);
    rep.check("chi o i = i'", ci);
    rep.check("chi o j = j'", cj);
    rep.check("chi deterministic", !first_disagreement(chi, again));
    rep.notes.push_back("chi(" + data.new_gen.name() + ") = " +
                        to_string(chi.on_generator(data.new_gen), p.names()));
    return;
  }
  if (check == "square") {
    if (!sec.contains("square")) throw ParseError("verify.square is missing");
    const Json& sq = sec.at("square");
    check_keys(sq, {"u", "v", "phi", "phi_prime", "mode"}, "verify.square");
    for (const char* k : {"u", "v", "phi", "phi_prime"})
      if (!sq.contains(k)) throw ParseError(std::string("verify.square needs ") + k);
    DgaMorphism u = p.morphism(sq.at("u").get<std::string>());
    DgaMorphism v = p.morphism(sq.at("v").get<std::string>());
    std::string phi_name = sq.at("phi").get<std::string>();
    std::string phip_name = sq.at("phi_prime").get<std::string>();
    DgaMorphism phi = p.morphism(phi_name);
    DgaMorphism phip = p.morphism(phip_name);
    std::string mode = str_field(sq, "mode", "cof-trivfib");
    auto off = first_disagreement(compose(v, phi), compose(phip, u));
    rep.check("square commutes", !off, off ? "differs on " + off->name() : "");
    if (off) return;
    FactorizationResult f = factor(mode, phi, p.budget(morphism_target(p, phi_name)));
    FunctorialSeed seed{&f, u, v};
    FactorizationResult fp = factor(mode, phip, p.budget(morphism_target(p, phip_name)), &seed);
    rep.objects.push_back(summarize(*f.middle, p.names()));
    rep.objects.push_back(summarize(*fp.middle, p.names()));
    DgaMorphism omega = functorial_square(u, v, f, fp);
    auto left = first_disagreement(compose(omega, f.left), compose(fp.left, u));
    auto right = first_disagreement(compose(fp.right, omega), compose(v, f.right));
    rep.check("omega o j = j' o u", !left, left ? "differs on " + left->name() : "");
    rep.check("q' o omega = v o q", !right, right ? "differs on " + right->name() : "");
    return;
  }
  if (check == "d-squared") {
    std::string name = str_field(sec, "algebra", "");
    if (name.empty()) name = p.default_algebra();
    DgaPtr a = p.algebra(name, false);
    rep.objects.push_back(summarize(*a, p.names()));
    std::string detail;
    for (const auto& g : a->generators()) {
      AlgElem r = a->d_squared_residue(g);
      if (!r.is_zero()) detail += (detail.empty() ? "" : "; ") + g.name() + ": " + to_string(r, p.names());
    }
    rep.check("d^2 = 0 on generators", detail.empty(), detail);
    return;
  }
  throw ParseError("unknown check " + check);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential graded D-algebras: factorizations, homology and resolutions"};
  app.require_subcommand(1);
  std::string input, json_out, mode = "cof-trivfib", kind, check;
  bool allow_flags = false;
  Overrides ov;
  int N = -1, poly = -1, order = -1, len = -1, stages = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("spec", input, "problem file (JSON), - for stdin")->required();
    sub->add_option("--trunc-degree", N, "max homological degree N");
    sub->add_option("--poly-degree", poly, "max polynomial degree d_x");
    sub->add_option("--order", order, "max jet/operator order r");
    sub->add_option("--word-len", len, "max word length L");
    sub->add_option("--stages", stages, "factorization stages K");
    sub->add_flag("--allow-flags", allow_flags, "accept inconclusive (flagged) degrees");
    sub->add_option("--json", json_out, "write the machine report to a file, - for stdout");
  };
  CLI::App* fac = app.add_subcommand("factorize", "factor a morphism");
  common(fac);
  fac->add_option("--mode", mode)->check(CLI::IsMember({"trivcof-fib", "cof-trivfib", "minimal"}));
  CLI::App* hom = app.add_subcommand("homology", "window homology of an algebra");
  common(hom);
  CLI::App* res = app.add_subcommand("resolve", "Koszul, Koszul-Tate or cofibrant resolution");
  common(res);
  res->add_option("--kind", kind)->required()->check(CLI::IsMember({"koszul", "koszul-tate", "cofibrant"}));
  CLI::App* ver = app.add_subcommand("verify", "structural checks");
  common(ver);
  ver->add_option("--check", check)->required()->check(CLI::IsMember({"rsda", "pushout", "square", "d-squared"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (N >= 0) ov.N = N;
  if (poly >= 0) ov.poly_degree = poly;
  if (order >= 0) ov.order = order;
  if (len >= 0) ov.word_length = len;
  if (stages >= 0) ov.stages = stages;

  RunReport rep;
  rep.input = input == "-" ? "stdin" : input.substr(input.find_last_of('/') + 1);
  auto start = std::chrono::steady_clock::now();
  try {
    Problem p(load_json(input), ov);
    rep.window = p.window();
    rep.windowed = true;
    if (fac->parsed()) {
      rep.command = "factorize";
      rep.argument = mode;
      cmd_factorize(p, mode, rep);
    } else if (hom->parsed()) {
      rep.command = "homology";
      cmd_homology(p, rep);
    } else if (res->parsed()) {
      rep.command = "resolve";
      rep.argument = kind;
      cmd_resolve(p, kind, rep);
    } else {
      rep.command = "verify";
      rep.argument = check;
      cmd_verify(p, check, rep);
    }
    rep.exit_code = rep.verdict_code(allow_flags);
  } catch (const ParseError& e) {
    rep.error = e.what();
    rep.exit_code = 2;
  } catch (const nlohmann::json::exception& e) {
    rep.error = std::string("bad problem file: ") + e.what();
    rep.exit_code = 2;
  } catch (const PreconditionError& e) {
    rep.error = e.what();
    rep.error_generator = e.generator();
    rep.error_residue = e.residue();
    rep.exit_code = 3;
  } catch (const DgdaError& e) {
    rep.error = e.what();
    rep.exit_code = 3;
  }
  if (rep.command.empty())
    rep.command = fac->parsed() ? "factorize" : hom->parsed() ? "homology" : res->parsed() ? "resolve" : "verify";
  if (rep.argument.empty()) rep.argument = fac->parsed() ? mode : res->parsed() ? kind : ver->parsed() ? check : "";
  rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (json_out == "-") {
    out << rep.to_json().dump(2) << "\n";
  } else {
    rep.print(out);
    if (!json_out.empty()) {
      std::ofstream f(json_out);
      if (!f) {
        err << "cannot write " << json_out << "\n";
        return 2;
      }
      f << rep.to_json().dump(2) << "\n";
    }
  }
  if (!rep.error.empty()) err << "error: " << rep.error << "\n";
  return rep.exit_code;
}

}  // namespace dgda::cli
