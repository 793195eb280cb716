// Command-line front end. Every verb prints a deterministic plain-text report
// (or a JSON object with --json); failing checks add a WITNESS: block with one
// term per line. Exit codes: 0 all checks passed, 1 a check failed, 2 bad
// input, 3 a size guard tripped.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poslog/batteries.hpp"
#include "poslog/enumerate.hpp"
#include "poslog/error.hpp"
#include "poslog/functor.hpp"
#include "poslog/lattice.hpp"
#include "poslog/logic.hpp"
#include "poslog/posetify.hpp"
#include "poslog/predlift.hpp"

using nlohmann::json;
using namespace poslog;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Report sink: collects text lines and mirrors them into a JSON object so
// both output modes stay in lockstep.
struct Report {
  bool json_mode = false;
  std::ostringstream text;
  json obj = json::object();
  std::vector<std::string> witness;

  void line(const std::string& s) { text << s << "\n"; }
  void field(const std::string& key, const std::string& val) {
    line(key + ": " + val);
    obj[key] = val;
  }
  void field(const std::string& key, const char* val) {
    field(key, std::string(val));
  }
  void field(const std::string& key, int val) {
    line(key + ": " + std::to_string(val));
    obj[key] = val;
  }
  void field(const std::string& key, bool val) {
    line(key + ": " + std::string(val ? "yes" : "no"));
    obj[key] = val;
  }
  void emit() {
    if (!witness.empty()) {
      line("WITNESS:");
      for (const auto& w : witness) line(w);
      obj["witness"] = witness;
    }
    if (json_mode)
      std::cout << obj.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

int finish(Report& rep, bool pass) {
  rep.emit();
  return pass ? 0 : 1;
}

// Hasse pairs as label pairs, for the JSON view of a poset.
json poset_json(const Poset& p) {
  json j = json::object();
  j["elements"] = json::array();
  for (const auto& l : p.carrier.elems) j["elements"].push_back(l);
  j["le"] = json::array();
  for (auto [a, b] : p.hasse())
    j["le"].push_back(json::array({p.label(a), p.label(b)}));
  return j;
}

int cmd_posetify(Report& rep, const std::string& fx, const std::string& file) {
  FunctorExpr t = FunctorExpr::parse(fx);
  Poset x = Poset::parse(slurp(file));
  PosetifyResult pr = posetify_obj(t, x);
  rep.field("functor", t.to_string());
  rep.field("base", x.size());
  rep.field("size", pr.poset.size());
  rep.obj["poset"] = poset_json(pr.poset);
  rep.text << pr.poset.to_text();
  return finish(rep, true);
}

int cmd_check_wpb(Report& rep, const std::string& fx, int bound) {
  FunctorExpr t = FunctorExpr::parse(fx);
  WpbReport r = preserves_weak_pullbacks(t, bound);
  rep.field("functor", t.to_string());
  rep.field("bound", bound);
  rep.field("preserves-weak-pullbacks", r.preserves);
  if (!r.preserves) {
    rep.witness.push_back("cospan: " + r.cospan);
    rep.witness.push_back("u: " + r.u);
    rep.witness.push_back("v: " + r.v);
  }
  return finish(rep, r.preserves);
}

int cmd_check_exact(Report& rep, const std::string& fx, int bound) {
  FunctorExpr t = FunctorExpr::parse(fx);
  ExsqReport r = preserves_exact_squares(t, bound);
  rep.field("functor", t.to_string());
  rep.field("bound", bound);
  rep.field("preserves-exact-squares", r.preserves);
  if (!r.preserves) rep.witness.push_back("square: " + r.witness);
  return finish(rep, r.preserves);
}

int cmd_duality(Report& rep, int bound) {
  DualityReport r = verify_dualities(bound);
  rep.field("bound", bound);
  rep.field("dualities", r.pass);
  if (!r.pass) rep.witness.push_back(r.witness);
  return finish(rep, r.pass);
}

// --algebra accepts "free:n" (free Boolean algebra on n generators, so
// free:0 is the two-element algebra) or a lattice file; beta needs a
// complemented one.
FinBA load_algebra(const std::string& spec, std::vector<int>* gens) {
  if (spec.rfind("free:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(spec.substr(5));
    } catch (const std::exception&) {
      throw input_error("bad --algebra argument: " + spec);
    }
    FreeAlgebra f = free_BA(n);
    if (gens) *gens = f.gens;
    return f.alg;
  }
  FinDL a = FinDL::parse(slurp(spec));
  if (!a.is_boolean())
    throw input_error("--algebra file must be a Boolean algebra");
  return a;
}

int cmd_beta(Report& rep, const std::string& fx, const std::string& alg) {
  std::vector<int> gens;
  FinBA a = load_algebra(alg, &gens);
  rep.field("algebra", a.size());
  if (auto g = parse_named_pos_functor(fx)) {
    NamedBetaReport r = build_beta_named(a, *g, gens);
    rep.field("functor", fx);
    rep.field("lhs", r.lhs_size);
    rep.field("rhs", r.rhs_size);
    rep.field("injective", r.injective);
    rep.field("surjective", r.surjective);
    rep.field("lattice-iso", r.iso);
    rep.field("detail", r.detail);
    if (!r.iso) {
      rep.witness.push_back("lhs: " + std::to_string(r.lhs_size));
      rep.witness.push_back("rhs: " + std::to_string(r.rhs_size));
      rep.witness.push_back("injective: " +
                            std::string(r.injective ? "yes" : "no"));
      rep.witness.push_back("surjective: " +
                            std::string(r.surjective ? "yes" : "no"));
    }
    return finish(rep, r.iso);
  }
  FunctorExpr t = FunctorExpr::parse(fx);
  BetaReport r = build_beta(a, t);
  rep.field("functor", t.to_string());
  rep.field("bijective", r.bijective);
  rep.field("homomorphism", r.hom_ok);
  rep.field("natural", r.natural_ok);
  rep.field("lattice-iso", r.iso);
  rep.field("detail", r.detail);
  if (!r.iso) rep.witness.push_back(r.detail);
  return finish(rep, r.iso);
}

int cmd_translate(Report& rep, const std::string& formula) {
  Formula f = Formula::parse(formula);
  Formula b = beta_translate(f);
  rep.obj["input"] = f.to_string();
  rep.obj["output"] = b.to_string();
  if (rep.json_mode)
    rep.emit();
  else
    std::cout << b.to_string() << "\n";
  return 0;
}

int cmd_eval(Report& rep, const std::string& formula, const std::string& file,
             const std::string& table_file) {
  std::string text = slurp(file);
  Formula f = Formula::parse(formula);
  if (model_text_is_ordered(text)) {
    if (!table_file.empty())
      throw input_error("lifting tables apply to Kripke models only");
    OrderedCoalgebra m = OrderedCoalgebra::parse(text);
    Bits r = eval_pos(f, m);
    rep.field("model", "ordered");
    rep.field("states", m.states.size());
    rep.field("satisfying", subset_label(m.states.carrier, r));
  } else {
    LiftingTable table;
    if (!table_file.empty()) table = parse_lifting_table(slurp(table_file));
    Coalgebra m = Coalgebra::parse(text);
    Bits r = eval_bool(f, m, table);
    rep.field("model", "kripke");
    rep.field("states", m.states.size());
    rep.field("satisfying", subset_label(m.states, r));
  }
  return finish(rep, true);
}

int cmd_liftings(Report& rep, const std::string& fx, int arity,
                 bool monotone_only) {
  FunctorExpr t = FunctorExpr::parse(fx);
  std::vector<Lifting> all = enumerate_liftings(t, arity);
  const TSet& ts = obj_full(t, bool_tuples(arity));
  int mono = 0;
  for (const auto& l : all)
    if (is_monotone(l)) ++mono;
  rep.field("functor", t.to_string());
  rep.field("arity", arity);
  rep.field("liftings", static_cast<int>(all.size()));
  rep.field("monotone", mono);
  json items = json::array();
  for (const auto& l : all) {
    if (monotone_only && !is_monotone(l)) continue;
    std::string lbl = subset_label(ts.elems, l.value);
    rep.line(lbl);
    items.push_back(lbl);
  }
  rep.obj["values"] = items;
  return finish(rep, true);
}

int cmd_repro(Report& rep) {
  WkReport r = wk_counterexample();
  rep.field("wk-inserter", r.wk_inserter);
  rep.field("wk-apex", r.wk_apex);
  rep.field("pass", r.pass);
  rep.line(r.detail);
  rep.obj["detail"] = r.detail;
  if (!r.pass) rep.witness.push_back(r.detail);
  return finish(rep, r.pass);
}

int cmd_nstep(Report& rep, const std::string& fx, int n) {
  FunctorExpr t = FunctorExpr::parse(fx);
  NStepReport r = n_step_injectivity(t, n);
  rep.field("functor", t.to_string());
  rep.field("steps", n);
  json sizes = json::array();
  for (std::size_t k = 0; k < r.sizes.size(); ++k) {
    rep.line("step " + std::to_string(k) + ": " +
             std::to_string(r.sizes[k].first) + " -> " +
             std::to_string(r.sizes[k].second));
    sizes.push_back(json::array({r.sizes[k].first, r.sizes[k].second}));
  }
  rep.obj["sizes"] = sizes;
  rep.field("injective", r.injective);
  if (!r.injective) rep.witness.push_back(r.detail);
  return finish(rep, r.injective);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* guard = std::getenv("POSLOG_GUARD")) {
    try {
      set_size_guard(std::stoull(guard));
    } catch (const std::exception&) {
      std::cout << "error: bad POSLOG_GUARD value: " << guard << "\n";
      return 2;
    }
  }

  CLI::App app{"exact finite-model workbench for modal logic over posets"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit a JSON object instead of text");

  std::string fx, file, alg = "free:0", formula, table_file, repro_what;
  int bound = 2, arity = 1, nsteps = 1;
  bool monotone_only = false;

  auto* posetify = app.add_subcommand("posetify", "apply T' to a poset file");
  posetify->add_option("functor", fx)->required();
  posetify->add_option("poset-file", file)->required();

  auto* wpb = app.add_subcommand("check-wpb", "weak-pullback preservation");
  wpb->add_option("functor", fx)->required();
  wpb->add_option("--bound", bound, "max carrier size")->capture_default_str();

  auto* exact = app.add_subcommand("check-exact", "exact-square preservation");
  exact->add_option("functor", fx)->required();
  exact->add_option("--bound", bound, "max poset size")->capture_default_str();

  auto* dual = app.add_subcommand("duality", "finite duality round trips");
  dual->add_option("--bound", bound, "max ground size")->capture_default_str();

  auto* beta = app.add_subcommand("beta", "one-step comparison map");
  beta->add_option("functor", fx)->required();
  beta->add_option("--algebra", alg, "free:n or a lattice file")
      ->capture_default_str();

  auto* translate = app.add_subcommand("translate", "negative translation");
  translate->add_option("formula", formula)->required();

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a model");
  eval->add_option("formula", formula)->required();
  eval->add_option("model-file", file)->required();
  eval->add_option("--liftings", table_file, "lifting table file");

  auto* lifts = app.add_subcommand("liftings", "predicate liftings");
  lifts->add_option("functor", fx)->required();
  lifts->add_option("--arity", arity)->capture_default_str();
  lifts->add_flag("--monotone", monotone_only, "list monotone liftings only");

  auto* repro = app.add_subcommand("repro", "replay a stock counterexample");
  repro->add_option("what", repro_what)->required()
      ->check(CLI::IsMember({"dunn-counterexample"}));

  auto* nstep = app.add_subcommand("nstep", "n-step comparison injectivity");
  nstep->add_option("functor", fx)->required();
  nstep->add_option("--n", nsteps)->capture_default_str();

  for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; }))
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Report rep;
  rep.json_mode = json_mode;
  try {
    if (*posetify) return cmd_posetify(rep, fx, file);
    if (*wpb) return cmd_check_wpb(rep, fx, bound);
    if (*exact) return cmd_check_exact(rep, fx, bound);
    if (*dual) return cmd_duality(rep, bound);
    if (*beta) return cmd_beta(rep, fx, alg);
    if (*translate) return cmd_translate(rep, formula);
    if (*eval) return cmd_eval(rep, formula, file, table_file);
    if (*lifts) return cmd_liftings(rep, fx, arity, monotone_only);
    if (*repro) return cmd_repro(rep);
    if (*nstep) return cmd_nstep(rep, fx, nsteps);
  } catch (const input_error& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cout << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    std::cout << "internal cross-check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
