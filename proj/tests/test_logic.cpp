#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "poslog/error.hpp"
#include "poslog/lattice.hpp"
#include "poslog/logic.hpp"
#include "poslog/predlift.hpp"

using namespace poslog;

namespace {

const char* kKripke =
    "# two-state test model\n"
    "states: x y\n"
    "xi: x -> {x,y}\n"
    "xi: y -> {}\n"
    "val: p = {x}\n"
    "val: q = {y}\n";

const char* kOrdered =
    "states: a b\n"
    "order: a b\n"
    "xi: a -> {a}\n"
    "xi: b -> {b}\n"
    "val: p = {b}\n"
    "val: q = {a,b}\n";

// Naive recursive Kripke evaluator, independent of the library one.
bool holds(const Formula& f, const Coalgebra& m,
           const std::vector<std::vector<int>>& succ, int s) {
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = m.val.find(f.name());
      return it != m.val.end() && it->second.get(s);
    }
    case Conn::Top: return true;
    case Conn::Bot: return false;
    case Conn::Not: return !holds(f.child(0), m, succ, s);
    case Conn::And:
      return holds(f.child(0), m, succ, s) && holds(f.child(1), m, succ, s);
    case Conn::Or:
      return holds(f.child(0), m, succ, s) || holds(f.child(1), m, succ, s);
    case Conn::Box: {
      for (int t : succ[(std::size_t)s])
        if (!holds(f.child(0), m, succ, t)) return false;
      return true;
    }
    case Conn::Dia: {
      for (int t : succ[(std::size_t)s])
        if (holds(f.child(0), m, succ, t)) return true;
      return false;
    }
    default: throw input_error("oracle: lift not supported");
  }
}

std::vector<std::vector<int>> successors(const Coalgebra& m) {
  const TSet& ts = obj_full(m.functor, m.states);
  std::vector<std::vector<int>> out(m.xi.size());
  for (std::size_t i = 0; i < m.xi.size(); ++i) {
    std::uint64_t mask = ts.vals[(std::size_t)m.xi[i]].mask;
    for (int j = 0; j < m.states.size(); ++j)
      if (mask >> j & 1) out[i].push_back(j);
  }
  return out;
}

std::vector<Formula> formula_family() {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  return {
      p,
      Formula::top(),
      Formula::bot(),
      Formula::neg(p),
      Formula::conj(p, q),
      Formula::disj(Formula::neg(p), q),
      Formula::box(p),
      Formula::dia(Formula::conj(p, q)),
      Formula::box(Formula::disj(p, Formula::dia(q))),
      Formula::neg(Formula::box(Formula::neg(p))),
      Formula::dia(Formula::dia(p)),
      Formula::conj(Formula::box(p), Formula::neg(Formula::dia(q))),
  };
}

}  // namespace

TEST_CASE("formula printing uses minimal parentheses") {
  CHECK(Formula::parse("p & q | r").to_string() == "p & q | r");
  CHECK(Formula::parse("p & (q | r)").to_string() == "p & (q | r)");
  CHECK(Formula::parse("(p & q) | r").to_string() == "p & q | r");
  CHECK(Formula::parse("~(p | q)").to_string() == "~(p | q)");
  CHECK(Formula::parse("~ p").to_string() == "~p");
  CHECK(Formula::parse("[] <> p").to_string() == "[]<>p");
  CHECK(Formula::parse("lift f(p, q & r)").to_string() == "lift f(p, q & r)");
  CHECK(Formula::parse("p & q & r").to_string() == "p & q & r");
  CHECK(Formula::parse("T | F").to_string() == "T | F");
}

TEST_CASE("formula parsing round-trips and rejects garbage") {
  for (const Formula& f : formula_family()) {
    Formula g = Formula::parse(f.to_string());
    CHECK(g == f);
    CHECK(g.to_string() == f.to_string());
  }
  CHECK_THROWS_AS(Formula::parse("p &"), input_error);
  CHECK_THROWS_AS(Formula::parse("(p"), input_error);
  CHECK_THROWS_AS(Formula::parse(""), input_error);
  CHECK_THROWS_AS(Formula::parse("p q"), input_error);
  CHECK_THROWS_AS(Formula::parse("lift (p)"), input_error);
}

TEST_CASE("positivity and modal depth classify formulas") {
  CHECK(Formula::parse("[]p & <>q").is_positive());
  CHECK_FALSE(Formula::parse("~[]p").is_positive());
  CHECK_FALSE(Formula::parse("~p").is_positive());
  CHECK(Formula::parse("~p | q").is_positive(true));
  CHECK(Formula::parse("[]<>[]p").modal_depth() == 3);
  CHECK(Formula::parse("[]p & <>(q | []p)").modal_depth() == 2);
  CHECK_THROWS_AS(Formula::parse_positive("~[]p"), input_error);
}

TEST_CASE("the negative translation replaces diamonds") {
  CHECK(beta_translate(Formula::parse("<>p")).to_string() == "~[]~p");
  CHECK(beta_translate(Formula::parse("[]p")).to_string() == "[]p");
  CHECK(beta_translate(Formula::parse("<>(p & <>q)")).to_string() ==
        "~[]~(p & ~[]~q)");
  CHECK(beta_translate(Formula::parse("[](p | q) & <>q")).to_string() ==
        "[](p | q) & ~[]~q");
  CHECK_THROWS_AS(beta_translate(Formula::parse("~p")), input_error);
}

TEST_CASE("negation normal form preserves Kripke semantics") {
  Coalgebra m = Coalgebra::parse(kKripke);
  for (const Formula& f : formula_family()) {
    Formula n = positive_normal_form(f);
    CHECK(n.is_positive(true));
    CHECK(eval_bool(n, m) == eval_bool(f, m));
  }
  CHECK(positive_normal_form(Formula::parse("~(p & q)")).to_string() ==
        "~p | ~q");
  CHECK(positive_normal_form(Formula::parse("~[]p")).to_string() == "<>~p");
  CHECK(positive_normal_form(Formula::parse("~~p")).to_string() == "p");
}

TEST_CASE("Kripke models parse, round-trip and validate") {
  Coalgebra m = Coalgebra::parse(kKripke);
  CHECK(m.states.size() == 2);
  CHECK(m.functor.kind() == FunctorKind::Pow);
  Coalgebra again = Coalgebra::parse(m.to_text());
  CHECK(again.to_text() == m.to_text());
  CHECK_THROWS_AS(Coalgebra::parse("states: x\nxi: x -> {z}\n"), input_error);
  CHECK_THROWS_AS(Coalgebra::parse("states: x\n"), input_error);
  CHECK_THROWS_AS(Coalgebra::parse("states: x\nxi: x -> {}\nval: p = {w}\n"),
                  input_error);
  // Non-powerset coalgebras carry their functor line; transition values use
  // the numerator-tuple labels of the enumeration.
  Coalgebra dm = Coalgebra::parse(
      "functor: Dist@2\nstates: x y\nxi: x -> (2,0)\nxi: y -> (1,1)\n");
  CHECK(dm.functor.kind() == FunctorKind::Dist);
  CHECK_FALSE(model_text_is_ordered(kKripke));
}

TEST_CASE("ordered models validate convexity, monotonicity and upsets") {
  OrderedCoalgebra m = OrderedCoalgebra::parse(kOrdered);
  CHECK(model_text_is_ordered(kOrdered));
  CHECK(m.states.le(0, 1));
  OrderedCoalgebra again = OrderedCoalgebra::parse(m.to_text());
  CHECK(again.to_text() == m.to_text());
  // Valuations must be upsets.
  CHECK_THROWS_AS(OrderedCoalgebra::parse("states: a b\norder: a b\n"
                                          "xi: a -> {a}\nxi: b -> {b}\n"
                                          "val: p = {a}\n"),
                  input_error);
  // Transition targets must be Egli-Milner monotone along the state order.
  CHECK_THROWS_AS(OrderedCoalgebra::parse("states: a b\norder: a b\n"
                                          "xi: a -> {b}\nxi: b -> {}\n"),
                  input_error);
  // Ordered models require the powerset functor.
  CHECK_THROWS_AS(OrderedCoalgebra::parse("functor: Dist@2\nstates: a b\n"
                                          "order: a b\nxi: a -> (2/2)a\n"
                                          "xi: b -> (2/2)b\n"),
                  input_error);
}

TEST_CASE("Kripke evaluation matches the naive recursive oracle") {
  Coalgebra m = Coalgebra::parse(kKripke);
  auto succ = successors(m);
  for (const Formula& f : formula_family()) {
    Bits got = eval_bool(f, m);
    for (int s = 0; s < m.states.size(); ++s)
      CHECK(got.get(s) == holds(f, m, succ, s));
  }
}

TEST_CASE("lift operators evaluate through lifting tables") {
  LiftingTable table =
      parse_lifting_table("empty = { {} } : Pow @ 1\n");
  Coalgebra m = Coalgebra::parse(kKripke);
  Bits r = eval_bool(Formula::parse("lift empty(p)"), m, table);
  CHECK_FALSE(r.get(m.states.index("x")));
  CHECK(r.get(m.states.index("y")));
  // Unknown names and arity mismatches are input errors.
  CHECK_THROWS_AS(eval_bool(Formula::parse("lift missing(p)"), m, table),
                  input_error);
  CHECK_THROWS_AS(eval_bool(Formula::parse("lift empty(p, q)"), m, table),
                  input_error);
}

TEST_CASE("ordered evaluation is monotone and matches the definitions") {
  OrderedCoalgebra m = OrderedCoalgebra::parse(kOrdered);
  int a = m.states.carrier.index("a"), b = m.states.carrier.index("b");
  Bits boxp = eval_pos(Formula::parse("[]p"), m);
  CHECK_FALSE(boxp.get(a));
  CHECK(boxp.get(b));
  Bits diap = eval_pos(Formula::parse("<>p"), m);
  CHECK(diap == boxp);  // singleton transitions
  Bits top = eval_pos(Formula::parse("T"), m);
  CHECK(top.count() == 2);
  for (const Formula& f :
       {Formula::parse("[]p & <>q"), Formula::parse("[](p | q)"),
        Formula::parse("<>(p & q) | []q")}) {
    Bits r = eval_pos(f, m);
    CHECK(m.states.is_upset(r));
  }
  CHECK_THROWS_AS(eval_pos(Formula::parse("~p"), m), input_error);
}

TEST_CASE("one-step semantics sizes follow the dualities") {
  FinBA two = free_BA(0).alg;
  FinBA four = free_BA(1).alg;
  CHECK(L_step(two, FunctorExpr::pow()).size() == 4);
  CHECK(L_step(four, FunctorExpr::pow()).size() == 16);
  CHECK(L_step(four, FunctorExpr::id()).size() == 4);
  CHECK(Lp_step(forget_W(four), FunctorExpr::pow()).size() == 16);
  // Upsets of the convex powerset of the 2-chain (a 3-chain plus an isolated
  // point): 4 * 2.
  CHECK(Lp_step(upset_DL(Poset::from_label_pairs(
                    FiniteSet::of({"0", "1"}), {{"0", "1"}}, true)),
                FunctorExpr::pow())
            .size() == 8);
}

TEST_CASE("one-step transport maps are isomorphisms") {
  FiniteSet x = FiniteSet::of({"s", "t"});
  for (const FunctorExpr& t : {FunctorExpr::id(), FunctorExpr::pow(),
                               FunctorExpr::dist(2), FunctorExpr::mset(2)}) {
    LatticeHom h = one_step_bool_iso(x, t);
    CHECK(h.injective());
    CHECK(h.surjective());
  }
  Poset c2 = Poset::from_label_pairs(FiniteSet::of({"0", "1"}), {{"0", "1"}},
                                     true);
  LatticeHom hp = one_step_pos_iso(c2);
  CHECK(hp.injective());
  CHECK(hp.surjective());
}

TEST_CASE("the comparison map is an iso for posetified one-step semantics") {
  BetaReport r = build_beta(free_BA(0).alg, FunctorExpr::pow());
  CHECK(r.iso);
  CHECK(r.bijective);
  CHECK(r.hom_ok);
  CHECK(r.natural_ok);
  BetaReport rid = build_beta(free_BA(1).alg, FunctorExpr::id());
  CHECK(rid.iso);
}

TEST_CASE("presented semantics agree for the posetification but not the foil") {
  FreeAlgebra f0 = free_BA(0);
  FreeAlgebra f1 = free_BA(1);
  NamedBetaReport id0 =
      build_beta_named(f0.alg, NamedPosFunctor::IdentityPrime, f0.gens);
  CHECK(id0.iso);
  NamedBetaReport id1 =
      build_beta_named(f1.alg, NamedPosFunctor::IdentityPrime, f1.gens);
  CHECK(id1.iso);
  CHECK(id1.lhs_size == 4);
  CHECK(id1.rhs_size == 4);
  NamedBetaReport dc0 =
      build_beta_named(f0.alg, NamedPosFunctor::DiscreteComponents, f0.gens);
  CHECK(dc0.iso);
  NamedBetaReport dc1 =
      build_beta_named(f1.alg, NamedPosFunctor::DiscreteComponents, f1.gens);
  CHECK(dc1.injective);
  CHECK_FALSE(dc1.surjective);
  CHECK_FALSE(dc1.iso);
  CHECK(dc1.lhs_size == 2);
  CHECK(dc1.rhs_size == 4);
  CHECK(parse_named_pos_functor("DC") == NamedPosFunctor::DiscreteComponents);
  CHECK(parse_named_pos_functor("Id'") == NamedPosFunctor::IdentityPrime);
  CHECK_FALSE(parse_named_pos_functor("Pow").has_value());
}

TEST_CASE("n-step comparisons stay injective for the powerset") {
  NStepReport r = n_step_injectivity(FunctorExpr::pow(), 2);
  CHECK(r.injective);
  REQUIRE(r.sizes.size() == 3);
  CHECK(r.sizes[0] == std::pair<int, int>{2, 2});
  CHECK(r.sizes[1] == std::pair<int, int>{4, 4});
  CHECK(r.sizes[2] == std::pair<int, int>{16, 16});
  NStepReport rid = n_step_injectivity(FunctorExpr::id(), 3);
  CHECK(rid.injective);
  for (auto [l, rr] : rid.sizes) {
    CHECK(l == 2);
    CHECK(rr == 2);
  }
}

TEST_CASE("the stock coinserter counterexample reproduces exactly") {
  WkReport r = wk_counterexample();
  CHECK(r.pass);
  CHECK(r.wk_inserter == 4);
  CHECK(r.wk_apex == 2);
  CHECK(r.detail.find("4 vs 2 — not surjective") != std::string::npos);
}

TEST_CASE("the positive one-step semantics preserves injections") {
  MonoReport r = lp_preserves_monos_check(FunctorExpr::pow(), 2);
  CHECK(r.pass);
  CHECK(r.witness.empty());
}
