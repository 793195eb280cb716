#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "poslog/error.hpp"
#include "poslog/lattice.hpp"
#include "poslog/logic.hpp"
#include "poslog/poset.hpp"
#include "poslog/predlift.hpp"

using namespace poslog;

namespace {

std::string what_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("poset files accept comments and blank lines") {
  Poset p = Poset::parse(
      "# a two-chain\n"
      "\n"
      "elements: lo hi\n"
      "le: lo hi   # cover pair\n");
  CHECK(p.size() == 2);
  CHECK(p.le(p.carrier.index("lo"), p.carrier.index("hi")));
  CHECK(Poset::parse(p.to_text()).same_order_as(p));
}

TEST_CASE("poset file output is stable") {
  Poset p = Poset::parse("elements: c b a\nle: c b\nle: b a\n");
  CHECK(p.to_text() == Poset::parse(p.to_text()).to_text());
  // Carrier labels are sorted, so logically equal inputs print identically.
  Poset q = Poset::parse("elements: a b c\nle: b a\nle: c b\n");
  CHECK(p.to_text() == q.to_text());
}

TEST_CASE("poset file diagnostics name the offending construct") {
  CHECK(what_of([] { Poset::parse("le: a b\n"); }).find("elements") !=
        std::string::npos);
  CHECK(what_of([] {
          Poset::parse("elements: a b\nle: a z\n");
        }).find("z") != std::string::npos);
  CHECK(what_of([] {
          Poset::parse("elements: a b\nle: a b\nle: b a\n");
        }).find("antisymmetry") != std::string::npos);
}

TEST_CASE("model files default to the powerset functor") {
  Coalgebra m = Coalgebra::parse("states: s\nxi: s -> {s}\n");
  CHECK(m.functor.kind() == FunctorKind::Pow);
  CHECK(m.to_text().find("functor: Pow") != std::string::npos);
}

TEST_CASE("model files are order-insensitive between sections") {
  Coalgebra a = Coalgebra::parse(
      "states: x y\nval: p = {x}\nxi: y -> {}\nxi: x -> {x,y}\n");
  Coalgebra b = Coalgebra::parse(
      "states: x y\nxi: x -> {x,y}\nxi: y -> {}\nval: p = {x}\n");
  CHECK(a.to_text() == b.to_text());
}

TEST_CASE("model file diagnostics carry line numbers") {
  std::string msg = what_of([] {
    Coalgebra::parse("states: x\nxi: x -> {x}\nval: p = {zz}\n");
  });
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("zz") != std::string::npos);
  std::string dup = what_of([] {
    Coalgebra::parse("states: x\nxi: x -> {x}\nxi: x -> {}\n");
  });
  CHECK(dup.find("line 3") != std::string::npos);
}

TEST_CASE("an order line switches the format to ordered models") {
  std::string text =
      "states: a b\n"
      "order: a b\n"
      "xi: a -> {a}\n"
      "xi: b -> {b}\n"
      "val: p = {b}\n";
  CHECK(model_text_is_ordered(text));
  OrderedCoalgebra m = OrderedCoalgebra::parse(text);
  CHECK(m.to_text().find("order: a b") != std::string::npos);
  OrderedCoalgebra again = OrderedCoalgebra::parse(m.to_text());
  CHECK(again.to_text() == m.to_text());
  // The same text without the order line parses as a Kripke model.
  CHECK_FALSE(model_text_is_ordered(
      "states: a b\nxi: a -> {a}\nxi: b -> {b}\n"));
}

TEST_CASE("lattice files round-trip both backends") {
  FinDL u = upset_DL(Poset::parse("elements: a b\nle: a b\n"));
  FinDL u2 = FinDL::parse(u.to_text());
  CHECK(u2.same_algebra_as(u));
  CHECK(u2.to_text() == FinDL::parse(u2.to_text()).to_text());
  FinBA b = powerset_BA(FiniteSet::of({"s", "t"}));
  FinBA b2 = FinBA::parse(b.to_text());
  CHECK(b2.is_boolean());
  CHECK(b2.same_algebra_as(b));
}

TEST_CASE("lattice file diagnostics name the violated law") {
  // A meet table breaking commutativity is rejected with the law named.
  std::string text =
      "elements: 0 1\n"
      "bot: 0\n"
      "top: 1\n"
      "meet: 0 1 0\n"
      "meet: 1 0 1\n"
      "meet: 0 0 0\n"
      "meet: 1 1 1\n"
      "join: 0 0 0\n"
      "join: 0 1 1\n"
      "join: 1 0 1\n"
      "join: 1 1 1\n";
  std::string msg = what_of([&] { FinDL::parse(text); });
  CHECK_FALSE(msg.empty());
}

TEST_CASE("lifting table files round-trip") {
  std::string text =
      "dia = { {1}, {0,1} } : Pow @ 1\n"
      "unit = { * } : Id @ 0\n";
  LiftingTable t = parse_lifting_table(text);
  CHECK(lifting_table_to_text(t) ==
        lifting_table_to_text(parse_lifting_table(lifting_table_to_text(t))));
  std::string msg =
      what_of([&] { parse_lifting_table("x = { {1} } : Pow\n"); });
  CHECK(msg.find("@") != std::string::npos);
}
