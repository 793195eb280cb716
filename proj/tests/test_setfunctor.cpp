#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "poslog/error.hpp"
#include "poslog/functor.hpp"

using namespace poslog;

namespace {

FiniteSet named(int n) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back("x" + std::to_string(i));
  return FiniteSet::of(l);
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::vector<FunctorExpr> battery() {
  return {FunctorExpr::id(), FunctorExpr::pow(), FunctorExpr::dist(2),
          FunctorExpr::mset(2), FunctorExpr::nbhd()};
}

// All index tables for functions a -> b.
std::vector<std::vector<int>> all_tabs(int a, int b) {
  std::vector<std::vector<int>> out;
  if (a == 0) return {{}};
  if (b == 0) return {};
  std::vector<int> t(a, 0);
  while (true) {
    out.push_back(t);
    int d = 0;
    while (d < a && ++t[d] == b) t[d++] = 0;
    if (d == a) break;
  }
  return out;
}

}  // namespace

TEST_CASE("expression parsing round-trips and respects precedence") {
  for (std::string s : {"Id", "Pow", "Dist@2", "MSet@3", "Nbhd",
                        "Id+Pow*Id", "Pow.Pow", "(Id+Id)^2", "Const({a,b})",
                        "Pow*Id+Id", "Pow.Id^2"}) {
    FunctorExpr t = FunctorExpr::parse(s);
    CHECK(FunctorExpr::parse(t.to_string()).to_string() == t.to_string());
  }
  CHECK(FunctorExpr::parse("Id + Pow * Id").to_string() == "Id+Pow*Id");
  // * binds tighter than +, ^ tighter than .
  FunctorExpr t = FunctorExpr::parse("Id+Pow*Id");
  CHECK(t.kind() == FunctorKind::Sum);
  FunctorExpr c = FunctorExpr::parse("Pow.Id^2");
  CHECK(c.kind() == FunctorKind::Comp);
  CHECK(c.right().kind() == FunctorKind::Exp);
  CHECK_THROWS_AS(FunctorExpr::parse("Dist@"), input_error);
  CHECK_THROWS_AS(FunctorExpr::parse("Frob"), input_error);
}

TEST_CASE("object counts match closed formulas") {
  for (std::uint64_t n = 0; n <= 6; ++n) {
    CHECK(count_obj(FunctorExpr::id(), n) == n);
    CHECK(count_obj(FunctorExpr::pow(), n) == (std::uint64_t{1} << n));
    // Distributions with denominator d and multisets of size k over n points
    // are both counted by binomial coefficients.
    CHECK(count_obj(FunctorExpr::dist(2), n) == binom(n + 1, 2));
    CHECK(count_obj(FunctorExpr::mset(2), n) == binom(n + 1, 2));
    CHECK(count_obj(FunctorExpr::dist(3), n) == binom(n + 2, 3));
    if (n <= 4)
      CHECK(count_obj(FunctorExpr::nbhd(), n) ==
            (std::uint64_t{1} << (std::uint64_t{1} << n)));
    CHECK(count_obj(FunctorExpr::sum(FunctorExpr::id(), FunctorExpr::pow()), n) ==
          n + (std::uint64_t{1} << n));
    CHECK(count_obj(FunctorExpr::prod(FunctorExpr::id(), FunctorExpr::id()), n) ==
          n * n);
    CHECK(count_obj(FunctorExpr::exp(FunctorExpr::id(), 3), n) == n * n * n);
    if (n <= 4)
      CHECK(count_obj(FunctorExpr::comp(FunctorExpr::pow(), FunctorExpr::pow()), n) ==
            (std::uint64_t{1} << (std::uint64_t{1} << n)));
  }
  CHECK(count_obj(FunctorExpr::nbhd(), 10) == count_cap());
  CHECK(count_obj(FunctorExpr::comp(FunctorExpr::pow(), FunctorExpr::pow()), 6) ==
        count_cap());
}

TEST_CASE("enumerations are canonical and guarded") {
  for (const FunctorExpr& t : battery()) {
    for (int n = 0; n <= 3; ++n) {
      const TSet& ts = obj_full(t, named(n));
      CHECK(ts.elems.size() == ts.vals.size());
      CHECK((std::uint64_t)ts.elems.size() == count_obj(t, n));
      std::set<Val> distinct(ts.vals.begin(), ts.vals.end());
      CHECK(distinct.size() == ts.vals.size());
      for (int i = 0; i < ts.elems.size(); ++i)
        CHECK(ts.index_of(ts.vals[(std::size_t)i]) == i);
    }
  }
  CHECK_THROWS_AS(obj_full(FunctorExpr::nbhd(), named(5)), resource_error);
}

TEST_CASE("map application is functorial") {
  for (const FunctorExpr& t : battery()) {
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b)
        for (const auto& tf : all_tabs(a, b)) {
          FnMap f = FnMap::from_indices(named(a), named(b), tf);
          FnMap tfm = apply_map(t, f);
          CHECK(tfm.dom == apply_obj(t, named(a)));
          CHECK(tfm.cod == apply_obj(t, named(b)));
          for (const auto& tg : all_tabs(b, 2)) {
            FnMap g = FnMap::from_indices(named(b), named(2), tg);
            CHECK(apply_map(t, g.after(f)) == apply_map(t, g).after(tfm));
          }
        }
    CHECK(apply_map(t, FnMap::identity(named(3))) ==
          FnMap::identity(apply_obj(t, named(3))));
  }
}

TEST_CASE("powerset relation lifting is Egli-Milner") {
  FiniteSet x = named(3), y = named(2);
  std::vector<std::pair<int, int>> rp = {{0, 0}, {1, 0}, {1, 1}};
  Relation r = Relation::make(x, y, rp);
  Relation lifted = rel_lift(FunctorExpr::pow(), r);
  const TSet& tx = obj_full(FunctorExpr::pow(), x);
  const TSet& ty = obj_full(FunctorExpr::pow(), y);
  for (int i = 0; i < tx.elems.size(); ++i)
    for (int j = 0; j < ty.elems.size(); ++j) {
      std::uint64_t s = tx.vals[(std::size_t)i].mask;
      std::uint64_t t = ty.vals[(std::size_t)j].mask;
      bool fwd = true, bwd = true;
      for (int a = 0; a < x.size(); ++a) {
        if (!(s >> a & 1)) continue;
        bool hit = false;
        for (auto [ra, rb] : rp)
          if (ra == a && (t >> rb & 1)) hit = true;
        fwd = fwd && hit;
      }
      for (int b = 0; b < y.size(); ++b) {
        if (!(t >> b & 1)) continue;
        bool hit = false;
        for (auto [ra, rb] : rp)
          if (rb == b && (s >> ra & 1)) hit = true;
        bwd = bwd && hit;
      }
      CHECK(lifted.contains(i, j) == (fwd && bwd));
    }
}

TEST_CASE("distribution relation lifting is coupling existence") {
  FiniteSet x = named(2), y = named(2);
  std::vector<std::pair<int, int>> rp = {{0, 0}, {1, 0}, {1, 1}};
  Relation r = Relation::make(x, y, rp);
  Relation lifted = rel_lift(FunctorExpr::dist(2), r);
  const TSet& tx = obj_full(FunctorExpr::dist(2), x);
  const TSet& ty = obj_full(FunctorExpr::dist(2), y);
  // Independent oracle: search integer matrices supported on r with the two
  // marginals.
  auto coupled = [&](const std::vector<int>& mu, const std::vector<int>& nu) {
    std::vector<std::vector<int>> m(2, std::vector<int>(2, 0));
    std::function<bool(int)> rec = [&](int cell) -> bool {
      if (cell == 4) {
        for (int i = 0; i < 2; ++i) {
          int row = m[i][0] + m[i][1];
          if (row != mu[i]) return false;
        }
        for (int j = 0; j < 2; ++j) {
          int col = m[0][j] + m[1][j];
          if (col != nu[j]) return false;
        }
        return true;
      }
      int i = cell / 2, j = cell % 2;
      int cap = r.contains(i, j) ? 2 : 0;
      for (int v = 0; v <= cap; ++v) {
        m[i][j] = v;
        if (rec(cell + 1)) return true;
      }
      m[i][j] = 0;
      return false;
    };
    return rec(0);
  };
  for (int i = 0; i < tx.elems.size(); ++i)
    for (int j = 0; j < ty.elems.size(); ++j)
      CHECK(lifted.contains(i, j) ==
            coupled(tx.vals[(std::size_t)i].vec, ty.vals[(std::size_t)j].vec));
}

TEST_CASE("relation lifting of a graph is the graph of the lifted map") {
  for (const FunctorExpr& t : battery()) {
    FiniteSet x = named(2), y = named(2);
    for (const auto& tf : all_tabs(2, 2)) {
      FnMap f = FnMap::from_indices(x, y, tf);
      std::vector<std::pair<int, int>> gp;
      for (int i = 0; i < 2; ++i) gp.push_back({i, tf[(std::size_t)i]});
      Relation lifted = rel_lift(t, Relation::make(x, y, gp));
      FnMap tfm = apply_map(t, f);
      std::vector<std::pair<int, int>> expect;
      for (int i = 0; i < tfm.dom.size(); ++i) expect.push_back({i, tfm(i)});
      CHECK(lifted.pairs == expect);
    }
  }
}

TEST_CASE("span images agree with direct enumeration off the Nbhd fast path") {
  for (const FunctorExpr& t :
       {FunctorExpr::pow(), FunctorExpr::dist(2), FunctorExpr::mset(2)}) {
    FiniteSet w = named(3), x = named(2), y = named(2);
    FnMap p = FnMap::from_indices(w, x, {0, 0, 1});
    FnMap q = FnMap::from_indices(w, y, {0, 1, 1});
    auto pairs = span_pairs(t, p, q);
    FnMap tp = apply_map(t, p), tq = apply_map(t, q);
    std::set<std::pair<int, int>> expect;
    for (int i = 0; i < tp.dom.size(); ++i) expect.insert({tp(i), tq(i)});
    CHECK(std::set<std::pair<int, int>>(pairs.begin(), pairs.end()) == expect);
  }
}

TEST_CASE("identity and composition laws hold on the battery") {
  for (const FunctorExpr& t : battery()) {
    LawReport r = check_functor_laws(t, 2);
    CHECK(r.pass);
  }
  LawReport comp = check_functor_laws(
      FunctorExpr::comp(FunctorExpr::pow(), FunctorExpr::id()), 2);
  CHECK(comp.pass);
}

TEST_CASE("weak pullback preservation separates the battery") {
  CHECK(preserves_weak_pullbacks(FunctorExpr::id(), 2).preserves);
  CHECK(preserves_weak_pullbacks(FunctorExpr::pow(), 2).preserves);
  CHECK(preserves_weak_pullbacks(FunctorExpr::dist(2), 2).preserves);
  CHECK(preserves_weak_pullbacks(FunctorExpr::mset(2), 2).preserves);
  WpbReport nb = preserves_weak_pullbacks(FunctorExpr::nbhd(), 3);
  CHECK_FALSE(nb.preserves);
  CHECK_FALSE(nb.cospan.empty());
  CHECK_FALSE(nb.u.empty());
  CHECK_FALSE(nb.v.empty());
}

TEST_CASE("weak pullbacks compute pair sets") {
  FnMap f = FnMap::from_indices(named(2), named(1), {0, 0});
  Pullback pb = weak_pullback(f, f);
  CHECK(pb.apex.size() == 4);
  CHECK(pb.p1.dom == pb.apex);
  for (int i = 0; i < pb.apex.size(); ++i)
    CHECK(f(pb.p1(i)) == f(pb.p2(i)));
}
