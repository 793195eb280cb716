// Acceptance gate: one independently checkable criterion per line. Each
// criterion re-derives its expected values where they are cheap to state
// (closed forms, pinned shapes, brute-force recounts) instead of trusting the
// code paths under test.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "poslog/batteries.hpp"
#include "poslog/enumerate.hpp"
#include "poslog/error.hpp"
#include "poslog/lattice.hpp"
#include "poslog/logic.hpp"
#include "poslog/posetify.hpp"
#include "poslog/predlift.hpp"

using namespace poslog;

namespace {

struct Criterion {
  std::string title;
  std::function<std::string()> run;  // empty string = pass, else reason
};

std::string crit_convex_powerset() {
  long long cases = 0;
  for (int k = 0; k <= 4; ++k)
    for (const Poset& x : all_posets(k)) {
      PosetifyResult pr = posetify_obj(FunctorExpr::pow(), x);
      if (!poset_iso(pr.poset, convex_powerset(x)))
        return "posetification differs from the convex powerset on " +
               x.to_text();
      ++cases;
    }
  Poset c2 = Poset::from_label_pairs(FiniteSet::of({"0", "1"}), {{"0", "1"}},
                                     true);
  Poset p = posetify_obj(FunctorExpr::pow(), c2).poset;
  if (p.size() != 4) return "2-chain image has size " + std::to_string(p.size());
  int e = p.carrier.index("{}"), lo = p.carrier.index("{0}");
  int both = p.carrier.index("{0,1}"), hi = p.carrier.index("{1}");
  if (e < 0 || lo < 0 || both < 0 || hi < 0) return "2-chain image mislabeled";
  for (int other : {lo, both, hi})
    if (p.le(e, other) || p.le(other, e)) return "empty set is not isolated";
  if (!(p.le(lo, both) && p.le(both, hi) && !p.le(hi, lo)))
    return "2-chain image is not the expected 3-chain plus isolated point";
  return cases == 243 ? "" : "expected 243 posets, saw " + std::to_string(cases);
}

std::string crit_route_agreement() {
  // posetify_obj runs the coinserter construction and an independent
  // relation-lifting quotient and raises internal_error on any mismatch, so
  // agreement is certified by completing the sweep below the matrix gate.
  std::vector<FunctorExpr> battery = {FunctorExpr::id(), FunctorExpr::pow(),
                                      FunctorExpr::dist(2), FunctorExpr::mset(2),
                                      FunctorExpr::nbhd()};
  long long cases = 0;
  for (const FunctorExpr& t : battery)
    for (int k = 0; k <= 3; ++k)
      for (const Poset& x : all_posets(k)) {
        posetify_obj(t, x);
        ++cases;
      }
  return cases == 120 ? "" : "expected 120 pairs, saw " + std::to_string(cases);
}

std::string crit_wpb_exact_agreement() {
  std::vector<FunctorExpr> battery = {FunctorExpr::id(), FunctorExpr::pow(),
                                      FunctorExpr::dist(2), FunctorExpr::mset(2),
                                      FunctorExpr::nbhd()};
  for (const FunctorExpr& t : battery) {
    WpbReport w = preserves_weak_pullbacks(t, 2);
    ExsqReport e = preserves_exact_squares(t, 2);
    if (w.preserves != e.preserves)
      return t.to_string() + ": verdicts differ at bound 2";
    bool expect = t.kind() != FunctorKind::Nbhd;
    if (w.preserves != expect)
      return t.to_string() + ": unexpected verdict at bound 2";
  }
  WpbReport w3 = preserves_weak_pullbacks(FunctorExpr::nbhd(), 3);
  if (w3.preserves || w3.cospan.empty() || w3.u.empty() || w3.v.empty())
    return "no weak-pullback counterexample witness for Nbhd at bound 3";
  ExsqReport e3 = preserves_exact_squares(FunctorExpr::nbhd(), 3);
  if (e3.preserves || e3.witness.empty())
    return "no exact-square counterexample witness for Nbhd at bound 3";
  return "";
}

std::string crit_dualities() {
  DualityReport r = verify_dualities(3);
  return r.pass ? "" : r.witness;
}

std::string crit_beta_battery() {
  std::vector<FunctorExpr> ts = {FunctorExpr::id(), FunctorExpr::pow(),
                                 FunctorExpr::dist(2), FunctorExpr::mset(2)};
  for (int n = 0; n <= 2; ++n) {
    FinBA a = free_BA(n).alg;
    for (const FunctorExpr& t : ts) {
      BetaReport r = build_beta(a, t);
      if (!r.iso)
        return t.to_string() + " over the free algebra on " +
               std::to_string(n) + " generators: " + r.detail;
      if (n == 1 && t.kind() == FunctorKind::Pow) {
        if (r.beta.dom.size() != 16 || r.beta.cod.size() != 16)
          return "expected 16 elements on both sides, saw " +
                 std::to_string(r.beta.dom.size()) + " and " +
                 std::to_string(r.beta.cod.size());
      }
    }
  }
  return "";
}

std::string crit_counterexample() {
  WkReport r = wk_counterexample();
  if (!r.pass) return r.detail;
  if (r.wk_inserter != 4 || r.wk_apex != 2)
    return "sizes " + std::to_string(r.wk_inserter) + " vs " +
           std::to_string(r.wk_apex);
  if (r.detail.find("4 vs 2 — not surjective") == std::string::npos)
    return "verdict line missing";
  return "";
}

std::string crit_open_map_calculus() {
  BatteryReport adj = adjunction_battery(3);
  if (!adj.pass) return "adjunction: " + adj.witness;
  BatteryReport bc = bc_exact_battery(3);
  if (!bc.pass) return "Beck-Chevalley vs exactness: " + bc.witness;
  BatteryReport sc = split_coins_battery(5);
  if (!sc.pass) return "split coinserter laws: " + sc.witness;
  return "";
}

std::string crit_adequacy() {
  BatteryReport ad = adequacy_battery(3, 3);
  if (!ad.pass) return ad.witness;
  BatteryReport du = dunn_battery(3);
  if (!du.pass) return du.witness;
  return "";
}

std::string crit_lifting_counts() {
  // Recount with the brute-force componentwise oracle before comparing.
  auto counts = [](const FunctorExpr& t, int arity) {
    int criterion = 0, oracle = 0;
    for (const Lifting& l : enumerate_liftings(t, arity)) {
      bool a = is_monotone(l), b = monotone_oracle(l, 3);
      if (a != b) return std::pair<int, int>{-1, -1};
      criterion += a;
      oracle += b;
    }
    return std::pair<int, int>{criterion, oracle};
  };
  auto [id1, id1o] = counts(FunctorExpr::id(), 1);
  if (id1 != 3 || id1o != 3)
    return "identity at arity 1: " + std::to_string(id1);
  auto [pw1, pw1o] = counts(FunctorExpr::pow(), 1);
  if (pw1 != 8 || pw1o != 8)
    return "powerset at arity 1: " + std::to_string(pw1);
  BijectionReport b = bijection_check(FunctorExpr::pow(), 0);
  if (!b.pass || b.upset_count != b.monotone_count)
    return "powerset at arity 0: " + b.detail;
  return "";
}

std::string crit_expressivity() {
  for (int n : {1, 2}) {
    NStepReport r = n_step_injectivity(FunctorExpr::pow(), n);
    if (!r.injective)
      return std::to_string(n) + "-step comparison not injective: " + r.detail;
  }
  MonoReport m = lp_preserves_monos_check(FunctorExpr::pow(), 3);
  if (!m.pass) return "injection not preserved: " + m.witness;
  return "";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"posetified powerset is the convex powerset (all posets to 4 points; "
       "pinned 2-chain shape)",
       crit_convex_powerset},
      {"coinserter and relation-lifting routes agree on the battery (all "
       "posets to 3 points)",
       crit_route_agreement},
      {"weak-pullback and exact-square verdicts coincide at bound 2; the "
       "neighborhood functor fails both with witnesses at bound 3",
       crit_wpb_exact_agreement},
      {"duality round trips hold at bound 3 (Birkhoff, Stone, and the four "
       "square identities)",
       crit_dualities},
      {"the one-step comparison map is a lattice isomorphism across the "
       "battery; 16 = 16 at the powerset over one generator",
       crit_beta_battery},
      {"the coinserter counterexample reproduces 4 vs 2 — not surjective",
       crit_counterexample},
      {"adjunction laws, Beck-Chevalley iff exactness (bound 3), and the "
       "split-coinserter laws (bound 5) hold",
       crit_open_map_calculus},
      {"positive and translated Boolean semantics agree to depth 3; both "
       "ordered inequations are valid on all models to 3 states",
       crit_adequacy},
      {"monotone lifting counts are 3 and 8, match the componentwise oracle, "
       "and biject with upsets at arity 0",
       crit_lifting_counts},
      {"n-step comparisons are injective for n = 1, 2 and injections are "
       "preserved at bound 3",
       crit_expressivity},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string reason;
    try {
      reason = criteria[i].run();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      std::printf("[PASS] %zu: %s\n", i + 1, criteria[i].title.c_str());
    } else {
      std::printf("[FAIL] %zu: %s — %s\n", i + 1, criteria[i].title.c_str(),
                  reason.c_str());
      ++failed;
    }
  }
  if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
