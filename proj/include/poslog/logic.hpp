#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poslog/fin.hpp"
#include "poslog/functor.hpp"
#include "poslog/lattice.hpp"
#include "poslog/posetify.hpp"
#include "poslog/predlift.hpp"

namespace poslog {

// ---------------------------------------------------------------------------
// Modal formulas.
//
// Concrete syntax:   atom | T | F | ~f | f & f | f | f | []f | <>f
//                  | lift name(f, ..., f) | (f)
// '&' binds tighter than '|'; the prefix operators bind tightest.
// ---------------------------------------------------------------------------

enum class Conn { Atom, Top, Bot, Not, And, Or, Box, Dia, Lift };

class Formula {
 public:
  static Formula atom(const std::string& name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula box(Formula f);
  static Formula dia(Formula f);
  static Formula lift(const std::string& name, std::vector<Formula> args);

  Conn kind() const;
  const std::string& name() const;  // Atom and Lift only
  int arity() const;
  const Formula& child(int i) const;

  // Negation-free apart from (optionally) negated atoms; no lift operators.
  bool is_positive(bool allow_negated_atoms = false) const;
  int modal_depth() const;
  std::string to_string() const;

  static Formula parse(const std::string& text);
  // parse + positivity validation.
  static Formula parse_positive(const std::string& text,
                                bool allow_negated_atoms = false);

  bool operator==(const Formula& o) const;

 private:
  struct Node;
  static Formula make(Conn k, std::string name, std::vector<Formula> kids);
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// <> f  ~~>  ~[]~f on positive input.
Formula beta_translate(const Formula& positive);
// Pushes negations to the atoms, turning ~[] into <>~ and dually; accepts the
// ~/&/|/[]/<> fragment and yields a positive formula with negated atoms.
Formula positive_normal_form(const Formula& f);

// ---------------------------------------------------------------------------
// Models.
//
// File format (one directive per line, '#' comments):
//   functor: Pow                 (optional, defaults to Pow)
//   states: x y z
//   order: x y                   (x <= y; presence makes the model ordered)
//   xi: x -> {y,z}               (a T-value label over the state set)
//   val: p = {x,y}
// Ordered models require the functor to be Pow; their xi-values are convex
// subsets and the coalgebra map must be monotone for the Egli-Milner order.
// ---------------------------------------------------------------------------

struct Coalgebra {
  FunctorExpr functor;
  FiniteSet states;
  std::vector<int> xi;  // indices into obj_full(functor, states)
  std::map<std::string, Bits> val;

  static Coalgebra parse(const std::string& text);
  std::string to_text() const;
};

struct OrderedCoalgebra {
  Poset states;
  std::vector<Bits> xi;  // convex subsets, Egli-Milner monotone
  std::map<std::string, Bits> val;  // upsets

  static OrderedCoalgebra parse(const std::string& text);
  std::string to_text() const;
};

bool model_text_is_ordered(const std::string& text);

// Kripke-style semantics; [] and <> require the Pow functor, lift operators
// look up `table` and must match the model's functor and their arity.
Bits eval_bool(const Formula& f, const Coalgebra& m,
               const LiftingTable& table = {});
// Ordered semantics over convex-powerset coalgebras; positive input only.
// The result is asserted to be an upset.
Bits eval_pos(const Formula& f, const OrderedCoalgebra& m);

// ---------------------------------------------------------------------------
// One-step logic functors and the comparison map.
// ---------------------------------------------------------------------------

// L A = powerset algebra of T(ultrafilters A).
FinBA L_step(const FinBA& a, const FunctorExpr& t);
LatticeHom L_hom(const LatticeHom& h, const FunctorExpr& t);
// L' A = upset algebra of posetify(T, prime filters A).
FinDL Lp_step(const FinDL& a, const FunctorExpr& t);
LatticeHom Lp_hom(const LatticeHom& h, const FunctorExpr& t);

// The canonical one-step semantics: L(P X) ≅ P(T X) sending the generator
// "box a" to {t in T X | t lifts into a}, realised as transport along the
// bijection T(ultrafilters P X) ≅ T X.
LatticeHom one_step_bool_iso(const FiniteSet& x, const FunctorExpr& t);
// Ordered counterpart for the convex powerset: L'(P' X) ≅ P'(posetify(Pow,X)).
LatticeHom one_step_pos_iso(const Poset& x);

struct BetaReport {
  LatticeHom beta;  // L'(W A) -> W(L A)
  bool bijective = false;
  bool hom_ok = false;
  bool natural_ok = false;
  bool iso = false;
  std::string detail;
};
// Builds the comparison L'(W A) -> W(L A) as a composite of the three
// concrete identifications (prime filters of W A = discrete ultrafilters,
// posetify over a discrete base, upsets of a discrete poset = powerset) and
// checks bijectivity, the homomorphism laws and naturality in A.
BetaReport build_beta(const FinBA& a, const FunctorExpr& t);

// Poset functors given by name rather than by posetifying a set functor; used
// to compare the comparison map across non-posetification choices.
enum class NamedPosFunctor { DiscreteComponents, IdentityPrime };
std::optional<NamedPosFunctor> parse_named_pos_functor(const std::string& s);

struct NamedBetaReport {
  int lhs_size = 0;
  int rhs_size = 0;
  bool injective = false;
  bool surjective = false;
  bool iso = false;
  std::string detail;
};
// Computes L'_G(W A) from a finite presentation of W A by generators and
// relations (a coinserter of maps between free distributive lattices, pushed
// through G on the dual side) and factors the canonical comparison map
// through it. `ba_gens` may list indices that generate A as a Boolean
// algebra; when empty a small generating set is searched for.
NamedBetaReport build_beta_named(const FinBA& a, NamedPosFunctor g,
                                 const std::vector<int>& ba_gens = {});

struct NStepReport {
  bool injective = false;
  // (|L'^k 2|, |P' T'^k 1|) for k = 0..n.
  std::vector<std::pair<int, int>> sizes;
  std::string detail;
};
// Builds the n-step comparison L'^n(2) -> P'(T'^n 1) by repeatedly applying
// the one-step transport and checks injectivity at every stage.
NStepReport n_step_injectivity(const FunctorExpr& t, int n);

struct WkReport {
  bool pass = false;
  int wk_inserter = 0;  // |W K (P' of the inserter)|
  int wk_apex = 0;      // |W K (P' of the apex)|
  std::string detail;
};
// The stock counterexample: a split coinserter of posets whose upset-algebra
// coinserter is computed exactly, with the complemented-centre comparison
// failing to be surjective (4 vs 2).
WkReport wk_counterexample();

struct MonoReport {
  bool pass = true;
  std::string witness;
};
// L' preserves injectivity on all injective homs between upset algebras of
// posets with at most `bound` elements (equivalently: duals of surjective
// monotone maps).
MonoReport lp_preserves_monos_check(const FunctorExpr& t, int bound);

}  // namespace poslog
