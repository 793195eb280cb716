#pragma once

#include <string>

#include "poslog/functor.hpp"
#include "poslog/poset.hpp"

namespace poslog {

// T'X together with the quotient map e from the enumeration of T(X0).
struct PosetifyResult {
  Poset poset;
  FnMap e;
};

// T' = the universal locally monotone extension of T along the discrete
// functor, computed as the coinserter over the truncated nerve and
// cross-checked against an independently coded relation-lifting quotient.
PosetifyResult posetify_obj(const FunctorExpr& t, const Poset& x);
MonotoneMap posetify_map(const FunctorExpr& t, const MonotoneMap& f);

// Memoizing wrapper around posetify_obj/posetify_map for one base functor.
class Posetifier {
 public:
  explicit Posetifier(FunctorExpr t) : t_(std::move(t)) {}
  const FunctorExpr& base() const { return t_; }
  PosetifyResult obj(const Poset& x) const { return posetify_obj(t_, x); }
  MonotoneMap map(const MonotoneMap& f) const { return posetify_map(t_, f); }

 private:
  FunctorExpr t_;
};

// Closed form of Pow': convex subsets under the Egli-Milner order.
Poset convex_powerset(const Poset& x);

enum class PowVariant { Down, Up };
// Closed forms: downsets by inclusion, upsets by reverse inclusion.
Poset powerset_variant_closed(const Poset& x, PowVariant v);
// Same functors via the quotient construction with the fiber order unioned in.
Poset powerset_variant_lan(const Poset& x, PowVariant v);

struct ExsqReport {
  bool preserves = true;
  std::string witness;
};
// Applies T' to every exact square over posets of size <= bound and tests
// exactness of the image; the verdict must agree with
// preserves_weak_pullbacks(t, bound) or an internal error is raised.
ExsqReport preserves_exact_squares(const FunctorExpr& t, int bound);

// A Pos-endofunctor presented by its object/arrow actions.
class PosFunctor {
 public:
  virtual ~PosFunctor() = default;
  virtual std::string name() const = 0;
  virtual Poset obj(const Poset& x) const = 0;
  virtual MonotoneMap map(const MonotoneMap& f) const = 0;
};

// X |-> discrete poset of connected components (an extension of Id that is
// not its posetification).
const PosFunctor& dc_functor();
// X |-> [2-chain, X] with the pointwise order (does not preserve surjections).
const PosFunctor& two_hom_functor();
// The posetification of Id (the identity on Pos), for cross-validation.
const PosFunctor& id_prime_functor();

class PosetifyFunctor : public PosFunctor {
 public:
  explicit PosetifyFunctor(FunctorExpr t) : t_(std::move(t)) {}
  std::string name() const override { return "posetify(" + t_.to_string() + ")"; }
  Poset obj(const Poset& x) const override { return posetify_obj(t_, x).poset; }
  MonotoneMap map(const MonotoneMap& f) const override {
    return posetify_map(t_, f);
  }

 private:
  FunctorExpr t_;
};

// True iff the image of the nerve cocone of x under g is again a coinserter.
bool preserves_nerve_coinserters(const PosFunctor& g, const Poset& x);

// posetify(T.S, X) isomorphic to posetify(T, posetify(S, X)) through the
// canonical encoding map.
bool composition_iso_check(const FunctorExpr& t, const FunctorExpr& s,
                           const Poset& x);

}  // namespace poslog
