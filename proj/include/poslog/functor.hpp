#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "poslog/fin.hpp"

namespace poslog {

enum class FunctorKind { Id, Const, Pow, Dist, MSet, Nbhd, Sum, Prod, Exp, Comp };

// Abstract syntax of a Set-endofunctor:
//   Id | Const({...}) | Pow | Dist@d | MSet@k | Nbhd | F+G | F*G | F^n | F.G
// Dist@d enumerates probability vectors with common denominator d; MSet@k
// multisets of total size exactly k; F^n the n-fold product; F.G the
// composite F after G.
class FunctorExpr {
 public:
  FunctorExpr() = default;

  static FunctorExpr id();
  static FunctorExpr constant(FiniteSet value);
  static FunctorExpr pow();
  static FunctorExpr dist(int denom);
  static FunctorExpr mset(int total);
  static FunctorExpr nbhd();
  static FunctorExpr sum(FunctorExpr f, FunctorExpr g);
  static FunctorExpr prod(FunctorExpr f, FunctorExpr g);
  static FunctorExpr exp(FunctorExpr f, int n);
  static FunctorExpr comp(FunctorExpr f, FunctorExpr g);  // F.G = F after G

  // Grammar above; precedence ^ then . then * then +, parentheses allowed.
  static FunctorExpr parse(const std::string& text);
  std::string to_string() const;

  FunctorKind kind() const;
  const FunctorExpr& left() const;
  const FunctorExpr& right() const;
  int param() const;              // Dist denominator, MSet total, Exp power
  const FiniteSet& value() const; // Const

 private:
  struct Node;
  std::shared_ptr<const Node> n;
  explicit FunctorExpr(std::shared_ptr<const Node> p) : n(std::move(p)) {}
};

// Internal encoding of one element of T(X). Which fields are live depends on
// the outermost functor node; children of Sum/Prod/Exp hold indices into the
// enumeration of the component functor applied to the same base.
struct Val {
  enum class K : std::uint8_t { Base, Mask, Fam, Vec, In, Tup };
  K k = K::Base;
  int tag = 0;                     // Base: carrier index; In: 0=inl, 1=inr
  std::uint64_t mask = 0;          // Pow: subset of the base
  std::vector<std::uint64_t> fam;  // Nbhd: sorted set of subset masks
  std::vector<int> vec;            // Dist/MSet: numerators / multiplicities
  std::vector<int> sub;            // In: one index; Tup: component indices

  friend bool operator==(const Val&, const Val&) = default;
  friend auto operator<=>(const Val& a, const Val& b) {
    auto ka = std::tie(a.k, a.tag, a.mask, a.fam, a.vec, a.sub);
    auto kb = std::tie(b.k, b.tag, b.mask, b.fam, b.vec, b.sub);
    return ka <=> kb;
  }
};

// Fully enumerated T(X): canonical labels plus the aligned internal values.
struct TSet {
  FiniteSet elems;
  std::vector<Val> vals;
  std::map<Val, int> index;

  int index_of(const Val& v) const {
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }
};

// Cardinality of T(X) for |X| = n, saturating at count_cap().
std::uint64_t count_obj(const FunctorExpr& t, std::uint64_t n);
std::uint64_t count_cap();

// Memoized full enumeration; throws resource_error past the size guard.
const TSet& obj_full(const FunctorExpr& t, const FiniteSet& x);
FiniteSet apply_obj(const FunctorExpr& t, const FiniteSet& x);
FnMap apply_map(const FunctorExpr& t, const FnMap& f);

// Image of T(W) under (Tp, Tq) as index pairs into obj(T, p.cod) × obj(T, q.cod).
// Nbhd takes a preimage-consistency route that never materializes T(W).
std::vector<std::pair<int, int>> span_pairs(const FunctorExpr& t, const FnMap& p,
                                            const FnMap& q);

// Relation lifting: r as a span of projections from its pair set.
Relation rel_lift(const FunctorExpr& t, const Relation& r);

struct Pullback {
  FiniteSet apex;  // pairs (x,y) with f(x) = g(y)
  FnMap p1, p2;
};
Pullback weak_pullback(const FnMap& f, const FnMap& g);

struct WpbReport {
  bool preserves = true;
  std::string cospan;  // readable description of the failing cospan
  std::string u, v;    // labels of the unmatched pair in T(X) × T(Y)
};
// Checks every cospan shape with |X|,|Y|,|Z| <= bound (one per isomorphism
// class), smallest pullbacks first.
WpbReport preserves_weak_pullbacks(const FunctorExpr& t, int bound);

struct LawReport {
  bool pass = true;
  std::string detail;
};
// Identity and composition laws over all functions between sets of size <= bound.
LawReport check_functor_laws(const FunctorExpr& t, int bound);

}  // namespace poslog
