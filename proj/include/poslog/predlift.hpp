#pragma once

#include <map>
#include <string>
#include <vector>

#include "poslog/functor.hpp"
#include "poslog/posetify.hpp"

namespace poslog {

// Canonical n-fold Boolean base: bitstring labels "0"/"1", "00".."11", ...,
// with the single label "*" at arity 0. Coordinate i is character position i.
FiniteSet bool_tuples(int n);
// The same carrier under the pointwise order.
Poset bool_tuple_poset(int n);

// An n-ary predicate lifting of T, identified with the characteristic subset
// of T applied to the n-fold Boolean base.
struct Lifting {
  FunctorExpr functor;
  int arity = 0;
  Bits value;  // over obj_full(functor, bool_tuples(arity))
};

// All 2^|T(2^n)| liftings, ascending by characteristic mask; |T(2^n)| ≤ 20.
std::vector<Lifting> enumerate_liftings(const FunctorExpr& t, int n);

// Upset criterion: monotone iff the characteristic set is an upset of the
// reflexive-transitive closure of the lifted pointwise order.
bool is_monotone(const Lifting& l);
// Independent oracle: componentwise monotonicity (inclusion in every
// coordinate) over all carriers with at most `bound` elements.
bool monotone_oracle(const Lifting& l, int bound);

// Upsets of posetify(T, bool_tuple_poset(n)) in ascending mask order: the
// monotone maps from the posetified Boolean base into the 2-chain.
std::vector<Bits> liftings_of_posetification(const FunctorExpr& t, int n);

struct BijectionReport {
  bool pass = true;
  int upset_count = 0;
  int monotone_count = 0;
  // (posetification-side upset, lifting characteristic set), both printed.
  std::vector<std::pair<std::string, std::string>> pairing;
  std::string detail;
};
// Verifies that pulling an upset back along the posetification quotient is a
// bijection onto the monotone liftings.
BijectionReport bijection_check(const FunctorExpr& t, int n);

using LiftingTable = std::map<std::string, Lifting>;
// One lifting per line: name = { <TValue>, ... } : <functor-expr> @ <arity>
LiftingTable parse_lifting_table(const std::string& text);
std::string lifting_table_to_text(const LiftingTable& table);

}  // namespace poslog
