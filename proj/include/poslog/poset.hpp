#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poslog/fin.hpp"

namespace poslog {

// Finite poset: sorted carrier plus a reflexive, transitive, antisymmetric
// order matrix.
class Poset {
 public:
  FiniteSet carrier;
  BitMat leq;

  Poset() = default;

  static Poset antichain(FiniteSet s);
  // `pairs` are (lower, upper) index pairs. With close=false the relation must
  // already be a partial order; with close=true the reflexive-transitive
  // closure is taken first. Antisymmetry failures are input errors either way.
  static Poset from_pairs(FiniteSet s, const std::vector<std::pair<int, int>>& pairs,
                          bool close);
  static Poset from_label_pairs(
      FiniteSet s, const std::vector<std::pair<std::string, std::string>>& pairs,
      bool close);

  int size() const { return carrier.size(); }
  bool le(int i, int j) const { return leq.get(i, j); }
  const std::string& label(int i) const { return carrier.label(i); }

  // Covering pairs (transitive reduction).
  std::vector<std::pair<int, int>> hasse() const;

  bool is_upset(const Bits& s) const;
  bool is_downset(const Bits& s) const;
  bool is_convex(const Bits& s) const;
  Bits up_closure(Bits s) const;
  Bits down_closure(Bits s) const;
  Bits convex_closure(const Bits& s) const;
  Bits principal_up(int i) const;

  // All upsets in ascending bitmask order; throws resource_error past cap.
  std::vector<Bits> all_upsets(std::size_t cap = size_guard()) const;

  bool is_discrete() const;
  bool same_order_as(const Poset& o) const;  // equal carrier and relation

  // Serialization: "elements:" line then one "le:" line per Hasse pair.
  std::string to_text() const;
  static Poset parse(const std::string& text);
};

std::string subset_label(const FiniteSet& base, const Bits& s);

// Monotone map between posets; constructor validates monotonicity.
struct MonotoneMap {
  Poset dom, cod;
  std::vector<int> tab;

  static MonotoneMap make(Poset dom, Poset cod, std::vector<int> tab);
  static MonotoneMap from_labels(
      Poset dom, Poset cod,
      const std::vector<std::pair<std::string, std::string>>& assign);
  static MonotoneMap identity(const Poset& p);

  int operator()(int i) const { return tab[i]; }
  FnMap fn() const { return FnMap::from_indices(dom.carrier, cod.carrier, tab); }
  MonotoneMap after(const MonotoneMap& f) const;  // this ∘ f
  bool le(const MonotoneMap& o) const;            // pointwise
};

struct MapFlags {
  bool monotone = false;
  bool embedding = false;  // monotone, injective, order-reflecting
  bool surjective = false;
};
MapFlags classify_map(const Poset& dom, const Poset& cod,
                      const std::vector<int>& tab);

// Quotient of a label set by the preorder generated from given pairs:
// reflexive-transitive closure, collapse of symmetric pairs, least label as
// class representative.
struct PreorderQuotient {
  Poset quot;
  FnMap proj;
};
PreorderQuotient normalize_preorder(
    const FiniteSet& s,
    const std::vector<std::pair<std::string, std::string>>& rel);

Poset discrete(const FiniteSet& s);

// Component ids are the least label of each component.
struct Components {
  FiniteSet comps;
  FnMap proj;
};
Components connected_components(const Poset& p);

// Truncated nerve of a poset: X1 = comparable pairs "(a,b)" with a <= b,
// projections d0, d1, reflexivity i, and the cocone c : D X0 -> X.
struct Nerve {
  Poset base;
  FiniteSet x0, x1;
  FnMap d0, d1, refl;
  MonotoneMap c;
};
Nerve truncated_nerve(const Poset& p);

struct Coins {
  Poset quot;
  MonotoneMap c;
};
// Coinserter of a parallel pair in Pos: quotient of the codomain by the
// preorder generated by its own order together with d0(x) <= d1(x).
Coins coinserter(const MonotoneMap& d0, const MonotoneMap& d1);
// Same engine entered at the pair level (relation on the codomain carrier).
Coins coinserter_pairs(const Poset& y, const std::vector<std::pair<int, int>>& rel);

struct Ins {
  Poset sub;
  MonotoneMap e;
};
// Inserter of (f, g): the subposet {x | f(x) <= g(x)}.
Ins inserter(const MonotoneMap& f, const MonotoneMap& g);

struct Comma {
  Poset obj;
  MonotoneMap p0, p1;
};
// Comma object of (f : X -> Z, g : Y -> Z): pairs "(x,y)" with f(x) <= g(y),
// ordered componentwise.
Comma comma_object(const MonotoneMap& f, const MonotoneMap& g);

// Lax square: alpha : E -> X, beta : E -> Y, f : X -> Z, g : Y -> Z with
// f ∘ alpha <= g ∘ beta pointwise (validated on construction).
struct Square {
  Poset e, x, y, z;
  MonotoneMap alpha, beta, f, g;
  static Square make(MonotoneMap alpha, MonotoneMap beta, MonotoneMap f,
                     MonotoneMap g);
};

struct ExactCheck {
  bool exact = false;
  // First failing (x, y) pair when not exact.
  std::string wx, wy;
};
// Exact iff for all x, y with f(x) <= g(y) there is w in E with x <= alpha(w)
// and beta(w) <= y.
ExactCheck is_exact_square(const Square& sq);

// Left Kan extension of an upset along e: x is in the result iff some a with
// f(a)=1 has e(a) <= x.
Bits exists_along(const MonotoneMap& e, const Bits& upset_of_dom);
// Preimage (restriction) of an upset of the codomain.
Bits restrict_along(const MonotoneMap& e, const Bits& upset_of_cod);

// Whether preimage-after-image along f equals image-after-preimage through the
// square's apex, on every upset of X. Equivalent to exactness.
bool beck_chevalley_check(const Square& sq);

struct SplitCoinsReport {
  bool pass = true;
  std::string failed;  // name of the first failing law
};
// For f, g : X -> Y with common monotone left inverse i (i∘f = i∘g = id),
// checks the four laws making the upset lattice of the inserter a split
// coinserter of the restriction maps.
SplitCoinsReport split_coinserter_check(const MonotoneMap& f,
                                        const MonotoneMap& g,
                                        const MonotoneMap& i);

// Poset of all upsets of x ordered by inclusion, labelled by subset notation.
// Also returns the member mask per element, aligned with carrier order.
struct UpsetPoset {
  Poset poset;
  std::vector<Bits> member;  // member[i] = upset named poset.label(i)
};
UpsetPoset upset_poset(const Poset& x, std::size_t cap = size_guard());

std::optional<std::vector<int>> poset_iso(const Poset& a, const Poset& b);

}  // namespace poslog
