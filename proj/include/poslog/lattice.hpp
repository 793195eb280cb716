#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poslog/poset.hpp"

namespace poslog {

// Finite bounded distributive lattice, optionally with Boolean complement.
// Two internal representations: explicit operation tables (validated against
// the axioms on construction, reporting the first violated law) and the upset
// algebra of a ground poset (operations are bitwise, laws hold by
// construction). Value type; copies share the immutable payload.
class FinDL {
 public:
  FinDL() = default;

  // meet/join are n×n index tables; neg present makes the algebra Boolean.
  // Throws input_error naming the first violated law; tabular size cap 256.
  static FinDL from_tables(FiniteSet carrier,
                           std::vector<std::vector<int>> meet,
                           std::vector<std::vector<int>> join,
                           std::optional<std::vector<int>> neg);
  // All upsets of `ground`, labelled in subset notation. `boolean` requires a
  // discrete ground (complements must be upsets again).
  static FinDL upset_algebra(Poset ground, bool boolean);

  int size() const;
  const FiniteSet& carrier() const;
  const std::string& label(int i) const;
  int index(const std::string& l) const;

  int meet(int a, int b) const;
  int join(int a, int b) const;
  int bot() const;
  int top() const;
  bool le(int a, int b) const;  // a∧b = a
  bool is_boolean() const;
  int neg(int a) const;  // input_error on non-Boolean instances

  bool is_ji(int a) const;            // join-irreducible
  const std::vector<int>& ji() const; // ascending carrier indices

  bool is_subset_backed() const;
  const Poset& ground() const;          // input_error on tabular instances
  const Bits& payload(int i) const;     // idem
  int index_of_payload(const Bits& b) const;  // -1 when absent

  // Induced order as an explicit Poset; gated (resource_error past 4096).
  Poset order() const;

  // Equal carriers, bounds, operation tables, and Boolean flag; gated like
  // order() unless both sides are subset-backed.
  bool same_algebra_as(const FinDL& o) const;

  // Lattice file format: elements:, meet:/join: triples, bot:, top:, neg:.
  std::string to_text() const;
  static FinDL parse(const std::string& text);

 private:
  struct Impl;
  std::shared_ptr<const Impl> p;
  const Impl& impl() const;
};

// Boolean instances are FinDLs answering is_boolean(); operations requiring
// complements validate the flag.
using FinBA = FinDL;

struct LatticeHom {
  FinDL dom, cod;
  std::vector<int> tab;

  // Validates preservation of ⊥, ⊤, ∧, ∨; pair checks are exhaustive up to
  // 1024 elements and deterministically sampled beyond.
  static LatticeHom make(FinDL dom, FinDL cod, std::vector<int> tab);
  static LatticeHom from_labels(
      FinDL dom, FinDL cod,
      const std::vector<std::pair<std::string, std::string>>& assign);
  static LatticeHom identity(const FinDL& a);
  // Both algebras subset-backed, f from cod_alg's ground into dom_alg's
  // ground; sends each element u to f⁻¹(u).
  static LatticeHom preimage(FinDL dom_alg, FinDL cod_alg, const FnMap& f);

  int operator()(int i) const { return tab[i]; }
  LatticeHom after(const LatticeHom& f) const;  // this ∘ f
  bool injective() const;
  bool surjective() const;
};

FinBA powerset_BA(const FiniteSet& x);
FinDL upset_DL(const Poset& x);
FinDL forget_W(const FinBA& a);  // drops the complement
FinBA centre_K(const FinDL& a);  // complemented elements, original labels

// Contravariant duals. Ultrafilters of a finite BA are its atoms and keep the
// atom labels; prime filters of a finite DL are the principal filters of
// join-irreducibles, keep the generator labels, and are ordered by inclusion
// of filters (fixed by requiring prime_filters(upset_DL(X)) ≅ X).
FiniteSet ultrafilters(const FinBA& a);
FnMap ultrafilters_map(const LatticeHom& h);        // S(cod) -> S(dom)
Poset prime_filters(const FinDL& a);
MonotoneMap prime_filters_map(const LatticeHom& h); // S′(cod) -> S′(dom)

// a ↦ {j join-irreducible | j ≤ a}, an iso onto upset_DL(prime_filters(a)).
LatticeHom birkhoff_counit(const FinDL& a);
// b ↦ {atoms ≤ b}, an iso onto powerset_BA(ultrafilters(a)).
LatticeHom atom_counit(const FinBA& a);

struct FreeAlgebra {
  FinDL alg;
  std::vector<int> gens;  // generator element indices
  // Per ground element of a free DL: the generator positions whose meet that
  // ground element denotes (free DLs are upset algebras over the generator
  // cube). Empty for free BAs.
  std::vector<std::vector<int>> monomials;
};
FreeAlgebra free_BA(int n);  // n ≤ 3
FreeAlgebra free_DL(int n);  // n ≤ 4
// The hom out of a free DL determined by generator images.
LatticeHom free_dl_hom(const FreeAlgebra& f, const FinDL& d,
                       const std::vector<int>& images);

struct DualityReport {
  bool pass = true;
  std::string witness;
};
// (i) Birkhoff counit iso for every upset lattice with ≤ 6 elements (ground
// posets up to size 5); (ii) atom counit iso for powerset BAs with ground
// ≤ bound; (iii) W∘P = P′∘D^op and S′∘W = D^op∘S on objects and maps up to
// bound; (iv) P∘C^op ≅ K∘P′ via the component-union map up to bound.
DualityReport verify_dualities(int bound);

struct DLCoins {
  FinDL quot;
  LatticeHom q;
};
// Coinserter of a parallel pair in DL: quotient by the smallest
// operation-compatible preorder containing the lattice order and
// h1(a) ≤ h2(a) for every a.
DLCoins dl_coinserter(const LatticeHom& h1, const LatticeHom& h2);

// Isomorphism via prime-filter posets, lifted through joins of
// join-irreducibles and verified; nullopt when none exists.
std::optional<LatticeHom> dl_iso(const FinDL& a, const FinDL& b);

}  // namespace poslog
