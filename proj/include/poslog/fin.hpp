#pragma once

#include <string>
#include <utility>
#include <vector>

#include "poslog/bits.hpp"
#include "poslog/error.hpp"

namespace poslog {

// Finite set of distinct string labels, kept sorted so that indices are
// canonical: index order == lexicographic label order.
struct FiniteSet {
  std::vector<std::string> elems;

  FiniteSet() = default;

  // Sorts and rejects duplicates.
  static FiniteSet of(std::vector<std::string> v);

  int size() const { return (int)elems.size(); }
  const std::string& label(int i) const { return elems[i]; }
  // -1 when absent.
  int index(const std::string& s) const;
  bool contains(const std::string& s) const { return index(s) >= 0; }

  bool operator==(const FiniteSet&) const = default;
};

// Total function between finite sets, stored as an index table.
struct FnMap {
  FiniteSet dom, cod;
  std::vector<int> tab;

  static FnMap from_indices(FiniteSet dom, FiniteSet cod, std::vector<int> tab);
  static FnMap from_labels(
      FiniteSet dom, FiniteSet cod,
      const std::vector<std::pair<std::string, std::string>>& assign);
  static FnMap identity(FiniteSet s);

  int operator()(int i) const { return tab[i]; }
  const std::string& operator()(const std::string& x) const {
    int i = dom.index(x);
    if (i < 0) throw input_error("FnMap: unknown element " + x);
    return cod.label(tab[i]);
  }

  bool injective() const;
  bool surjective() const;

  // g.after(f) == g ∘ f.
  FnMap after(const FnMap& f) const;

  bool operator==(const FnMap&) const = default;
};

// Binary relation between two finite sets, as a sorted deduplicated pair list.
struct Relation {
  FiniteSet left, right;
  std::vector<std::pair<int, int>> pairs;

  static Relation make(FiniteSet left, FiniteSet right,
                       std::vector<std::pair<int, int>> pairs);
  static Relation from_labels(
      FiniteSet left, FiniteSet right,
      const std::vector<std::pair<std::string, std::string>>& ps);
  static Relation equality(const FiniteSet& s);

  bool contains(int a, int b) const;
  Relation converse() const;
  // s.compose_after(r) == s ∘ r  (pairs (a,c) with a r b and b s c).
  Relation compose_after(const Relation& r) const;
  bool subset_of(const Relation& o) const;

  bool operator==(const Relation&) const = default;
};

}  // namespace poslog
