#include "poslog/fin.hpp"

#include <algorithm>
#include <cstdlib>

namespace poslog {

namespace {
std::size_t g_guard = 100000;
}

std::size_t size_guard() { return g_guard; }
void set_size_guard(std::size_t n) { g_guard = n; }

FiniteSet FiniteSet::of(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  auto dup = std::adjacent_find(v.begin(), v.end());
  if (dup != v.end()) throw input_error("duplicate element label: " + *dup);
  FiniteSet s;
  s.elems = std::move(v);
  return s;
}

int FiniteSet::index(const std::string& s) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), s);
  if (it == elems.end() || *it != s) return -1;
  return (int)(it - elems.begin());
}

FnMap FnMap::from_indices(FiniteSet dom, FiniteSet cod, std::vector<int> tab) {
  if ((int)tab.size() != dom.size())
    throw input_error("FnMap: table size does not match domain");
  for (int v : tab)
    if (v < 0 || v >= cod.size())
      throw input_error("FnMap: table value out of codomain range");
  FnMap f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.tab = std::move(tab);
  return f;
}

FnMap FnMap::from_labels(
    FiniteSet dom, FiniteSet cod,
    const std::vector<std::pair<std::string, std::string>>& assign) {
  std::vector<int> tab(dom.size(), -1);
  for (auto& [x, y] : assign) {
    int i = dom.index(x), j = cod.index(y);
    if (i < 0) throw input_error("FnMap: unknown domain element " + x);
    if (j < 0) throw input_error("FnMap: unknown codomain element " + y);
    if (tab[i] >= 0 && tab[i] != j)
      throw input_error("FnMap: conflicting assignment for " + x);
    tab[i] = j;
  }
  for (int i = 0; i < dom.size(); ++i)
    if (tab[i] < 0)
      throw input_error("FnMap: no assignment for " + dom.label(i));
  return from_indices(std::move(dom), std::move(cod), std::move(tab));
}

FnMap FnMap::identity(FiniteSet s) {
  std::vector<int> tab(s.size());
  for (int i = 0; i < (int)tab.size(); ++i) tab[i] = i;
  return from_indices(s, s, std::move(tab));
}

bool FnMap::injective() const {
  std::vector<char> seen(cod.size(), 0);
  for (int v : tab) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool FnMap::surjective() const {
  std::vector<char> seen(cod.size(), 0);
  for (int v : tab) seen[v] = 1;
  for (char c : seen)
    if (!c) return false;
  return true;
}

FnMap FnMap::after(const FnMap& f) const {
  if (!(f.cod == dom)) throw input_error("FnMap: composition mismatch");
  std::vector<int> t(f.tab.size());
  for (std::size_t i = 0; i < f.tab.size(); ++i) t[i] = tab[f.tab[i]];
  return from_indices(f.dom, cod, std::move(t));
}

Relation Relation::make(FiniteSet left, FiniteSet right,
                        std::vector<std::pair<int, int>> pairs) {
  for (auto& [a, b] : pairs)
    if (a < 0 || a >= left.size() || b < 0 || b >= right.size())
      throw input_error("Relation: pair out of range");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Relation r;
  r.left = std::move(left);
  r.right = std::move(right);
  r.pairs = std::move(pairs);
  return r;
}

Relation Relation::from_labels(
    FiniteSet left, FiniteSet right,
    const std::vector<std::pair<std::string, std::string>>& ps) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ps.size());
  for (auto& [a, b] : ps) {
    int i = left.index(a), j = right.index(b);
    if (i < 0) throw input_error("Relation: unknown element " + a);
    if (j < 0) throw input_error("Relation: unknown element " + b);
    pairs.emplace_back(i, j);
  }
  return make(std::move(left), std::move(right), std::move(pairs));
}

Relation Relation::equality(const FiniteSet& s) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < s.size(); ++i) pairs.emplace_back(i, i);
  return make(s, s, std::move(pairs));
}

bool Relation::contains(int a, int b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

Relation Relation::converse() const {
  std::vector<std::pair<int, int>> ps;
  ps.reserve(pairs.size());
  for (auto& [a, b] : pairs) ps.emplace_back(b, a);
  return make(right, left, std::move(ps));
}

Relation Relation::compose_after(const Relation& r) const {
  if (!(r.right == left)) throw input_error("Relation: composition mismatch");
  std::vector<Bits> mid(left.size(), Bits(right.size()));
  for (auto& [b, c] : pairs) mid[b].set(c);
  std::vector<Bits> out(r.left.size(), Bits(right.size()));
  for (auto& [a, b] : r.pairs) out[a] |= mid[b];
  std::vector<std::pair<int, int>> ps;
  for (int a = 0; a < r.left.size(); ++a)
    out[a].for_each([&](int c) { ps.emplace_back(a, c); });
  return make(r.left, right, std::move(ps));
}

bool Relation::subset_of(const Relation& o) const {
  for (auto& p : pairs)
    if (!std::binary_search(o.pairs.begin(), o.pairs.end(), p)) return false;
  return true;
}

}  // namespace poslog
