#include "poslog/enumerate.hpp"

#include <map>
#include <mutex>

namespace poslog {

namespace {

FiniteSet std_carrier(int k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (int i = 0; i < k; ++i) labels.push_back("s" + std::to_string(i));
  return FiniteSet::of(std::move(labels));
}

std::vector<Poset> build_all_posets(int k) {
  if (k > 5) throw resource_error("all_posets: bound is 5 elements");
  FiniteSet s = std_carrier(k);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) slots.emplace_back(i, j);
  std::vector<Poset> out;
  std::vector<int> choice(slots.size(), 0);  // 0 none, 1 i<j, 2 j<i
  auto emit = [&] {
    BitMat m(k);
    for (int i = 0; i < k; ++i) m.set(i, i);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      if (choice[t] == 1) m.set(slots[t].first, slots[t].second);
      if (choice[t] == 2) m.set(slots[t].second, slots[t].first);
    }
    BitMat c = m;
    c.close();
    if (!(c == m)) return;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j && m.get(i, j)) pairs.emplace_back(i, j);
    out.push_back(Poset::from_pairs(s, pairs, false));
  };
  std::size_t total = 1;
  for (std::size_t t = 0; t < slots.size(); ++t) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t t = 0; t < slots.size(); ++t) {
      choice[t] = int(c % 3);
      c /= 3;
    }
    emit();
  }
  return out;
}

}  // namespace

const std::vector<Poset>& all_posets(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<Poset>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, build_all_posets(k)).first;
  return it->second;
}

const std::vector<Poset>& poset_shapes(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<Poset>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<Poset> reps;
  for (const Poset& p : all_posets(k)) {
    bool fresh = true;
    for (const Poset& r : reps)
      if (poset_iso(p, r)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(p);
  }
  return cache.emplace(k, std::move(reps)).first->second;
}

std::vector<std::vector<int>> all_fn_tabs(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> tab(n, 0);
  while (true) {
    out.push_back(tab);
    int i = n - 1;
    while (i >= 0 && tab[i] == m - 1) tab[i--] = 0;
    if (i < 0) break;
    ++tab[i];
  }
  return out;
}

std::vector<std::vector<int>> all_monotone_tabs(const Poset& dom,
                                                const Poset& cod) {
  std::vector<std::vector<int>> out;
  int n = dom.size(), m = cod.size();
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> tab(n, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(tab);
      return;
    }
    for (int v = 0; v < m; ++v) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (dom.le(j, i) && !cod.le(tab[j], v)) ok = false;
        if (dom.le(i, j) && !cod.le(v, tab[j])) ok = false;
      }
      if (!ok) continue;
      tab[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace poslog
