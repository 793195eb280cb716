#pragma once

#include <cstdint>
#include <vector>

namespace poslog {

// Fixed-width dynamic bitset, sized at construction.
struct Bits {
  int n = 0;
  std::vector<std::uint64_t> w;

  Bits() = default;
  explicit Bits(int bits) : n(bits), w((bits + 63) / 64, 0) {}

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  Bits complement() const {
    Bits r(n);
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] = ~w[i];
    if (n & 63) r.w.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    return r;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }

  bool operator==(const Bits& o) const { return n == o.n && w == o.w; }
  bool operator<(const Bits& o) const { return w < o.w; }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (std::uint64_t)n;
    for (auto x : w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w.size(); ++wi) {
      std::uint64_t x = w[wi];
      while (x) {
        int b = __builtin_ctzll(x);
        f((int)(wi * 64 + b));
        x &= x - 1;
      }
    }
  }
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return (std::size_t)b.hash(); }
};

// Square boolean matrix; used for order relations.
struct BitMat {
  int n = 0;
  std::vector<Bits> rows;

  BitMat() = default;
  explicit BitMat(int size) : n(size), rows(size, Bits(size)) {}

  bool get(int i, int j) const { return rows[i].get(j); }
  void set(int i, int j) { rows[i].set(j); }

  // Reflexive-transitive closure in place (Warshall on bit rows).
  void close() {
    for (int i = 0; i < n; ++i) rows[i].set(i);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        Bits next = rows[i];
        rows[i].for_each([&](int j) { next |= rows[j]; });
        if (!(next == rows[i])) {
          rows[i] = next;
          changed = true;
        }
      }
    }
  }

  bool operator==(const BitMat& o) const { return n == o.n && rows == o.rows; }
};

}  // namespace poslog
