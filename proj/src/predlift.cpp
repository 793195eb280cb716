#include "poslog/predlift.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "poslog/error.hpp"

namespace poslog {

namespace {

std::string tuple_label(int n, unsigned code) {
  if (n == 0) return "*";
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (code >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool tuple_le(const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == '1' && b[i] == '0') return false;
  return true;
}

}  // namespace

FiniteSet bool_tuples(int n) {
  if (n < 0 || n > 4)
    throw input_error("lifting arity out of range: " + std::to_string(n));
  std::vector<std::string> labels;
  for (unsigned c = 0; c < (1u << n); ++c) labels.push_back(tuple_label(n, c));
  return FiniteSet::of(labels);
}

Poset bool_tuple_poset(int n) {
  FiniteSet base = bool_tuples(n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < base.size(); ++i)
    for (int j = 0; j < base.size(); ++j)
      if (tuple_le(base.label(i), base.label(j))) pairs.emplace_back(i, j);
  return Poset::from_pairs(base, pairs, false);
}

std::vector<Lifting> enumerate_liftings(const FunctorExpr& t, int n) {
  const TSet& ts = obj_full(t, bool_tuples(n));
  int m = ts.elems.size();
  if (m > 20)
    throw resource_error("too many lifting candidates: |T(2^" +
                         std::to_string(n) + ")| = " + std::to_string(m));
  std::vector<Lifting> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Bits b(m);
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) b.set(i);
    out.push_back(Lifting{t, n, b});
  }
  return out;
}

namespace {

// Reflexive-transitive closure of the lifted pointwise order on T(2^n).
BitMat lifted_order(const FunctorExpr& t, int n) {
  FiniteSet base = bool_tuples(n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < base.size(); ++i)
    for (int j = 0; j < base.size(); ++j)
      if (tuple_le(base.label(i), base.label(j))) pairs.emplace_back(i, j);
  Relation ord = Relation::make(base, base, pairs);
  Relation lifted = rel_lift(t, ord);
  BitMat r(lifted.left.size());
  for (auto& [a, b] : lifted.pairs) r.set(a, b);
  r.close();
  return r;
}

}  // namespace

bool is_monotone(const Lifting& l) {
  BitMat r = lifted_order(l.functor, l.arity);
  int m = r.n;
  for (int i = 0; i < m; ++i) {
    if (!l.value.get(i)) continue;
    for (int j = 0; j < m; ++j)
      if (r.get(i, j) && !l.value.get(j)) return false;
  }
  return true;
}

bool monotone_oracle(const Lifting& l, int bound) {
  const int n = l.arity;
  FiniteSet base = bool_tuples(n);
  for (int sz = 0; sz <= bound; ++sz) {
    std::vector<std::string> labels;
    for (int i = 0; i < sz; ++i) labels.push_back("x" + std::to_string(i));
    FiniteSet x = FiniteSet::of(labels);
    const TSet& tx = obj_full(l.functor, x);
    const unsigned subsets = 1u << sz;
    unsigned total = 1;
    for (int i = 0; i < n; ++i) total *= subsets;
    std::vector<Bits> heart;
    heart.reserve(total);
    std::vector<unsigned> coord(static_cast<std::size_t>(std::max(n, 1)), 0);
    for (unsigned code = 0; code < total; ++code) {
      unsigned c = code;
      for (int i = 0; i < n; ++i) {
        coord[static_cast<std::size_t>(i)] = c % subsets;
        c /= subsets;
      }
      std::vector<int> tab(static_cast<std::size_t>(sz));
      for (int s = 0; s < sz; ++s) {
        unsigned bits = 0;
        for (int i = 0; i < n; ++i)
          if (coord[static_cast<std::size_t>(i)] >> s & 1u) bits |= 1u << i;
        tab[static_cast<std::size_t>(s)] = base.index(tuple_label(n, bits));
      }
      FnMap chi = FnMap::from_indices(x, base, tab);
      FnMap tchi = apply_map(l.functor, chi);
      Bits h(tx.elems.size());
      for (int k = 0; k < tx.elems.size(); ++k)
        if (l.value.get(tchi(k))) h.set(k);
      heart.push_back(std::move(h));
    }
    for (unsigned a = 0; a < total; ++a)
      for (unsigned b = 0; b < total; ++b) {
        unsigned ca = a, cb = b;
        bool below = true;
        for (int i = 0; i < n && below; ++i) {
          unsigned sa = ca % subsets, sb = cb % subsets;
          ca /= subsets;
          cb /= subsets;
          if ((sa & ~sb) != 0) below = false;
        }
        if (below && !heart[a].subset_of(heart[b])) return false;
      }
  }
  return true;
}

std::vector<Bits> liftings_of_posetification(const FunctorExpr& t, int n) {
  PosetifyResult pr = posetify_obj(t, bool_tuple_poset(n));
  std::vector<Bits> ups = pr.poset.all_upsets();
  std::sort(ups.begin(), ups.end());
  return ups;
}

BijectionReport bijection_check(const FunctorExpr& t, int n) {
  BijectionReport rep;
  PosetifyResult pr = posetify_obj(t, bool_tuple_poset(n));
  const TSet& ts = obj_full(t, bool_tuples(n));
  const int m = ts.elems.size();
  if (m > 20)
    throw resource_error("too many lifting candidates: |T(2^" +
                         std::to_string(n) + ")| = " + std::to_string(m));

  std::vector<Bits> ups = pr.poset.all_upsets();
  std::sort(ups.begin(), ups.end());
  std::vector<Bits> pulled;
  pulled.reserve(ups.size());
  for (const Bits& u : ups) {
    Bits p(m);
    for (int k = 0; k < m; ++k)
      if (u.get(pr.e(k))) p.set(k);
    pulled.push_back(p);
  }

  // Monotone liftings, read off the quotient poset of the lifted preorder.
  BitMat r = lifted_order(t, n);
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (r.get(i, j)) rel.emplace_back(ts.elems.label(i), ts.elems.label(j));
  PreorderQuotient q = normalize_preorder(ts.elems, rel);
  std::vector<Bits> monos;
  for (const Bits& u : q.quot.all_upsets()) {
    Bits p(m);
    for (int k = 0; k < m; ++k)
      if (u.get(q.proj(k))) p.set(k);
    monos.push_back(p);
  }
  std::sort(monos.begin(), monos.end());

  rep.upset_count = static_cast<int>(pulled.size());
  rep.monotone_count = static_cast<int>(monos.size());
  std::vector<Bits> pulled_sorted = pulled;
  std::sort(pulled_sorted.begin(), pulled_sorted.end());
  bool distinct =
      std::adjacent_find(pulled_sorted.begin(), pulled_sorted.end()) ==
      pulled_sorted.end();
  rep.pass = distinct && pulled_sorted == monos;
  for (std::size_t i = 0; i < ups.size(); ++i)
    rep.pairing.emplace_back(subset_label(pr.poset.carrier, ups[i]),
                             subset_label(ts.elems, pulled[i]));
  std::ostringstream os;
  os << "upsets of posetification: " << rep.upset_count
     << ", monotone liftings: " << rep.monotone_count
     << (rep.pass ? " (bijective)" : " (MISMATCH)");
  rep.detail = os.str();
  // Every pulled-back upset must itself pass the monotonicity criterion.
  for (const Bits& p : pulled)
    if (rep.pass && !is_monotone(Lifting{t, n, p}))
      throw internal_error("pulled-back upset fails the monotone criterion");
  return rep;
}

namespace {

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '{' || c == '(' || c == '[' || c == '<') ++depth;
    if (c == '}' || c == ')' || c == ']' || c == '>') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

LiftingTable parse_lifting_table(const std::string& text) {
  LiftingTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "lifting table line " + std::to_string(lineno);
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw input_error(where + ": expected 'name = { ... } : functor @ arity'");
    std::string name = trim(line.substr(0, eq));
    if (name.empty() || table.count(name))
      throw input_error(where + ": bad or duplicate lifting name '" + name + "'");
    std::string rest = trim(line.substr(eq + 1));
    if (rest.empty() || rest[0] != '{')
      throw input_error(where + ": expected '{' after '='");
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == '{') ++depth;
      if (rest[i] == '}' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos)
      throw input_error(where + ": unbalanced '{'");
    std::string body = rest.substr(1, close - 1);
    std::string tail = trim(rest.substr(close + 1));
    if (tail.empty() || tail[0] != ':')
      throw input_error(where + ": expected ':' after the value set");
    tail = trim(tail.substr(1));
    std::size_t at = tail.rfind('@');
    if (at == std::string::npos)
      throw input_error(where + ": expected '@ arity'");
    FunctorExpr t = FunctorExpr::parse(trim(tail.substr(0, at)));
    int arity = 0;
    try {
      arity = std::stoi(trim(tail.substr(at + 1)));
    } catch (...) {
      throw input_error(where + ": bad arity");
    }
    const TSet& ts = obj_full(t, bool_tuples(arity));
    if (ts.elems.size() > 20)
      throw resource_error(where + ": too many lifting candidates");
    Bits value(ts.elems.size());
    for (const std::string& raw : split_top_level(body)) {
      std::string item = trim(raw);
      if (item.empty()) continue;
      int idx = ts.elems.index(item);
      if (idx < 0)
        throw input_error(where + ": '" + item + "' is not an element of T(2^" +
                          std::to_string(arity) + ")");
      value.set(idx);
    }
    table.emplace(name, Lifting{t, arity, value});
  }
  return table;
}

std::string lifting_table_to_text(const LiftingTable& table) {
  std::ostringstream os;
  for (const auto& [name, l] : table) {
    const TSet& ts = obj_full(l.functor, bool_tuples(l.arity));
    os << name << " = {";
    bool first = true;
    for (int i = 0; i < ts.elems.size(); ++i)
      if (l.value.get(i)) {
        os << (first ? "" : ", ") << ts.elems.label(i);
        first = false;
      }
    os << "} : " << l.functor.to_string() << " @ " << l.arity << "\n";
  }
  return os.str();
}

}  // namespace poslog
