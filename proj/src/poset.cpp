#include "poslog/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace poslog {

Poset Poset::antichain(FiniteSet s) {
  Poset p;
  p.leq = BitMat(s.size());
  for (int i = 0; i < s.size(); ++i) p.leq.set(i, i);
  p.carrier = std::move(s);
  return p;
}

Poset Poset::from_pairs(FiniteSet s, const std::vector<std::pair<int, int>>& pairs,
                        bool close) {
  BitMat m(s.size());
  for (auto& [a, b] : pairs) {
    if (a < 0 || a >= s.size() || b < 0 || b >= s.size())
      throw input_error("poset: order pair out of range");
    m.set(a, b);
  }
  BitMat closed = m;
  closed.close();
  if (!close) {
    for (int i = 0; i < s.size(); ++i) closed.rows[i].set(i);
    BitMat withRefl = m;
    for (int i = 0; i < s.size(); ++i) withRefl.rows[i].set(i);
    if (!(withRefl == closed))
      throw input_error("poset: relation is not transitively closed");
  }
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j)
      if (closed.get(i, j) && closed.get(j, i))
        throw input_error("poset: antisymmetry fails between " + s.label(i) +
                          " and " + s.label(j));
  Poset p;
  p.carrier = std::move(s);
  p.leq = std::move(closed);
  return p;
}

Poset Poset::from_label_pairs(
    FiniteSet s, const std::vector<std::pair<std::string, std::string>>& pairs,
    bool close) {
  std::vector<std::pair<int, int>> ip;
  ip.reserve(pairs.size());
  for (auto& [a, b] : pairs) {
    int i = s.index(a), j = s.index(b);
    if (i < 0) throw input_error("poset: unknown element " + a);
    if (j < 0) throw input_error("poset: unknown element " + b);
    ip.emplace_back(i, j);
  }
  return from_pairs(std::move(s), ip, close);
}

std::vector<std::pair<int, int>> Poset::hasse() const {
  std::vector<std::pair<int, int>> out;
  int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !le(i, j)) continue;
      bool covered = true;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && le(i, k) && le(k, j)) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(i, j);
    }
  return out;
}

bool Poset::is_upset(const Bits& s) const {
  for (int i = 0; i < size(); ++i)
    if (s.get(i) && !leq.rows[i].subset_of(s)) return false;
  return true;
}

bool Poset::is_downset(const Bits& s) const {
  for (int j = 0; j < size(); ++j) {
    if (!s.get(j)) continue;
    for (int i = 0; i < size(); ++i)
      if (le(i, j) && !s.get(i)) return false;
  }
  return true;
}

bool Poset::is_convex(const Bits& s) const { return convex_closure(s) == s; }

Bits Poset::up_closure(Bits s) const {
  Bits r(size());
  s.for_each([&](int i) { r |= leq.rows[i]; });
  return r;
}

Bits Poset::down_closure(Bits s) const {
  Bits r(size());
  for (int i = 0; i < size(); ++i)
    if (leq.rows[i].intersects(s)) r.set(i);
  return r;
}

Bits Poset::convex_closure(const Bits& s) const {
  Bits up = up_closure(s);
  Bits down = down_closure(s);
  return up & down;
}

Bits Poset::principal_up(int i) const { return leq.rows[i]; }

std::vector<Bits> Poset::all_upsets(std::size_t cap) const {
  int n = size();
  if (n > 22) throw resource_error("all_upsets: poset too large");
  std::vector<Bits> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Bits b(n);
    if (n) b.w[0] = m;
    if (is_upset(b)) {
      out.push_back(b);
      if (out.size() > cap) throw resource_error("all_upsets: guard exceeded");
    }
  }
  return out;
}

bool Poset::is_discrete() const {
  for (int i = 0; i < size(); ++i)
    if (leq.rows[i].count() != 1) return false;
  return true;
}

bool Poset::same_order_as(const Poset& o) const {
  return carrier == o.carrier && leq == o.leq;
}

std::string Poset::to_text() const {
  std::ostringstream os;
  os << "elements:";
  for (auto& e : carrier.elems) os << ' ' << e;
  os << '\n';
  for (auto& [a, b] : hasse())
    os << "le: " << label(a) << ' ' << label(b) << '\n';
  return os.str();
}

Poset Poset::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> pairs;
  bool sawElements = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "elements:") {
      std::string e;
      while (ls >> e) elems.push_back(e);
      sawElements = true;
    } else if (head == "le:") {
      std::string a, b;
      if (!(ls >> a >> b)) throw input_error("poset file: malformed le line");
      pairs.emplace_back(a, b);
    } else {
      throw input_error("poset file: unknown directive " + head);
    }
  }
  if (!sawElements) throw input_error("poset file: missing elements line");
  return from_label_pairs(FiniteSet::of(std::move(elems)), pairs, true);
}

std::string subset_label(const FiniteSet& base, const Bits& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int i) {
    if (!first) out += ',';
    first = false;
    out += base.label(i);
  });
  out += '}';
  return out;
}

MonotoneMap MonotoneMap::make(Poset dom, Poset cod, std::vector<int> tab) {
  if ((int)tab.size() != dom.size())
    throw input_error("MonotoneMap: table size mismatch");
  for (int v : tab)
    if (v < 0 || v >= cod.size())
      throw input_error("MonotoneMap: value out of range");
  for (int i = 0; i < dom.size(); ++i)
    for (int j = 0; j < dom.size(); ++j)
      if (dom.le(i, j) && !cod.le(tab[i], tab[j]))
        throw input_error("MonotoneMap: not monotone at " + dom.label(i) +
                          " <= " + dom.label(j));
  MonotoneMap m;
  m.dom = std::move(dom);
  m.cod = std::move(cod);
  m.tab = std::move(tab);
  return m;
}

MonotoneMap MonotoneMap::from_labels(
    Poset dom, Poset cod,
    const std::vector<std::pair<std::string, std::string>>& assign) {
  FnMap f = FnMap::from_labels(dom.carrier, cod.carrier, assign);
  return make(std::move(dom), std::move(cod), std::move(f.tab));
}

MonotoneMap MonotoneMap::identity(const Poset& p) {
  std::vector<int> tab(p.size());
  std::iota(tab.begin(), tab.end(), 0);
  return make(p, p, std::move(tab));
}

MonotoneMap MonotoneMap::after(const MonotoneMap& f) const {
  if (!f.cod.same_order_as(dom))
    throw input_error("MonotoneMap: composition mismatch");
  std::vector<int> t(f.tab.size());
  for (std::size_t i = 0; i < f.tab.size(); ++i) t[i] = tab[f.tab[i]];
  return make(f.dom, cod, std::move(t));
}

bool MonotoneMap::le(const MonotoneMap& o) const {
  for (int i = 0; i < dom.size(); ++i)
    if (!cod.le(tab[i], o.tab[i])) return false;
  return true;
}

MapFlags classify_map(const Poset& dom, const Poset& cod,
                      const std::vector<int>& tab) {
  MapFlags fl;
  if ((int)tab.size() != dom.size()) return fl;
  fl.monotone = true;
  for (int i = 0; i < dom.size() && fl.monotone; ++i)
    for (int j = 0; j < dom.size(); ++j)
      if (dom.le(i, j) && !cod.le(tab[i], tab[j])) {
        fl.monotone = false;
        break;
      }
  if (!fl.monotone) return fl;
  bool inj = true, refl = true;
  std::vector<char> seen(cod.size(), 0);
  for (int v : tab) {
    if (seen[v]) inj = false;
    seen[v] = 1;
  }
  for (int i = 0; i < dom.size(); ++i)
    for (int j = 0; j < dom.size(); ++j)
      if (cod.le(tab[i], tab[j]) && !dom.le(i, j)) refl = false;
  fl.embedding = inj && refl;
  fl.surjective = std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  return fl;
}

namespace {

// Shared quotient engine: closure of (base order ∪ pairs), strongly connected
// classes collapsed, least member as representative.
PreorderQuotient quotient_by(const Poset& y,
                             const std::vector<std::pair<int, int>>& pairs) {
  int n = y.size();
  BitMat r = y.leq;
  for (auto& [a, b] : pairs) r.set(a, b);
  r.close();
  std::vector<int> rep(n);
  for (int i = 0; i < n; ++i) {
    rep[i] = i;
    for (int j = 0; j < i; ++j)
      if (r.get(i, j) && r.get(j, i)) {
        rep[i] = rep[j];
        break;
      }
  }
  std::vector<std::string> labels;
  std::vector<int> repIdx;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) {
      labels.push_back(y.label(i));
      repIdx.push_back(i);
    }
  FiniteSet qs = FiniteSet::of(labels);
  std::vector<int> toQ(n);
  for (int i = 0; i < n; ++i) toQ[i] = qs.index(y.label(rep[i]));
  std::vector<std::pair<int, int>> qpairs;
  for (std::size_t a = 0; a < repIdx.size(); ++a)
    for (std::size_t b = 0; b < repIdx.size(); ++b)
      if (r.get(repIdx[a], repIdx[b]))
        qpairs.emplace_back(qs.index(y.label(repIdx[a])),
                            qs.index(y.label(repIdx[b])));
  PreorderQuotient out;
  out.quot = Poset::from_pairs(qs, qpairs, true);
  out.proj = FnMap::from_indices(y.carrier, out.quot.carrier, toQ);
  return out;
}

}  // namespace

PreorderQuotient normalize_preorder(
    const FiniteSet& s,
    const std::vector<std::pair<std::string, std::string>>& rel) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(rel.size());
  for (auto& [a, b] : rel) {
    int i = s.index(a), j = s.index(b);
    if (i < 0) throw input_error("normalize_preorder: unknown element " + a);
    if (j < 0) throw input_error("normalize_preorder: unknown element " + b);
    pairs.emplace_back(i, j);
  }
  return quotient_by(Poset::antichain(s), pairs);
}

Poset discrete(const FiniteSet& s) { return Poset::antichain(s); }

Components connected_components(const Poset& p) {
  int n = p.size();
  std::vector<int> comp(n, -1);
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    // BFS over comparability.
    std::vector<int> stack{i};
    comp[i] = i;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j)
        if (comp[j] < 0 && (p.le(v, j) || p.le(j, v))) {
          comp[j] = i;
          stack.push_back(j);
        }
    }
  }
  // Component id: least label in the component; carrier index 0 is least
  // label among those reached first, but BFS roots ascend, so root label is
  // the least (carrier sorted).
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i)
    if (comp[i] == i) ids.push_back(p.label(i));
  FiniteSet cs = FiniteSet::of(ids);
  std::vector<int> tab(n);
  for (int i = 0; i < n; ++i) tab[i] = cs.index(p.label(comp[i]));
  Components out;
  out.comps = cs;
  out.proj = FnMap::from_indices(p.carrier, out.comps, tab);
  return out;
}

Nerve truncated_nerve(const Poset& p) {
  Nerve nv;
  nv.base = p;
  nv.x0 = p.carrier;
  std::vector<std::string> pl;
  std::vector<std::pair<std::string, std::string>> d0a, d1a, ia;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.le(i, j))
        pl.push_back("(" + p.label(i) + "," + p.label(j) + ")");
  nv.x1 = FiniteSet::of(pl);
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.le(i, j)) {
        std::string l = "(" + p.label(i) + "," + p.label(j) + ")";
        d0a.emplace_back(l, p.label(i));
        d1a.emplace_back(l, p.label(j));
      }
  for (int i = 0; i < p.size(); ++i)
    ia.emplace_back(p.label(i), "(" + p.label(i) + "," + p.label(i) + ")");
  nv.d0 = FnMap::from_labels(nv.x1, nv.x0, d0a);
  nv.d1 = FnMap::from_labels(nv.x1, nv.x0, d1a);
  nv.refl = FnMap::from_labels(nv.x0, nv.x1, ia);
  std::vector<int> ctab(p.size());
  std::iota(ctab.begin(), ctab.end(), 0);
  nv.c = MonotoneMap::make(Poset::antichain(nv.x0), p, std::move(ctab));
  // The coinserter of the discretized projections must rebuild the base poset
  // on the nose.
  std::vector<std::pair<int, int>> gen;
  for (int w = 0; w < nv.x1.size(); ++w) gen.emplace_back(nv.d0(w), nv.d1(w));
  Coins back = coinserter_pairs(Poset::antichain(nv.x0), gen);
  if (!back.quot.same_order_as(p))
    throw internal_error("truncated_nerve: nerve does not rebuild its base");
  return nv;
}

Coins coinserter_pairs(const Poset& y,
                       const std::vector<std::pair<int, int>>& rel) {
  PreorderQuotient q = quotient_by(y, rel);
  Coins out;
  out.quot = q.quot;
  out.c = MonotoneMap::make(y, out.quot, q.proj.tab);
  return out;
}

Coins coinserter(const MonotoneMap& d0, const MonotoneMap& d1) {
  if (!d0.dom.same_order_as(d1.dom) || !d0.cod.same_order_as(d1.cod))
    throw input_error("coinserter: parallel pair expected");
  std::vector<std::pair<int, int>> rel;
  rel.reserve(d0.tab.size());
  for (std::size_t i = 0; i < d0.tab.size(); ++i)
    rel.emplace_back(d0.tab[i], d1.tab[i]);
  return coinserter_pairs(d0.cod, rel);
}

Ins inserter(const MonotoneMap& f, const MonotoneMap& g) {
  if (!f.dom.same_order_as(g.dom) || !f.cod.same_order_as(g.cod))
    throw input_error("inserter: parallel pair expected");
  std::vector<std::string> labels;
  std::vector<int> keep;
  for (int i = 0; i < f.dom.size(); ++i)
    if (f.cod.le(f.tab[i], g.tab[i])) {
      labels.push_back(f.dom.label(i));
      keep.push_back(i);
    }
  FiniteSet s = FiniteSet::of(labels);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (f.dom.le(keep[a], keep[b]))
        pairs.emplace_back(s.index(f.dom.label(keep[a])),
                           s.index(f.dom.label(keep[b])));
  Ins out;
  out.sub = Poset::from_pairs(s, pairs, false);
  std::vector<int> etab(s.size());
  for (int i = 0; i < s.size(); ++i) etab[i] = f.dom.carrier.index(s.label(i));
  out.e = MonotoneMap::make(out.sub, f.dom, std::move(etab));
  return out;
}

Comma comma_object(const MonotoneMap& f, const MonotoneMap& g) {
  if (!f.cod.same_order_as(g.cod))
    throw input_error("comma_object: cospan expected");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> elems;
  for (int i = 0; i < f.dom.size(); ++i)
    for (int j = 0; j < g.dom.size(); ++j)
      if (f.cod.le(f.tab[i], g.tab[j])) {
        labels.push_back("(" + f.dom.label(i) + "," + g.dom.label(j) + ")");
        elems.emplace_back(i, j);
      }
  FiniteSet s = FiniteSet::of(labels);
  std::vector<std::pair<int, int>> pairs;
  auto name = [&](std::pair<int, int> e) {
    return "(" + f.dom.label(e.first) + "," + g.dom.label(e.second) + ")";
  };
  for (auto& a : elems)
    for (auto& b : elems)
      if (f.dom.le(a.first, b.first) && g.dom.le(a.second, b.second))
        pairs.emplace_back(s.index(name(a)), s.index(name(b)));
  Comma out;
  out.obj = Poset::from_pairs(s, pairs, false);
  std::vector<int> t0(s.size()), t1(s.size());
  for (auto& e : elems) {
    int idx = s.index(name(e));
    t0[idx] = e.first;
    t1[idx] = e.second;
  }
  out.p0 = MonotoneMap::make(out.obj, f.dom, std::move(t0));
  out.p1 = MonotoneMap::make(out.obj, g.dom, std::move(t1));
  return out;
}

Square Square::make(MonotoneMap alpha, MonotoneMap beta, MonotoneMap f,
                    MonotoneMap g) {
  if (!alpha.dom.same_order_as(beta.dom))
    throw input_error("square: alpha and beta need a common apex");
  if (!f.dom.same_order_as(alpha.cod) || !g.dom.same_order_as(beta.cod) ||
      !f.cod.same_order_as(g.cod))
    throw input_error("square: sides do not match");
  for (int w = 0; w < alpha.dom.size(); ++w)
    if (!f.cod.le(f.tab[alpha.tab[w]], g.tab[beta.tab[w]]))
      throw input_error("square: lax inequality fails at " +
                        alpha.dom.label(w));
  Square sq;
  sq.e = alpha.dom;
  sq.x = f.dom;
  sq.y = g.dom;
  sq.z = f.cod;
  sq.alpha = std::move(alpha);
  sq.beta = std::move(beta);
  sq.f = std::move(f);
  sq.g = std::move(g);
  return sq;
}

ExactCheck is_exact_square(const Square& sq) {
  for (int x = 0; x < sq.x.size(); ++x)
    for (int y = 0; y < sq.y.size(); ++y) {
      if (!sq.z.le(sq.f.tab[x], sq.g.tab[y])) continue;
      bool found = false;
      for (int w = 0; w < sq.e.size(); ++w)
        if (sq.x.le(x, sq.alpha.tab[w]) && sq.y.le(sq.beta.tab[w], y)) {
          found = true;
          break;
        }
      if (!found) return {false, sq.x.label(x), sq.y.label(y)};
    }
  return {true, "", ""};
}

Bits exists_along(const MonotoneMap& e, const Bits& upset_of_dom) {
  Bits out(e.cod.size());
  upset_of_dom.for_each([&](int a) { out |= e.cod.principal_up(e.tab[a]); });
  return out;
}

Bits restrict_along(const MonotoneMap& e, const Bits& upset_of_cod) {
  Bits out(e.dom.size());
  for (int i = 0; i < e.dom.size(); ++i)
    if (upset_of_cod.get(e.tab[i])) out.set(i);
  return out;
}

bool beck_chevalley_check(const Square& sq) {
  auto ups = sq.x.all_upsets();
  for (auto& u : ups) {
    Bits lhs = restrict_along(sq.g, exists_along(sq.f, u));
    Bits rhs = exists_along(sq.beta, restrict_along(sq.alpha, u));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

SplitCoinsReport split_coinserter_check(const MonotoneMap& f,
                                        const MonotoneMap& g,
                                        const MonotoneMap& i) {
  if (!f.dom.same_order_as(g.dom) || !f.cod.same_order_as(g.cod))
    throw input_error("split_coinserter_check: parallel pair expected");
  if (!i.dom.same_order_as(f.cod) || !i.cod.same_order_as(f.dom))
    throw input_error("split_coinserter_check: i must go back from codomain");
  for (int a = 0; a < f.dom.size(); ++a)
    if (i.tab[f.tab[a]] != a || i.tab[g.tab[a]] != a)
      throw input_error(
          "split_coinserter_check: i is not a common left inverse");
  Ins ins = inserter(f, g);
  auto upX = f.dom.all_upsets();
  auto upY = f.cod.all_upsets();
  auto upE = ins.sub.all_upsets();
  for (auto& u : upY) {
    Bits a = restrict_along(ins.e, restrict_along(f, u));
    Bits b = restrict_along(ins.e, restrict_along(g, u));
    if (!a.subset_of(b)) return {false, "restrict(e)∘restrict(f) <= restrict(e)∘restrict(g)"};
  }
  for (auto& v : upE)
    if (!(restrict_along(ins.e, exists_along(ins.e, v)) == v))
      return {false, "restrict(e)∘exists(e) = id"};
  for (auto& u : upX)
    if (!(restrict_along(f, exists_along(f, u)) == u))
      return {false, "restrict(f)∘exists(f) = id"};
  for (auto& u : upX) {
    Bits lhs = restrict_along(g, exists_along(f, u));
    Bits rhs = exists_along(ins.e, restrict_along(ins.e, u));
    if (!(lhs == rhs))
      return {false, "restrict(g)∘exists(f) = exists(e)∘restrict(e)"};
    if (!lhs.subset_of(u))
      return {false, "restrict(g)∘exists(f) <= id"};
  }
  return {true, ""};
}

UpsetPoset upset_poset(const Poset& x, std::size_t cap) {
  auto ups = x.all_upsets(cap);
  std::vector<std::string> labels;
  labels.reserve(ups.size());
  for (auto& u : ups) labels.push_back(subset_label(x.carrier, u));
  FiniteSet s = FiniteSet::of(labels);
  std::vector<Bits> member(s.size());
  for (auto& u : ups) member[s.index(subset_label(x.carrier, u))] = u;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b)
      if (member[a].subset_of(member[b])) pairs.emplace_back(a, b);
  UpsetPoset out;
  out.poset = Poset::from_pairs(s, pairs, false);
  out.member = std::move(member);
  return out;
}

std::optional<std::vector<int>> poset_iso(const Poset& a, const Poset& b) {
  int n = a.size();
  if (n != b.size()) return std::nullopt;
  auto sig = [](const Poset& p, int i) {
    int below = 0, above = 0;
    for (int j = 0; j < p.size(); ++j) {
      if (p.le(j, i)) ++below;
      if (p.le(i, j)) ++above;
    }
    return std::make_pair(below, above);
  };
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  std::vector<std::pair<int, int>> sa(n), sb(n);
  for (int i = 0; i < n; ++i) sa[i] = sig(a, i), sb[i] = sig(b, i);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || sa[i] != sb[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        if (a.le(i, k) != b.le(j, perm[k])) ok = false;
        if (a.le(k, i) != b.le(perm[k], j)) ok = false;
      }
      if (!ok) continue;
      perm[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return perm;
}

}  // namespace poslog
