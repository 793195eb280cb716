#include "poslog/lattice.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>

#include "poslog/enumerate.hpp"

namespace poslog {

struct FinDL::Impl {
  FiniteSet carrier;
  bool boolean = false;
  bool subset = false;
  int bot = -1, top = -1;
  std::vector<int> ji_list;
  // tabular backend
  std::vector<std::vector<int>> meet, join;
  std::vector<int> neg;
  // subset backend
  Poset ground;
  std::vector<Bits> pay;
  std::unordered_map<Bits, int, BitsHash> idx;
};

namespace {

constexpr int kTabCap = 256;

std::string at2(const FiniteSet& s, int a, int b) {
  return "(" + s.label(a) + ", " + s.label(b) + ")";
}

void validate_tables(const FiniteSet& s, const std::vector<std::vector<int>>& m,
                     const std::vector<std::vector<int>>& j) {
  int n = s.size();
  auto shape_ok = [n](const std::vector<std::vector<int>>& t) {
    if ((int)t.size() != n) return false;
    for (auto& row : t) {
      if ((int)row.size() != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  if (!shape_ok(m) || !shape_ok(j))
    throw input_error("lattice tables malformed");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m[a][b] != m[b][a])
        throw input_error("meet commutativity fails at " + at2(s, a, b));
      if (j[a][b] != j[b][a])
        throw input_error("join commutativity fails at " + at2(s, a, b));
    }
  for (int a = 0; a < n; ++a) {
    if (m[a][a] != a)
      throw input_error("meet idempotence fails at " + s.label(a));
    if (j[a][a] != a)
      throw input_error("join idempotence fails at " + s.label(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (m[m[a][b]][c] != m[a][m[b][c]])
          throw input_error("meet associativity fails at " + at2(s, a, b) +
                            ", " + s.label(c));
        if (j[j[a][b]][c] != j[a][j[b][c]])
          throw input_error("join associativity fails at " + at2(s, a, b) +
                            ", " + s.label(c));
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m[a][j[a][b]] != a || j[a][m[a][b]] != a)
        throw input_error("absorption fails at " + at2(s, a, b));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m[a][j[b][c]] != j[m[a][b]][m[a][c]])
          throw input_error("distributivity fails at " + at2(s, a, b) + ", " +
                            s.label(c));
}

}  // namespace

FinDL FinDL::from_tables(FiniteSet carrier, std::vector<std::vector<int>> meet,
                         std::vector<std::vector<int>> join,
                         std::optional<std::vector<int>> neg) {
  int n = carrier.size();
  if (n == 0) throw input_error("lattice needs at least one element");
  if (n > kTabCap) throw resource_error("tabular lattice capped at 256 elements");
  validate_tables(carrier, meet, join);
  int bot = -1, top = -1;
  for (int b = 0; b < n; ++b) {
    bool is_bot = true, is_top = true;
    for (int a = 0; a < n; ++a) {
      if (join[b][a] != a) is_bot = false;
      if (meet[b][a] != a) is_top = false;
    }
    if (is_bot) bot = b;
    if (is_top) top = b;
  }
  if (bot < 0) throw input_error("no bottom element");
  if (top < 0) throw input_error("no top element");
  if (neg) {
    if ((int)neg->size() != n) throw input_error("negation table malformed");
    for (int a = 0; a < n; ++a) {
      int c = (*neg)[a];
      if (c < 0 || c >= n) throw input_error("negation table malformed");
      if (meet[a][c] != bot)
        throw input_error("complement meet law fails at " + carrier.label(a));
      if (join[a][c] != top)
        throw input_error("complement join law fails at " + carrier.label(a));
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->carrier = std::move(carrier);
  impl->boolean = neg.has_value();
  impl->bot = bot;
  impl->top = top;
  impl->meet = std::move(meet);
  impl->join = std::move(join);
  if (neg) impl->neg = std::move(*neg);
  for (int a = 0; a < n; ++a) {
    if (a == bot) continue;
    int below = bot;
    for (int b = 0; b < n; ++b)
      if (b != a && impl->meet[a][b] == b) below = impl->join[below][b];
    if (below != a) impl->ji_list.push_back(a);
  }
  FinDL out;
  out.p = std::move(impl);
  return out;
}

FinDL FinDL::upset_algebra(Poset ground, bool boolean) {
  if (boolean && !ground.is_discrete())
    throw input_error("Boolean upset algebra needs a discrete ground");
  auto impl = std::make_shared<Impl>();
  std::vector<Bits> ups = ground.all_upsets();
  std::vector<std::string> labels;
  labels.reserve(ups.size());
  for (auto& u : ups) labels.push_back(subset_label(ground.carrier, u));
  impl->carrier = FiniteSet::of(labels);
  impl->pay.resize(ups.size());
  for (std::size_t k = 0; k < ups.size(); ++k) {
    int i = impl->carrier.index(labels[k]);
    impl->pay[i] = ups[k];
    impl->idx.emplace(ups[k], i);
  }
  impl->boolean = boolean;
  impl->subset = true;
  impl->bot = impl->idx.at(Bits(ground.size()));
  Bits full(ground.size());
  for (int i = 0; i < ground.size(); ++i) full.set(i);
  impl->top = impl->idx.at(full);
  for (int x = 0; x < ground.size(); ++x) {
    auto it = impl->idx.find(ground.principal_up(x));
    if (it == impl->idx.end())
      throw internal_error("upset_algebra: principal upset missing");
    impl->ji_list.push_back(it->second);
  }
  std::sort(impl->ji_list.begin(), impl->ji_list.end());
  impl->ji_list.erase(
      std::unique(impl->ji_list.begin(), impl->ji_list.end()),
      impl->ji_list.end());
  impl->ground = std::move(ground);
  FinDL out;
  out.p = std::move(impl);
  return out;
}

const FinDL::Impl& FinDL::impl() const {
  if (!p) throw internal_error("empty FinDL");
  return *p;
}

int FinDL::size() const { return impl().carrier.size(); }
const FiniteSet& FinDL::carrier() const { return impl().carrier; }
const std::string& FinDL::label(int i) const { return impl().carrier.label(i); }
int FinDL::index(const std::string& l) const { return impl().carrier.index(l); }

int FinDL::meet(int a, int b) const {
  const Impl& im = impl();
  if (!im.subset) return im.meet[a][b];
  return im.idx.at(im.pay[a] & im.pay[b]);
}

int FinDL::join(int a, int b) const {
  const Impl& im = impl();
  if (!im.subset) return im.join[a][b];
  return im.idx.at(im.pay[a] | im.pay[b]);
}

int FinDL::bot() const { return impl().bot; }
int FinDL::top() const { return impl().top; }

bool FinDL::le(int a, int b) const {
  const Impl& im = impl();
  if (im.subset) return im.pay[a].subset_of(im.pay[b]);
  return im.meet[a][b] == a;
}

bool FinDL::is_boolean() const { return impl().boolean; }

int FinDL::neg(int a) const {
  const Impl& im = impl();
  if (!im.boolean) throw input_error("negation on a non-Boolean lattice");
  if (!im.subset) return im.neg[a];
  auto it = im.idx.find(im.pay[a].complement());
  if (it == im.idx.end()) throw internal_error("missing complement upset");
  return it->second;
}

bool FinDL::is_ji(int a) const {
  const auto& l = impl().ji_list;
  return std::binary_search(l.begin(), l.end(), a);
}

const std::vector<int>& FinDL::ji() const { return impl().ji_list; }

bool FinDL::is_subset_backed() const { return impl().subset; }

const Poset& FinDL::ground() const {
  if (!impl().subset) throw input_error("tabular lattice has no ground poset");
  return impl().ground;
}

const Bits& FinDL::payload(int i) const {
  if (!impl().subset) throw input_error("tabular lattice has no payloads");
  return impl().pay[i];
}

int FinDL::index_of_payload(const Bits& b) const {
  const Impl& im = impl();
  if (!im.subset) throw input_error("tabular lattice has no payloads");
  auto it = im.idx.find(b);
  return it == im.idx.end() ? -1 : it->second;
}

Poset FinDL::order() const {
  int n = size();
  if (n > 4096) throw resource_error("lattice order poset capped at 4096");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le(a, b)) pairs.emplace_back(a, b);
  return Poset::from_pairs(carrier(), pairs, false);
}

bool FinDL::same_algebra_as(const FinDL& o) const {
  const Impl& x = impl();
  const Impl& y = o.impl();
  if (x.carrier.elems != y.carrier.elems) return false;
  if (x.boolean != y.boolean || x.bot != y.bot || x.top != y.top) return false;
  if (x.subset && y.subset)
    return x.ground.same_order_as(y.ground) && x.pay == y.pay;
  int n = x.carrier.size();
  if (n > 2048) throw resource_error("same_algebra_as capped at 2048 elements");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (meet(a, b) != o.meet(a, b) || join(a, b) != o.join(a, b))
        return false;
  if (x.boolean)
    for (int a = 0; a < n; ++a)
      if (neg(a) != o.neg(a)) return false;
  return true;
}

std::string FinDL::to_text() const {
  int n = size();
  if (n > kTabCap) throw resource_error("lattice file format capped at 256");
  std::ostringstream os;
  os << "elements:";
  for (int i = 0; i < n; ++i) os << ' ' << label(i);
  os << '\n';
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (a != b)
        os << "meet: " << label(a) << ' ' << label(b) << ' '
           << label(meet(a, b)) << '\n';
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (a != b)
        os << "join: " << label(a) << ' ' << label(b) << ' '
           << label(join(a, b)) << '\n';
  os << "bot: " << label(bot()) << '\n';
  os << "top: " << label(top()) << '\n';
  if (is_boolean())
    for (int a = 0; a < n; ++a)
      if (a <= neg(a)) os << "neg: " << label(a) << ' ' << label(neg(a)) << '\n';
  return os.str();
}

FinDL FinDL::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> labels;
  std::vector<std::array<std::string, 3>> meets, joins;
  std::vector<std::pair<std::string, std::string>> negs;
  std::string bot_l, top_l;
  bool have_bot = false, have_top = false, have_neg = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "elements:") {
      std::string t;
      while (ls >> t) labels.push_back(t);
    } else if (head == "meet:" || head == "join:") {
      std::string a, b, c, extra;
      if (!(ls >> a >> b >> c) || (ls >> extra))
        throw input_error("malformed " + head + " line");
      (head == "meet:" ? meets : joins).push_back({a, b, c});
    } else if (head == "bot:" || head == "top:") {
      std::string a, extra;
      if (!(ls >> a) || (ls >> extra))
        throw input_error("malformed " + head + " line");
      (head == "bot:" ? bot_l : top_l) = a;
      (head == "bot:" ? have_bot : have_top) = true;
    } else if (head == "neg:") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra))
        throw input_error("malformed neg: line");
      negs.emplace_back(a, b);
      have_neg = true;
    } else {
      throw input_error("unknown lattice directive: " + head);
    }
  }
  if (labels.empty()) throw input_error("lattice file has no elements: line");
  FiniteSet s = FiniteSet::of(labels);
  int n = s.size();
  if (n > kTabCap) throw resource_error("tabular lattice capped at 256 elements");
  auto look = [&](const std::string& l) {
    int i = s.index(l);
    if (i < 0) throw input_error("unknown lattice element: " + l);
    return i;
  };
  std::vector<std::vector<int>> mt(n, std::vector<int>(n, -1));
  std::vector<std::vector<int>> jt(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) mt[i][i] = jt[i][i] = i;
  auto fill = [&](std::vector<std::vector<int>>& t,
                  const std::array<std::string, 3>& e, const char* what) {
    int a = look(e[0]), b = look(e[1]), c = look(e[2]);
    if ((t[a][b] != -1 && t[a][b] != c) || (t[b][a] != -1 && t[b][a] != c))
      throw input_error(std::string("conflicting ") + what + " entries at " +
                        at2(s, a, b));
    t[a][b] = t[b][a] = c;
  };
  for (auto& e : meets) fill(mt, e, "meet");
  for (auto& e : joins) fill(jt, e, "join");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (mt[a][b] == -1)
        throw input_error("missing meet entry at " + at2(s, a, b));
      if (jt[a][b] == -1)
        throw input_error("missing join entry at " + at2(s, a, b));
    }
  std::optional<std::vector<int>> nt;
  if (have_neg) {
    nt.emplace(n, -1);
    for (auto& [a, b] : negs) {
      int i = look(a), j = look(b);
      auto put = [&](int x, int y) {
        if ((*nt)[x] != -1 && (*nt)[x] != y)
          throw input_error("conflicting neg entries at " + s.label(x));
        (*nt)[x] = y;
      };
      put(i, j);
      put(j, i);
    }
    for (int a = 0; a < n; ++a)
      if ((*nt)[a] == -1)
        throw input_error("missing neg entry at " + s.label(a));
  }
  if (!have_bot || !have_top)
    throw input_error("lattice file needs bot: and top: lines");
  FinDL out = from_tables(s, std::move(mt), std::move(jt), std::move(nt));
  if (out.bot() != look(bot_l))
    throw input_error("declared bot is not the bottom element");
  if (out.top() != look(top_l))
    throw input_error("declared top is not the top element");
  return out;
}

// ---------------------------------------------------------------------------

LatticeHom LatticeHom::make(FinDL dom, FinDL cod, std::vector<int> tab) {
  int n = dom.size();
  if ((int)tab.size() != n) throw input_error("hom table has wrong size");
  for (int v : tab)
    if (v < 0 || v >= cod.size()) throw input_error("hom table out of range");
  if (tab[dom.bot()] != cod.bot())
    throw input_error("hom does not preserve bottom");
  if (tab[dom.top()] != cod.top())
    throw input_error("hom does not preserve top");
  auto pair_ok = [&](int a, int b) {
    if (cod.meet(tab[a], tab[b]) != tab[dom.meet(a, b)])
      throw input_error("hom violates meet preservation at " +
                        at2(dom.carrier(), a, b));
    if (cod.join(tab[a], tab[b]) != tab[dom.join(a, b)])
      throw input_error("hom violates join preservation at " +
                        at2(dom.carrier(), a, b));
  };
  if (n <= 1024) {
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) pair_ok(a, b);
  } else {
    const auto& jis = dom.ji();
    if (jis.size() <= 64)
      for (int a : jis)
        for (int b : jis) pair_ok(a, b);
    std::uint64_t st = 0x243F6A8885A308D3ull;
    auto next = [&st] {
      st = st * 6364136223846793005ull + 1442695040888963407ull;
      return st >> 17;
    };
    for (int k = 0; k < (1 << 17); ++k) {
      int a = (int)(next() % n), b = (int)(next() % n);
      pair_ok(a, b);
    }
  }
  LatticeHom h;
  h.dom = std::move(dom);
  h.cod = std::move(cod);
  h.tab = std::move(tab);
  return h;
}

LatticeHom LatticeHom::from_labels(
    FinDL dom, FinDL cod,
    const std::vector<std::pair<std::string, std::string>>& assign) {
  std::vector<int> tab(dom.size(), -1);
  for (auto& [a, b] : assign) {
    int i = dom.index(a), j = cod.index(b);
    if (i < 0 || j < 0) throw input_error("hom assignment uses unknown label");
    tab[i] = j;
  }
  for (int v : tab)
    if (v < 0) throw input_error("hom assignment incomplete");
  return make(std::move(dom), std::move(cod), std::move(tab));
}

LatticeHom LatticeHom::identity(const FinDL& a) {
  std::vector<int> tab(a.size());
  for (int i = 0; i < a.size(); ++i) tab[i] = i;
  return make(a, a, std::move(tab));
}

LatticeHom LatticeHom::preimage(FinDL dom_alg, FinDL cod_alg, const FnMap& f) {
  const Poset& gy = dom_alg.ground();
  const Poset& gx = cod_alg.ground();
  if (f.dom.elems != gx.carrier.elems || f.cod.elems != gy.carrier.elems)
    throw input_error("preimage hom: map does not match the grounds");
  std::vector<int> tab(dom_alg.size());
  for (int u = 0; u < dom_alg.size(); ++u) {
    const Bits& b = dom_alg.payload(u);
    Bits pre(gx.size());
    for (int x = 0; x < gx.size(); ++x)
      if (b.get(f.tab[x])) pre.set(x);
    int v = cod_alg.index_of_payload(pre);
    if (v < 0)
      throw internal_error("preimage of an upset is not an element: " +
                           dom_alg.label(u));
    tab[u] = v;
  }
  return make(std::move(dom_alg), std::move(cod_alg), std::move(tab));
}

LatticeHom LatticeHom::after(const LatticeHom& f) const {
  if (f.cod.carrier().elems != dom.carrier().elems)
    throw input_error("hom composition mismatch");
  std::vector<int> t(f.tab.size());
  for (std::size_t i = 0; i < f.tab.size(); ++i) t[i] = tab[f.tab[i]];
  return make(f.dom, cod, std::move(t));
}

bool LatticeHom::injective() const {
  std::vector<int> v = tab;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

bool LatticeHom::surjective() const {
  std::vector<char> hit(cod.size(), 0);
  for (int v : tab) hit[v] = 1;
  for (char c : hit)
    if (!c) return false;
  return true;
}

// ---------------------------------------------------------------------------

FinBA powerset_BA(const FiniteSet& x) {
  return FinDL::upset_algebra(discrete(x), true);
}

FinDL upset_DL(const Poset& x) { return FinDL::upset_algebra(x, false); }

FinDL forget_W(const FinBA& a) {
  if (!a.is_boolean()) throw input_error("forget_W expects a Boolean algebra");
  if (a.is_subset_backed()) return FinDL::upset_algebra(a.ground(), false);
  int n = a.size();
  std::vector<std::vector<int>> mt(n, std::vector<int>(n)), jt = mt;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mt[i][j] = a.meet(i, j);
      jt[i][j] = a.join(i, j);
    }
  return FinDL::from_tables(a.carrier(), std::move(mt), std::move(jt),
                            std::nullopt);
}

FinBA centre_K(const FinDL& a) {
  int n = a.size();
  if (n > 4096) throw resource_error("centre_K capped at 4096 elements");
  std::vector<int> elems, comp;
  std::vector<int> pos(n, -1);
  for (int x = 0; x < n; ++x) {
    int c = -1;
    if (a.is_subset_backed()) {
      c = a.index_of_payload(a.payload(x).complement());
    } else {
      for (int y = 0; y < n; ++y)
        if (a.meet(x, y) == a.bot() && a.join(x, y) == a.top()) {
          c = y;
          break;
        }
    }
    if (c >= 0) {
      pos[x] = (int)elems.size();
      elems.push_back(x);
      comp.push_back(c);
    }
  }
  int m = (int)elems.size();
  if (m > kTabCap) throw resource_error("centre_K result exceeds tabular cap");
  std::vector<std::string> labels;
  for (int x : elems) labels.push_back(a.label(x));
  FiniteSet s = FiniteSet::of(labels);
  std::vector<int> order(m);  // K index -> position in elems
  for (int k = 0; k < m; ++k) order[s.index(a.label(elems[k]))] = k;
  std::vector<std::vector<int>> mt(m, std::vector<int>(m)), jt = mt;
  std::vector<int> nt(m);
  auto kidx = [&](int ax) {
    if (pos[ax] < 0)
      throw internal_error("complemented elements not closed under operations");
    return s.index(a.label(ax));
  };
  for (int i = 0; i < m; ++i) {
    int xi = elems[order[i]];
    nt[i] = kidx(comp[order[i]]);
    for (int j = 0; j < m; ++j) {
      int xj = elems[order[j]];
      mt[i][j] = kidx(a.meet(xi, xj));
      jt[i][j] = kidx(a.join(xi, xj));
    }
  }
  return FinDL::from_tables(s, std::move(mt), std::move(jt), std::move(nt));
}

FiniteSet ultrafilters(const FinBA& a) {
  if (!a.is_boolean()) throw input_error("ultrafilters expects a Boolean algebra");
  std::vector<std::string> labels;
  for (int j : a.ji()) labels.push_back(a.label(j));
  return FiniteSet::of(labels);
}

FnMap ultrafilters_map(const LatticeHom& h) {
  FiniteSet sb = ultrafilters(h.cod), sa = ultrafilters(h.dom);
  std::vector<std::pair<std::string, std::string>> assign;
  for (int b : h.cod.ji()) {
    int found = -1;
    for (int at : h.dom.ji())
      if (h.cod.le(b, h.tab[at])) {
        if (found >= 0) throw internal_error("ultrafilter preimage not prime");
        found = at;
      }
    if (found < 0) throw internal_error("ultrafilter preimage is empty");
    assign.emplace_back(h.cod.label(b), h.dom.label(found));
  }
  return FnMap::from_labels(sb, sa, assign);
}

Poset prime_filters(const FinDL& a) {
  std::vector<std::string> labels;
  for (int j : a.ji()) labels.push_back(a.label(j));
  FiniteSet s = FiniteSet::of(labels);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int j : a.ji())
    for (int k : a.ji())
      if (a.le(k, j)) pairs.emplace_back(a.label(j), a.label(k));
  return Poset::from_label_pairs(s, pairs, false);
}

MonotoneMap prime_filters_map(const LatticeHom& h) {
  Poset pb = prime_filters(h.cod), pa = prime_filters(h.dom);
  std::vector<std::pair<std::string, std::string>> assign;
  for (int j : h.cod.ji()) {
    int gen = h.dom.top();
    for (int x = 0; x < h.dom.size(); ++x)
      if (h.cod.le(j, h.tab[x])) gen = h.dom.meet(gen, x);
    if (!h.cod.le(j, h.tab[gen]))
      throw internal_error("prime filter preimage is not a filter");
    if (!h.dom.is_ji(gen))
      throw internal_error("prime filter preimage is not prime");
    assign.emplace_back(h.cod.label(j), h.dom.label(gen));
  }
  return MonotoneMap::from_labels(pb, pa, assign);
}

LatticeHom birkhoff_counit(const FinDL& a) {
  Poset pf = prime_filters(a);
  FinDL target = upset_DL(pf);
  std::vector<int> tab(a.size());
  for (int x = 0; x < a.size(); ++x) {
    Bits mask(pf.size());
    for (int j : a.ji())
      if (a.le(j, x)) mask.set(pf.carrier.index(a.label(j)));
    int v = target.index_of_payload(mask);
    if (v < 0) throw internal_error("Birkhoff image is not an upset");
    tab[x] = v;
  }
  return LatticeHom::make(a, std::move(target), std::move(tab));
}

LatticeHom atom_counit(const FinBA& a) {
  FiniteSet uf = ultrafilters(a);
  FinBA target = powerset_BA(uf);
  std::vector<int> tab(a.size());
  for (int x = 0; x < a.size(); ++x) {
    Bits mask(uf.size());
    for (int j : a.ji())
      if (a.le(j, x)) mask.set(uf.index(a.label(j)));
    int v = target.index_of_payload(mask);
    if (v < 0) throw internal_error("atom decomposition missing");
    tab[x] = v;
  }
  return LatticeHom::make(a, std::move(target), std::move(tab));
}

// ---------------------------------------------------------------------------

FreeAlgebra free_BA(int n) {
  if (n < 0 || n > 3) throw resource_error("free_BA capped at 3 generators");
  std::vector<std::string> labels;
  for (int v = 0; v < (1 << n); ++v) labels.push_back("v" + std::to_string(v));
  FiniteSet ground = FiniteSet::of(labels);
  FreeAlgebra f;
  f.alg = powerset_BA(ground);
  for (int i = 0; i < n; ++i) {
    Bits mask(ground.size());
    for (int v = 0; v < (1 << n); ++v)
      if ((v >> i) & 1) mask.set(ground.index("v" + std::to_string(v)));
    f.gens.push_back(f.alg.index_of_payload(mask));
  }
  return f;
}

FreeAlgebra free_DL(int n) {
  if (n < 0 || n > 4) throw resource_error("free_DL capped at 4 generators");
  std::vector<std::string> labels;
  for (int v = 0; v < (1 << n); ++v) labels.push_back("v" + std::to_string(v));
  FiniteSet verts = FiniteSet::of(labels);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int v = 0; v < (1 << n); ++v)
    for (int w = 0; w < (1 << n); ++w)
      if ((v & w) == v)
        pairs.emplace_back("v" + std::to_string(v), "v" + std::to_string(w));
  Poset cube = Poset::from_label_pairs(verts, pairs, false);
  FreeAlgebra f;
  f.alg = upset_DL(cube);
  for (int i = 0; i < n; ++i) {
    Bits mask(cube.size());
    for (int v = 0; v < (1 << n); ++v)
      if ((v >> i) & 1) mask.set(cube.carrier.index("v" + std::to_string(v)));
    f.gens.push_back(f.alg.index_of_payload(mask));
    if (f.gens.back() < 0) throw internal_error("free_DL generator missing");
  }
  f.monomials.resize(cube.size());
  for (int v = 0; v < (1 << n); ++v) {
    std::vector<int> mono;
    for (int i = 0; i < n; ++i)
      if ((v >> i) & 1) mono.push_back(i);
    f.monomials[cube.carrier.index("v" + std::to_string(v))] = std::move(mono);
  }
  return f;
}

LatticeHom free_dl_hom(const FreeAlgebra& f, const FinDL& d,
                       const std::vector<int>& images) {
  if (f.monomials.empty() && !f.gens.empty())
    throw input_error("free_dl_hom needs a free distributive lattice");
  if (images.size() != f.gens.size())
    throw input_error("free_dl_hom: one image per generator required");
  std::vector<int> tab(f.alg.size());
  for (int u = 0; u < f.alg.size(); ++u) {
    int acc = d.bot();
    f.alg.payload(u).for_each([&](int g) {
      int m = d.top();
      for (int i : f.monomials[g]) m = d.meet(m, images[i]);
      acc = d.join(acc, m);
    });
    tab[u] = acc;
  }
  return LatticeHom::make(f.alg, d, std::move(tab));
}

// ---------------------------------------------------------------------------

namespace {

FiniteSet named_set(int k) {
  std::vector<std::string> l;
  for (int i = 0; i < k; ++i) l.push_back("x" + std::to_string(i));
  return FiniteSet::of(l);
}

}  // namespace

DualityReport verify_dualities(int bound) {
  DualityReport rep;
  auto fail = [&rep](std::string w) {
    rep.pass = false;
    rep.witness = std::move(w);
    return rep;
  };

  // (i) Birkhoff counit on every upset lattice with at most 6 elements.
  for (int k = 0; k <= 5; ++k)
    for (const Poset& x : poset_shapes(k)) {
      if (x.all_upsets(64).size() > 6) continue;
      FinDL a = upset_DL(x);
      LatticeHom c = birkhoff_counit(a);
      if (!c.injective() || !c.surjective())
        return fail("Birkhoff counit not bijective on upsets of:\n" +
                    x.to_text());
      if (!poset_iso(prime_filters(a), x))
        return fail("prime filter poset does not recover:\n" + x.to_text());
    }

  // (ii) atom counit on powerset algebras.
  for (int k = 0; k <= bound; ++k) {
    FinBA b = powerset_BA(named_set(k));
    LatticeHom c = atom_counit(b);
    if (!c.injective() || !c.surjective())
      return fail("atom counit not bijective on a powerset of " +
                  std::to_string(k));
  }

  // (iii) W∘P = P′∘D^op and S′∘W = D^op∘S, objects and maps.
  for (int k = 0; k <= bound; ++k) {
    FiniteSet s = named_set(k);
    if (!forget_W(powerset_BA(s)).same_algebra_as(upset_DL(discrete(s))))
      return fail("W P != P' D on a set of " + std::to_string(k));
    FinBA b = powerset_BA(s);
    if (!prime_filters(forget_W(b)).same_order_as(discrete(ultrafilters(b))))
      return fail("S' W != D S on a set of " + std::to_string(k));
  }
  for (int a = 0; a <= bound; ++a)
    for (int b = 0; b <= bound; ++b) {
      FiniteSet sa = named_set(a), sb = named_set(b);
      for (auto& ft : all_fn_tabs(a, b)) {
        FnMap f = FnMap::from_indices(sa, sb, ft);
        LatticeHom pf = LatticeHom::preimage(powerset_BA(sb), powerset_BA(sa), f);
        LatticeHom ppf =
            LatticeHom::preimage(upset_DL(discrete(sb)), upset_DL(discrete(sa)), f);
        if (pf.tab != ppf.tab ||
            pf.dom.carrier().elems != ppf.dom.carrier().elems)
          return fail("W P != P' D on a map between sets of " +
                      std::to_string(a) + " and " + std::to_string(b));
        LatticeHom wpf = LatticeHom::make(forget_W(pf.dom), forget_W(pf.cod), pf.tab);
        FnMap su = ultrafilters_map(pf);
        FnMap sp = prime_filters_map(wpf).fn();
        if (!(su == sp))
          return fail("S' W != D S on a map between sets of " +
                      std::to_string(a) + " and " + std::to_string(b));
      }
    }

  // (iv) P∘C^op ≅ K∘P′ through the component-union map.
  for (int k = 0; k <= bound; ++k)
    for (const Poset& x : poset_shapes(k)) {
      Components cc = connected_components(x);
      FinBA lhs = powerset_BA(cc.comps);
      FinBA kk = centre_K(upset_DL(x));
      if (lhs.size() != kk.size())
        return fail("P C and K P' sizes differ on:\n" + x.to_text());
      std::vector<Bits> member(cc.comps.size(), Bits(x.size()));
      for (int i = 0; i < x.size(); ++i) member[cc.proj(i)].set(i);
      std::vector<int> tab(lhs.size());
      for (int i = 0; i < lhs.size(); ++i) {
        Bits u(x.size());
        lhs.payload(i).for_each([&](int c) { u |= member[c]; });
        int j = kk.index(subset_label(x.carrier, u));
        if (j < 0)
          return fail("component union is not complemented on:\n" + x.to_text());
        tab[i] = j;
      }
      LatticeHom iso = LatticeHom::make(lhs, kk, tab);
      if (!iso.injective() || !iso.surjective())
        return fail("component-union map not bijective on:\n" + x.to_text());
      for (int i = 0; i < lhs.size(); ++i)
        if (iso.tab[lhs.neg(i)] != kk.neg(iso.tab[i]))
          return fail("component-union map breaks negation on:\n" + x.to_text());
    }

  return rep;
}

// ---------------------------------------------------------------------------

DLCoins dl_coinserter(const LatticeHom& h1, const LatticeHom& h2) {
  if (h1.dom.carrier().elems != h2.dom.carrier().elems ||
      h1.cod.carrier().elems != h2.cod.carrier().elems)
    throw input_error("dl_coinserter needs a parallel pair");
  const FinDL& b = h1.cod;
  int n = b.size();
  if (n > 512) throw resource_error("dl_coinserter capped at 512 elements");
  std::vector<std::vector<int>> bm(n, std::vector<int>(n)), bj = bm;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bm[i][j] = b.meet(i, j);
      bj[i][j] = b.join(i, j);
    }
  BitMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b.le(i, j)) m.set(i, j);
  for (int a = 0; a < h1.dom.size(); ++a) m.set(h1.tab[a], h2.tab[a]);
  bool changed = true;
  while (changed) {
    m.close();
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!m.get(i, j) || i == j) continue;
        for (int z = 0; z < n; ++z) {
          if (!m.get(bm[i][z], bm[j][z])) {
            m.set(bm[i][z], bm[j][z]);
            changed = true;
          }
          if (!m.get(bj[i][z], bj[j][z])) {
            m.set(bj[i][z], bj[j][z]);
            changed = true;
          }
        }
      }
  }
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      if (m.get(i, j) && m.get(j, i)) {
        cls[i] = cls[j];
        break;
      }
    if (cls[i] < 0) {
      cls[i] = (int)reps.size();
      reps.push_back(i);
    }
  }
  int q = (int)reps.size();
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back(b.label(r));
  FiniteSet s = FiniteSet::of(labels);
  std::vector<int> slot(q);  // class id -> index in s
  for (int c = 0; c < q; ++c) slot[c] = s.index(b.label(reps[c]));
  std::vector<std::vector<int>> mt(q, std::vector<int>(q)), jt = mt;
  for (int ci = 0; ci < q; ++ci)
    for (int cj = 0; cj < q; ++cj) {
      mt[slot[ci]][slot[cj]] = slot[cls[b.meet(reps[ci], reps[cj])]];
      jt[slot[ci]][slot[cj]] = slot[cls[b.join(reps[ci], reps[cj])]];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (slot[cls[b.meet(i, j)]] != mt[slot[cls[i]]][slot[cls[j]]] ||
          slot[cls[b.join(i, j)]] != jt[slot[cls[i]]][slot[cls[j]]])
        throw internal_error("dl_coinserter congruence is not compatible");
    }
  DLCoins out;
  out.quot = FinDL::from_tables(s, std::move(mt), std::move(jt), std::nullopt);
  std::vector<int> proj(n);
  for (int i = 0; i < n; ++i) proj[i] = slot[cls[i]];
  out.q = LatticeHom::make(b, out.quot, std::move(proj));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.get(i, j) != out.quot.le(out.q.tab[i], out.q.tab[j]))
        throw internal_error("dl_coinserter order mismatch");
  return out;
}

std::optional<LatticeHom> dl_iso(const FinDL& a, const FinDL& b) {
  if (a.size() != b.size()) return std::nullopt;
  Poset pa = prime_filters(a), pb = prime_filters(b);
  auto perm = poset_iso(pa, pb);
  if (!perm) return std::nullopt;
  std::vector<int> tab(a.size());
  for (int x = 0; x < a.size(); ++x) {
    int acc = b.bot();
    for (int j : a.ji())
      if (a.le(j, x)) {
        int pj = pa.carrier.index(a.label(j));
        int bj = b.index(pb.label((*perm)[pj]));
        acc = b.join(acc, bj);
      }
    tab[x] = acc;
  }
  LatticeHom h = LatticeHom::make(a, b, std::move(tab));
  if (!h.injective() || !h.surjective())
    throw internal_error("Birkhoff lift of a filter-poset iso is not bijective");
  return h;
}

}  // namespace poslog
