#include "poslog/functor.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>

namespace poslog {

struct FunctorExpr::Node {
  FunctorKind kind;
  FiniteSet value;       // Const
  int param = 0;         // Dist/MSet/Exp
  FunctorExpr lhs, rhs;  // Sum/Prod/Comp; Exp uses lhs only
};

FunctorExpr FunctorExpr::id() {
  return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Id, {}, 0, {}, {}}));
}
FunctorExpr FunctorExpr::constant(FiniteSet v) {
  return FunctorExpr(
      std::make_shared<Node>(Node{FunctorKind::Const, std::move(v), 0, {}, {}}));
}
FunctorExpr FunctorExpr::pow() {
  return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Pow, {}, 0, {}, {}}));
}
FunctorExpr FunctorExpr::dist(int d) {
  if (d < 1) throw input_error("Dist: denominator must be >= 1");
  return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Dist, {}, d, {}, {}}));
}
FunctorExpr FunctorExpr::mset(int k) {
  if (k < 0) throw input_error("MSet: size must be >= 0");
  return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::MSet, {}, k, {}, {}}));
}
FunctorExpr FunctorExpr::nbhd() {
  return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Nbhd, {}, 0, {}, {}}));
}
FunctorExpr FunctorExpr::sum(FunctorExpr f, FunctorExpr g) {
  return FunctorExpr(std::make_shared<Node>(
      Node{FunctorKind::Sum, {}, 0, std::move(f), std::move(g)}));
}
FunctorExpr FunctorExpr::prod(FunctorExpr f, FunctorExpr g) {
  return FunctorExpr(std::make_shared<Node>(
      Node{FunctorKind::Prod, {}, 0, std::move(f), std::move(g)}));
}
FunctorExpr FunctorExpr::exp(FunctorExpr f, int n) {
  if (n < 1) throw input_error("Exp: power must be >= 1");
  return FunctorExpr(
      std::make_shared<Node>(Node{FunctorKind::Exp, {}, n, std::move(f), {}}));
}
FunctorExpr FunctorExpr::comp(FunctorExpr f, FunctorExpr g) {
  return FunctorExpr(std::make_shared<Node>(
      Node{FunctorKind::Comp, {}, 0, std::move(f), std::move(g)}));
}

FunctorKind FunctorExpr::kind() const { return n->kind; }
const FunctorExpr& FunctorExpr::left() const { return n->lhs; }
const FunctorExpr& FunctorExpr::right() const { return n->rhs; }
int FunctorExpr::param() const { return n->param; }
const FiniteSet& FunctorExpr::value() const { return n->value; }

namespace {

int level_of(FunctorKind k) {
  switch (k) {
    case FunctorKind::Sum: return 0;
    case FunctorKind::Prod: return 1;
    case FunctorKind::Comp: return 2;
    case FunctorKind::Exp: return 3;
    default: return 4;
  }
}

void print_expr(const FunctorExpr& t, std::ostream& os) {
  auto child = [&](const FunctorExpr& c, bool needParens) {
    if (needParens) os << '(';
    print_expr(c, os);
    if (needParens) os << ')';
  };
  int lv = level_of(t.kind());
  switch (t.kind()) {
    case FunctorKind::Id: os << "Id"; break;
    case FunctorKind::Pow: os << "Pow"; break;
    case FunctorKind::Nbhd: os << "Nbhd"; break;
    case FunctorKind::Dist: os << "Dist@" << t.param(); break;
    case FunctorKind::MSet: os << "MSet@" << t.param(); break;
    case FunctorKind::Const: {
      os << "Const({";
      for (int i = 0; i < t.value().size(); ++i)
        os << (i ? "," : "") << t.value().label(i);
      os << "})";
      break;
    }
    case FunctorKind::Sum:
      child(t.left(), level_of(t.left().kind()) < lv);
      os << '+';
      child(t.right(), level_of(t.right().kind()) <= lv);
      break;
    case FunctorKind::Prod:
      child(t.left(), level_of(t.left().kind()) < lv);
      os << '*';
      child(t.right(), level_of(t.right().kind()) <= lv);
      break;
    case FunctorKind::Comp:
      child(t.left(), level_of(t.left().kind()) < lv);
      os << '.';
      child(t.right(), level_of(t.right().kind()) <= lv);
      break;
    case FunctorKind::Exp:
      child(t.left(), level_of(t.left().kind()) < 4);
      os << '^' << t.param();
      break;
  }
}

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw input_error("functor expression: " + what + " at position " +
                      std::to_string(pos));
  }
  int integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected an integer");
    return std::stoi(s.substr(start, pos - start));
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }

  FunctorExpr atom() {
    skip();
    if (eat('(')) {
      FunctorExpr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    std::string name = ident();
    if (name == "Id") return FunctorExpr::id();
    if (name == "Pow") return FunctorExpr::pow();
    if (name == "Nbhd") return FunctorExpr::nbhd();
    if (name == "Dist") {
      if (!eat('@')) fail("expected '@' after Dist");
      return FunctorExpr::dist(integer());
    }
    if (name == "MSet") {
      if (!eat('@')) fail("expected '@' after MSet");
      return FunctorExpr::mset(integer());
    }
    if (name == "Const") {
      if (!eat('(')) fail("expected '(' after Const");
      skip();
      if (!eat('{')) fail("expected '{' opening the constant carrier");
      std::vector<std::string> labels;
      skip();
      if (!eat('}')) {
        while (true) {
          labels.push_back(ident());
          if (eat(',')) continue;
          if (eat('}')) break;
          fail("expected ',' or '}' in constant carrier");
        }
      }
      if (!eat(')')) fail("expected ')' closing Const");
      return FunctorExpr::constant(FiniteSet::of(std::move(labels)));
    }
    fail("unknown functor name '" + name + "'");
  }

  FunctorExpr expE() {
    FunctorExpr e = atom();
    while (eat('^')) e = FunctorExpr::exp(e, integer());
    return e;
  }
  FunctorExpr compE() {
    FunctorExpr e = expE();
    while (eat('.')) e = FunctorExpr::comp(e, expE());
    return e;
  }
  FunctorExpr prodE() {
    FunctorExpr e = compE();
    while (eat('*')) e = FunctorExpr::prod(e, compE());
    return e;
  }
  FunctorExpr sum() {
    FunctorExpr e = prodE();
    while (eat('+')) e = FunctorExpr::sum(e, prodE());
    return e;
  }
};

constexpr std::uint64_t kCap = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a >= kCap || b >= kCap) return kCap;
  return std::min(a + b, kCap);
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kCap || b >= kCap || a > kCap / b) return kCap;
  return a * b;
}
std::uint64_t sat_pow2(std::uint64_t e) {
  return e >= 62 ? kCap : std::uint64_t{1} << e;
}
std::uint64_t sat_pow(std::uint64_t a, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, a);
  return r;
}
std::uint64_t sat_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = sat_mul(r, n - k + i);
    if (r >= kCap) return kCap;
    r /= i;
  }
  return r;
}

}  // namespace

std::uint64_t count_cap() { return kCap; }

FunctorExpr FunctorExpr::parse(const std::string& text) {
  Parser p(text);
  FunctorExpr e = p.sum();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return e;
}

std::string FunctorExpr::to_string() const {
  std::ostringstream os;
  print_expr(*this, os);
  return os.str();
}

std::uint64_t count_obj(const FunctorExpr& t, std::uint64_t n) {
  switch (t.kind()) {
    case FunctorKind::Id: return n;
    case FunctorKind::Const: return t.value().size();
    case FunctorKind::Pow: return sat_pow2(n);
    case FunctorKind::Dist:
      return n == 0 ? 0 : sat_binom(sat_add(n, t.param() - 1), t.param());
    case FunctorKind::MSet:
      if (n == 0) return t.param() == 0 ? 1 : 0;
      return sat_binom(sat_add(n, t.param() - 1), t.param());
    case FunctorKind::Nbhd: return sat_pow2(sat_pow2(n));
    case FunctorKind::Sum:
      return sat_add(count_obj(t.left(), n), count_obj(t.right(), n));
    case FunctorKind::Prod:
      return sat_mul(count_obj(t.left(), n), count_obj(t.right(), n));
    case FunctorKind::Exp: return sat_pow(count_obj(t.left(), n), t.param());
    case FunctorKind::Comp:
      return count_obj(t.left(), count_obj(t.right(), n));
  }
  throw internal_error("count_obj: unhandled functor kind");
}

namespace {

std::string mask_label(const FiniteSet& base, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < base.size(); ++i)
    if ((mask >> i) & 1) {
      if (!first) out += ',';
      first = false;
      out += base.label(i);
    }
  out += '}';
  return out;
}

std::string vec_label(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

TSet finish(std::vector<std::pair<std::string, Val>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw internal_error("apply_obj: duplicate canonical label " +
                           entries[i].first);
  TSet out;
  std::vector<std::string> labels;
  labels.reserve(entries.size());
  for (auto& [l, v] : entries) {
    labels.push_back(l);
    out.vals.push_back(std::move(v));
  }
  out.elems = FiniteSet::of(std::move(labels));
  for (std::size_t i = 0; i < out.vals.size(); ++i)
    out.index.emplace(out.vals[i], (int)i);
  return out;
}

// All length-n vectors of nonnegative integers summing to total.
void compositions(int n, int total, std::vector<int>& cur,
                  const std::function<void()>& emit) {
  if ((int)cur.size() == n - 1) {
    cur.push_back(total);
    emit();
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(n, total - v, cur, emit);
    cur.pop_back();
  }
}

TSet build_obj(const FunctorExpr& t, const FiniteSet& x);

std::mutex g_obj_mu;
std::map<std::string, std::unique_ptr<TSet>> g_obj_cache;

std::string cache_key(const FunctorExpr& t, const FiniteSet& x) {
  std::string key = t.to_string();
  key += '\n';
  for (auto& l : x.elems) {
    key += l;
    key += '\x1f';
  }
  return key;
}

TSet build_obj(const FunctorExpr& t, const FiniteSet& x) {
  int n = x.size();
  std::vector<std::pair<std::string, Val>> entries;
  switch (t.kind()) {
    case FunctorKind::Id: {
      for (int i = 0; i < n; ++i) {
        Val v;
        v.k = Val::K::Base;
        v.tag = i;
        entries.emplace_back(x.label(i), v);
      }
      break;
    }
    case FunctorKind::Const: {
      const FiniteSet& c = t.value();
      for (int i = 0; i < c.size(); ++i) {
        Val v;
        v.k = Val::K::Base;
        v.tag = i;
        entries.emplace_back(c.label(i), v);
      }
      break;
    }
    case FunctorKind::Pow: {
      if (n > 62) throw resource_error("apply_obj: Pow base too large");
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        Val v;
        v.k = Val::K::Mask;
        v.mask = m;
        entries.emplace_back(mask_label(x, m), v);
      }
      break;
    }
    case FunctorKind::Dist:
    case FunctorKind::MSet: {
      int total = t.param();
      if (n == 0) {
        if (t.kind() == FunctorKind::MSet && total == 0) {
          Val v;
          v.k = Val::K::Vec;
          entries.emplace_back("()", v);
        }
        break;
      }
      std::vector<int> cur;
      compositions(n, total, cur, [&] {
        Val v;
        v.k = Val::K::Vec;
        v.vec = cur;
        entries.emplace_back(vec_label(cur), v);
      });
      break;
    }
    case FunctorKind::Nbhd: {
      if (n > 5) throw resource_error("apply_obj: Nbhd base too large");
      std::uint64_t subsets = std::uint64_t{1} << n;
      if (subsets > 62) throw resource_error("apply_obj: Nbhd base too large");
      for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
        Val v;
        v.k = Val::K::Fam;
        std::string label = "{";
        bool first = true;
        for (std::uint64_t m = 0; m < subsets; ++m)
          if ((fam >> m) & 1) {
            v.fam.push_back(m);
            if (!first) label += ',';
            first = false;
            label += mask_label(x, m);
          }
        label += '}';
        entries.emplace_back(label, v);
      }
      break;
    }
    case FunctorKind::Sum: {
      const TSet& lf = obj_full(t.left(), x);
      const TSet& rg = obj_full(t.right(), x);
      for (int i = 0; i < lf.elems.size(); ++i) {
        Val v;
        v.k = Val::K::In;
        v.tag = 0;
        v.sub = {i};
        entries.emplace_back("inl(" + lf.elems.label(i) + ")", v);
      }
      for (int i = 0; i < rg.elems.size(); ++i) {
        Val v;
        v.k = Val::K::In;
        v.tag = 1;
        v.sub = {i};
        entries.emplace_back("inr(" + rg.elems.label(i) + ")", v);
      }
      break;
    }
    case FunctorKind::Prod: {
      const TSet& lf = obj_full(t.left(), x);
      const TSet& rg = obj_full(t.right(), x);
      for (int i = 0; i < lf.elems.size(); ++i)
        for (int j = 0; j < rg.elems.size(); ++j) {
          Val v;
          v.k = Val::K::Tup;
          v.sub = {i, j};
          entries.emplace_back(
              "(" + lf.elems.label(i) + "," + rg.elems.label(j) + ")", v);
        }
      break;
    }
    case FunctorKind::Exp: {
      const TSet& lf = obj_full(t.left(), x);
      int a = t.param(), m = lf.elems.size();
      if (m == 0) break;
      std::vector<int> tup(a, 0);
      while (true) {
        Val v;
        v.k = Val::K::Tup;
        v.sub = tup;
        std::string label = "(";
        for (int i = 0; i < a; ++i) {
          if (i) label += ',';
          label += lf.elems.label(tup[i]);
        }
        label += ')';
        entries.emplace_back(label, v);
        int i = a - 1;
        while (i >= 0 && tup[i] == m - 1) tup[i--] = 0;
        if (i < 0) break;
        ++tup[i];
      }
      break;
    }
    case FunctorKind::Comp:
      throw internal_error("build_obj: Comp handled by obj_full");
  }
  return finish(std::move(entries));
}

}  // namespace

const TSet& obj_full(const FunctorExpr& t, const FiniteSet& x) {
  if (t.kind() == FunctorKind::Comp)
    return obj_full(t.left(), obj_full(t.right(), x).elems);
  std::uint64_t cnt = count_obj(t, x.size());
  if (cnt > size_guard())
    throw resource_error(
        "apply_obj: |" + t.to_string() + "(X)| with |X| = " +
        std::to_string(x.size()) +
        (cnt >= kCap ? " overflows" : " is " + std::to_string(cnt)) +
        ", beyond the size guard " + std::to_string(size_guard()));
  std::string key = cache_key(t, x);
  {
    std::lock_guard<std::mutex> lk(g_obj_mu);
    auto it = g_obj_cache.find(key);
    if (it != g_obj_cache.end()) return *it->second;
  }
  auto built = std::make_unique<TSet>(build_obj(t, x));
  std::lock_guard<std::mutex> lk(g_obj_mu);
  auto [it, fresh] = g_obj_cache.emplace(key, std::move(built));
  return *it->second;
}

FiniteSet apply_obj(const FunctorExpr& t, const FiniteSet& x) {
  return obj_full(t, x).elems;
}

FnMap apply_map(const FunctorExpr& t, const FnMap& f) {
  if (t.kind() == FunctorKind::Comp)
    return apply_map(t.left(), apply_map(t.right(), f));
  const TSet& dx = obj_full(t, f.dom);
  const TSet& dy = obj_full(t, f.cod);
  int ny = f.cod.size();
  FnMap lf, rg;  // component actions for Sum/Prod/Exp
  switch (t.kind()) {
    case FunctorKind::Sum:
    case FunctorKind::Prod:
      lf = apply_map(t.left(), f);
      rg = apply_map(t.right(), f);
      break;
    case FunctorKind::Exp:
      lf = apply_map(t.left(), f);
      break;
    default:
      break;
  }
  std::vector<int> tab(dx.vals.size());
  for (std::size_t i = 0; i < dx.vals.size(); ++i) {
    const Val& v = dx.vals[i];
    Val w = v;
    switch (t.kind()) {
      case FunctorKind::Id:
        w.tag = f(v.tag);
        break;
      case FunctorKind::Const:
        break;
      case FunctorKind::Pow: {
        w.mask = 0;
        for (int b = 0; b < f.dom.size(); ++b)
          if ((v.mask >> b) & 1) w.mask |= std::uint64_t{1} << f(b);
        break;
      }
      case FunctorKind::Dist:
      case FunctorKind::MSet: {
        w.vec.assign(ny, 0);
        for (int b = 0; b < f.dom.size(); ++b) w.vec[f(b)] += v.vec[b];
        break;
      }
      case FunctorKind::Nbhd: {
        w.fam.clear();
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << ny); ++b) {
          std::uint64_t pre = 0;
          for (int e = 0; e < f.dom.size(); ++e)
            if ((b >> f(e)) & 1) pre |= std::uint64_t{1} << e;
          if (std::binary_search(v.fam.begin(), v.fam.end(), pre))
            w.fam.push_back(b);
        }
        break;
      }
      case FunctorKind::Sum:
        w.sub = {v.tag == 0 ? lf.tab[v.sub[0]] : rg.tab[v.sub[0]]};
        break;
      case FunctorKind::Prod:
        w.sub = {lf.tab[v.sub[0]], rg.tab[v.sub[1]]};
        break;
      case FunctorKind::Exp: {
        for (std::size_t c = 0; c < v.sub.size(); ++c)
          w.sub[c] = lf.tab[v.sub[c]];
        break;
      }
      case FunctorKind::Comp:
        throw internal_error("apply_map: Comp handled above");
    }
    int j = dy.index_of(w);
    if (j < 0) throw internal_error("apply_map: image value not enumerated");
    tab[i] = j;
  }
  return FnMap::from_indices(dx.elems, dy.elems, std::move(tab));
}

namespace {

std::vector<std::pair<int, int>> span_pairs_generic(const FunctorExpr& t,
                                                    const FnMap& p,
                                                    const FnMap& q) {
  FnMap tp = apply_map(t, p);
  FnMap tq = apply_map(t, q);
  std::vector<std::pair<int, int>> out;
  out.reserve(tp.tab.size());
  for (std::size_t i = 0; i < tp.tab.size(); ++i)
    out.emplace_back(tp.tab[i], tq.tab[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A pair (u, v) in Nbhd(X) x Nbhd(Y) lies in the span image iff membership in
// u and v is constant on subsets sharing a preimage in the apex: some family
// over the apex then restricts to both.
std::vector<std::pair<int, int>> span_pairs_nbhd(const FnMap& p, const FnMap& q) {
  int nw = p.dom.size(), nx = p.cod.size(), ny = q.cod.size();
  if (nw > 62) throw resource_error("rel_lift: Nbhd apex too large");
  FunctorExpr nb = FunctorExpr::nbhd();
  const TSet& tx = obj_full(nb, p.cod);
  const TSet& ty = obj_full(nb, q.cod);
  if ((std::uint64_t)tx.vals.size() * ty.vals.size() > 20'000'000)
    throw resource_error("rel_lift: Nbhd candidate space too large");
  // Group the subset masks of X and Y by their apex preimage.
  std::map<std::uint64_t, std::pair<std::vector<std::uint64_t>,
                                    std::vector<std::uint64_t>>>
      groups;
  auto preimage = [&](const FnMap& f, std::uint64_t m) {
    std::uint64_t pre = 0;
    for (int w = 0; w < nw; ++w)
      if ((m >> f(w)) & 1) pre |= std::uint64_t{1} << w;
    return pre;
  };
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << nx); ++a)
    groups[preimage(p, a)].first.push_back(a);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << ny); ++b)
    groups[preimage(q, b)].second.push_back(b);
  std::vector<std::pair<int, int>> out;
  for (std::size_t ui = 0; ui < tx.vals.size(); ++ui) {
    const auto& uf = tx.vals[ui].fam;
    for (std::size_t vi = 0; vi < ty.vals.size(); ++vi) {
      const auto& vf = ty.vals[vi].fam;
      bool ok = true;
      for (const auto& [wm, g] : groups) {
        int mem = -1;
        for (std::uint64_t a : g.first) {
          int m = std::binary_search(uf.begin(), uf.end(), a) ? 1 : 0;
          if (mem < 0) mem = m;
          else if (mem != m) { ok = false; break; }
        }
        if (!ok) break;
        for (std::uint64_t b : g.second) {
          int m = std::binary_search(vf.begin(), vf.end(), b) ? 1 : 0;
          if (mem < 0) mem = m;
          else if (mem != m) { ok = false; break; }
        }
        if (!ok) break;
      }
      if (ok) out.emplace_back((int)ui, (int)vi);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> span_pairs(const FunctorExpr& t, const FnMap& p,
                                            const FnMap& q) {
  if (!(p.dom == q.dom)) throw input_error("span_pairs: projections must share a domain");
  if (t.kind() == FunctorKind::Nbhd) {
    auto fast = span_pairs_nbhd(p, q);
    if (count_obj(t, p.dom.size()) <= size_guard()) {
      auto brute = span_pairs_generic(t, p, q);
      if (fast != brute)
        throw internal_error("span_pairs: Nbhd fast route disagrees with "
                             "direct enumeration");
    }
    return fast;
  }
  return span_pairs_generic(t, p, q);
}

Relation rel_lift(const FunctorExpr& t, const Relation& r) {
  std::vector<std::string> wl;
  std::vector<std::pair<std::string, std::string>> pa, qa;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    std::string w = "w" + std::to_string(i);
    wl.push_back(w);
    pa.emplace_back(w, r.left.label(r.pairs[i].first));
    qa.emplace_back(w, r.right.label(r.pairs[i].second));
  }
  FiniteSet ws = FiniteSet::of(std::move(wl));
  FnMap p = FnMap::from_labels(ws, r.left, pa);
  FnMap q = FnMap::from_labels(ws, r.right, qa);
  return Relation::make(apply_obj(t, r.left), apply_obj(t, r.right),
                        span_pairs(t, p, q));
}

Pullback weak_pullback(const FnMap& f, const FnMap& g) {
  if (!(f.cod == g.cod)) throw input_error("weak_pullback: cospan expected");
  std::vector<std::pair<int, int>> elems;
  for (int x = 0; x < f.dom.size(); ++x)
    for (int y = 0; y < g.dom.size(); ++y)
      if (f(x) == g(y)) elems.emplace_back(x, y);
  std::vector<std::string> labels;
  for (auto& [x, y] : elems)
    labels.push_back("(" + f.dom.label(x) + "," + g.dom.label(y) + ")");
  {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      labels.clear();
      for (std::size_t i = 0; i < elems.size(); ++i)
        labels.push_back("p" + std::to_string(i));
    }
  }
  std::vector<std::pair<std::string, std::string>> a1, a2;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    a1.emplace_back(labels[i], f.dom.label(elems[i].first));
    a2.emplace_back(labels[i], g.dom.label(elems[i].second));
  }
  Pullback pb;
  pb.apex = FiniteSet::of(labels);
  pb.p1 = FnMap::from_labels(pb.apex, f.dom, a1);
  pb.p2 = FnMap::from_labels(pb.apex, g.dom, a2);
  return pb;
}

namespace {

struct CospanShape {
  std::vector<std::pair<int, int>> fibers;  // per z: (#preimages in X, in Y)
  int pullback_size() const {
    int s = 0;
    for (auto& [a, b] : fibers) s += a * b;
    return s;
  }
  int total() const {
    int s = (int)fibers.size();
    for (auto& [a, b] : fibers) s += a + b;
    return s;
  }
};

std::vector<CospanShape> cospan_shapes(int bound) {
  std::vector<CospanShape> out;
  std::vector<std::pair<int, int>> cur;
  auto rec = [&](auto&& self, std::pair<int, int> minPair, int sa, int sb) -> void {
    out.push_back({cur});
    if ((int)cur.size() == bound) return;
    for (int a = 0; a <= bound - sa; ++a)
      for (int b = 0; b <= bound - sb; ++b) {
        if (std::make_pair(a, b) < minPair) continue;
        cur.emplace_back(a, b);
        self(self, {a, b}, sa + a, sb + b);
        cur.pop_back();
      }
  };
  rec(rec, {0, 0}, 0, 0);
  std::stable_sort(out.begin(), out.end(),
                   [](const CospanShape& a, const CospanShape& b) {
                     if (a.pullback_size() != b.pullback_size())
                       return a.pullback_size() < b.pullback_size();
                     return a.total() < b.total();
                   });
  return out;
}

}  // namespace

WpbReport preserves_weak_pullbacks(const FunctorExpr& t, int bound) {
  for (const CospanShape& shape : cospan_shapes(bound)) {
    int m = (int)shape.fibers.size();
    std::vector<std::string> zl, xl, yl;
    std::vector<std::pair<std::string, std::string>> fa, ga;
    for (int z = 0; z < m; ++z) zl.push_back("z" + std::to_string(z));
    for (int z = 0; z < m; ++z) {
      for (int i = 0; i < shape.fibers[z].first; ++i) {
        std::string x = "x" + std::to_string(xl.size());
        xl.push_back(x);
        fa.emplace_back(x, zl[z]);
      }
      for (int i = 0; i < shape.fibers[z].second; ++i) {
        std::string y = "y" + std::to_string(yl.size());
        yl.push_back(y);
        ga.emplace_back(y, zl[z]);
      }
    }
    FiniteSet zs = FiniteSet::of(zl), xs = FiniteSet::of(xl),
              ys = FiniteSet::of(yl);
    FnMap f = FnMap::from_labels(xs, zs, fa);
    FnMap g = FnMap::from_labels(ys, zs, ga);
    Pullback pb = weak_pullback(f, g);
    auto span = span_pairs(t, pb.p1, pb.p2);
    FnMap tf = apply_map(t, f);
    FnMap tg = apply_map(t, g);
    for (int u = 0; u < (int)tf.tab.size(); ++u)
      for (int v = 0; v < (int)tg.tab.size(); ++v) {
        if (tf.tab[u] != tg.tab[v]) continue;
        if (std::binary_search(span.begin(), span.end(), std::make_pair(u, v)))
          continue;
        WpbReport rep;
        rep.preserves = false;
        std::ostringstream os;
        os << "f: ";
        for (int x = 0; x < xs.size(); ++x)
          os << (x ? ", " : "") << xs.label(x) << "->" << zs.label(f(x));
        os << "; g: ";
        for (int y = 0; y < ys.size(); ++y)
          os << (y ? ", " : "") << ys.label(y) << "->" << zs.label(g(y));
        rep.cospan = os.str();
        rep.u = tf.dom.label(u);
        rep.v = tg.dom.label(v);
        return rep;
      }
  }
  return {};
}

LawReport check_functor_laws(const FunctorExpr& t, int bound) {
  auto named = [](const char* stem, int n) {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back(stem + std::to_string(i));
    return FiniteSet::of(std::move(l));
  };
  for (int n = 0; n <= bound; ++n) {
    FiniteSet a = named("p", n);
    FnMap ida = FnMap::identity(a);
    if (!(apply_map(t, ida) == FnMap::identity(apply_obj(t, a))))
      return {false, "identity law fails on a set of size " + std::to_string(n)};
  }
  for (int na = 0; na <= bound; ++na)
    for (int nb = 0; nb <= bound; ++nb)
      for (int nc = 0; nc <= bound; ++nc) {
        if ((nb == 0 && na > 0) || (nc == 0 && nb > 0)) continue;
        FiniteSet a = named("p", na), b = named("q", nb), c = named("r", nc);
        std::vector<int> ftab(na, 0), gtab(nb, 0);
        auto sweepG = [&] {
          FnMap f = FnMap::from_indices(a, b, ftab);
          FnMap g = FnMap::from_indices(b, c, gtab);
          FnMap lhs = apply_map(t, g.after(f));
          FnMap rhs = apply_map(t, g).after(apply_map(t, f));
          return lhs == rhs;
        };
        auto next = [](std::vector<int>& tab, int m) {
          int i = (int)tab.size() - 1;
          while (i >= 0 && tab[i] == m - 1) tab[i--] = 0;
          if (i < 0) return false;
          ++tab[i];
          return true;
        };
        while (true) {
          while (true) {
            if (!sweepG())
              return {false, "composition law fails on sizes " +
                                 std::to_string(na) + "," + std::to_string(nb) +
                                 "," + std::to_string(nc)};
            if (nb == 0 || !next(gtab, nc)) break;
          }
          if (na == 0 || !next(ftab, nb)) break;
        }
      }
  return {};
}

}  // namespace poslog
