#include "poslog/batteries.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "poslog/enumerate.hpp"
#include "poslog/error.hpp"
#include "poslog/logic.hpp"
#include "poslog/posetify.hpp"

namespace poslog {

namespace {

// Iterate all index tables dom -> [0, n); returns false once exhausted.
bool next_tab(std::vector<int>& tab, int n) {
  for (std::size_t d = 0; d < tab.size(); ++d) {
    if (++tab[d] < n) return true;
    tab[d] = 0;
  }
  return false;
}

}  // namespace

BatteryReport adjunction_battery(int bound) {
  BatteryReport rep;
  std::vector<Poset> shapes;
  for (int n = 0; n <= bound; ++n)
    for (const Poset& p : poset_shapes(n)) shapes.push_back(p);
  for (const Poset& x : shapes)
    for (const Poset& y : shapes) {
      if (x.size() > 0 && y.size() == 0) continue;
      std::vector<int> tab((std::size_t)x.size(), 0);
      do {
        if (!classify_map(x, y, tab).monotone) continue;
        MonotoneMap f = MonotoneMap::make(x, y, tab);
        auto upx = x.all_upsets();
        auto upy = y.all_upsets();
        ++rep.cases;
        for (const Bits& u : upx)
          if (!u.subset_of(restrict_along(f, exists_along(f, u)))) {
            rep.pass = false;
            rep.witness = "unit fails for a map " + x.to_text() + " -> " + y.to_text();
            return rep;
          }
        for (const Bits& v : upy)
          if (!exists_along(f, restrict_along(f, v)).subset_of(v)) {
            rep.pass = false;
            rep.witness = "counit fails for a map " + x.to_text() + " -> " + y.to_text();
            return rep;
          }
        for (const Bits& u : upx)
          for (const Bits& v : upy)
            if (exists_along(f, u).subset_of(v) != u.subset_of(restrict_along(f, v))) {
              rep.pass = false;
              rep.witness = "adjunction equivalence fails for a map " +
                            x.to_text() + " -> " + y.to_text();
              return rep;
            }
      } while (next_tab(tab, y.size()));
    }
  return rep;
}

namespace {

// Weakening closure: down-closed in the first leg, up-closed in the second.
bool weakening_closed(const Poset& x, const Poset& y, std::uint64_t mask) {
  auto has = [&](int i, int j) {
    return (mask >> (i * y.size() + j)) & 1u;
  };
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j) {
      if (!has(i, j)) continue;
      for (int i2 = 0; i2 < x.size(); ++i2)
        if (x.le(i2, i) && !has(i2, j)) return false;
      for (int j2 = 0; j2 < y.size(); ++j2)
        if (y.le(j, j2) && !has(i, j2)) return false;
    }
  return true;
}

}  // namespace

BatteryReport bc_exact_battery(int bound) {
  BatteryReport rep;
  std::vector<Poset> shapes;
  for (int n = 0; n <= bound; ++n)
    for (const Poset& p : poset_shapes(n)) shapes.push_back(p);
  for (const Poset& x : shapes)
    for (const Poset& y : shapes) {
      const int cells = x.size() * y.size();
      if (cells > 12) throw resource_error("bc_exact_battery bound too large");
      // Bipartite cospan apex realizing a given relation.
      std::vector<std::string> zl;
      for (int i = 0; i < x.size(); ++i) zl.push_back("l." + x.label(i));
      for (int j = 0; j < y.size(); ++j) zl.push_back("r." + y.label(j));
      FiniteSet zset = FiniteSet::of(zl);
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << cells); ++r) {
        if (!weakening_closed(x, y, r)) continue;
        std::vector<std::pair<std::string, std::string>> zp;
        for (int i = 0; i < x.size(); ++i)
          for (int i2 = 0; i2 < x.size(); ++i2)
            if (x.le(i, i2)) zp.emplace_back("l." + x.label(i), "l." + x.label(i2));
        for (int j = 0; j < y.size(); ++j)
          for (int j2 = 0; j2 < y.size(); ++j2)
            if (y.le(j, j2)) zp.emplace_back("r." + y.label(j), "r." + y.label(j2));
        for (int i = 0; i < x.size(); ++i)
          for (int j = 0; j < y.size(); ++j)
            if ((r >> (i * y.size() + j)) & 1u)
              zp.emplace_back("l." + x.label(i), "r." + y.label(j));
        Poset z = Poset::from_label_pairs(zset, zp, true);
        std::vector<int> ftab((std::size_t)x.size()), gtab((std::size_t)y.size());
        for (int i = 0; i < x.size(); ++i)
          ftab[(std::size_t)i] = z.carrier.index("l." + x.label(i));
        for (int j = 0; j < y.size(); ++j)
          gtab[(std::size_t)j] = z.carrier.index("r." + y.label(j));
        MonotoneMap f = MonotoneMap::make(x, z, ftab);
        MonotoneMap g = MonotoneMap::make(y, z, gtab);

        // Comma square over the same cospan: the always-exact baseline.
        {
          Comma cm = comma_object(f, g);
          Square sq = Square::make(cm.p0, cm.p1, f, g);
          ++rep.cases;
          if (!is_exact_square(sq).exact || !beck_chevalley_check(sq)) {
            rep.pass = false;
            rep.witness = "comma square not exact/BC over " + z.to_text();
            return rep;
          }
        }

        // Discrete spans realizing each weakening-closed subrelation.
        for (std::uint64_t s = r;; s = (s - 1) & r) {
          if (weakening_closed(x, y, s)) {
            std::vector<std::string> el;
            for (int i = 0; i < x.size(); ++i)
              for (int j = 0; j < y.size(); ++j)
                if ((s >> (i * y.size() + j)) & 1u)
                  el.push_back("(" + x.label(i) + "," + y.label(j) + ")");
            Poset e = discrete(FiniteSet::of(el));
            std::vector<int> at((std::size_t)e.size()), bt((std::size_t)e.size());
            int w = 0;
            for (int i = 0; i < x.size(); ++i)
              for (int j = 0; j < y.size(); ++j)
                if ((s >> (i * y.size() + j)) & 1u) {
                  int idx = e.carrier.index("(" + x.label(i) + "," + y.label(j) + ")");
                  at[(std::size_t)idx] = i;
                  bt[(std::size_t)idx] = j;
                  ++w;
                }
            MonotoneMap alpha = MonotoneMap::make(e, x, at);
            MonotoneMap beta = MonotoneMap::make(e, y, bt);
            Square sq = Square::make(alpha, beta, f, g);
            bool bc = beck_chevalley_check(sq);
            bool ex = is_exact_square(sq).exact;
            bool oracle = s == r;  // exact iff the span realizes all of R
            ++rep.cases;
            if (bc != ex || ex != oracle) {
              rep.pass = false;
              std::ostringstream os;
              os << "BC/exactness disagree (bc=" << bc << ", exact=" << ex
                 << ", relation-equality=" << oracle << ") over " << z.to_text();
              rep.witness = os.str();
              return rep;
            }
          }
          if (s == 0) break;
        }
      }
    }
  return rep;
}

BatteryReport split_coins_battery(int bound) {
  BatteryReport rep;
  std::vector<Poset> shapes;
  for (int n = 0; n <= bound; ++n)
    for (const Poset& p : poset_shapes(n)) shapes.push_back(p);
  for (const Poset& y : shapes)
    for (const Poset& x : shapes) {
      if (x.size() > y.size()) continue;
      if (x.size() == 0 && y.size() > 0) continue;
      std::vector<int> itab((std::size_t)y.size(), 0);
      do {
        MapFlags fl = classify_map(y, x, itab);
        if (!fl.monotone || !fl.surjective) continue;
        MonotoneMap i = MonotoneMap::make(y, x, itab);
        // Sections of i: one preimage choice per point, monotone.
        std::vector<std::vector<int>> fib((std::size_t)x.size());
        for (int yy = 0; yy < y.size(); ++yy)
          fib[(std::size_t)itab[(std::size_t)yy]].push_back(yy);
        std::vector<std::vector<int>> sections;
        std::vector<int> pick((std::size_t)x.size(), 0);
        while (true) {
          std::vector<int> stab((std::size_t)x.size());
          for (int xx = 0; xx < x.size(); ++xx)
            stab[(std::size_t)xx] = fib[(std::size_t)xx][(std::size_t)pick[(std::size_t)xx]];
          if (classify_map(x, y, stab).monotone) sections.push_back(stab);
          std::size_t d = 0;
          for (; d < pick.size(); ++d) {
            if (++pick[d] < (int)fib[d].size()) break;
            pick[d] = 0;
          }
          if (d == pick.size()) break;
        }
        for (const auto& ft : sections)
          for (const auto& gt : sections) {
            MonotoneMap fm = MonotoneMap::make(x, y, ft);
            MonotoneMap gm = MonotoneMap::make(x, y, gt);
            SplitCoinsReport sc = split_coinserter_check(fm, gm, i);
            ++rep.cases;
            if (!sc.pass) {
              rep.pass = false;
              Ins ins = inserter(fm, gm);
              ExactCheck ex =
                  is_exact_square(Square::make(ins.e, ins.e, fm, gm));
              std::ostringstream w;
              w << "law '" << sc.failed << "' fails for f = ";
              for (int xx = 0; xx < x.size(); ++xx)
                w << (xx ? " " : "") << x.carrier.label(xx) << "->"
                  << y.carrier.label(ft[(std::size_t)xx]);
              w << ", g = ";
              for (int xx = 0; xx < x.size(); ++xx)
                w << (xx ? " " : "") << x.carrier.label(xx) << "->"
                  << y.carrier.label(gt[(std::size_t)xx]);
              std::string yt = y.to_text();
              std::replace(yt.begin(), yt.end(), '\n', ';');
              w << " over " << yt;
              if (!ex.exact)
                w << " inserter square not exact at (" << ex.wx << ", "
                  << ex.wy << ")";
              rep.witness = w.str();
              return rep;
            }
          }
      } while (next_tab(itab, x.size()));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Adequacy.
// ---------------------------------------------------------------------------

namespace {

struct SemClass {
  std::uint32_t ep = 0;  // positive semantics
  std::uint32_t eb = 0;  // Boolean semantics of the translation
  Formula ast = Formula::top();
};

std::uint32_t to_mask(const Bits& b, int n) {
  std::uint32_t m = 0;
  for (int i = 0; i < n; ++i)
    if (b.get(i)) m |= 1u << i;
  return m;
}

}  // namespace

BatteryReport adequacy_battery(int max_states, int depth) {
  BatteryReport rep;
  FunctorExpr pw = FunctorExpr::pow();
  long long model_index = 0;
  for (int n = 0; n <= max_states; ++n) {
    std::vector<std::string> labels;
    for (int s = 0; s < n; ++s) labels.push_back("x" + std::to_string(s));
    FiniteSet states = FiniteSet::of(labels);
    Poset dpos = discrete(states);
    const TSet& ts = obj_full(pw, states);
    std::vector<int> mask_to_idx(std::size_t{1} << n, -1);
    for (int k = 0; k < ts.elems.size(); ++k)
      mask_to_idx[(std::size_t)ts.vals[(std::size_t)k].mask] = k;
    const std::uint32_t subsets = 1u << n;
    const std::uint32_t full = subsets - 1;
    std::uint64_t xi_total = 1;
    for (int s = 0; s < n; ++s) xi_total *= subsets;
    for (std::uint64_t xic = 0; xic < xi_total; ++xic) {
      std::vector<std::uint32_t> xi((std::size_t)n);
      std::uint64_t c = xic;
      for (int s = 0; s < n; ++s) {
        xi[(std::size_t)s] = (std::uint32_t)(c % subsets);
        c /= subsets;
      }
      for (std::uint32_t pm = 0; pm < subsets; ++pm)
        for (std::uint32_t qm = 0; qm < subsets; ++qm) {
          ++model_index;
          // Rebuild both semantics independently per class; any split between
          // the two recursions is a counterexample.
          auto pos_box = [&](std::uint32_t m) {
            std::uint32_t out = 0;
            for (int s = 0; s < n; ++s)
              if ((xi[(std::size_t)s] & ~m) == 0) out |= 1u << s;
            return out;
          };
          auto pos_dia = [&](std::uint32_t m) {
            std::uint32_t out = 0;
            for (int s = 0; s < n; ++s)
              if ((xi[(std::size_t)s] & m) != 0) out |= 1u << s;
            return out;
          };
          auto bool_box = [&](std::uint32_t m) {
            std::uint32_t out = 0;
            for (int s = 0; s < n; ++s)
              if ((xi[(std::size_t)s] & ~m) == 0) out |= 1u << s;
            return out;
          };
          // The translation of <> is ~[]~, evaluated exactly that way.
          auto bool_dia = [&](std::uint32_t m) {
            return full & ~bool_box(full & ~m);
          };

          std::vector<SemClass> cls;
          std::map<std::pair<std::uint32_t, std::uint32_t>, int> seen;
          bool bad = false;
          auto add = [&](std::uint32_t ep, std::uint32_t eb, const Formula& f) {
            if (bad) return;
            if (ep != eb) {
              bad = true;
              rep.pass = false;
              std::ostringstream os;
              os << "disagreement at " << f.to_string() << " on a " << n
                 << "-state model (pos " << ep << ", bool " << eb << ")";
              rep.witness = os.str();
              return;
            }
            if (seen.emplace(std::make_pair(ep, eb), (int)cls.size()).second)
              cls.push_back({ep, eb, f});
          };
          add(full, full, Formula::top());
          add(0, 0, Formula::bot());
          add(pm, pm, Formula::atom("p"));
          add(qm, qm, Formula::atom("q"));
          auto close_lattice = [&] {
            std::size_t done = 0;
            while (done < cls.size() && !bad) {
              std::size_t upto = cls.size();
              for (std::size_t i = done; i < upto && !bad; ++i)
                for (std::size_t j = 0; j <= i && !bad; ++j) {
                  add(cls[i].ep & cls[j].ep, cls[i].eb & cls[j].eb,
                      Formula::conj(cls[i].ast, cls[j].ast));
                  add(cls[i].ep | cls[j].ep, cls[i].eb | cls[j].eb,
                      Formula::disj(cls[i].ast, cls[j].ast));
                }
              done = upto;
            }
          };
          close_lattice();
          for (int d = 0; d < depth && !bad; ++d) {
            std::size_t upto = cls.size();
            for (std::size_t i = 0; i < upto && !bad; ++i) {
              add(pos_box(cls[i].ep), bool_box(cls[i].eb),
                  Formula::box(cls[i].ast));
              add(pos_dia(cls[i].ep), bool_dia(cls[i].eb),
                  Formula::dia(cls[i].ast));
            }
            close_lattice();
          }
          rep.cases += (long long)cls.size();
          if (bad) return rep;

          // Re-run the real evaluators on small models and on a deterministic
          // stride of the rest.
          if (n <= 2 || model_index % 97 == 0) {
            Coalgebra kb;
            kb.functor = pw;
            kb.states = states;
            kb.xi.resize((std::size_t)n);
            for (int s = 0; s < n; ++s)
              kb.xi[(std::size_t)s] = mask_to_idx[xi[(std::size_t)s]];
            OrderedCoalgebra om;
            om.states = dpos;
            om.xi.resize((std::size_t)n, Bits(n));
            for (int s = 0; s < n; ++s)
              for (int b = 0; b < n; ++b)
                if (xi[(std::size_t)s] >> b & 1u) om.xi[(std::size_t)s].set(b);
            for (int b = 0; b < n; ++b) {
              if (pm >> b & 1u) {
                if (!kb.val.count("p")) kb.val["p"] = Bits(n);
                kb.val["p"].set(b);
              }
              if (qm >> b & 1u) {
                if (!kb.val.count("q")) kb.val["q"] = Bits(n);
                kb.val["q"].set(b);
              }
            }
            if (!kb.val.count("p")) kb.val["p"] = Bits(n);
            if (!kb.val.count("q")) kb.val["q"] = Bits(n);
            om.val = kb.val;
            for (const SemClass& sc : cls) {
              std::uint32_t ep = to_mask(eval_pos(sc.ast, om), n);
              std::uint32_t eb = to_mask(eval_bool(beta_translate(sc.ast), kb), n);
              if (ep != sc.ep || eb != sc.eb) {
                rep.pass = false;
                rep.witness = "evaluator mismatch at " + sc.ast.to_string() +
                              " on a " + std::to_string(n) + "-state model";
                return rep;
              }
            }
          }
        }
    }
  }
  return rep;
}

BatteryReport dunn_battery(int max_states) {
  BatteryReport rep;
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  Formula l1 = Formula::box(Formula::disj(p, q));
  Formula r1 = Formula::disj(Formula::box(p), Formula::dia(q));
  Formula l2 = Formula::conj(Formula::box(p), Formula::dia(q));
  Formula r2 = Formula::dia(Formula::conj(p, q));
  for (int n = 0; n <= max_states; ++n)
    for (const Poset& x : poset_shapes(n)) {
      // Convex subsets in label order, to translate the convex powerset.
      Poset cp = convex_powerset(x);
      std::vector<Bits> member((std::size_t)cp.size());
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        Bits b(n);
        for (int s = 0; s < n; ++s)
          if (m >> s & 1u) b.set(s);
        if (!x.is_convex(b)) continue;
        int idx = cp.carrier.index(subset_label(x.carrier, b));
        if (idx < 0) throw internal_error("convex subset missing from convex powerset");
        member[(std::size_t)idx] = b;
      }
      auto ups = x.all_upsets();
      std::vector<int> tab((std::size_t)n, 0);
      do {
        if (!classify_map(x, cp, tab).monotone) continue;
        OrderedCoalgebra om;
        om.states = x;
        om.xi.resize((std::size_t)n, Bits(n));
        for (int s = 0; s < n; ++s) om.xi[(std::size_t)s] = member[(std::size_t)tab[(std::size_t)s]];
        for (const Bits& up : ups)
          for (const Bits& uq : ups) {
            om.val["p"] = up;
            om.val["q"] = uq;
            ++rep.cases;
            if (!eval_pos(l1, om).subset_of(eval_pos(r1, om))) {
              rep.pass = false;
              rep.witness = "[](p|q) <= []p | <>q fails on " + x.to_text();
              return rep;
            }
            if (!eval_pos(l2, om).subset_of(eval_pos(r2, om))) {
              rep.pass = false;
              rep.witness = "[]p & <>q <= <>(p & q) fails on " + x.to_text();
              return rep;
            }
          }
      } while (next_tab(tab, cp.size()));
    }
  return rep;
}

}  // namespace poslog
