#include "poslog/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "poslog/enumerate.hpp"
#include "poslog/error.hpp"

namespace poslog {

// ---------------------------------------------------------------------------
// Formulas.
// ---------------------------------------------------------------------------

struct Formula::Node {
  Conn kind = Conn::Top;
  std::string name;
  std::vector<Formula> kids;
};

Formula Formula::make(Conn k, std::string name, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  return Formula(std::move(n));
}

Formula Formula::atom(const std::string& name) {
  if (name.empty()) throw input_error("formula: empty atom name");
  return make(Conn::Atom, name, {});
}
Formula Formula::top() { return make(Conn::Top, "", {}); }
Formula Formula::bot() { return make(Conn::Bot, "", {}); }
Formula Formula::neg(Formula f) { return make(Conn::Not, "", {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Conn::And, "", {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Conn::Or, "", {std::move(a), std::move(b)});
}
Formula Formula::box(Formula f) { return make(Conn::Box, "", {std::move(f)}); }
Formula Formula::dia(Formula f) { return make(Conn::Dia, "", {std::move(f)}); }
Formula Formula::lift(const std::string& name, std::vector<Formula> args) {
  if (name.empty()) throw input_error("formula: empty lifting name");
  return make(Conn::Lift, name, std::move(args));
}

Conn Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
int Formula::arity() const { return (int)node_->kids.size(); }
const Formula& Formula::child(int i) const { return node_->kids[(std::size_t)i]; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name ||
      node_->kids.size() != o.node_->kids.size())
    return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (!(node_->kids[i] == o.node_->kids[i])) return false;
  return true;
}

bool Formula::is_positive(bool allow_negated_atoms) const {
  switch (kind()) {
    case Conn::Atom:
    case Conn::Top:
    case Conn::Bot:
      return true;
    case Conn::Not:
      return allow_negated_atoms && child(0).kind() == Conn::Atom;
    case Conn::Lift:
      return false;
    default:
      for (int i = 0; i < arity(); ++i)
        if (!child(i).is_positive(allow_negated_atoms)) return false;
      return true;
  }
}

int Formula::modal_depth() const {
  int m = 0;
  for (int i = 0; i < arity(); ++i) m = std::max(m, child(i).modal_depth());
  if (kind() == Conn::Box || kind() == Conn::Dia || kind() == Conn::Lift) ++m;
  return m;
}

namespace {

// Precedence levels for printing: | = 0, & = 1, prefix = 2, primary = 3.
int conn_level(Conn k) {
  switch (k) {
    case Conn::Or: return 0;
    case Conn::And: return 1;
    case Conn::Not:
    case Conn::Box:
    case Conn::Dia: return 2;
    default: return 3;
  }
}

void print_formula(const Formula& f, int min_level, std::string& out) {
  int lvl = conn_level(f.kind());
  bool paren = lvl < min_level;
  if (paren) out += '(';
  switch (f.kind()) {
    case Conn::Atom: out += f.name(); break;
    case Conn::Top: out += 'T'; break;
    case Conn::Bot: out += 'F'; break;
    case Conn::Not:
      out += '~';
      print_formula(f.child(0), 2, out);
      break;
    case Conn::Box:
      out += "[]";
      print_formula(f.child(0), 2, out);
      break;
    case Conn::Dia:
      out += "<>";
      print_formula(f.child(0), 2, out);
      break;
    case Conn::And:
      print_formula(f.child(0), 1, out);
      out += " & ";
      print_formula(f.child(1), 2, out);
      break;
    case Conn::Or:
      print_formula(f.child(0), 0, out);
      out += " | ";
      print_formula(f.child(1), 1, out);
      break;
    case Conn::Lift:
      out += "lift ";
      out += f.name();
      out += '(';
      for (int i = 0; i < f.arity(); ++i) {
        if (i) out += ", ";
        print_formula(f.child(i), 0, out);
      }
      out += ')';
      break;
  }
  if (paren) out += ')';
}

struct Lexer {
  std::string text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  bool eat(const std::string& tok) {
    skip();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      throw input_error("formula: expected an identifier at position " +
                        std::to_string(start) + " in '" + text + "'");
    return text.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& what) {
    throw input_error("formula: " + what + " at position " +
                      std::to_string(pos) + " in '" + text + "'");
  }
};

Formula parse_or(Lexer& lx);

Formula parse_primary(Lexer& lx) {
  if (lx.eat("(")) {
    Formula f = parse_or(lx);
    if (!lx.eat(")")) lx.fail("expected ')'");
    return f;
  }
  std::string id = lx.ident();
  if (id == "T") return Formula::top();
  if (id == "F") return Formula::bot();
  if (id == "lift") {
    std::string name = lx.ident();
    if (!lx.eat("(")) lx.fail("expected '(' after lifting name");
    std::vector<Formula> args;
    if (!lx.peek(')')) {
      args.push_back(parse_or(lx));
      while (lx.eat(",")) args.push_back(parse_or(lx));
    }
    if (!lx.eat(")")) lx.fail("expected ')'");
    return Formula::lift(name, std::move(args));
  }
  return Formula::atom(id);
}

Formula parse_unary(Lexer& lx) {
  if (lx.eat("~")) return Formula::neg(parse_unary(lx));
  if (lx.eat("[]")) return Formula::box(parse_unary(lx));
  if (lx.eat("<>")) return Formula::dia(parse_unary(lx));
  return parse_primary(lx);
}

Formula parse_and(Lexer& lx) {
  Formula f = parse_unary(lx);
  while (lx.eat("&")) f = Formula::conj(std::move(f), parse_unary(lx));
  return f;
}

Formula parse_or(Lexer& lx) {
  Formula f = parse_and(lx);
  while (lx.eat("|")) f = Formula::disj(std::move(f), parse_and(lx));
  return f;
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_formula(*this, 0, out);
  return out;
}

Formula Formula::parse(const std::string& text) {
  Lexer lx{text};
  Formula f = parse_or(lx);
  lx.skip();
  if (lx.pos != lx.text.size()) lx.fail("trailing input");
  return f;
}

Formula Formula::parse_positive(const std::string& text,
                                bool allow_negated_atoms) {
  Formula f = parse(text);
  if (!f.is_positive(allow_negated_atoms))
    throw input_error("formula: '" + text + "' is not positive");
  return f;
}

Formula beta_translate(const Formula& positive) {
  if (!positive.is_positive(false))
    throw input_error("beta translation needs a positive formula, got '" +
                      positive.to_string() + "'");
  switch (positive.kind()) {
    case Conn::Atom:
    case Conn::Top:
    case Conn::Bot:
      return positive;
    case Conn::And:
      return Formula::conj(beta_translate(positive.child(0)),
                           beta_translate(positive.child(1)));
    case Conn::Or:
      return Formula::disj(beta_translate(positive.child(0)),
                           beta_translate(positive.child(1)));
    case Conn::Box:
      return Formula::box(beta_translate(positive.child(0)));
    case Conn::Dia:
      return Formula::neg(
          Formula::box(Formula::neg(beta_translate(positive.child(0)))));
    default:
      throw input_error("beta translation: unsupported connective");
  }
}

namespace {

Formula nnf(const Formula& f, bool neg) {
  switch (f.kind()) {
    case Conn::Atom:
      return neg ? Formula::neg(f) : f;
    case Conn::Top:
      return neg ? Formula::bot() : Formula::top();
    case Conn::Bot:
      return neg ? Formula::top() : Formula::bot();
    case Conn::Not:
      return nnf(f.child(0), !neg);
    case Conn::And: {
      Formula a = nnf(f.child(0), neg), b = nnf(f.child(1), neg);
      return neg ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    case Conn::Or: {
      Formula a = nnf(f.child(0), neg), b = nnf(f.child(1), neg);
      return neg ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case Conn::Box: {
      Formula c = nnf(f.child(0), neg);
      return neg ? Formula::dia(c) : Formula::box(c);
    }
    case Conn::Dia: {
      Formula c = nnf(f.child(0), neg);
      return neg ? Formula::box(c) : Formula::dia(c);
    }
    default:
      throw input_error(
          "positive normal form: lifting operators are not supported");
  }
}

}  // namespace

Formula positive_normal_form(const Formula& f) {
  Formula out = nnf(f, false);
  if (!out.is_positive(true))
    throw internal_error("positive normal form produced a non-positive result");
  return out;
}

// ---------------------------------------------------------------------------
// Model files.
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

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

struct ModelLine {
  std::string key;   // state (xi) or atom (val)
  std::string value; // right-hand text
  int lineno;
};

std::string model_at(int lineno) {
  return "model line " + std::to_string(lineno);
}

struct ModelLines {
  std::optional<std::string> functor;
  std::vector<std::string> states;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<ModelLine> xi;
  std::vector<ModelLine> val;
};

ModelLines scan_model(const std::string& text) {
  ModelLines m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_states = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "model line " + std::to_string(lineno);
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw input_error(where + ": expected 'directive: ...'");
    std::string head = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (head == "functor") {
      if (m.functor) throw input_error(where + ": duplicate functor line");
      m.functor = rest;
    } else if (head == "states") {
      if (saw_states) throw input_error(where + ": duplicate states line");
      saw_states = true;
      m.states = split_ws(rest);
    } else if (head == "order") {
      auto ws = split_ws(rest);
      if (ws.size() != 2)
        throw input_error(where + ": order lines read 'order: lower upper'");
      m.order.emplace_back(ws[0], ws[1]);
    } else if (head == "xi") {
      std::size_t arrow = rest.find("->");
      if (arrow == std::string::npos)
        throw input_error(where + ": xi lines read 'xi: state -> value'");
      m.xi.push_back({trim(rest.substr(0, arrow)),
                      trim(rest.substr(arrow + 2)), lineno});
    } else if (head == "val") {
      std::size_t eq = rest.find('=');
      if (eq == std::string::npos)
        throw input_error(where + ": val lines read 'val: atom = {states}'");
      m.val.push_back({trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)),
                       lineno});
    } else {
      throw input_error(where + ": unknown directive '" + head + "'");
    }
  }
  if (!saw_states) throw input_error("model: missing states line");
  return m;
}

Bits parse_state_set(const std::string& text, const FiniteSet& states,
                     const std::string& where) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw input_error(where + ": expected a {,}-set of states, got '" + s + "'");
  Bits b(states.size());
  for (const std::string& raw : split_top_level(s.substr(1, s.size() - 2))) {
    std::string item = trim(raw);
    if (item.empty()) continue;
    int i = states.index(item);
    if (i < 0) throw input_error(where + ": unknown state '" + item + "'");
    b.set(i);
  }
  return b;
}

std::string state_set_text(const FiniteSet& states, const Bits& b) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < states.size(); ++i)
    if (b.get(i)) {
      if (!first) out += ",";
      out += states.label(i);
      first = false;
    }
  return out + "}";
}

bool valid_atom_name(const std::string& s) {
  if (s.empty() || s == "T" || s == "F" || s == "lift") return false;
  if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

}  // namespace

bool model_text_is_ordered(const std::string& text) {
  return !scan_model(text).order.empty();
}

Coalgebra Coalgebra::parse(const std::string& text) {
  ModelLines m = scan_model(text);
  if (!m.order.empty())
    throw input_error("model: order lines make this an ordered model");
  Coalgebra c;
  c.functor = FunctorExpr::parse(m.functor.value_or("Pow"));
  c.states = FiniteSet::of(m.states);
  const TSet& ts = obj_full(c.functor, c.states);
  c.xi.assign((std::size_t)c.states.size(), -1);
  for (auto& [st, value, ln] : m.xi) {
    int i = c.states.index(st);
    if (i < 0)
      throw input_error(model_at(ln) + ": xi for unknown state '" + st + "'");
    if (c.xi[(std::size_t)i] >= 0)
      throw input_error(model_at(ln) + ": duplicate xi for state '" + st + "'");
    int v = ts.elems.index(value);
    if (v < 0)
      throw input_error(model_at(ln) + ": '" + value +
                        "' is not an element of " + c.functor.to_string() +
                        "(states)");
    c.xi[(std::size_t)i] = v;
  }
  for (int i = 0; i < c.states.size(); ++i)
    if (c.xi[(std::size_t)i] < 0)
      throw input_error("model: missing xi for state '" + c.states.label(i) + "'");
  for (auto& [atom, set, ln] : m.val) {
    if (!valid_atom_name(atom))
      throw input_error(model_at(ln) + ": bad atom name '" + atom + "'");
    if (c.val.count(atom))
      throw input_error(model_at(ln) + ": duplicate valuation for '" + atom +
                        "'");
    c.val[atom] = parse_state_set(set, c.states, model_at(ln));
  }
  return c;
}

std::string Coalgebra::to_text() const {
  const TSet& ts = obj_full(functor, states);
  std::ostringstream os;
  os << "functor: " << functor.to_string() << "\n";
  os << "states:";
  for (int i = 0; i < states.size(); ++i) os << ' ' << states.label(i);
  os << "\n";
  for (int i = 0; i < states.size(); ++i)
    os << "xi: " << states.label(i) << " -> "
       << ts.elems.label(xi[(std::size_t)i]) << "\n";
  for (const auto& [atom, set] : val)
    os << "val: " << atom << " = " << state_set_text(states, set) << "\n";
  return os.str();
}

OrderedCoalgebra OrderedCoalgebra::parse(const std::string& text) {
  ModelLines m = scan_model(text);
  if (m.functor && FunctorExpr::parse(*m.functor).kind() != FunctorKind::Pow)
    throw input_error("model: ordered models use the convex powerset of Pow");
  OrderedCoalgebra c;
  c.states = Poset::from_label_pairs(FiniteSet::of(m.states), m.order, true);
  const FiniteSet& st = c.states.carrier;
  c.xi.assign((std::size_t)st.size(), Bits(st.size()));
  std::vector<char> seen((std::size_t)st.size(), 0);
  for (auto& [s, value, ln] : m.xi) {
    int i = st.index(s);
    if (i < 0)
      throw input_error(model_at(ln) + ": xi for unknown state '" + s + "'");
    if (seen[(std::size_t)i])
      throw input_error(model_at(ln) + ": duplicate xi for state '" + s + "'");
    seen[(std::size_t)i] = 1;
    Bits b = parse_state_set(value, st, model_at(ln));
    if (!c.states.is_convex(b))
      throw input_error(model_at(ln) + ": xi(" + s + ") = " +
                        state_set_text(st, b) + " is not convex");
    c.xi[(std::size_t)i] = b;
  }
  for (int i = 0; i < st.size(); ++i)
    if (!seen[(std::size_t)i])
      throw input_error("model: missing xi for state '" + st.label(i) + "'");
  // The coalgebra map must be monotone into the Egli-Milner order.
  Poset cp = convex_powerset(c.states);
  std::vector<int> cpi((std::size_t)st.size());
  for (int i = 0; i < st.size(); ++i) {
    cpi[(std::size_t)i] =
        cp.carrier.index(subset_label(st, c.xi[(std::size_t)i]));
    if (cpi[(std::size_t)i] < 0)
      throw internal_error("convex subset missing from the convex powerset");
  }
  for (int i = 0; i < st.size(); ++i)
    for (int j = 0; j < st.size(); ++j)
      if (c.states.le(i, j) &&
          !cp.le(cpi[(std::size_t)i], cpi[(std::size_t)j]))
        throw input_error("model: xi is not monotone (" + st.label(i) +
                          " <= " + st.label(j) + ")");
  for (auto& [atom, set, ln] : m.val) {
    if (!valid_atom_name(atom))
      throw input_error(model_at(ln) + ": bad atom name '" + atom + "'");
    if (c.val.count(atom))
      throw input_error(model_at(ln) + ": duplicate valuation for '" + atom +
                        "'");
    Bits b = parse_state_set(set, st, model_at(ln));
    if (!c.states.is_upset(b))
      throw input_error(model_at(ln) + ": valuation of '" + atom +
                        "' is not an upset");
    c.val[atom] = b;
  }
  return c;
}

std::string OrderedCoalgebra::to_text() const {
  const FiniteSet& st = states.carrier;
  std::ostringstream os;
  os << "states:";
  for (int i = 0; i < st.size(); ++i) os << ' ' << st.label(i);
  os << "\n";
  for (auto& [lo, hi] : states.hasse())
    os << "order: " << st.label(lo) << ' ' << st.label(hi) << "\n";
  for (int i = 0; i < st.size(); ++i)
    os << "xi: " << st.label(i) << " -> "
       << state_set_text(st, xi[(std::size_t)i]) << "\n";
  for (const auto& [atom, set] : val)
    os << "val: " << atom << " = " << state_set_text(st, set) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace {

Bits full_bits(int n) {
  Bits b(n);
  for (int i = 0; i < n; ++i) b.set(i);
  return b;
}

}  // namespace

Bits eval_bool(const Formula& f, const Coalgebra& m, const LiftingTable& table) {
  const int n = m.states.size();
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = m.val.find(f.name());
      if (it == m.val.end())
        throw input_error("eval: unknown atom '" + f.name() + "'");
      return it->second;
    }
    case Conn::Top:
      return full_bits(n);
    case Conn::Bot:
      return Bits(n);
    case Conn::Not:
      return eval_bool(f.child(0), m, table).complement();
    case Conn::And:
      return eval_bool(f.child(0), m, table) & eval_bool(f.child(1), m, table);
    case Conn::Or:
      return eval_bool(f.child(0), m, table) | eval_bool(f.child(1), m, table);
    case Conn::Box:
    case Conn::Dia: {
      if (m.functor.kind() != FunctorKind::Pow)
        throw input_error("eval: [] and <> need the Pow functor, model uses " +
                          m.functor.to_string());
      Bits c = eval_bool(f.child(0), m, table);
      const TSet& ts = obj_full(m.functor, m.states);
      Bits out(n);
      for (int x = 0; x < n; ++x) {
        std::uint64_t succ = ts.vals[(std::size_t)m.xi[(std::size_t)x]].mask;
        bool hold;
        if (f.kind() == Conn::Box) {
          hold = true;
          for (int y = 0; y < n && hold; ++y)
            if ((succ >> y & 1u) && !c.get(y)) hold = false;
        } else {
          hold = false;
          for (int y = 0; y < n && !hold; ++y)
            if ((succ >> y & 1u) && c.get(y)) hold = true;
        }
        if (hold) out.set(x);
      }
      return out;
    }
    case Conn::Lift: {
      auto it = table.find(f.name());
      if (it == table.end())
        throw input_error("eval: unknown lifting '" + f.name() + "'");
      const Lifting& l = it->second;
      if (l.functor.to_string() != m.functor.to_string())
        throw input_error("eval: lifting '" + f.name() + "' is for " +
                          l.functor.to_string() + ", model uses " +
                          m.functor.to_string());
      if (l.arity != f.arity())
        throw input_error("eval: lifting '" + f.name() + "' has arity " +
                          std::to_string(l.arity));
      std::vector<Bits> args;
      args.reserve((std::size_t)f.arity());
      for (int i = 0; i < f.arity(); ++i)
        args.push_back(eval_bool(f.child(i), m, table));
      FiniteSet base = bool_tuples(l.arity);
      std::vector<int> tab((std::size_t)n);
      for (int x = 0; x < n; ++x) {
        std::string lbl = l.arity == 0 ? "*" : std::string((std::size_t)l.arity, '0');
        for (int i = 0; i < l.arity; ++i)
          if (args[(std::size_t)i].get(x)) lbl[(std::size_t)i] = '1';
        tab[(std::size_t)x] = base.index(lbl);
      }
      FnMap chi = FnMap::from_indices(m.states, base, tab);
      FnMap tchi = apply_map(m.functor, chi);
      Bits out(n);
      for (int x = 0; x < n; ++x)
        if (l.value.get(tchi(m.xi[(std::size_t)x]))) out.set(x);
      return out;
    }
  }
  throw internal_error("eval_bool: unreachable");
}

Bits eval_pos(const Formula& f, const OrderedCoalgebra& m) {
  const int n = m.states.size();
  Bits out(n);
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = m.val.find(f.name());
      if (it == m.val.end())
        throw input_error("eval: unknown atom '" + f.name() + "'");
      out = it->second;
      break;
    }
    case Conn::Top:
      out = full_bits(n);
      break;
    case Conn::Bot:
      break;
    case Conn::And:
      out = eval_pos(f.child(0), m) & eval_pos(f.child(1), m);
      break;
    case Conn::Or:
      out = eval_pos(f.child(0), m) | eval_pos(f.child(1), m);
      break;
    case Conn::Box: {
      Bits c = eval_pos(f.child(0), m);
      for (int x = 0; x < n; ++x)
        if (m.xi[(std::size_t)x].subset_of(c)) out.set(x);
      break;
    }
    case Conn::Dia: {
      Bits c = eval_pos(f.child(0), m);
      for (int x = 0; x < n; ++x)
        if (m.xi[(std::size_t)x].intersects(c)) out.set(x);
      break;
    }
    case Conn::Not:
      throw input_error("eval: ordered models evaluate positive formulas only");
    case Conn::Lift:
      throw input_error("eval: lifting operators need a Kripke model");
  }
  if (!m.states.is_upset(out))
    throw internal_error("positive semantics produced a non-upset");
  return out;
}

// ---------------------------------------------------------------------------
// One-step logic functors.
// ---------------------------------------------------------------------------

FinBA L_step(const FinBA& a, const FunctorExpr& t) {
  return powerset_BA(apply_obj(t, ultrafilters(a)));
}

LatticeHom L_hom(const LatticeHom& h, const FunctorExpr& t) {
  FnMap tu = apply_map(t, ultrafilters_map(h));  // T(S cod) -> T(S dom)
  return LatticeHom::preimage(L_step(h.dom, t), L_step(h.cod, t), tu);
}

FinDL Lp_step(const FinDL& a, const FunctorExpr& t) {
  return upset_DL(posetify_obj(t, prime_filters(a)).poset);
}

LatticeHom Lp_hom(const LatticeHom& h, const FunctorExpr& t) {
  MonotoneMap tp = posetify_map(t, prime_filters_map(h));
  return LatticeHom::preimage(Lp_step(h.dom, t), Lp_step(h.cod, t), tp.fn());
}

LatticeHom one_step_bool_iso(const FiniteSet& x, const FunctorExpr& t) {
  FinBA px = powerset_BA(x);
  FiniteSet sa = ultrafilters(px);
  if (sa.size() != x.size())
    throw internal_error("ultrafilters of a powerset do not match the base");
  std::vector<int> tab((std::size_t)sa.size());
  for (int i = 0; i < sa.size(); ++i) {
    int j = px.index(sa.label(i));
    const Bits& p = px.payload(j);
    int b = -1;
    for (int k = 0; k < x.size(); ++k)
      if (p.get(k)) {
        if (b >= 0) throw internal_error("powerset atom is not a singleton");
        b = k;
      }
    if (b < 0) throw internal_error("powerset atom is empty");
    tab[(std::size_t)i] = b;
  }
  FnMap u = FnMap::from_indices(sa, x, tab);
  FnMap tu = apply_map(t, u);  // T(S P X) -> T(X), bijective
  if (!tu.injective() || !tu.surjective())
    throw internal_error("one-step transport is not bijective");
  std::vector<int> inv((std::size_t)tu.tab.size());
  for (std::size_t k = 0; k < tu.tab.size(); ++k)
    inv[(std::size_t)tu.tab[k]] = (int)k;
  FnMap tinv = FnMap::from_indices(tu.cod, tu.dom, inv);
  return LatticeHom::preimage(L_step(px, t), powerset_BA(apply_obj(t, x)), tinv);
}

LatticeHom one_step_pos_iso(const Poset& x) {
  FunctorExpr pw = FunctorExpr::pow();
  FinDL px = upset_DL(x);
  Poset pf = prime_filters(px);
  std::vector<int> tab((std::size_t)x.size());
  for (int i = 0; i < x.size(); ++i) {
    int j = px.index_of_payload(x.principal_up(i));
    if (j < 0) throw internal_error("principal upset missing from upset_DL");
    tab[(std::size_t)i] = pf.carrier.index(px.label(j));
    if (tab[(std::size_t)i] < 0)
      throw internal_error("principal upset is not a prime filter label");
  }
  MonotoneMap c = MonotoneMap::make(x, pf, tab);
  MonotoneMap tau = posetify_map(pw, c);  // T'X -> T'(S' P' X)
  return LatticeHom::preimage(Lp_step(px, pw),
                              upset_DL(posetify_obj(pw, x).poset), tau.fn());
}

// ---------------------------------------------------------------------------
// The comparison map.
// ---------------------------------------------------------------------------

namespace {

// L'(W A) -> W(L A) as the label-identity map through the three concrete
// identifications; throws internal_error if any identification fails.
LatticeHom beta_core(const FinBA& a, const FunctorExpr& t) {
  FinDL wa = forget_W(a);
  Poset pf = prime_filters(wa);
  FiniteSet sa = ultrafilters(a);
  if (!pf.same_order_as(discrete(sa)))
    throw internal_error(
        "prime filters of a Boolean algebra are not the discrete ultrafilters");
  PosetifyResult pr = posetify_obj(t, pf);
  FiniteSet tsa = apply_obj(t, sa);
  if (pr.poset.carrier.elems != tsa.elems || !pr.poset.is_discrete())
    throw internal_error("posetification over a discrete base moved the carrier");
  for (std::size_t i = 0; i < pr.e.tab.size(); ++i)
    if (pr.e.tab[i] != (int)i)
      throw internal_error("posetification over a discrete base is not identity");
  FinDL lhs = upset_DL(pr.poset);       // = Lp_step(W A, t)
  FinDL rhs = forget_W(L_step(a, t));   // = W(powerset of T(S A))
  std::vector<int> tab((std::size_t)lhs.size());
  for (int i = 0; i < lhs.size(); ++i) {
    int j = rhs.index(lhs.label(i));
    if (j < 0)
      throw internal_error("upsets of the discrete lift miss a powerset label");
    tab[(std::size_t)i] = j;
  }
  return LatticeHom::make(lhs, rhs, std::move(tab));
}

LatticeHom forget_hom(const LatticeHom& h) {
  return LatticeHom::make(forget_W(h.dom), forget_W(h.cod), h.tab);
}

}  // namespace

BetaReport build_beta(const FinBA& a, const FunctorExpr& t) {
  BetaReport rep;
  rep.beta = beta_core(a, t);
  rep.bijective = rep.beta.injective() && rep.beta.surjective();
  rep.hom_ok = true;  // LatticeHom::make validated the lattice operations

  // Naturality samples: the unique map out of 2, the identity, and (when A is
  // nontrivial) evaluation at the least join-irreducible.
  FinBA two = powerset_BA(FiniteSet::of({"s"}));
  std::vector<LatticeHom> homs;
  std::vector<int> t2(2);
  t2[(std::size_t)two.bot()] = a.bot();
  t2[(std::size_t)two.top()] = a.top();
  homs.push_back(LatticeHom::make(two, a, std::move(t2)));
  homs.push_back(LatticeHom::identity(a));
  if (!a.ji().empty()) {
    int j0 = a.ji().front();
    std::vector<int> tab((std::size_t)a.size());
    for (int x = 0; x < a.size(); ++x)
      tab[(std::size_t)x] = a.le(j0, x) ? two.top() : two.bot();
    homs.push_back(LatticeHom::make(a, two, std::move(tab)));
  }
  rep.natural_ok = true;
  for (const LatticeHom& h : homs) {
    LatticeHom bd = beta_core(h.dom, t);
    LatticeHom bc = beta_core(h.cod, t);
    LatticeHom left = bc.after(Lp_hom(forget_hom(h), t));
    LatticeHom right = forget_hom(L_hom(h, t)).after(bd);
    if (left.tab != right.tab) rep.natural_ok = false;
  }
  rep.iso = rep.bijective && rep.hom_ok && rep.natural_ok;
  std::ostringstream os;
  os << "|L'(W A)| = " << rep.beta.dom.size() << ", |W(L A)| = "
     << rep.beta.cod.size() << " for T = " << t.to_string()
     << "; comparison " << (rep.bijective ? "bijective" : "NOT bijective")
     << ", " << (rep.natural_ok ? "natural" : "NOT natural")
     << (rep.iso ? " (iso)" : " (no iso)");
  rep.detail = os.str();
  return rep;
}

std::optional<NamedPosFunctor> parse_named_pos_functor(const std::string& s) {
  if (s == "DC") return NamedPosFunctor::DiscreteComponents;
  if (s == "Id'" || s == "IdPrime") return NamedPosFunctor::IdentityPrime;
  return std::nullopt;
}

namespace {

// A small Boolean-complement-closed DL-generating set of A.
std::vector<int> dl_generators(const FinBA& a) {
  if (a.size() > 64)
    throw resource_error("generator search capped at 64 elements");
  auto closure_full = [&](const std::vector<int>& lits) {
    std::vector<char> in((std::size_t)a.size(), 0);
    in[(std::size_t)a.bot()] = in[(std::size_t)a.top()] = 1;
    for (int e : lits) in[(std::size_t)e] = 1;
    bool ch = true;
    while (ch) {
      ch = false;
      std::vector<int> idx;
      for (int i = 0; i < a.size(); ++i)
        if (in[(std::size_t)i]) idx.push_back(i);
      for (int i : idx)
        for (int j : idx) {
          int mv = a.meet(i, j), jv = a.join(i, j);
          if (!in[(std::size_t)mv]) in[(std::size_t)mv] = ch = true;
          if (!in[(std::size_t)jv]) in[(std::size_t)jv] = ch = true;
        }
    }
    for (int i = 0; i < a.size(); ++i)
      if (!in[(std::size_t)i]) return false;
    return true;
  };
  std::vector<int> lits;
  auto has = [&](int e) {
    return std::find(lits.begin(), lits.end(), e) != lits.end();
  };
  for (int e = 0; e < a.size() && !closure_full(lits); ++e) {
    if (e == a.bot() || e == a.top() || has(e)) continue;
    lits.push_back(e);
    if (int ne = a.neg(e); !has(ne)) lits.push_back(ne);
  }
  // Prune complement pairs that later additions made redundant.
  for (std::size_t p = 0; p < lits.size();) {
    int e = lits[p], ne = a.neg(e);
    std::vector<int> rest;
    for (int l : lits)
      if (l != e && l != ne) rest.push_back(l);
    if (closure_full(rest)) {
      lits = rest;
      p = 0;
    } else {
      ++p;
    }
  }
  return lits;
}

}  // namespace

NamedBetaReport build_beta_named(const FinBA& a, NamedPosFunctor g,
                                 const std::vector<int>& ba_gens) {
  // Literals: the generating set closed under complement.
  std::vector<int> lits;
  auto add = [&](int e) {
    if (e == a.bot() || e == a.top()) return;
    if (std::find(lits.begin(), lits.end(), e) == lits.end()) lits.push_back(e);
  };
  if (ba_gens.empty()) {
    lits = dl_generators(a);
  } else {
    for (int e : ba_gens) {
      add(e);
      add(a.neg(e));
    }
  }
  const int k = (int)lits.size();
  if (k > 4)
    throw resource_error("presentation needs " + std::to_string(k) +
                         " generators; capped at 4");
  FreeAlgebra fk = free_DL(k);
  FinDL wa = forget_W(a);
  LatticeHom q = free_dl_hom(fk, wa, lits);
  if (!q.surjective())
    throw internal_error("chosen literals do not generate the algebra");

  // One relation pair per unordered complement pair, plus reflexive pads
  // when they fit the free-DL cap.
  std::vector<std::pair<int, int>> rel;
  std::vector<char> seen((std::size_t)k, 0);
  for (int i = 0; i < k; ++i) {
    if (seen[(std::size_t)i]) continue;
    int ne = a.neg(lits[(std::size_t)i]);
    auto it = std::find(lits.begin(), lits.end(), ne);
    if (it == lits.end())
      throw internal_error("literal set is not complement-closed");
    int j = (int)(it - lits.begin());
    seen[(std::size_t)i] = seen[(std::size_t)j] = 1;
    int gi = fk.gens[(std::size_t)i], gj = fk.gens[(std::size_t)j];
    rel.emplace_back(fk.alg.meet(gi, gj), fk.alg.bot());
    rel.emplace_back(fk.alg.top(), fk.alg.join(gi, gj));
  }
  if ((int)rel.size() + k <= 4)
    for (int i = 0; i < k; ++i)
      rel.emplace_back(fk.gens[(std::size_t)i], fk.gens[(std::size_t)i]);
  const int j = (int)rel.size();
  if (j > 4)
    throw resource_error("presentation needs " + std::to_string(j) +
                         " relations; capped at 4");
  FreeAlgebra fj = free_DL(j);
  std::vector<int> lhs, rhs;
  for (auto& [l, r] : rel) {
    lhs.push_back(l);
    rhs.push_back(r);
  }
  LatticeHom r1 = free_dl_hom(fj, fk.alg, lhs);
  LatticeHom r2 = free_dl_hom(fj, fk.alg, rhs);

  // The presentation must rebuild W A on the nose.
  {
    DLCoins pres = dl_coinserter(r1, r2);
    std::vector<int> img((std::size_t)pres.quot.size(), -1);
    for (int b = 0; b < fk.alg.size(); ++b) {
      int c = pres.q(b);
      if (img[(std::size_t)c] < 0)
        img[(std::size_t)c] = q(b);
      else if (img[(std::size_t)c] != q(b))
        throw internal_error("presentation quotient does not match the algebra");
    }
    std::vector<char> hit((std::size_t)wa.size(), 0);
    for (int v : img) {
      if (v < 0 || hit[(std::size_t)v])
        throw internal_error("presentation quotient does not match the algebra");
      hit[(std::size_t)v] = 1;
    }
    if (pres.quot.size() != wa.size())
      throw internal_error("presentation quotient does not match the algebra");
  }

  // Dual corners through G.
  const PosFunctor& G = g == NamedPosFunctor::DiscreteComponents
                            ? dc_functor()
                            : id_prime_functor();
  Poset pk = prime_filters(fk.alg);
  Poset pj = prime_filters(fj.alg);
  MonotoneMap s1 = prime_filters_map(r1), s2 = prime_filters_map(r2);
  Poset gk = G.obj(pk), gj = G.obj(pj);
  MonotoneMap gs1 = G.map(s1), gs2 = G.map(s2);
  FinDL ck = upset_DL(gk), cj = upset_DL(gj);
  LatticeHom c1 = LatticeHom::preimage(cj, ck, gs1.fn());
  LatticeHom c2 = LatticeHom::preimage(cj, ck, gs2.fn());
  DLCoins co = dl_coinserter(c1, c2);  // L'_G(W A)

  // Canonical comparison into W(L_Id A), i.e. W A on the ultrafilter ground.
  FinBA la = L_step(a, FunctorExpr::id());
  FinDL target = forget_W(la);
  MonotoneMap eta = MonotoneMap::identity(pk);
  if (g == NamedPosFunctor::DiscreteComponents) {
    Components cc = connected_components(pk);
    eta = MonotoneMap::make(pk, gk, cc.proj.tab);
  }
  LatticeHom peta = LatticeHom::preimage(ck, upset_DL(pk), eta.fn());
  LatticeHom eps = birkhoff_counit(fk.alg);  // F(k) -> P'(S' F(k)), iso
  std::vector<int> inv((std::size_t)fk.alg.size());
  for (int x = 0; x < fk.alg.size(); ++x) inv[(std::size_t)eps(x)] = x;
  LatticeHom einv = LatticeHom::make(eps.cod, fk.alg, std::move(inv));
  LatticeHom ac = atom_counit(a);  // A -> powerset of ultrafilters, iso
  LatticeHom wac = LatticeHom::make(wa, target, ac.tab);
  LatticeHom gamma = wac.after(q.after(einv.after(peta)));

  for (int y = 0; y < cj.size(); ++y)
    if (!target.le(gamma(c1(y)), gamma(c2(y))))
      throw internal_error("canonical comparison does not coequalize the pair");
  std::vector<int> btab((std::size_t)co.quot.size(), -1);
  for (int y = 0; y < ck.size(); ++y) {
    int c = co.q(y);
    if (btab[(std::size_t)c] < 0)
      btab[(std::size_t)c] = gamma(y);
    else if (btab[(std::size_t)c] != gamma(y))
      throw internal_error("canonical comparison does not factor the quotient");
  }
  LatticeHom beta = LatticeHom::make(co.quot, target, std::move(btab));

  NamedBetaReport rep;
  rep.lhs_size = co.quot.size();
  rep.rhs_size = target.size();
  rep.injective = beta.injective();
  rep.surjective = beta.surjective();
  rep.iso = rep.injective && rep.surjective;
  std::ostringstream os;
  os << "|L'_" << G.name() << "(W A)| = " << rep.lhs_size
     << ", |W(L A)| = " << rep.rhs_size << "; comparison "
     << (rep.injective ? "injective" : "NOT injective") << ", "
     << (rep.surjective ? "surjective" : "not surjective")
     << (rep.iso ? " (iso)" : " (no iso)");
  rep.detail = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// n-step injectivity.
// ---------------------------------------------------------------------------

NStepReport n_step_injectivity(const FunctorExpr& t, int n) {
  if (n < 0 || n > 3)
    throw input_error("n-step depth out of range: " + std::to_string(n));
  NStepReport rep;
  Poset p = discrete(FiniteSet::of({"*"}));
  FinDL a = upset_DL(p);
  LatticeHom iota = LatticeHom::identity(a);
  rep.injective = true;
  rep.sizes.emplace_back(a.size(), a.size());
  for (int step = 1; step <= n; ++step) {
    Poset pf = prime_filters(a);
    // sigma: each point of P generates the principal filter pulled back along
    // iota, and that generator must be join-irreducible.
    std::vector<std::pair<std::string, std::string>> assign;
    for (int y = 0; y < p.size(); ++y) {
      int gen = a.top();
      for (int x = 0; x < a.size(); ++x)
        if (iota.cod.payload(iota(x)).get(y)) gen = a.meet(gen, x);
      if (!a.is_ji(gen))
        throw internal_error("n-step filter is not generated by a join-irreducible");
      assign.emplace_back(p.label(y), a.label(gen));
    }
    MonotoneMap sigma = MonotoneMap::from_labels(p, pf, assign);
    PosetifyResult prp = posetify_obj(t, p);
    MonotoneMap tau = posetify_map(t, sigma);  // T'P -> T'(S'A)
    FinDL anext = upset_DL(posetify_obj(t, pf).poset);  // = Lp_step(a, t)
    FinDL pnext = upset_DL(prp.poset);
    LatticeHom inext = LatticeHom::preimage(anext, pnext, tau.fn());
    if (!inext.injective()) rep.injective = false;
    rep.sizes.emplace_back(anext.size(), pnext.size());
    a = anext;
    iota = inext;
    p = prp.poset;
  }
  std::ostringstream os;
  os << "T = " << t.to_string() << ";";
  for (std::size_t i = 0; i < rep.sizes.size(); ++i)
    os << " step " << i << ": |L'^k 2| = " << rep.sizes[i].first
       << ", |P'(T'^k 1)| = " << rep.sizes[i].second << ";";
  os << (rep.injective ? " all steps injective" : " INJECTIVITY FAILS");
  rep.detail = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// The counterexample and mono preservation.
// ---------------------------------------------------------------------------

WkReport wk_counterexample() {
  WkReport rep;
  Poset x = Poset::from_label_pairs(FiniteSet::of({"a", "b", "t"}),
                                    {{"a", "t"}, {"b", "t"}}, true);
  Poset y = Poset::from_label_pairs(
      FiniteSet::of({"a", "b", "t1", "t2"}),
      {{"a", "t1"}, {"a", "t2"}, {"b", "t1"}, {"b", "t2"}}, true);
  MonotoneMap f = MonotoneMap::from_labels(
      x, y, {{"a", "a"}, {"b", "b"}, {"t", "t1"}});
  MonotoneMap g = MonotoneMap::from_labels(
      x, y, {{"a", "a"}, {"b", "b"}, {"t", "t2"}});
  MonotoneMap i = MonotoneMap::from_labels(
      y, x, {{"a", "a"}, {"b", "b"}, {"t1", "t"}, {"t2", "t"}});

  bool pass = true;
  std::ostringstream os;

  Ins ins = inserter(f, g);
  Poset d2 = discrete(FiniteSet::of({"a", "b"}));
  if (!ins.sub.same_order_as(d2)) {
    pass = false;
    os << "inserter is not the discrete two-point poset; ";
  }
  SplitCoinsReport sr = split_coinserter_check(f, g, i);
  if (!sr.pass) {
    pass = false;
    os << "split coinserter laws fail (" << sr.failed << "); ";
  }

  FinDL px = upset_DL(x), py = upset_DL(y), pd = upset_DL(ins.sub);
  if (px.size() != 5) {
    pass = false;
    os << "|P'X| = " << px.size() << " (expected 5); ";
  }
  Poset expect = Poset::from_label_pairs(
      FiniteSet::of({"{}", "{t}", "{a,t}", "{b,t}", "{a,b,t}"}),
      {{"{}", "{t}"},
       {"{t}", "{a,t}"},
       {"{t}", "{b,t}"},
       {"{a,t}", "{a,b,t}"},
       {"{b,t}", "{a,b,t}"}},
      true);
  if (!px.order().same_order_as(expect)) {
    pass = false;
    os << "P'X has an unexpected shape; ";
  }

  LatticeHom pf_h = LatticeHom::preimage(py, px, f.fn());
  LatticeHom pg_h = LatticeHom::preimage(py, px, g.fn());
  LatticeHom pi_h = LatticeHom::preimage(px, py, i.fn());
  if (pf_h.after(pi_h).tab != LatticeHom::identity(px).tab ||
      pg_h.after(pi_h).tab != LatticeHom::identity(px).tab) {
    pass = false;
    os << "the pair is not reflexive via P'(i); ";
  }
  DLCoins co = dl_coinserter(pf_h, pg_h);
  if (!dl_iso(co.quot, pd)) {
    pass = false;
    os << "coinserter quotient is not P' of the inserter; ";
  }

  FinBA k_ins = centre_K(pd);
  FinBA k_apex = centre_K(px);
  rep.wk_inserter = k_ins.size();
  rep.wk_apex = k_apex.size();
  // Restriction of upsets along the inserter inclusion, on centres.
  LatticeHom pe = LatticeHom::preimage(px, pd, ins.e.fn());
  std::vector<int> tab((std::size_t)k_apex.size());
  for (int v = 0; v < k_apex.size(); ++v) {
    int w = k_ins.index(pd.label(pe(px.index(k_apex.label(v)))));
    if (w < 0) throw internal_error("restriction left the complemented centre");
    tab[(std::size_t)v] = w;
  }
  LatticeHom kmap = LatticeHom::make(k_apex, k_ins, std::move(tab));
  if (kmap.surjective()) {
    pass = false;
    os << "centre comparison is unexpectedly surjective; ";
  }
  if (rep.wk_inserter != 4 || rep.wk_apex != 2) {
    pass = false;
    os << "centre sizes are " << rep.wk_inserter << "/" << rep.wk_apex
       << " (expected 4/2); ";
  }
  rep.pass = pass;
  os << "|WK(P' inserter)| vs |WK(P' apex)|: " << rep.wk_inserter << " vs "
     << rep.wk_apex << " — not surjective";
  rep.detail = os.str();
  return rep;
}

MonoReport lp_preserves_monos_check(const FunctorExpr& t, int bound) {
  MonoReport rep;
  std::vector<Poset> shapes;
  for (int n = 0; n <= bound; ++n)
    for (const Poset& p : poset_shapes(n)) shapes.push_back(p);
  for (const Poset& x : shapes)
    for (const Poset& y : shapes) {
      if (x.size() > y.size()) continue;
      if (x.size() == 0 && y.size() > 0) continue;
      std::vector<int> tab((std::size_t)y.size(), 0);
      while (true) {
        MapFlags fl = classify_map(y, x, tab);
        if (fl.monotone && fl.surjective) {
          MonotoneMap gmap = MonotoneMap::make(y, x, tab);
          LatticeHom h = LatticeHom::preimage(upset_DL(x), upset_DL(y), gmap.fn());
          if (!h.injective())
            throw internal_error("dual of a surjection is not injective");
          if (!Lp_hom(h, t).injective()) {
            rep.pass = false;
            std::ostringstream os;
            os << "L' breaks injectivity for the dual of " << x.to_text()
               << " <- " << y.to_text() << " via";
            for (int v : tab) os << ' ' << x.label(v);
            rep.witness = os.str();
            return rep;
          }
        }
        std::size_t d = 0;
        for (; d < tab.size(); ++d) {
          if (++tab[d] < x.size()) break;
          tab[d] = 0;
        }
        if (d == tab.size()) break;
      }
    }
  return rep;
}

}  // namespace poslog
