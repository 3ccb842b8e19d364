// SPDX-License-Identifier: MIT

#include "hml/formula.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hml {

// ------------------------------------------------------------ hash-consing

namespace {

struct FKey {
  K kind;
  ActionId act;
  std::uint32_t var;
  Formula l, r;
  bool operator==(const FKey& o) const {
    return kind == o.kind && act == o.act && var == o.var && l == o.l && r == o.r;
  }
};

struct FKeyHash {
  std::size_t operator()(const FKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b9 + (h << 6) + (h >> 2); };
    mix(k.act);
    mix(k.var);
    mix(std::hash<const void*>()(k.l));
    mix(std::hash<const void*>()(k.r));
    return h;
  }
};

struct FTable {
  std::mutex mu;
  std::deque<FNode> nodes;
  std::unordered_map<FKey, Formula, FKeyHash> index;
};

FTable& ftable() {
  static FTable t;
  return t;
}

Formula mk(K kind, ActionId a, std::uint32_t v, Formula l, Formula r) {
  auto& t = ftable();
  std::lock_guard<std::mutex> g(t.mu);
  FKey key{kind, a, v, l, r};
  auto it = t.index.find(key);
  if (it != t.index.end()) return it->second;
  FNode n;
  n.kind = kind;
  n.act = a;
  n.var = v;
  n.left = l;
  n.right = r;
  n.id = t.nodes.size();
  switch (kind) {
    case K::Dia:
    case K::Box:
      n.md = l->md + 1;
      break;
    case K::Neg:
      n.md = l->md;
      break;
    case K::And:
    case K::Or:
      n.md = std::max(l->md, r->md);
      break;
    case K::Zero:
      n.md = 1;
      break;
    default:
      n.md = 0;
  }
  t.nodes.push_back(n);
  Formula f = &t.nodes.back();
  t.index.emplace(key, f);
  return f;
}

}  // namespace

Formula tt() {
  static Formula f = mk(K::Tt, 0, 0, nullptr, nullptr);
  return f;
}
Formula ff() {
  static Formula f = mk(K::Ff, 0, 0, nullptr, nullptr);
  return f;
}
Formula zero() {
  static Formula f = mk(K::Zero, 0, 0, nullptr, nullptr);
  return f;
}
Formula dia(ActionId a, Formula f) { return mk(K::Dia, a, 0, f, nullptr); }
Formula box(ActionId a, Formula f) { return mk(K::Box, a, 0, f, nullptr); }
Formula conj(Formula l, Formula r) { return mk(K::And, 0, 0, l, r); }
Formula disj(Formula l, Formula r) { return mk(K::Or, 0, 0, l, r); }
Formula neg(Formula f) { return mk(K::Neg, 0, 0, f, nullptr); }
Formula var(std::uint32_t i) { return mk(K::Var, 0, i, nullptr, nullptr); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return tt();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return ff();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

// ------------------------------------------------------------ parsing

namespace {

class FormulaParser {
public:
  FormulaParser(std::string_view s, const std::optional<Alphabet>& alpha,
                const std::map<std::string, std::uint32_t>* vars)
      : s_(s), alpha_(alpha), vars_(vars) {}

  Formula run() {
    Formula f = parse_or();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return f;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t start = i_;
    if (i_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_])))
      throw ParseError("expected identifier", i_);
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }
  ActionId action() {
    std::size_t at = i_;
    std::string n = ident();
    ActionId a = intern_action(n);
    if (alpha_ && !alpha_->contains(a)) throw ParseError("unknown action '" + n + "'", at);
    return a;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (eat('|')) acc = disj(acc, parse_and());
    return acc;
  }
  Formula parse_and() {
    Formula acc = parse_unary();
    while (eat('&')) acc = conj(acc, parse_unary());
    return acc;
  }
  Formula parse_unary() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '<') {
      ++i_;
      ActionId a = action();
      if (!eat('>')) throw ParseError("expected '>'", i_);
      return dia(a, parse_unary());
    }
    if (c == '[') {
      ++i_;
      ActionId a = action();
      if (!eat(']')) throw ParseError("expected ']'", i_);
      return box(a, parse_unary());
    }
    if (c == '!') {
      ++i_;
      return neg(parse_unary());
    }
    if (c == '(') {
      ++i_;
      Formula f = parse_or();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return f;
    }
    if (c == '0') {
      if (!alpha_) throw ParseError("'0' needs an explicit alphabet", i_);
      ++i_;
      return zero_formula(*alpha_);
    }
    std::size_t at = i_;
    std::string w = ident();
    if (w == "tt") return tt();
    if (w == "ff") return ff();
    if (vars_) {
      auto it = vars_->find(w);
      if (it != vars_->end()) return var(it->second);
      throw ParseError("undefined variable '" + w + "'", at);
    }
    throw ParseError("unexpected identifier '" + w + "'", at);
  }

  std::string_view s_;
  const std::optional<Alphabet>& alpha_;
  const std::map<std::string, std::uint32_t>* vars_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::optional<Alphabet>& alphabet) {
  return FormulaParser(text, alphabet, nullptr).run();
}

// ------------------------------------------------------------ printing

namespace {

std::string print(Formula f, const std::vector<std::string>* names) {
  auto wrap_binary = [&](Formula g) {
    std::string s = print(g, names);
    return is_binary(g) ? "(" + s + ")" : s;
  };
  switch (f->kind) {
    case K::Tt:
      return "tt";
    case K::Ff:
      return "ff";
    case K::Zero:
      return "0";
    case K::Var:
      if (names && f->var < names->size()) return (*names)[f->var];
      return "X" + std::to_string(f->var);
    case K::Dia:
      return "<" + action_name(f->act) + ">" + wrap_binary(f->left);
    case K::Box:
      return "[" + action_name(f->act) + "]" + wrap_binary(f->left);
    case K::Neg:
      return "!" + wrap_binary(f->left);
    case K::And: {
      std::string l = print(f->left, names);
      if (is(f->left, K::Or)) l = "(" + l + ")";
      return l + " & " + wrap_binary(f->right);
    }
    case K::Or: {
      std::string r = print(f->right, names);
      if (is(f->right, K::Or)) r = "(" + r + ")";
      return print(f->left, names) + " | " + r;
    }
  }
  return "?";
}

}  // namespace

std::string to_string(Formula f) { return print(f, nullptr); }

std::string to_string(Formula f, const Alphabet& a) { return print(fold_zero(f, a), nullptr); }

std::vector<Formula> subformulas(Formula f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  std::function<void(Formula)> go = [&](Formula g) {
    if (!g || seen.count(g)) return;
    seen.insert(g);
    go(g->left);
    go(g->right);
    out.push_back(g);
  };
  go(f);
  return out;
}

Alphabet actions_in(Formula f) {
  std::vector<ActionId> v;
  for (Formula g : subformulas(f))
    if (is(g, K::Dia) || is(g, K::Box)) v.push_back(g->act);
  return Alphabet(std::move(v));
}

// ------------------------------------------------------------ zero

Formula zero_formula(const Alphabet& a) {
  std::vector<Formula> parts;
  for (ActionId x : a.actions()) parts.push_back(box(x, ff()));
  if (parts.empty()) return tt();
  return conj_all(parts);
}

bool is_zero(Formula f, const Alphabet& a) {
  if (is(f, K::Zero)) return true;
  if (!is(f, K::And) && !is(f, K::Box)) return false;
  std::set<ActionId> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (is(g, K::And)) {
      stack.push_back(g->left);
      stack.push_back(g->right);
    } else if (is(g, K::Box) && is(g->left, K::Ff) && a.contains(g->act)) {
      seen.insert(g->act);
    } else {
      return false;
    }
  }
  return seen.size() == a.size();
}

Formula fold_zero(Formula f, const Alphabet& a) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    if (is_zero(g, a)) {
      r = zero();
    } else {
      switch (g->kind) {
        case K::Dia: r = dia(g->act, go(g->left)); break;
        case K::Box: r = box(g->act, go(g->left)); break;
        case K::Neg: r = neg(go(g->left)); break;
        case K::And: r = conj(go(g->left), go(g->right)); break;
        case K::Or: r = disj(go(g->left), go(g->right)); break;
        default: break;
      }
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

Formula expand_zero(Formula f, const Alphabet& a) {
  std::unordered_map<Formula, Formula> memo;
  Formula z = zero_formula(a);
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g->kind) {
      case K::Zero: r = z; break;
      case K::Dia: r = dia(g->act, go(g->left)); break;
      case K::Box: r = box(g->act, go(g->left)); break;
      case K::Neg: r = neg(go(g->left)); break;
      case K::And: r = conj(go(g->left), go(g->right)); break;
      case K::Or: r = disj(go(g->left), go(g->right)); break;
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

// ------------------------------------------------------------ fragments

std::string fragment_name(Fragment x) {
  switch (x) {
    case Fragment::S: return "S";
    case Fragment::CS: return "CS";
    case Fragment::RS: return "RS";
    case Fragment::TS: return "TS";
    case Fragment::S2: return "2S";
    case Fragment::S3: return "3S";
    case Fragment::BS: return "BS";
  }
  return "?";
}

std::optional<Fragment> parse_fragment(std::string_view s) {
  for (Fragment x : kAllFragments)
    if (fragment_name(x) == s) return x;
  return std::nullopt;
}

std::string FragmentSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (Fragment x : kAllFragments) {
    if (!has(x)) continue;
    if (!first) s += ",";
    s += fragment_name(x);
    first = false;
  }
  return s + "}";
}

namespace {

// bits 0..6 are the fragments; two helper bits ride along
constexpr std::uint16_t bit(Fragment x) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(x)); }
constexpr std::uint16_t kCoS = 1u << 8;    // tt | ff | & | '|' | [a]coS
constexpr std::uint16_t kChain = 1u << 9;  // ff | [a]chain
constexpr std::uint16_t kAllFrag = 0x7f;

}  // namespace

FragmentSet fragment_of(Formula f, const std::optional<Alphabet>& a) {
  std::unordered_map<Formula, std::uint16_t> memo;
  std::function<std::uint16_t(Formula)> go = [&](Formula g) -> std::uint16_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::uint16_t m = 0;
    const std::uint16_t zero_mask = kAllFrag & ~bit(Fragment::S);
    switch (g->kind) {
      case K::Tt:
        m = kAllFrag | kCoS;
        break;
      case K::Ff:
        m = kAllFrag | kCoS | kChain;
        break;
      case K::Zero:
        m = zero_mask | kCoS;
        break;
      case K::Var:
        m = 0;
        break;
      case K::Dia:
        m = go(g->left) & kAllFrag;
        break;
      case K::Box: {
        std::uint16_t c = go(g->left);
        m = bit(Fragment::BS);
        if (is(g->left, K::Ff)) m |= bit(Fragment::RS);
        if (c & kChain) m |= bit(Fragment::TS) | kChain;
        if (c & kCoS) m |= bit(Fragment::S2) | bit(Fragment::S3) | kCoS;
        if (a && is_zero(g, *a)) m |= zero_mask;
        break;
      }
      case K::And:
      case K::Or: {
        m = go(g->left) & go(g->right) & (kAllFrag | kCoS);
        if (is(g, K::And) && a && is_zero(g, *a)) m |= zero_mask;
        break;
      }
      case K::Neg: {
        std::uint16_t c = go(g->left);
        m = bit(Fragment::BS);
        if (c & bit(Fragment::S)) m |= bit(Fragment::S2);
        if (c & bit(Fragment::S2)) m |= bit(Fragment::S3);
        break;
      }
    }
    memo[g] = m;
    return m;
  };
  return FragmentSet(static_cast<std::uint8_t>(go(f) & kAllFrag));
}

// ------------------------------------------------------------ negation

Formula dual(Formula f, const std::optional<Alphabet>& a) {
  switch (f->kind) {
    case K::Tt: return ff();
    case K::Ff: return tt();
    case K::Zero: {
      if (!a) throw std::invalid_argument("dual of 0 needs an alphabet");
      std::vector<Formula> parts;
      for (ActionId x : a->actions()) parts.push_back(dia(x, tt()));
      return disj_all(parts);
    }
    case K::Dia: return box(f->act, dual(f->left, a));
    case K::Box: return dia(f->act, dual(f->left, a));
    case K::And: return disj(dual(f->left, a), dual(f->right, a));
    case K::Or: return conj(dual(f->left, a), dual(f->right, a));
    case K::Neg: return f->left;
    case K::Var: throw std::invalid_argument("dual of a variable");
  }
  return f;
}

Formula nnf(Formula f, const std::optional<Alphabet>& a) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g->kind) {
      case K::Dia: r = dia(g->act, go(g->left)); break;
      case K::Box: r = box(g->act, go(g->left)); break;
      case K::And: r = conj(go(g->left), go(g->right)); break;
      case K::Or: r = disj(go(g->left), go(g->right)); break;
      case K::Neg: r = dual(go(g->left), a); break;
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

// ------------------------------------------------------------ DNF

std::vector<Formula> dnf_list(Formula f) {
  switch (f->kind) {
    case K::Or: {
      auto l = dnf_list(f->left);
      auto r = dnf_list(f->right);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case K::And: {
      auto l = dnf_list(f->left);
      auto r = dnf_list(f->right);
      std::vector<Formula> out;
      out.reserve(l.size() * r.size());
      for (Formula x : l)
        for (Formula y : r) out.push_back(conj(x, y));
      return out;
    }
    case K::Dia:
    case K::Box: {
      std::vector<Formula> out;
      for (Formula x : dnf_list(f->left)) out.push_back(is(f, K::Dia) ? dia(f->act, x) : box(f->act, x));
      return out;
    }
    default:
      return {f};
  }
}

Formula to_dnf(Formula f) { return disj_all(dnf_list(f)); }

struct DisjunctStream::Cursor {
  Formula f;
  std::vector<std::unique_ptr<Cursor>> kids;
  int side = 0;

  explicit Cursor(Formula g) : f(g) {
    if (is(g, K::And) || is(g, K::Or)) {
      kids.push_back(std::make_unique<Cursor>(g->left));
      kids.push_back(std::make_unique<Cursor>(g->right));
    } else if (is(g, K::Dia) || is(g, K::Box)) {
      kids.push_back(std::make_unique<Cursor>(g->left));
    }
  }

  void reset() {
    side = 0;
    for (auto& k : kids) k->reset();
  }

  Formula current() const {
    switch (f->kind) {
      case K::Or: return kids[side]->current();
      case K::And: return conj(kids[0]->current(), kids[1]->current());
      case K::Dia: return dia(f->act, kids[0]->current());
      case K::Box: return box(f->act, kids[0]->current());
      default: return f;
    }
  }

  bool advance() {
    switch (f->kind) {
      case K::Or:
        if (kids[side]->advance()) return true;
        if (side == 0) {
          side = 1;
          kids[1]->reset();
          return true;
        }
        return false;
      case K::And:
        if (kids[1]->advance()) return true;
        if (kids[0]->advance()) {
          kids[1]->reset();
          return true;
        }
        return false;
      case K::Dia:
      case K::Box:
        return kids[0]->advance();
      default:
        return false;
    }
  }
};

DisjunctStream::DisjunctStream(Formula f) : root_(std::make_unique<Cursor>(f)) {}
DisjunctStream::~DisjunctStream() = default;

std::optional<Formula> DisjunctStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return root_->current();
  }
  if (!root_->advance()) {
    done_ = true;
    return std::nullopt;
  }
  return root_->current();
}

// ------------------------------------------------------------ metrics

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
  return (a > m - b) ? m : a + b;
}

}  // namespace

std::uint64_t formula_size(Formula f) {
  std::unordered_map<Formula, std::uint64_t> memo;
  std::function<std::uint64_t(Formula)> go = [&](Formula g) -> std::uint64_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::uint64_t n = 1;
    if (g->left) n = sat_add(n, go(g->left));
    if (g->right) n = sat_add(n, go(g->right));
    memo[g] = n;
    return n;
  };
  return go(f);
}

std::size_t count_diamonds(Formula f) {
  std::unordered_map<Formula, std::size_t> memo;
  std::function<std::size_t(Formula)> go = [&](Formula g) -> std::size_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::size_t n = is(g, K::Dia) ? 1 : 0;
    if (g->left) n += go(g->left);
    if (g->right) n += go(g->right);
    memo[g] = n;
    return n;
  };
  return go(f);
}

std::size_t symbol_count(Formula rhs) { return static_cast<std::size_t>(formula_size(rhs)); }

Metrics metrics(Formula f) {
  EquationSystem es = es_build(f);
  Metrics m = metrics(es);
  m.explicit_size = formula_size(f);
  m.modal_depth = f->md;
  return m;
}

Metrics metrics(const EquationSystem& es) {
  es_check(es);
  Metrics m;
  m.decl_size = es.size();
  for (Formula r : es.rhs) m.eq_length = std::max(m.eq_length, symbol_count(r));
  Formula closed = es_expand(es);
  m.explicit_size = formula_size(closed);
  m.modal_depth = closed->md;
  return m;
}

// ------------------------------------------------------------ equations

EquationSystem es_build(Formula f) {
  // parent->child edge counts over the DAG; duplicates count twice
  std::unordered_map<Formula, std::size_t> refs;
  for (Formula g : subformulas(f)) {
    if (g->left) ++refs[g->left];
    if (g->right) ++refs[g->right];
  }
  auto leaf = [](Formula g) { return !g->left; };

  std::unordered_map<Formula, std::uint32_t> var_of;
  std::vector<Formula> order;
  var_of[f] = 0;
  order.push_back(f);
  std::unordered_set<Formula> visited;
  std::function<void(Formula)> pre = [&](Formula g) {
    if (visited.count(g)) return;
    visited.insert(g);
    if (g != f && !leaf(g) && refs[g] >= 2 && !var_of.count(g)) {
      var_of[g] = static_cast<std::uint32_t>(order.size());
      order.push_back(g);
    }
    if (g->left) pre(g->left);
    if (g->right) pre(g->right);
  };
  pre(f);

  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula, bool)> body = [&](Formula g, bool top) -> Formula {
    if (!top) {
      auto v = var_of.find(g);
      if (v != var_of.end()) return var(v->second);
    }
    if (!top) {
      auto it = memo.find(g);
      if (it != memo.end()) return it->second;
    }
    Formula r = g;
    switch (g->kind) {
      case K::Dia: r = dia(g->act, body(g->left, false)); break;
      case K::Box: r = box(g->act, body(g->left, false)); break;
      case K::Neg: r = neg(body(g->left, false)); break;
      case K::And: r = conj(body(g->left, false), body(g->right, false)); break;
      case K::Or: r = disj(body(g->left, false), body(g->right, false)); break;
      default: break;
    }
    if (!top) memo[g] = r;
    return r;
  };

  EquationSystem es;
  for (std::size_t i = 0; i < order.size(); ++i) {
    es.names.push_back("X" + std::to_string(i));
    es.rhs.push_back(body(order[i], true));
  }
  es.root = 0;
  return es;
}

void es_check(const EquationSystem& es) {
  if (es.rhs.empty()) throw std::runtime_error("empty equation system");
  if (es.root >= es.rhs.size()) throw std::runtime_error("root variable undefined");
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> color(es.rhs.size(), 0);
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t v) {
    color[v] = 1;
    for (Formula g : subformulas(es.rhs[v])) {
      if (!is(g, K::Var)) continue;
      if (g->var >= es.rhs.size()) throw std::runtime_error("reference to undefined variable");
      if (color[g->var] == 1) throw CycleError("equation system is cyclic");
      if (color[g->var] == 0) visit(g->var);
    }
    color[v] = 2;
  };
  for (std::uint32_t v = 0; v < es.rhs.size(); ++v)
    if (color[v] == 0) visit(v);
}

Formula es_expand(const EquationSystem& es) {
  es_check(es);
  std::vector<Formula> closed(es.rhs.size(), nullptr);
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> sub;
  std::function<Formula(std::uint32_t)> var_value = [&](std::uint32_t v) -> Formula {
    if (!closed[v]) closed[v] = sub(es.rhs[v]);
    return closed[v];
  };
  sub = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g->kind) {
      case K::Var: r = var_value(g->var); break;
      case K::Dia: r = dia(g->act, sub(g->left)); break;
      case K::Box: r = box(g->act, sub(g->left)); break;
      case K::Neg: r = neg(sub(g->left)); break;
      case K::And: r = conj(sub(g->left), sub(g->right)); break;
      case K::Or: r = disj(sub(g->left), sub(g->right)); break;
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return var_value(es.root);
}

EquationSystem parse_equations(std::string_view text) {
  struct Line {
    std::string lhs, rhs;
    std::size_t no;
  };
  std::vector<Line> eqs;
  std::optional<Alphabet> alpha;
  std::string root_name;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "alphabet") {
      std::string rest, w;
      while (ls >> w) rest += w + " ";
      alpha = Alphabet::parse(rest);
    } else if (head == "root") {
      if (!(ls >> root_name)) throw ParseError("root needs a variable", no);
    } else {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'X = formula'", no);
      std::string lhs = line.substr(0, eq);
      lhs.erase(0, lhs.find_first_not_of(" \t"));
      lhs.erase(lhs.find_last_not_of(" \t") + 1);
      if (!is_identifier(lhs)) throw ParseError("bad variable name '" + lhs + "'", no);
      eqs.push_back({lhs, line.substr(eq + 1), no});
    }
  }
  if (eqs.empty()) throw ParseError("no equations", 0);
  std::map<std::string, std::uint32_t> vars;
  EquationSystem es;
  for (const auto& e : eqs) {
    if (vars.count(e.lhs)) throw ParseError("variable '" + e.lhs + "' defined twice", e.no);
    vars[e.lhs] = static_cast<std::uint32_t>(es.names.size());
    es.names.push_back(e.lhs);
  }
  for (const auto& e : eqs) {
    try {
      es.rhs.push_back(FormulaParser(e.rhs, alpha, &vars).run());
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()) + " (line " + std::to_string(e.no) + ")", e.no);
    }
  }
  if (root_name.empty()) root_name = eqs.front().lhs;
  auto it = vars.find(root_name);
  if (it == vars.end()) throw ParseError("root variable '" + root_name + "' undefined", 0);
  es.root = it->second;
  es.alphabet = alpha;
  es_check(es);
  return es;
}

std::string to_string(const EquationSystem& es) {
  std::ostringstream o;
  if (es.alphabet) {
    o << "alphabet";
    for (ActionId a : es.alphabet->actions()) o << " " << action_name(a);
    o << "\n";
  }
  o << "root " << es.names.at(es.root) << "\n";
  for (std::size_t i = 0; i < es.rhs.size(); ++i) o << es.names[i] << " = " << print(es.rhs[i], &es.names) << "\n";
  return o.str();
}

}  // namespace hml
