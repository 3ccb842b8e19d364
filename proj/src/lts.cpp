// SPDX-License-Identifier: MIT

#include "hml/lts.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace hml {

namespace {

struct ActionTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, ActionId> ids;
};

ActionTable& actions() {
  static ActionTable t;
  return t;
}

}  // namespace

ActionId intern_action(std::string_view name) {
  auto& t = actions();
  std::lock_guard<std::mutex> g(t.mu);
  std::string key(name);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  ActionId id = static_cast<ActionId>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(std::move(key), id);
  return id;
}

const std::string& action_name(ActionId a) {
  auto& t = actions();
  std::lock_guard<std::mutex> g(t.mu);
  return t.names.at(a);
}

bool action_less(ActionId a, ActionId b) {
  if (a == b) return false;
  return action_name(a) < action_name(b);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<ActionId> acts) : acts_(std::move(acts)) {
  std::sort(acts_.begin(), acts_.end(), action_less);
  acts_.erase(std::unique(acts_.begin(), acts_.end()), acts_.end());
}

Alphabet Alphabet::from_names(const std::vector<std::string>& names) {
  std::vector<ActionId> v;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw ParseError("bad action name '" + n + "'", 0);
    v.push_back(intern_action(n));
  }
  return Alphabet(std::move(v));
}

Alphabet Alphabet::parse(std::string_view list) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : list) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) names.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) names.push_back(cur);
  return from_names(names);
}

bool Alphabet::contains(ActionId a) const { return index_of(a) != npos; }

std::size_t Alphabet::index_of(ActionId a) const {
  for (std::size_t i = 0; i < acts_.size(); ++i)
    if (acts_[i] == a) return i;
  return npos;
}

Alphabet Alphabet::merged(const Alphabet& other) const {
  std::vector<ActionId> v = acts_;
  v.insert(v.end(), other.acts_.begin(), other.acts_.end());
  return Alphabet(std::move(v));
}

std::string Alphabet::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < acts_.size(); ++i) {
    if (i) s += ",";
    s += action_name(acts_[i]);
  }
  return s;
}

// ---------------------------------------------------------------- terms

namespace {

struct NodeKey {
  PNode::Kind kind;
  ActionId act;
  Proc l, r;
  bool operator==(const NodeKey& o) const {
    return kind == o.kind && act == o.act && l == o.l && r == o.r;
  }
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    h ^= std::hash<ActionId>()(k.act) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>()(k.l) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>()(k.r) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};

struct TermTable {
  std::mutex mu;
  std::deque<PNode> nodes;
  std::unordered_map<NodeKey, Proc, NodeKeyHash> index;
};

TermTable& terms() {
  static TermTable t;
  return t;
}

bool move_less(const Move& x, const Move& y) {
  if (x.first != y.first) return action_less(x.first, y.first);
  return x.second->id < y.second->id;
}

Proc make(PNode::Kind kind, ActionId a, Proc l, Proc r) {
  auto& t = terms();
  std::lock_guard<std::mutex> g(t.mu);
  NodeKey key{kind, a, l, r};
  auto it = t.index.find(key);
  if (it != t.index.end()) return it->second;
  PNode n;
  n.kind = kind;
  n.act = a;
  n.left = l;
  n.right = r;
  n.id = t.nodes.size();
  switch (kind) {
    case PNode::Kind::Nil:
      break;
    case PNode::Kind::Prefix:
      n.moves.emplace_back(a, l);
      n.depth = l->depth + 1;
      break;
    case PNode::Kind::Sum:
      n.moves = l->moves;
      n.moves.insert(n.moves.end(), r->moves.begin(), r->moves.end());
      n.depth = std::max(l->depth, r->depth);
      break;
  }
  // action_less takes the action lock, not ours; safe.
  std::sort(n.moves.begin(), n.moves.end(), move_less);
  n.moves.erase(std::unique(n.moves.begin(), n.moves.end()), n.moves.end());
  t.nodes.push_back(std::move(n));
  Proc p = &t.nodes.back();
  t.index.emplace(key, p);
  return p;
}

}  // namespace

Proc nil() {
  static Proc z = make(PNode::Kind::Nil, 0, nullptr, nullptr);
  return z;
}

Proc prefix(ActionId a, Proc body) { return make(PNode::Kind::Prefix, a, body, nullptr); }

Proc sum(Proc l, Proc r) { return make(PNode::Kind::Sum, 0, l, r); }

Proc sum_of(const std::vector<Proc>& ps) {
  if (ps.empty()) return nil();
  Proc acc = ps[0];
  for (std::size_t i = 1; i < ps.size(); ++i) acc = sum(acc, ps[i]);
  return acc;
}

// ---------------------------------------------------------------- parsing

namespace {

class ProcParser {
public:
  ProcParser(std::string_view s, const std::optional<Alphabet>& alpha) : s_(s), alpha_(alpha) {}

  Proc run() {
    Proc p = parse_sum();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return p;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Proc parse_sum() {
    Proc acc = parse_unit();
    for (;;) {
      skip();
      if (i_ < s_.size() && s_[i_] == '+') {
        ++i_;
        acc = sum(acc, parse_unit());
      } else {
        return acc;
      }
    }
  }

  Proc parse_unit() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '0') {
      ++i_;
      return nil();
    }
    if (c == '(') {
      ++i_;
      Proc p = parse_sum();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string name(s_.substr(start, i_ - start));
      ActionId a = intern_action(name);
      if (alpha_ && !alpha_->contains(a))
        throw ParseError("unknown action '" + name + "'", start);
      skip();
      if (i_ >= s_.size() || s_[i_] != '.') throw ParseError("expected '.'", i_);
      ++i_;
      return prefix(a, parse_unit());
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  std::string_view s_;
  const std::optional<Alphabet>& alpha_;
  std::size_t i_ = 0;
};

}  // namespace

Proc parse_process(std::string_view text, const std::optional<Alphabet>& alphabet) {
  return ProcParser(text, alphabet).run();
}

std::string to_string(Proc p) {
  switch (p->kind) {
    case PNode::Kind::Nil:
      return "0";
    case PNode::Kind::Prefix: {
      std::string body = to_string(p->left);
      if (p->left->kind == PNode::Kind::Sum) body = "(" + body + ")";
      return action_name(p->act) + "." + body;
    }
    case PNode::Kind::Sum: {
      std::string r = to_string(p->right);
      if (p->right->kind == PNode::Kind::Sum) r = "(" + r + ")";
      return to_string(p->left) + " + " + r;
    }
  }
  return "?";
}

// ---------------------------------------------------------------- observables

std::vector<Proc> reachable(const std::vector<Proc>& roots) {
  std::vector<Proc> order;
  std::unordered_map<Proc, bool> seen;
  // iterative post-order DFS
  std::vector<std::pair<Proc, std::size_t>> stack;
  for (Proc r : roots) {
    if (seen.count(r)) continue;
    seen[r] = true;
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [p, k] = stack.back();
      if (k < p->moves.size()) {
        Proc q = p->moves[k++].second;
        if (!seen.count(q)) {
          seen[q] = true;
          stack.emplace_back(q, 0);
        }
      } else {
        order.push_back(p);
        stack.pop_back();
      }
    }
  }
  return order;
}

std::vector<Proc> reachable(Proc p) { return reachable(std::vector<Proc>{p}); }

std::set<ActionId> initials(Proc p) {
  std::set<ActionId> s;
  for (const auto& m : p->moves) s.insert(m.first);
  return s;
}

const TraceSet& traces(Proc p) {
  static std::mutex mu;
  static std::unordered_map<Proc, std::unique_ptr<TraceSet>> memo;
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = memo.find(p);
    if (it != memo.end()) return *it->second;
  }
  auto ts = std::make_unique<TraceSet>();
  ts->insert(Trace{});
  for (const auto& [a, q] : p->moves) {
    for (const auto& t : traces(q)) {
      Trace u;
      u.reserve(t.size() + 1);
      u.push_back(a);
      u.insert(u.end(), t.begin(), t.end());
      ts->insert(std::move(u));
    }
  }
  std::lock_guard<std::mutex> g(mu);
  auto [it, inserted] = memo.emplace(p, std::move(ts));
  return *it->second;
}

Alphabet actions_of(Proc p) {
  std::vector<ActionId> v;
  for (Proc q : reachable(p))
    for (const auto& m : q->moves) v.push_back(m.first);
  return Alphabet(std::move(v));
}

std::size_t process_size(Proc p) {
  // tree Lts: one state per prefix occurrence plus the root, one edge per prefix
  std::unordered_map<Proc, std::size_t> prefixes;
  std::function<std::size_t(Proc)> count = [&](Proc q) -> std::size_t {
    auto it = prefixes.find(q);
    if (it != prefixes.end()) return it->second;
    std::size_t n = 0;
    if (q->kind == PNode::Kind::Prefix) n = 1 + count(q->left);
    else if (q->kind == PNode::Kind::Sum) n = count(q->left) + count(q->right);
    prefixes[q] = n;
    return n;
  };
  std::size_t k = count(p);
  return (k + 1) + k;
}

Observables observables(Proc p) {
  Observables o;
  o.initials = initials(p);
  o.traces = traces(p);
  o.depth = p->depth;
  o.size = process_size(p);
  return o;
}

// ---------------------------------------------------------------- Lts

void Lts::check() const {
  if (states == 0) throw std::invalid_argument("lts has no states");
  if (root >= states) throw std::invalid_argument("root out of range");
  for (const auto& e : edges)
    if (e.src >= states || e.dst >= states)
      throw std::invalid_argument("transition references unknown state");
}

bool Lts::acyclic() const {
  std::vector<std::vector<std::size_t>> succ(states);
  std::vector<std::size_t> indeg(states, 0);
  for (const auto& e : edges) {
    succ[e.src].push_back(e.dst);
    ++indeg[e.dst];
  }
  std::vector<std::size_t> q;
  for (std::size_t s = 0; s < states; ++s)
    if (indeg[s] == 0) q.push_back(s);
  std::size_t done = 0;
  while (!q.empty()) {
    std::size_t s = q.back();
    q.pop_back();
    ++done;
    for (std::size_t t : succ[s])
      if (--indeg[t] == 0) q.push_back(t);
  }
  return done == states;
}

Lts term_to_lts(Proc p) {
  Lts l;
  l.states = 1;
  l.root = 0;
  // each prefix occurrence gets a fresh target state
  std::function<void(Proc, std::size_t)> walk = [&](Proc q, std::size_t s) {
    switch (q->kind) {
      case PNode::Kind::Nil:
        break;
      case PNode::Kind::Prefix: {
        std::size_t t = l.states++;
        l.edges.push_back({s, q->act, t});
        walk(q->left, t);
        break;
      }
      case PNode::Kind::Sum:
        walk(q->left, s);
        walk(q->right, s);
        break;
    }
  };
  walk(p, 0);
  return l;
}

Proc lts_to_term(const Lts& l) {
  l.check();
  if (!l.acyclic()) throw CycleError("transition system has a cycle");
  std::vector<std::vector<Lts::Edge>> out(l.states);
  for (const auto& e : l.edges) out[e.src].push_back(e);
  std::vector<Proc> memo(l.states, nullptr);
  std::function<Proc(std::size_t)> build = [&](std::size_t s) -> Proc {
    if (memo[s]) return memo[s];
    std::vector<Proc> parts;
    for (const auto& e : out[s]) parts.push_back(prefix(e.act, build(e.dst)));
    memo[s] = sum_of(parts);
    return memo[s];
  };
  return build(l.root);
}

Lts parse_lts(std::string_view text) {
  Lts l;
  bool have_states = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string w;
    while (ls >> w) tok.push_back(w);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "states" && tok.size() == 2) {
        l.states = std::stoul(tok[1]);
        have_states = true;
      } else if (tok[0] == "root" && tok.size() == 2) {
        l.root = std::stoul(tok[1]);
      } else if (tok.size() == 3) {
        if (!is_identifier(tok[1])) throw ParseError("bad action '" + tok[1] + "'", lineno);
        l.edges.push_back({std::stoul(tok[0]), intern_action(tok[1]), std::stoul(tok[2])});
      } else {
        throw ParseError("malformed line", lineno);
      }
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", lineno);
    }
  }
  if (!have_states) throw ParseError("missing 'states' line", 0);
  try {
    l.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
  return l;
}

std::string to_string(const Lts& l) {
  std::ostringstream o;
  o << "states " << l.states << "\nroot " << l.root << "\n";
  for (const auto& e : l.edges) o << e.src << " " << action_name(e.act) << " " << e.dst << "\n";
  return o.str();
}

}  // namespace hml
