// SPDX-License-Identifier: MIT

#include "hml/satisfiability.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace hml {

// ---------------------------------------------------------------- I(φ)

InitialSets::InitialSets(std::size_t n) : n_(n), words_(((std::size_t{1} << n) + 63) / 64, 0) {
  if (n > kMaxInitialSetAlphabet) throw std::invalid_argument("alphabet too large for initial-set tables");
}

InitialSets InitialSets::all(std::size_t n) {
  InitialSets s(n);
  for (std::size_t x = 0; x < s.universe(); ++x) s.insert(static_cast<std::uint32_t>(x));
  return s;
}

bool InitialSets::contains(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
void InitialSets::insert(std::uint32_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }

std::size_t InitialSets::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::optional<std::uint32_t> InitialSets::singleton() const {
  if (count() != 1) return std::nullopt;
  return members().front();
}

std::vector<std::uint32_t> InitialSets::members() const {
  std::vector<std::uint32_t> v;
  for (std::size_t x = 0; x < universe(); ++x)
    if (contains(static_cast<std::uint32_t>(x))) v.push_back(static_cast<std::uint32_t>(x));
  return v;
}

InitialSets InitialSets::operator|(const InitialSets& o) const {
  InitialSets r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

InitialSets InitialSets::operator&(const InitialSets& o) const {
  InitialSets r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

std::uint32_t subset_mask(const std::set<ActionId>& s, const Alphabet& a) {
  std::uint32_t m = 0;
  for (ActionId x : s) {
    std::size_t i = a.index_of(x);
    if (i == Alphabet::npos) throw std::invalid_argument("action outside the alphabet");
    m |= 1u << i;
  }
  return m;
}

InitialSets initial_sets(Formula f, const Alphabet& a) {
  const std::size_t n = a.size();
  std::unordered_map<Formula, InitialSets> memo;
  auto with_action = [&](ActionId act, bool present) {
    std::size_t i = a.index_of(act);
    if (i == Alphabet::npos) throw FragmentError("action '" + action_name(act) + "' outside the alphabet");
    InitialSets s(n);
    for (std::size_t x = 0; x < s.universe(); ++x)
      if (((x >> i) & 1u) == (present ? 1u : 0u)) s.insert(static_cast<std::uint32_t>(x));
    return s;
  };
  std::function<InitialSets(Formula)> go = [&](Formula g) -> InitialSets {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    InitialSets r(n);
    switch (g->kind) {
      case K::Tt: r = InitialSets::all(n); break;
      case K::Ff: break;
      case K::Zero: r.insert(0); break;
      case K::Box:
        if (!is(g->left, K::Ff)) throw FragmentError("initial sets need [a]ff boxes only");
        r = with_action(g->act, false);
        break;
      case K::Dia:
        if (!go(g->left).empty()) r = with_action(g->act, true);
        break;
      case K::And: r = go(g->left) & go(g->right); break;
      case K::Or: r = go(g->left) | go(g->right); break;
      default: throw FragmentError("initial sets are defined on RS formulae only");
    }
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

// ---------------------------------------------------------------- J and K

SatClassJ class_J(Formula f) {
  std::unordered_map<Formula, std::uint8_t> memo;
  std::function<std::uint8_t(Formula)> go = [&](Formula g) -> std::uint8_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::uint8_t r = 0;
    switch (g->kind) {
      case K::Tt: r = 3; break;
      case K::Ff: r = 0; break;
      case K::Zero: r = 1; break;
      case K::Dia: r = go(g->left) ? 2 : 0; break;
      case K::And: r = go(g->left) & go(g->right); break;
      case K::Or: r = go(g->left) | go(g->right); break;
      default: throw FragmentError("class J is defined on CS formulae only");
    }
    memo[g] = r;
    return r;
  };
  return static_cast<SatClassJ>(go(f));
}

bool class_K(Formula f) {
  std::unordered_map<Formula, bool> memo;
  std::function<bool(Formula)> go = [&](Formula g) -> bool {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    bool r = false;
    switch (g->kind) {
      case K::Tt: r = true; break;
      case K::Ff: r = false; break;
      case K::Dia: r = go(g->left); break;
      case K::And: r = go(g->left) && go(g->right); break;
      case K::Or: r = go(g->left) || go(g->right); break;
      default: throw FragmentError("class K is defined on S formulae only");
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

// ---------------------------------------------------------------- ff rules

Formula ff_rewrite(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g->kind) {
      case K::Dia: {
        Formula c = go(g->left);
        r = is(c, K::Ff) ? ff() : dia(g->act, c);
        break;
      }
      case K::Box: r = box(g->act, go(g->left)); break;
      case K::And: {
        Formula l = go(g->left), rr = go(g->right);
        r = (is(l, K::Ff) || is(rr, K::Ff)) ? ff() : conj(l, rr);
        break;
      }
      case K::Or: {
        Formula l = go(g->left), rr = go(g->right);
        r = is(l, K::Ff) ? rr : is(rr, K::Ff) ? l : disj(l, rr);
        break;
      }
      case K::Neg: r = neg(go(g->left)); break;
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

// ---------------------------------------------------------------- TS / RS disjuncts

namespace {

TraceSet prepend(ActionId a, const TraceSet& s) {
  TraceSet out;
  for (const auto& t : s) {
    Trace u{a};
    u.insert(u.end(), t.begin(), t.end());
    out.insert(std::move(u));
  }
  return out;
}

bool intersects(const TraceSet& x, const TraceSet& y) {
  for (const auto& t : x)
    if (y.count(t)) return true;
  return false;
}

// Returns the requirements and sets `clash` when some conjunction node
// requires a trace it also forbids.
TraceRequirements ts_req(Formula g, bool& clash) {
  TraceRequirements r;
  switch (g->kind) {
    case K::Tt:
      r.traces.insert(Trace{});
      break;
    case K::Ff:
      r.forbidden.insert(Trace{});
      break;
    case K::Box: {
      auto c = ts_req(g->left, clash);
      r.traces.insert(Trace{});
      r.forbidden = prepend(g->act, c.forbidden);
      break;
    }
    case K::Dia: {
      auto c = ts_req(g->left, clash);
      r.traces = prepend(g->act, c.traces);
      r.traces.insert(Trace{});
      break;
    }
    case K::And: {
      auto l = ts_req(g->left, clash);
      auto rr = ts_req(g->right, clash);
      r.traces = std::move(l.traces);
      r.traces.insert(rr.traces.begin(), rr.traces.end());
      r.forbidden = std::move(l.forbidden);
      r.forbidden.insert(rr.forbidden.begin(), rr.forbidden.end());
      break;
    }
    default:
      throw FragmentError("trace requirements need a disjunction-free TS formula");
  }
  if (intersects(r.traces, r.forbidden)) clash = true;
  return r;
}

}  // namespace

TraceRequirements ts_required_forbidden(Formula f) {
  bool clash = false;
  return ts_req(f, clash);
}

bool sat_ts_disjunct(Formula f) {
  Formula g = ff_rewrite(f);
  if (is(g, K::Ff)) return false;
  bool clash = false;
  ts_req(g, clash);
  return !clash;
}

bool sat_rs_disjunct(Formula f) {
  Formula g = ff_rewrite(f);
  if (is(g, K::Ff)) return false;
  // a conjunction level clashes when it has both <a>... and [a]ff
  std::function<bool(Formula)> ok = [&](Formula h) -> bool {
    std::vector<Formula> parts, stack{h};
    while (!stack.empty()) {
      Formula x = stack.back();
      stack.pop_back();
      if (is(x, K::And)) {
        stack.push_back(x->left);
        stack.push_back(x->right);
      } else {
        parts.push_back(x);
      }
    }
    std::set<ActionId> need, banned;
    bool nil = false;
    for (Formula x : parts) {
      switch (x->kind) {
        case K::Dia:
          need.insert(x->act);
          if (!ok(x->left)) return false;
          break;
        case K::Box:
          if (!is(x->left, K::Ff)) throw FragmentError("RS boxes must guard ff");
          banned.insert(x->act);
          break;
        case K::Zero: nil = true; break;
        case K::Tt: break;
        case K::Ff: return false;
        default: throw FragmentError("disjunction-free RS formula expected");
      }
    }
    if (nil && !need.empty()) return false;
    for (ActionId a : need)
      if (banned.count(a)) return false;
    return true;
  };
  return ok(g);
}

// ---------------------------------------------------------------- tableau

namespace {

class Tableau {
public:
  bool sat(std::vector<Formula> set) {
    std::sort(set.begin(), set.end(), [](Formula x, Formula y) { return x->id < y->id; });
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<std::size_t> key;
    for (Formula f : set) key.push_back(f->id);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = expand(set, 0);
    memo_[key] = r;
    return r;
  }

private:
  // Saturate conjunctions, branch on the first disjunction, then check the
  // modal successors of the resulting literal set.
  bool expand(std::vector<Formula> set, std::size_t) {
    for (;;) {
      bool changed = false;
      for (std::size_t i = 0; i < set.size(); ++i) {
        Formula f = set[i];
        if (is(f, K::Ff)) return false;
        if (is(f, K::And)) {
          set.erase(set.begin() + static_cast<std::ptrdiff_t>(i));
          set.push_back(f->left);
          set.push_back(f->right);
          changed = true;
          break;
        }
      }
      if (!changed) break;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      Formula f = set[i];
      if (!is(f, K::Or)) continue;
      std::vector<Formula> rest = set;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<Formula> left = rest, right = rest;
      left.push_back(f->left);
      right.push_back(f->right);
      return sat(std::move(left)) || sat(std::move(right));
    }
    bool nil = false;
    for (Formula f : set)
      if (is(f, K::Zero)) nil = true;
    for (Formula f : set) {
      if (!is(f, K::Dia)) continue;
      if (nil) return false;
      std::vector<Formula> child{f->left};
      for (Formula g : set)
        if (is(g, K::Box) && g->act == f->act) child.push_back(g->left);
      if (!sat(std::move(child))) return false;
    }
    return true;
  }

  std::map<std::vector<std::size_t>, bool> memo_;
};

}  // namespace

bool sat_tableau(Formula f, const std::optional<Alphabet>& a) {
  Tableau t;
  return t.sat({nnf(f, a)});
}

// ---------------------------------------------------------------- dispatch

bool sat_any(Formula f, const Alphabet& alpha) {
  Alphabet a = alpha.merged(actions_in(f));
  FragmentSet fs = fragment_of(f, a);
  if (fs.has(Fragment::S)) return class_K(f);
  if (fs.has(Fragment::CS)) return class_J(fold_zero(f, a)) != SatClassJ::Empty;
  Formula g = expand_zero(f, a);
  if (fs.has(Fragment::RS)) {
    if (a.size() <= 16) return !initial_sets(g, a).empty();
    DisjunctStream ds(g);
    while (auto d = ds.next())
      if (sat_rs_disjunct(*d)) return true;
    return false;
  }
  if (fs.has(Fragment::TS)) {
    DisjunctStream ds(g);
    while (auto d = ds.next())
      if (sat_ts_disjunct(*d)) return true;
    return false;
  }
  if (fs.has(Fragment::S2)) {
    // negations inside disjuncts are atoms for the DNF; the tableau
    // settles each disjunct
    DisjunctStream ds(g);
    while (auto d = ds.next())
      if (sat_tableau(*d, a)) return true;
    return false;
  }
  return sat_tableau(f, a);
}

bool sat(Fragment x, Formula f, const Alphabet& alpha) {
  Alphabet a = alpha.merged(actions_in(f));
  if (!fragment_of(f, a).has(x))
    throw FragmentError("formula is not in L_" + fragment_name(x) + ": " + to_string(f));
  return sat_any(f, a);
}

bool valid(Fragment, Formula f, const Alphabet& alpha) {
  Alphabet a = alpha.merged(actions_in(f));
  return !sat_any(dual(f, a), a);
}

// ---------------------------------------------------------------- pruning

Formula prune_unsat(Fragment x, Formula f, const Alphabet& alpha) {
  if (x != Fragment::S && x != Fragment::CS && x != Fragment::RS)
    throw FragmentError("pruning is defined for S, CS and RS");
  Alphabet a = alpha.merged(actions_in(f));
  Formula g = x == Fragment::CS ? fold_zero(f, a) : f;
  if (!fragment_of(g, a).has(x)) throw FragmentError("formula is not in L_" + fragment_name(x));

  std::unordered_map<Formula, bool> sat_memo;
  auto satisfiable = [&](Formula h) {
    auto it = sat_memo.find(h);
    if (it != sat_memo.end()) return it->second;
    bool r = x == Fragment::S ? class_K(h)
             : x == Fragment::CS ? class_J(h) != SatClassJ::Empty
                                 : !initial_sets(h, a).empty();
    sat_memo[h] = r;
    return r;
  };
  if (!satisfiable(g)) throw std::invalid_argument("prune_unsat called on an unsatisfiable formula");

  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula h) -> Formula {
    auto it = memo.find(h);
    if (it != memo.end()) return it->second;
    Formula r = h;
    if (!satisfiable(h)) {
      r = ff();
    } else {
      switch (h->kind) {
        case K::Dia: r = dia(h->act, go(h->left)); break;
        case K::And: r = conj(go(h->left), go(h->right)); break;
        case K::Or: {
          bool l = satisfiable(h->left), rr = satisfiable(h->right);
          r = (l && rr) ? disj(go(h->left), go(h->right)) : l ? go(h->left) : go(h->right);
          break;
        }
        default: break;  // tt, 0, [a]ff
      }
    }
    memo[h] = r;
    return r;
  };
  return go(g);
}

}  // namespace hml
