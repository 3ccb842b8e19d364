// SPDX-License-Identifier: MIT

#include "hml/primality.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "hml/modelcheck.hpp"
#include "hml/oracle.hpp"
#include "hml/preorders.hpp"
#include "hml/satisfiability.hpp"

namespace hml {

// ---------------------------------------------------------------- graphs

namespace {

bool is_box_ff(Formula f) { return is(f, K::Box) && is(f->left, K::Ff); }

struct GraphBuilder {
  RuleSet rules;
  bool tt_axiom;
  SequentGraph out;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, VertexId> ids;
  std::vector<VertexId> work;

  VertexId vertex(Formula l1, Formula l2, Formula r) {
    if (l2->id < l1->id) std::swap(l1, l2);
    auto key = std::make_tuple(l1->id, l2->id, r->id);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    VertexId v = out.graph.add_vertex(Quant::Exists);
    out.vertices.push_back({l1, l2, r});
    out.rule.push_back(RuleKind::None);
    ids.emplace(key, v);
    work.push_back(v);
    return v;
  }

  bool axiom(const Sequent& s) const {
    if (is(s.right, K::Tt)) return rules == RuleSet::SIM || tt_axiom;
    if (rules == RuleSet::CSIM)
      return is(s.left1, K::Zero) && is(s.left2, K::Zero) && is(s.right, K::Zero);
    if (rules == RuleSet::RSIM)
      return is_box_ff(s.right) && s.left1 == s.right && s.left2 == s.right;
    return false;
  }

  void expand(VertexId v) {
    const Sequent s = out.vertices[v];
    auto link = [&](RuleKind k, Quant q, std::vector<VertexId> children) {
      out.rule[v] = k;
      out.graph.set_label(v, children.size() == 1 ? Quant::Exists : q);
      for (VertexId c : children) out.graph.add_edge(v, c);
    };
    if (axiom(s)) return link(RuleKind::Axiom, Quant::Exists, {out.graph.target});
    if (is(s.right, K::And))
      return link(RuleKind::RAnd, Quant::Forall,
                  {vertex(s.left1, s.left2, s.right->left), vertex(s.left1, s.left2, s.right->right)});
    if (is(s.right, K::Or))
      return link(RuleKind::ROr, Quant::Exists,
                  {vertex(s.left1, s.left2, s.right->left), vertex(s.left1, s.left2, s.right->right)});
    if (is(s.left1, K::Or) || is(s.left2, K::Or)) {
      Formula split = is(s.left1, K::Or) ? s.left1 : s.left2;
      Formula other = split == s.left1 ? s.left2 : s.left1;
      return link(RuleKind::LOr, Quant::Forall,
                  {vertex(split->left, other, s.right), vertex(split->right, other, s.right)});
    }
    bool conj_target = is(s.right, K::Dia) || (rules == RuleSet::RSIM && is_box_ff(s.right));
    if (conj_target && (is(s.left1, K::And) || is(s.left2, K::And))) {
      Formula split = is(s.left1, K::And) ? s.left1 : s.left2;
      Formula other = split == s.left1 ? s.left2 : s.left1;
      return link(RuleKind::LAnd, Quant::Exists,
                  {vertex(split->left, other, s.right), vertex(split->right, other, s.right)});
    }
    if (is(s.right, K::Dia) && is(s.left1, K::Dia) && is(s.left2, K::Dia) && s.left1->act == s.right->act &&
        s.left2->act == s.right->act)
      return link(RuleKind::Diamond, Quant::Exists, {vertex(s.left1->left, s.left2->left, s.right->left)});
  }

  SequentGraph run(Formula l1, Formula l2, Formula r) {
    out.graph.target = out.graph.add_vertex(Quant::Exists);
    out.vertices.push_back({tt(), tt(), tt()});
    out.rule.push_back(RuleKind::None);
    out.graph.source = vertex(l1, l2, r);
    while (!work.empty()) {
      VertexId v = work.back();
      work.pop_back();
      expand(v);
    }
    return std::move(out);
  }
};

}  // namespace

SequentGraph build_sequent_graph(Formula l1, Formula l2, Formula r, RuleSet rules, bool tt_axiom) {
  return GraphBuilder{rules, tt_axiom, {}, {}, {}}.run(l1, l2, r);
}

SequentGraph build_sequent_graph(Formula f, RuleSet rules, bool tt_axiom) {
  return build_sequent_graph(f, f, f, rules, tt_axiom);
}

std::string to_dot(const SequentGraph& g) {
  return g.graph.to_dot([&](VertexId v) {
    if (v == g.graph.target) return std::string("TRUE");
    const Sequent& s = g.vertices[v];
    return to_string(s.left1) + ", " + to_string(s.left2) + " => " + to_string(s.right);
  });
}

Proc witness(const SequentGraph& g) {
  auto strategy = winning_subgraph(g.graph);
  std::unordered_map<VertexId, Proc> memo;
  std::function<Proc(VertexId)> go = [&](VertexId v) -> Proc {
    if (v == g.graph.target) return nil();
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const auto& next = strategy.at(v);
    Proc p = nil();
    switch (g.rule[v]) {
      case RuleKind::Axiom: break;
      case RuleKind::Diamond: p = prefix(g.vertices[v].right->act, go(next.at(0))); break;
      case RuleKind::RAnd: {
        std::vector<Proc> parts;
        for (VertexId c : next) {
          Proc q = go(c);
          if (q != nil()) parts.push_back(q);
        }
        p = sum_of(parts);
        break;
      }
      case RuleKind::ROr:
      case RuleKind::LAnd:
      case RuleKind::LOr: p = go(next.at(0)); break;
      case RuleKind::None: throw std::logic_error("strategy passes a vertex without a rule");
    }
    memo[v] = p;
    return p;
  };
  return go(g.graph.source);
}

// ---------------------------------------------------------------- rewriting

namespace {

Formula rewrite_units(Formula f, bool diamonds, std::unordered_map<Formula, Formula>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula r = f;
  switch (f->kind) {
    case K::And: {
      Formula l = rewrite_units(f->left, diamonds, memo), rr = rewrite_units(f->right, diamonds, memo);
      r = is(l, K::Tt) ? rr : is(rr, K::Tt) ? l : conj(l, rr);
      break;
    }
    case K::Or: {
      Formula l = rewrite_units(f->left, diamonds, memo), rr = rewrite_units(f->right, diamonds, memo);
      r = is(l, K::Tt) || is(rr, K::Tt) ? tt() : disj(l, rr);
      break;
    }
    case K::Dia: {
      Formula b = rewrite_units(f->left, diamonds, memo);
      r = diamonds && is(b, K::Tt) ? tt() : dia(f->act, b);
      break;
    }
    case K::Box: r = box(f->act, rewrite_units(f->left, diamonds, memo)); break;
    case K::Neg: r = neg(rewrite_units(f->left, diamonds, memo)); break;
    default: break;
  }
  memo[f] = r;
  return r;
}

bool zero_disjunction(Formula f) { return is(f, K::Or) && is(f->left, K::Zero); }

void flatten_or(Formula f, std::vector<Formula>& out) {
  if (is(f, K::Or)) {
    flatten_or(f->left, out);
    flatten_or(f->right, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Formula rewrite_tt(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  return rewrite_units(f, false, memo);
}

Formula rewrite_diamond(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  return rewrite_units(f, true, memo);
}

Formula zero_normal_form(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula h) -> Formula {
    auto it = memo.find(h);
    if (it != memo.end()) return it->second;
    Formula r = h;
    switch (h->kind) {
      case K::Dia: r = dia(h->act, go(h->left)); break;
      case K::Or: {
        Formula l = go(h->left), rr = go(h->right);
        if (!is(l, K::Zero) && !is(rr, K::Zero) && !zero_disjunction(l) && !zero_disjunction(rr)) {
          r = disj(l, rr);
          break;
        }
        std::vector<Formula> parts, rest;
        flatten_or(l, parts);
        flatten_or(rr, parts);
        for (Formula p : parts)
          if (!is(p, K::Zero)) rest.push_back(p);
        r = rest.empty() ? zero() : disj(zero(), disj_all(rest));
        break;
      }
      case K::And: {
        Formula l = go(h->left), rr = go(h->right);
        if (is(l, K::Zero) || is(rr, K::Zero)) r = zero();
        else if (zero_disjunction(l) && zero_disjunction(rr)) r = disj(zero(), conj(l->right, rr->right));
        else if (zero_disjunction(l)) r = conj(l->right, rr);
        else if (zero_disjunction(rr)) r = conj(l, rr->right);
        else r = conj(l, rr);
        break;
      }
      default: break;
    }
    memo[h] = r;
    return r;
  };
  return go(f);
}

// ---------------------------------------------------------------- saturation

namespace {

bool disjunction_free(Formula f) {
  switch (f->kind) {
    case K::Or: return false;
    case K::And: return disjunction_free(f->left) && disjunction_free(f->right);
    default: return true;  // modal bodies do not matter for I(f)
  }
}

// Some S when I(f) = {S}. Conjunctions of atoms are read symbolically, so
// they work over any alphabet size.
std::optional<std::set<ActionId>> unique_initials(Formula f, const Alphabet& a) {
  if (disjunction_free(f)) {
    std::set<ActionId> need, ban;
    std::function<void(Formula)> walk = [&](Formula h) {
      if (is(h, K::And)) {
        walk(h->left);
        walk(h->right);
      } else if (is(h, K::Dia)) {
        need.insert(h->act);
      } else if (is_box_ff(h)) {
        ban.insert(h->act);
      } else if (is(h, K::Ff)) {
        ban.insert(ActionId(-1));
      }
    };
    walk(f);
    if (ban.count(ActionId(-1))) return std::nullopt;
    for (ActionId x : need)
      if (ban.count(x)) return std::nullopt;
    for (ActionId x : a.actions())
      if (!need.count(x) && !ban.count(x)) return std::nullopt;
    return need;
  }
  if (a.size() > kMaxInitialSetAlphabet) throw BudgetExceeded("initial sets need a smaller alphabet");
  auto one = initial_sets(f, a).singleton();
  if (!one) return std::nullopt;
  std::set<ActionId> s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (*one >> i & 1u) s.insert(a[i]);
  return s;
}

std::optional<Formula> simpl_with(Formula f, const std::set<ActionId>& s) {
  switch (f->kind) {
    case K::And: {
      auto l = simpl_with(f->left, s);
      if (!l) return std::nullopt;
      auto r = simpl_with(f->right, s);
      if (!r) return std::nullopt;
      return conj(*l, *r);
    }
    case K::Or: {
      auto l = simpl_with(f->left, s), r = simpl_with(f->right, s);
      if (!l) return r;
      if (!r) return l;
      return disj(*l, *r);
    }
    case K::Dia:
      if (!s.count(f->act)) return std::nullopt;
      return f;
    case K::Box:
      if (is(f->left, K::Ff) && s.count(f->act)) return std::nullopt;
      return f;
    case K::Ff: return std::nullopt;
    default: return f;
  }
}

struct Saturator {
  const Alphabet& alpha;
  std::unordered_map<Formula, Formula> memo;

  Formula simplify(Formula f, const std::set<ActionId>& s) {
    auto r = simpl_with(f, s);
    if (!r) throw std::logic_error("simplification of a satisfiable formula left nothing");
    return *r;
  }

  // substitutes every diamond outside the scope of other diamonds
  Formula top_diamonds(Formula f) {
    switch (f->kind) {
      case K::And: return conj(top_diamonds(f->left), top_diamonds(f->right));
      case K::Or: return disj(top_diamonds(f->left), top_diamonds(f->right));
      case K::Dia: {
        auto s = unique_initials(f->left, alpha);
        if (!s) return tt();
        return dia(f->act, run(simplify(f->left, *s)));
      }
      default: return f;
    }
  }

  Formula run(Formula f) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    Formula phi = f;
    for (int round = 0;; ++round) {
      if (round > 10000) throw std::logic_error("saturation does not stabilise");
      Formula before = phi;
      phi = rewrite_tt(phi);
      auto s = unique_initials(phi, alpha);
      phi = s ? simplify(phi, *s) : tt();
      phi = top_diamonds(phi);
      if (phi == before) break;
    }
    if (!is(phi, K::Tt)) {
      if (auto s = unique_initials(phi, alpha)) phi = simplify(phi, *s);
    }
    memo[f] = phi;
    return phi;
  }
};

}  // namespace

SaturationResult satur(Formula f, const Alphabet& a) {
  Saturator s{a, {}};
  Formula r = s.run(f);
  return {r, is(r, K::Tt)};
}

std::optional<Formula> simpl(Formula f, const Alphabet& a) {
  auto s = unique_initials(f, a);
  if (!s) throw std::invalid_argument("simpl needs a formula with exactly one initial set");
  return simpl_with(f, *s);
}

bool is_saturated(Formula f, const Alphabet& a) {
  if (!unique_initials(f, a)) return false;
  std::function<bool(Formula)> walk = [&](Formula h) -> bool {
    switch (h->kind) {
      case K::And:
      case K::Or: return walk(h->left) && walk(h->right);
      case K::Dia: return is_saturated(h->left, a);
      default: return true;
    }
  };
  return walk(f);
}

Proc associated_process(Formula f) {
  switch (f->kind) {
    case K::Tt:
    case K::Zero:
    case K::Box: return nil();
    case K::Dia: return prefix(f->act, associated_process(f->left));
    case K::And: {
      Proc l = associated_process(f->left), r = associated_process(f->right);
      if (l == nil()) return r;
      if (r == nil()) return l;
      return sum(l, r);
    }
    default: throw std::invalid_argument("associated process needs tt, 0, [a]ff, <a> and conjunction");
  }
}

unsigned trace_depth(Formula f) {
  switch (f->kind) {
    case K::Dia: return 1 + trace_depth(f->left);
    case K::And: return std::max(trace_depth(f->left), trace_depth(f->right));
    case K::Or: return std::min(trace_depth(f->left), trace_depth(f->right));
    default: return 0;
  }
}

// ---------------------------------------------------------------- primality

namespace {

constexpr std::size_t kDisjunctBudget = 4096;
constexpr std::size_t kBoundedRsAlphabet = 16;

PrimeResult from_graph(const SequentGraph& g, Formula f, const std::string& what) {
  PrimeResult r;
  if (!reach_a(g.graph)) {
    r.note = what + ": no alternating path";
    return r;
  }
  Proc p = witness(g);
  r.prime = satisfies(p, f);
  if (r.prime) r.witness = p;
  else r.note = what + ": the extracted process does not satisfy the input";
  return r;
}

}  // namespace

PrimeResult prime_rs_dnf(Formula f, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_in(f));
  std::vector<Formula> sats;
  DisjunctStream stream(f);
  std::size_t seen = 0;
  while (auto d = stream.next()) {
    if (++seen > kDisjunctBudget) throw BudgetExceeded("too many disjuncts");
    if (sat_rs_disjunct(*d)) sats.push_back(*d);
  }
  PrimeResult r;
  if (sats.empty()) {
    r.prime = true;
    r.note = "unsatisfiable";
    return r;
  }
  Saturator sat{alpha, {}};
  std::vector<Formula> sat_forms;
  for (Formula d : sats) {
    Formula s = sat.run(d);
    if (is(s, K::Tt)) {
      r.note = "a disjunct saturates to tt";
      return r;
    }
    sat_forms.push_back(s);
  }
  for (std::size_t i = 0; i < sat_forms.size(); ++i)
    for (std::size_t j = i; j < sat_forms.size(); ++j) {
      auto g = build_sequent_graph(sat_forms[i], sat_forms[j], f, RuleSet::RSIM, true);
      if (!reach_a(g.graph)) {
        r.note = "two disjuncts share no entailed disjunct";
        return r;
      }
    }
  std::vector<Proc> procs;
  for (Formula s : sat_forms) procs.push_back(associated_process(s));
  for (Proc p : procs) {
    if (!satisfies(p, f)) continue;
    bool least = std::all_of(procs.begin(), procs.end(), [&](Proc q) { return preorder(PreorderKind::RS(), p, q); });
    if (least) {
      r.prime = true;
      r.witness = p;
      return r;
    }
  }
  throw std::logic_error("prime formula without a least associated process");
}

PrimalityGraph primality_graph(Fragment x, Formula f, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_in(f));
  PrimalityGraph out;
  switch (x) {
    case Fragment::S: {
      out.graph = build_sequent_graph(prune_unsat(Fragment::S, f, alpha), RuleSet::SIM);
      return out;
    }
    case Fragment::CS: {
      Formula g = rewrite_tt(prune_unsat(Fragment::CS, f, alpha));
      if (is(g, K::Tt)) {
        out.note = "valid";
        return out;
      }
      g = rewrite_diamond(zero_normal_form(g));
      if (is(g, K::Tt)) {
        out.note = "the diamond rewrite reaches tt";
        return out;
      }
      out.graph = build_sequent_graph(g, RuleSet::CSIM);
      return out;
    }
    case Fragment::RS: {
      if (alpha.size() > kBoundedRsAlphabet) throw BudgetExceeded("the saturation graph needs a smaller alphabet");
      Formula g = expand_zero(prune_unsat(Fragment::RS, f, alpha), alpha);
      auto s = satur(g, alpha);
      if (s.is_tt) {
        out.note = "saturation reaches tt";
        return out;
      }
      out.graph = build_sequent_graph(s.formula, RuleSet::RSIM);
      return out;
    }
    default: throw FragmentError("no sequent graph for L_" + fragment_name(x));
  }
}

bool prime_ts_bounded(Formula f, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_in(f));
  if (!sat_any(f, alpha)) return true;
  return brute_characteristic(PreorderKind::TS(), f, alpha).has_value();
}

PrimeResult prime_check(Fragment x, Formula f, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_in(f));
  if (!fragment_of(f, alpha).has(x)) throw FragmentError("formula is not in L_" + fragment_name(x));
  PrimeResult r;
  if (!sat_any(f, alpha)) {
    r.prime = true;
    r.note = "unsatisfiable";
    return r;
  }
  if (alpha.empty()) {
    // nil is the only process
    r.prime = true;
    r.witness = nil();
    return r;
  }
  if (x == Fragment::S || x == Fragment::CS || (x == Fragment::RS && alpha.size() <= kBoundedRsAlphabet)) {
    auto pg = primality_graph(x, f, alpha);
    if (!pg.graph) {
      r.note = pg.note;
      return r;
    }
    return from_graph(*pg.graph, f, fragment_name(x));
  }
  switch (x) {
    case Fragment::S:
    case Fragment::CS:
      break;
    case Fragment::RS: {
      r = prime_rs_dnf(f, alpha);
      if (r.prime && !r.witness) r.note = "unsatisfiable";
      return r;
    }
    case Fragment::TS: {
      auto p = brute_characteristic(PreorderKind::TS(), f, alpha);
      r.prime = p.has_value();
      r.witness = p;
      r.note = "trace-set search";
      return r;
    }
    case Fragment::S2:
    case Fragment::S3:
    case Fragment::BS: {
      auto p = brute_characteristic(PreorderKind::of(x), f, alpha);
      r.prime = p.has_value();
      r.witness = p;
      r.confidence = Confidence::BoundedEvidence;
      r.note = "bounded candidate search";
      return r;
    }
  }
  return r;
}

bool prime(Fragment x, Formula f, const Alphabet& a) { return prime_check(x, f, a).prime; }

}  // namespace hml
