// SPDX-License-Identifier: MIT

#include "hml/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "hml/modelcheck.hpp"

namespace hml {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ w) * 1099511628211ull;
    return h;
  }
};

bool bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

Proc canonical_sum(std::vector<Move> items) {
  std::sort(items.begin(), items.end(), [](const Move& x, const Move& y) {
    if (x.first != y.first) return action_less(x.first, y.first);
    return x.second->id < y.second->id;
  });
  std::vector<Proc> parts;
  for (const auto& [a, q] : items) parts.push_back(prefix(a, q));
  return sum_of(parts);
}

// Process types over a fixed family of boolean features. A feature is
// evaluated on q from the aggregate of q's (action, child type) pairs:
// slot features ask whether some / every a-child has one of a list of
// child features, the rest are boolean combinations at the same level.
class TypeSpace {
public:
  explicit TypeSpace(Alphabet a) : alpha_(std::move(a)) {
    true_ = add({Op::Const, true, 0, {}});
    false_ = add({Op::Const, false, 0, {}});
  }

  std::uint32_t truth(bool v) const { return v ? true_ : false_; }

  std::uint32_t slot(bool universal, ActionId a, std::vector<std::uint32_t> feats) {
    std::size_t ai = alpha_.index_of(a);
    if (ai == Alphabet::npos) throw std::invalid_argument("action outside the type alphabet");
    std::sort(feats.begin(), feats.end());
    feats.erase(std::unique(feats.begin(), feats.end()), feats.end());
    std::string key = (universal ? "U" : "E") + std::to_string(ai);
    for (auto f : feats) key += "," + std::to_string(f);
    auto it = slot_ids_.find(key);
    std::uint32_t s;
    if (it != slot_ids_.end()) {
      s = it->second;
    } else {
      s = static_cast<std::uint32_t>(slots_.size());
      slots_.push_back({universal, ai, std::move(feats)});
      slot_ids_.emplace(key, s);
    }
    return add({Op::Slot, false, s, {}});
  }

  std::uint32_t all(std::vector<std::uint32_t> xs) {
    if (xs.empty()) return true_;
    if (xs.size() == 1) return xs[0];
    return add({Op::And, false, 0, std::move(xs)});
  }
  std::uint32_t any(std::vector<std::uint32_t> xs) {
    if (xs.empty()) return false_;
    if (xs.size() == 1) return xs[0];
    return add({Op::Or, false, 0, std::move(xs)});
  }
  std::uint32_t negate(std::uint32_t x) { return add({Op::Not, false, 0, {x}}); }

  std::uint32_t has_action(ActionId a) { return slot(false, a, {true_}); }
  std::uint32_t no_moves() {
    std::vector<std::uint32_t> xs;
    for (ActionId a : alpha_.actions()) xs.push_back(has_action(a));
    return negate(any(xs));
  }

  std::uint32_t formula(Formula f) {
    auto it = formula_ids_.find(f);
    if (it != formula_ids_.end()) return it->second;
    std::uint32_t r = 0;
    switch (f->kind) {
      case K::Tt: r = true_; break;
      case K::Ff: r = false_; break;
      case K::Zero: r = no_moves(); break;
      case K::Dia: r = slot(false, f->act, {formula(f->left)}); break;
      case K::Box: r = slot(true, f->act, {formula(f->left)}); break;
      case K::And: r = all({formula(f->left), formula(f->right)}); break;
      case K::Or: r = any({formula(f->left), formula(f->right)}); break;
      case K::Neg: r = negate(formula(f->left)); break;
      case K::Var: throw std::invalid_argument("open formula in the oracle");
    }
    formula_ids_[f] = r;
    return r;
  }

  std::uint32_t trace_member(const Trace& w, std::size_t from = 0) {
    if (from == w.size()) return true_;
    return slot(false, w[from], {trace_member(w, from + 1)});
  }

  // traces(q) ⊆ t, for a prefix-closed t containing the empty trace
  std::uint32_t trace_subset(const TraceSet& t) {
    auto it = subset_ids_.find(t);
    if (it != subset_ids_.end()) return it->second;
    std::vector<std::uint32_t> parts;
    for (ActionId a : alpha_.actions()) {
      TraceSet rest;
      for (const auto& w : t)
        if (!w.empty() && w[0] == a) rest.insert(Trace(w.begin() + 1, w.end()));
      parts.push_back(rest.empty() ? slot(true, a, {}) : slot(true, a, {trace_subset(rest)}));
    }
    std::uint32_t r = all(parts);
    subset_ids_[t] = r;
    return r;
  }

  std::uint32_t trace_equal(const TraceSet& t) {
    std::vector<std::uint32_t> parts{trace_subset(t)};
    for (const auto& w : t) parts.push_back(trace_member(w));
    return all(parts);
  }

  // the feature "p <=_x q" where q is the process being typed
  std::uint32_t below(PreorderKind x, Proc p) {
    using B = PreorderKind::Base;
    auto key = std::make_tuple(static_cast<int>(x.base), x.n, p->id, 0);
    auto it = rel_ids_.find(key);
    if (it != rel_ids_.end()) return it->second;
    std::vector<std::uint32_t> parts;
    for (const auto& [b, p2] : p->moves) parts.push_back(slot(false, b, {below(x, p2)}));
    switch (x.base) {
      case B::S: break;
      case B::CS: parts.push_back(p->moves.empty() ? no_moves() : negate(no_moves())); break;
      case B::RS: {
        auto init = initials(p);
        for (ActionId a : alpha_.actions())
          parts.push_back(init.count(a) ? has_action(a) : negate(has_action(a)));
        break;
      }
      case B::TS: parts.push_back(trace_equal(traces(p))); break;
      case B::NS: parts.push_back(above(x.n - 1, p)); break;
      case B::BS:
        for (ActionId a : alpha_.actions()) {
          std::vector<std::uint32_t> opts;
          for (const auto& [c, p2] : p->moves)
            if (c == a) opts.push_back(below(x, p2));
          parts.push_back(slot(true, a, opts));
        }
        break;
    }
    std::uint32_t r = all(parts);
    rel_ids_[key] = r;
    return r;
  }

  // the feature "q <=_nS p"
  std::uint32_t above(unsigned n, Proc p) {
    auto key = std::make_tuple(-1, n, p->id, 1);
    auto it = rel_ids_.find(key);
    if (it != rel_ids_.end()) return it->second;
    std::vector<std::uint32_t> parts;
    for (ActionId a : alpha_.actions()) {
      std::vector<std::uint32_t> opts;
      for (const auto& [c, p2] : p->moves)
        if (c == a) opts.push_back(above(n, p2));
      parts.push_back(slot(true, a, opts));
    }
    if (n >= 2) parts.push_back(below(PreorderKind::NS(n - 1), p));
    std::uint32_t r = all(parts);
    rel_ids_[key] = r;
    return r;
  }

  struct Type {
    Bits bits;
    Proc rep;
  };

  // Types of all processes over the alphabet with depth <= depth.
  std::vector<Type> run(unsigned depth, std::size_t cap) {
    const std::size_t sw = (slots_.size() + 63) / 64 + 1;
    std::vector<Type> types{{evaluate(Bits(sw, 0)), nil()}};
    for (unsigned d = 0; d < depth; ++d) {
      std::vector<Bits> aggs{Bits(sw, 0)};
      std::vector<Proc> reps{nil()};
      std::unordered_map<Bits, std::size_t, BitsHash> seen{{aggs[0], 0}};
      for (ActionId a : alpha_.actions()) {
        std::size_t ai = alpha_.index_of(a);
        for (const auto& t : types) {
          Bits single(sw, 0);
          for (std::size_t s = 0; s < slots_.size(); ++s) {
            if (slots_[s].act != ai) continue;
            bool m = false;
            for (auto f : slots_[s].feats) m = m || bit(t.bits, f);
            // universal slots record a violating child
            if (m != slots_[s].universal) set_bit(single, s);
          }
          Proc edge = prefix(a, t.rep);
          const std::size_t before = aggs.size();
          for (std::size_t i = 0; i < before; ++i) {
            Bits y = aggs[i];
            for (std::size_t k = 0; k < sw; ++k) y[k] |= single[k];
            if (seen.count(y)) continue;
            seen.emplace(y, aggs.size());
            aggs.push_back(std::move(y));
            reps.push_back(reps[i] == nil() ? edge : sum(reps[i], edge));
            if (aggs.size() > cap) throw BudgetExceeded("type closure exceeds " + std::to_string(cap) + " aggregates");
          }
        }
      }
      std::vector<Type> next;
      std::unordered_set<Bits, BitsHash> have;
      for (std::size_t i = 0; i < aggs.size(); ++i) {
        Bits t = evaluate(aggs[i]);
        if (have.insert(t).second) next.push_back({std::move(t), reps[i]});
      }
      types = std::move(next);
    }
    return types;
  }

private:
  enum class Op : std::uint8_t { Const, Slot, And, Or, Not };
  struct Feat {
    Op op;
    bool value;
    std::uint32_t slot;
    std::vector<std::uint32_t> args;
  };
  struct Slot {
    bool universal;
    std::size_t act;
    std::vector<std::uint32_t> feats;
  };

  std::uint32_t add(Feat f) {
    std::string key = std::to_string(static_cast<int>(f.op)) + ":" + std::to_string(f.value) + ":" +
                      std::to_string(f.slot);
    for (auto x : f.args) key += "," + std::to_string(x);
    auto it = feat_ids_.find(key);
    if (it != feat_ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(feats_.size());
    feats_.push_back(std::move(f));
    feat_ids_.emplace(std::move(key), id);
    return id;
  }

  Bits evaluate(const Bits& agg) const {
    Bits out((feats_.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < feats_.size(); ++i) {
      const Feat& f = feats_[i];
      bool v = false;
      switch (f.op) {
        case Op::Const: v = f.value; break;
        case Op::Slot: v = bit(agg, f.slot) != slots_[f.slot].universal; break;
        case Op::And:
          v = true;
          for (auto x : f.args) v = v && bit(out, x);
          break;
        case Op::Or:
          for (auto x : f.args) v = v || bit(out, x);
          break;
        case Op::Not: v = !bit(out, f.args[0]); break;
      }
      if (v) set_bit(out, i);
    }
    return out;
  }

  Alphabet alpha_;
  std::uint32_t true_ = 0, false_ = 0;
  std::vector<Feat> feats_;
  std::unordered_map<std::string, std::uint32_t> feat_ids_;
  std::vector<Slot> slots_;
  std::unordered_map<std::string, std::uint32_t> slot_ids_;
  std::unordered_map<Formula, std::uint32_t> formula_ids_;
  std::map<TraceSet, std::uint32_t> subset_ids_;
  std::map<std::tuple<int, unsigned, std::size_t, int>, std::uint32_t> rel_ids_;
};

// Distinct-child trees with at most k transitions and depth <= d.
std::vector<Proc> small_trees(const std::vector<ActionId>& acts, std::size_t k, unsigned d, std::size_t cap) {
  std::map<std::pair<std::size_t, unsigned>, std::vector<Proc>> memo;
  std::function<const std::vector<Proc>&(std::size_t, unsigned)> trees =
      [&](std::size_t budget, unsigned depth) -> const std::vector<Proc>& {
    auto key = std::make_pair(budget, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Proc> out{nil()};
    if (budget > 0 && depth > 0) {
      struct Item {
        Move m;
        std::size_t cost;
      };
      std::vector<Item> items;
      for (ActionId a : acts)
        for (Proc c : trees(budget - 1, depth - 1)) items.push_back({{a, c}, 1 + process_size(c) / 2});
      std::vector<Move> chosen;
      std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t left) {
        for (std::size_t i = from; i < items.size(); ++i) {
          if (items[i].cost > left) continue;
          chosen.push_back(items[i].m);
          out.push_back(canonical_sum(chosen));
          if (out.size() > cap) throw BudgetExceeded("candidate trees exceed " + std::to_string(cap));
          pick(i + 1, left - items[i].cost);
          chosen.pop_back();
        }
      };
      pick(0, budget);
    }
    return memo[key] = std::move(out);
  };
  std::vector<Proc> all = trees(k, d);
  std::stable_sort(all.begin(), all.end(),
                   [](Proc x, Proc y) { return process_size(x) < process_size(y); });
  return all;
}

// Prefix-closed subsets of t that contain the empty trace.
std::vector<TraceSet> trace_subtrees(const TraceSet& t) {
  std::set<ActionId> init;
  for (const auto& w : t)
    if (!w.empty()) init.insert(w[0]);
  std::vector<TraceSet> acc{TraceSet{Trace{}}};
  for (ActionId a : init) {
    TraceSet rest;
    for (const auto& w : t)
      if (!w.empty() && w[0] == a) rest.insert(Trace(w.begin() + 1, w.end()));
    std::vector<TraceSet> next;
    for (const auto& base : acc) {
      next.push_back(base);
      for (const auto& sub : trace_subtrees(rest)) {
        TraceSet u = base;
        for (const auto& w : sub) {
          Trace x{a};
          x.insert(x.end(), w.begin(), w.end());
          u.insert(std::move(x));
        }
        next.push_back(std::move(u));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

// Every process (modulo bisimilarity) whose trace set is exactly t.
std::vector<Proc> processes_with_traces(const TraceSet& t, std::size_t cap, std::map<TraceSet, std::vector<Proc>>& memo) {
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  std::map<ActionId, TraceSet> residual;
  for (const auto& w : t)
    if (!w.empty()) residual[w[0]].insert(Trace(w.begin() + 1, w.end()));
  std::vector<std::vector<Move>> acc{{}};
  for (auto& [a, rest] : residual) {
    std::vector<Proc> options;
    for (const auto& sub : trace_subtrees(rest))
      for (Proc q : processes_with_traces(sub, cap, memo)) options.push_back(q);
    if (options.size() > 20) throw BudgetExceeded("too many children to combine for a trace set");
    std::vector<std::vector<Move>> choices;
    for (std::uint32_t mask = 1; mask < (1u << options.size()); ++mask) {
      TraceSet cover;
      std::vector<Move> ms;
      for (std::size_t i = 0; i < options.size(); ++i)
        if (mask >> i & 1u) {
          const auto& tr = traces(options[i]);
          cover.insert(tr.begin(), tr.end());
          ms.emplace_back(a, options[i]);
        }
      if (cover == rest) choices.push_back(std::move(ms));
    }
    std::vector<std::vector<Move>> next;
    for (const auto& base : acc)
      for (const auto& c : choices) {
        auto m = base;
        m.insert(m.end(), c.begin(), c.end());
        next.push_back(std::move(m));
        if (next.size() > cap) throw BudgetExceeded("processes for a trace set exceed the cap");
      }
    acc = std::move(next);
  }
  std::vector<Proc> out;
  for (auto& ms : acc) out.push_back(canonical_sum(ms));
  memo[t] = out;
  return out;
}

std::vector<Trace> words_up_to(const Alphabet& a, unsigned len) {
  std::vector<Trace> out{Trace{}};
  std::vector<Trace> frontier{Trace{}};
  for (unsigned l = 0; l < len; ++l) {
    std::vector<Trace> next;
    for (const auto& w : frontier)
      for (ActionId x : a.actions()) {
        Trace v = w;
        v.push_back(x);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- enumeration

std::vector<Proc> enum_processes(const Universe& u, std::size_t cap) {
  std::vector<Proc> level{nil()};
  for (unsigned d = 0; d < u.max_depth; ++d) {
    std::vector<Move> items;
    for (ActionId a : u.alphabet.actions())
      for (Proc q : level) items.emplace_back(a, q);
    std::vector<Proc> next = level;
    std::unordered_set<Proc> have(level.begin(), level.end());
    std::vector<Move> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (chosen.size() == u.max_width) return;
      for (std::size_t i = from; i < items.size(); ++i) {
        chosen.push_back(items[i]);
        Proc p = canonical_sum(chosen);
        if (have.insert(p).second) {
          next.push_back(p);
          if (next.size() > cap) throw BudgetExceeded("universe exceeds " + std::to_string(cap) + " processes");
        }
        pick(i + 1);
        chosen.pop_back();
      }
    };
    pick(0);
    level = std::move(next);
  }
  return level;
}

// ---------------------------------------------------------------- satisfiability

SatWitness brute_sat_witness(Formula f, const Alphabet& a, std::size_t cap) {
  Alphabet alpha = a.merged(actions_in(f));
  TypeSpace ts(alpha);
  std::uint32_t fi = ts.formula(f);
  for (const auto& t : ts.run(f->md, cap))
    if (bit(t.bits, fi)) return {true, t.rep};
  return {false, std::nullopt};
}

bool brute_sat(Formula f, const Alphabet& a, std::size_t cap) { return brute_sat_witness(f, a, cap).satisfiable; }

bool brute_entails(Formula f, Formula g, const std::vector<Proc>& universe) {
  Checker mc;
  for (Proc p : universe)
    if (mc(p, f) && !mc(p, g)) return false;
  return true;
}

// ---------------------------------------------------------------- characteristic

std::optional<Proc> brute_characteristic(PreorderKind x, Formula f, const Alphabet& a, std::size_t cap) {
  Alphabet alpha = a.merged(actions_in(f));
  const unsigned d = f->md;

  std::vector<Proc> candidates;
  if (x.base == PreorderKind::Base::TS) {
    // every model shares one trace set with the characteristic process
    TypeSpace ts(alpha);
    std::uint32_t fi = ts.formula(f);
    std::vector<Trace> words = words_up_to(alpha, d + 1);
    std::vector<std::uint32_t> wi;
    for (const auto& w : words) wi.push_back(ts.trace_member(w));
    std::set<TraceSet> shapes;
    for (const auto& t : ts.run(d + 1, cap)) {
      if (!bit(t.bits, fi)) continue;
      TraceSet tr;
      for (std::size_t i = 0; i < words.size(); ++i)
        if (bit(t.bits, wi[i])) tr.insert(words[i]);
      shapes.insert(std::move(tr));
      if (shapes.size() > 1) return std::nullopt;
    }
    if (shapes.empty()) return std::nullopt;
    std::map<TraceSet, std::vector<Proc>> memo;
    candidates = processes_with_traces(*shapes.begin(), cap, memo);
  } else {
    std::vector<ActionId> acts = actions_in(expand_zero(f, alpha)).actions();
    std::size_t edges = count_diamonds(f);
    if (x.base == PreorderKind::Base::NS || x.base == PreorderKind::Base::BS) {
      // boxes may force one copy of a diamond under each successor
      Formula g = nnf(f, alpha);
      std::size_t boxes = 0;
      std::function<void(Formula)> walk = [&](Formula h) {
        if (is(h, K::Box)) ++boxes;
        if (h->left) walk(h->left);
        if (h->right) walk(h->right);
      };
      walk(g);
      edges = count_diamonds(g) * (1 + boxes);
      acts = alpha.actions();
    }
    candidates = small_trees(acts, edges, d, cap);
  }

  Checker mc;
  std::vector<Proc> models;
  for (Proc p : candidates)
    if (mc(p, f)) models.push_back(p);
  std::optional<Proc> best;
  for (Proc p : models) {
    bool least = true;
    for (Proc q : models)
      if (!preorder(x, p, q)) {
        least = false;
        break;
      }
    if (least) {
      best = p;
      break;
    }
  }
  if (!best) return std::nullopt;

  TypeSpace ts(alpha);
  std::uint32_t fi = ts.formula(f);
  std::uint32_t ri = ts.below(x, *best);
  for (const auto& t : ts.run(d + 1, cap))
    if (bit(t.bits, fi) && !bit(t.bits, ri)) return std::nullopt;
  return best;
}

std::optional<Proc> characteristic_counterexample(PreorderKind x, Formula f, Proc p, const std::vector<Proc>& universe) {
  Checker mc;
  for (Proc q : universe)
    if (mc(q, f) != preorder(x, p, q)) return q;
  return std::nullopt;
}

// ---------------------------------------------------------------- reductions

Alphabet encoding_alphabet(EncodingTarget target, std::size_t variables) {
  std::vector<std::string> names;
  if (target == EncodingTarget::TS) {
    names = {"b0", "b1"};
  } else {
    for (std::size_t i = 1; i <= variables; ++i) names.push_back("a" + std::to_string(i));
  }
  return Alphabet::from_names(names);
}

namespace {

std::vector<ActionId> binary_index(std::size_t i, std::size_t variables) {
  unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(variables)));
  ActionId zero = intern_action("b0"), one = intern_action("b1");
  std::vector<ActionId> out;
  for (unsigned k = bits; k-- > 0;) out.push_back((i >> k) & 1u ? one : zero);
  return out;
}

}  // namespace

Formula encode_cnf(EncodingTarget target, const Cnf& cnf, std::size_t variables) {
  auto literal = [&](int lit) -> Formula {
    std::size_t v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
    if (v == 0 || v > variables) throw std::invalid_argument("literal out of range");
    if (target == EncodingTarget::RS) {
      ActionId a = intern_action("a" + std::to_string(v));
      return lit > 0 ? dia(a, tt()) : box(a, ff());
    }
    auto path = binary_index(v, variables);
    Formula g = lit > 0 ? tt() : ff();
    for (auto it = path.rbegin(); it != path.rend(); ++it) g = lit > 0 ? dia(*it, g) : box(*it, g);
    return g;
  };
  std::vector<Formula> clauses;
  for (const auto& c : cnf) {
    std::vector<Formula> lits;
    for (int l : c) lits.push_back(literal(l));
    clauses.push_back(disj_all(lits));
  }
  return conj_all(clauses);
}

bool cnf_truth_table(const Cnf& cnf, std::size_t variables) {
  if (variables > 30) throw BudgetExceeded("truth table too large");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << variables); ++m) {
    bool all_ok = true;
    for (const auto& c : cnf) {
      bool ok = false;
      for (int l : c) {
        std::size_t v = static_cast<std::size_t>(l < 0 ? -l : l) - 1;
        bool val = (m >> v) & 1u;
        if (val == (l > 0)) ok = true;
      }
      if (!ok) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) return true;
  }
  return false;
}

std::pair<Proc, Proc> encode_dnf_tautology(const Cnf& dnf, std::size_t variables) {
  ActionId zero = intern_action("b0"), one = intern_action("b1");
  std::vector<Proc> cube(variables + 1);
  cube[variables] = nil();
  for (std::size_t j = variables; j-- > 0;) cube[j] = sum(prefix(zero, cube[j + 1]), prefix(one, cube[j + 1]));
  std::vector<Proc> paths;
  for (const auto& clause : dnf) {
    std::vector<int> sign(variables + 1, 0);
    for (int l : clause) sign.at(static_cast<std::size_t>(l < 0 ? -l : l)) = l > 0 ? 1 : -1;
    Proc p = nil();
    for (std::size_t j = variables; j-- > 0;) {
      int s = sign[j + 1];
      if (s > 0) p = prefix(one, p);
      else if (s < 0) p = prefix(zero, p);
      else p = sum(prefix(zero, p), prefix(one, p));
    }
    paths.push_back(p);
  }
  return {sum_of(paths), cube[0]};
}

Cnf random_cnf(std::uint64_t seed, std::size_t variables, std::size_t clauses, std::size_t width) {
  std::mt19937_64 rng(seed);
  Cnf out;
  width = std::min(width, variables);
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<int> vars(variables);
    for (std::size_t i = 0; i < variables; ++i) vars[i] = static_cast<int>(i + 1);
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<int> clause;
    for (std::size_t i = 0; i < width; ++i) clause.push_back(rng() & 1u ? vars[i] : -vars[i]);
    out.push_back(std::move(clause));
  }
  return out;
}

// ---------------------------------------------------------------- random formulae

namespace {

class FormulaGen {
public:
  FormulaGen(std::uint64_t seed, const Alphabet& a) : rng_(seed), acts_(a.actions()) {}

  Formula make(Fragment x, std::size_t size) {
    switch (x) {
      case Fragment::S: return pos(size, false, false, false);
      case Fragment::CS: return pos(size, true, false, false);
      case Fragment::RS: return pos(size, true, true, false);
      case Fragment::TS: return pos(size, true, false, true);
      case Fragment::S2: return nested(size, 2);
      case Fragment::S3: return nested(size, 3);
      case Fragment::BS: return full(size);
    }
    return tt();
  }

private:
  ActionId act() { return acts_[pick(acts_.size())]; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  // ff is kept rare, otherwise most instances collapse to a constant
  Formula leaf(bool zero_ok) {
    std::size_t r = pick(zero_ok ? 8 : 5);
    if (r == 0) return ff();
    if (r < 5) return tt();
    return zero();
  }

  Formula chain(std::size_t len) {
    Formula g = ff();
    for (std::size_t i = 0; i < len; ++i) g = box(act(), g);
    return g;
  }

  // diamonds, conjunctions, disjunctions and fragment-specific leaves
  Formula pos(std::size_t size, bool zero_ok, bool box_ff, bool chains) {
    if (size <= 1) return leaf(zero_ok);
    if (size == 2 && (box_ff || chains) && pick(2) == 0) return box(act(), ff());
    if (chains && size >= 3 && pick(4) == 0) return chain(std::min<std::size_t>(size - 1, 3));
    if (size == 2 || pick(3) == 0) return dia(act(), pos(size - 1, zero_ok, box_ff, chains));
    std::size_t l = 1 + pick(size - 2);
    Formula x = pos(l, zero_ok, box_ff, chains), y = pos(size - 1 - l, zero_ok, box_ff, chains);
    return pick(2) ? conj(x, y) : disj(x, y);
  }

  Formula co(std::size_t size) {
    if (size <= 1) return pick(3) ? ff() : tt();
    if (size == 2 || pick(3) == 0) return box(act(), co(size - 1));
    std::size_t l = 1 + pick(size - 2);
    Formula x = co(l), y = co(size - 1 - l);
    return pick(2) ? conj(x, y) : disj(x, y);
  }

  // level 2: S plus [a]coS and ¬S; level 3 also ¬(level 2)
  Formula nested(std::size_t size, int level) {
    if (size <= 1) return leaf(true);
    switch (pick(5)) {
      case 0: return dia(act(), nested(size - 1, level));
      case 1: return box(act(), co(size - 1));
      case 2: return level == 2 ? neg(pos(size - 1, false, false, false)) : neg(nested(size - 1, 2));
      default: {
        if (size == 2) return dia(act(), nested(1, level));
        std::size_t l = 1 + pick(size - 2);
        Formula x = nested(l, level), y = nested(size - 1 - l, level);
        return pick(2) ? conj(x, y) : disj(x, y);
      }
    }
  }

  Formula full(std::size_t size) {
    if (size <= 1) return leaf(true);
    switch (pick(5)) {
      case 0: return dia(act(), full(size - 1));
      case 1: return box(act(), full(size - 1));
      case 2: return neg(full(size - 1));
      default: {
        if (size == 2) return box(act(), full(1));
        std::size_t l = 1 + pick(size - 2);
        Formula x = full(l), y = full(size - 1 - l);
        return pick(2) ? conj(x, y) : disj(x, y);
      }
    }
  }

  std::mt19937_64 rng_;
  std::vector<ActionId> acts_;
};

}  // namespace

std::vector<Formula> random_instances(std::uint64_t seed, Fragment x, std::size_t size, std::size_t count,
                                      const Alphabet& a) {
  if (a.empty()) throw std::invalid_argument("random formulae need a non-empty alphabet");
  FormulaGen gen(seed, a);
  std::mt19937_64 sizes(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<Formula> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > count * 1000 + 1000) throw BudgetExceeded("generator could not produce enough formulae");
    std::size_t s = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(size, 1))(sizes);
    Formula f = gen.make(x, s);
    if (formula_size(f) > size) continue;
    Formula g = expand_zero(f, a);
    if (!fragment_of(g, a).has(x)) continue;
    out.push_back(g);
  }
  return out;
}

Proc random_process(std::uint64_t seed, const Universe& u) {
  std::mt19937_64 rng(seed);
  const auto& acts = u.alphabet.actions();
  std::function<Proc(unsigned)> go = [&](unsigned depth) -> Proc {
    if (depth == 0 || acts.empty()) return nil();
    std::size_t width = std::uniform_int_distribution<std::size_t>(0, u.max_width)(rng);
    std::vector<Move> ms;
    for (std::size_t i = 0; i < width; ++i) {
      ActionId a = acts[std::uniform_int_distribution<std::size_t>(0, acts.size() - 1)(rng)];
      unsigned child = std::uniform_int_distribution<unsigned>(0, depth - 1)(rng);
      ms.emplace_back(a, go(child));
    }
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return canonical_sum(ms);
  };
  return go(u.max_depth);
}

// ---------------------------------------------------------------- evaluator

UniverseEvaluator::UniverseEvaluator(const std::vector<Proc>& roots) {
  states_ = reachable(roots);
  for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = i;
  succ_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i)
    for (const auto& [a, q] : states_[i]->moves) succ_[i].emplace_back(a, index_[q]);
}

const std::vector<std::uint64_t>& UniverseEvaluator::eval(Formula f) {
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;
  const std::size_t n = states_.size();
  Bits out((n + 63) / 64, 0);
  auto fill = [&](auto pred) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) set_bit(out, i);
  };
  switch (f->kind) {
    case K::Tt: fill([](std::size_t) { return true; }); break;
    case K::Ff: break;
    case K::Zero: fill([&](std::size_t i) { return succ_[i].empty(); }); break;
    case K::Dia:
    case K::Box: {
      const Bits body = eval(f->left);
      const bool diamond = is(f, K::Dia);
      fill([&](std::size_t i) {
        for (const auto& [a, j] : succ_[i]) {
          if (a != f->act) continue;
          if (bit(body, j) == diamond) return diamond;
        }
        return !diamond;
      });
      break;
    }
    case K::And:
    case K::Or: {
      const Bits l = eval(f->left);
      const Bits& r = eval(f->right);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = is(f, K::And) ? (l[k] & r[k]) : (l[k] | r[k]);
      break;
    }
    case K::Neg: {
      const Bits& b = eval(f->left);
      for (std::size_t i = 0; i < n; ++i)
        if (!bit(b, i)) set_bit(out, i);
      break;
    }
    case K::Var: throw std::invalid_argument("open formula in the evaluator");
  }
  return memo_[f] = std::move(out);
}

bool UniverseEvaluator::holds(Formula f, Proc p) { return bit(eval(f), index_.at(p)); }

}  // namespace hml
