// SPDX-License-Identifier: MIT

#include "hml/charform.hpp"

#include <functional>
#include <map>

#include "hml/oracle.hpp"
#include "hml/satisfiability.hpp"

namespace hml {

CharVerdict decide_characteristic(Fragment x, Formula f, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_in(f));
  CharVerdict v;
  if (!sat(x, f, alpha)) {
    v.note = "unsatisfiable";
    return v;
  }
  PrimeResult r = prime_check(x, f, alpha);
  v.is_characteristic = r.prime;
  v.witness = r.witness;
  v.confidence = r.confidence;
  v.note = r.note;
  return v;
}

// ---------------------------------------------------------------- synthesis

namespace {

class ChiBuilder {
public:
  ChiBuilder(Proc p, Alphabet a) : alpha_(std::move(a)) {
    states_ = reachable(p);
    std::reverse(states_.begin(), states_.end());  // root first
    for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = i;
  }

  EquationSystem build(PreorderKind x) {
    kind_ = x;
    std::uint32_t root = variable("X", states_[0], [&](Proc s) { return main(s); });
    es_.root = root;
    es_.alphabet = alpha_;
    return std::move(es_);
  }

private:
  using Body = std::function<Formula(Proc)>;

  std::uint32_t variable(const std::string& family, Proc s, const Body& body) {
    auto key = std::make_pair(family, s);
    auto it = vars_.find(key);
    if (it != vars_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(es_.rhs.size());
    vars_.emplace(key, id);
    es_.names.push_back(family + "_" + std::to_string(index_.at(s)));
    es_.rhs.push_back(nullptr);
    Formula rhs = body(s);
    es_.rhs[id] = rhs;
    return id;
  }

  Formula dias(Proc s, const std::string& family, const Body& body) {
    std::vector<Formula> parts;
    for (const auto& [a, t] : s->moves) parts.push_back(dia(a, var(variable(family, t, body))));
    return conj_all(parts);
  }

  // [a] over the disjunction of the a-successors, for every action
  Formula boxes(Proc s, const std::string& family, const Body& body) {
    std::vector<Formula> parts;
    for (ActionId a : alpha_.actions()) {
      std::vector<Formula> opts;
      for (const auto& [b, t] : s->moves)
        if (b == a) opts.push_back(var(variable(family, t, body)));
      parts.push_back(box(a, disj_all(opts)));
    }
    return conj_all(parts);
  }

  Formula both(Formula l, Formula r) {
    if (is(l, K::Tt)) return r;
    if (is(r, K::Tt)) return l;
    return conj(l, r);
  }

  Formula main(Proc s) {
    using B = PreorderKind::Base;
    const Body self = [&](Proc t) { return main(t); };
    switch (kind_.base) {
      case B::S: return dias(s, "X", self);
      case B::CS: return s->moves.empty() ? zero_formula(alpha_) : dias(s, "X", self);
      case B::RS: {
        std::vector<Formula> parts{dias(s, "X", self)};
        auto init = initials(s);
        for (ActionId a : alpha_.actions())
          if (!init.count(a)) parts.push_back(box(a, ff()));
        if (is(parts[0], K::Tt)) parts.erase(parts.begin());
        return conj_all(parts);
      }
      case B::TS: return both(dias(s, "X", self), exc_traces(s, alpha_));
      case B::BS: return both(dias(s, "X", self), boxes(s, "X", self));
      case B::NS: return nested(kind_.n, s, true);
    }
    return tt();
  }

  std::string chi_family(unsigned k, bool top) const {
    if (top) return "X";
    return k == 1 ? "S" : "C" + std::to_string(k);
  }

  // chi_kS(s) = bar_{k-1}(s) ∧ ⋀<a>chi_kS(s')
  Formula nested(unsigned k, Proc s, bool top) {
    const std::string fam = chi_family(k, top);
    const Body self = [this, k, top](Proc t) { return nested(k, t, top); };
    if (k == 1) return dias(s, fam, self);
    Formula bar = k == 2 ? var(variable("B", s, [&](Proc t) { return bar_s(t); }))
                         : neg(var(variable("D" + std::to_string(k - 1), s,
                                            [this, k](Proc t) { return co_bar(k - 1, t); })));
    return both(bar, dias(s, fam, self));
  }

  // the box form of the inverse simulation part: q |= B(s) iff q <=_S s
  Formula bar_s(Proc s) {
    return boxes(s, "B", [&](Proc t) { return bar_s(t); });
  }

  // D_m(s) is the negation of bar_m(s) = ⋀[a]⋁bar_m(s') ∧ chi_(m-1)S(s)
  Formula co_bar(unsigned m, Proc s) {
    const std::string fam = "D" + std::to_string(m);
    const Body self = [this, m](Proc t) { return co_bar(m, t); };
    std::vector<Formula> parts;
    for (ActionId a : alpha_.actions()) {
      std::vector<Formula> all;
      for (const auto& [b, t] : s->moves)
        if (b == a) all.push_back(var(variable(fam, t, self)));
      parts.push_back(dia(a, conj_all(all)));
    }
    if (m >= 2) {
      Formula inner = var(variable(chi_family(m - 1, false), s,
                                   [this, m](Proc t) { return nested(m - 1, t, false); }));
      parts.push_back(neg(inner));
    }
    return disj_all(parts);
  }

  Alphabet alpha_;
  PreorderKind kind_ = PreorderKind::S();
  std::vector<Proc> states_;
  std::unordered_map<Proc, std::size_t> index_;
  std::map<std::pair<std::string, Proc>, std::uint32_t> vars_;
  EquationSystem es_;
};

}  // namespace

Formula exc_traces(Proc p, const Alphabet& a) {
  Alphabet alpha = a.merged(actions_of(p));
  const TraceSet& tr = traces(p);
  std::vector<Formula> chains;
  for (const auto& t : tr)
    for (ActionId x : alpha.actions()) {
      Trace u = t;
      u.push_back(x);
      if (tr.count(u)) continue;
      Formula g = ff();
      for (auto it = u.rbegin(); it != u.rend(); ++it) g = box(*it, g);
      chains.push_back(g);
    }
  return conj_all(chains);
}

EquationSystem chi(PreorderKind x, Proc p, const Alphabet& a) {
  ChiBuilder b(p, a.merged(actions_of(p)));
  return b.build(x);
}

EquationSystem chi_ts(Proc p, const Alphabet& a) { return chi(PreorderKind::TS(), p, a); }

Formula chi_formula(PreorderKind x, Proc p, const Alphabet& a) { return es_expand(chi(x, p, a)); }

// ---------------------------------------------------------------- kernels

CharVerdict char_mod_kernel_search(PreorderKind x, Formula f, const std::vector<Proc>& universe) {
  CharVerdict v;
  v.confidence = Confidence::BoundedEvidence;
  UniverseEvaluator ev(universe);
  std::optional<Proc> first;
  for (Proc q : universe)
    if (ev.holds(f, q)) {
      first = q;
      break;
    }
  if (!first) {
    v.note = "no model in the universe";
    return v;
  }
  RelationMatrix rel(x, universe);
  for (Proc q : universe) {
    bool same = rel(*first, q) && rel(q, *first);
    if (ev.holds(f, q) != same) {
      v.note = "models differ from one kernel class at " + to_string(q);
      return v;
    }
  }
  v.is_characteristic = true;
  v.witness = first;
  return v;
}

CharVerdict char_mod_kernel_bounded(Fragment x, Formula f, const Alphabet& a, unsigned depth_budget,
                                    unsigned width_budget) {
  Alphabet alpha = a.merged(actions_in(f));
  if (!fragment_of(f, alpha).has(x)) throw FragmentError("formula is not in L_" + fragment_name(x));
  CharVerdict v;
  if (x == Fragment::S) {
    v.note = "no simulation formula is characteristic modulo the kernel";
    return v;
  }
  auto universe = enum_processes({alpha, depth_budget, width_budget});
  if (x == Fragment::CS || x == Fragment::RS) {
    UniverseEvaluator ev(universe);
    if (ev.eval(f) == ev.eval(zero_formula(alpha))) {
      v.is_characteristic = true;
      v.witness = nil();
      v.note = "equivalent to 0";
    } else {
      v.confidence = Confidence::BoundedEvidence;
      v.note = "differs from 0 on the universe";
    }
    return v;
  }
  return char_mod_kernel_search(PreorderKind::of(x), f, universe);
}

}  // namespace hml
