// SPDX-License-Identifier: MIT

#include "hml/preorders.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace hml {

PreorderKind PreorderKind::NS(unsigned n) {
  if (n == 0) throw std::invalid_argument("n-nested simulation needs n >= 1");
  if (n == 1) return S();
  return {Base::NS, n};
}

PreorderKind PreorderKind::of(Fragment x) {
  switch (x) {
    case Fragment::S: return S();
    case Fragment::CS: return CS();
    case Fragment::RS: return RS();
    case Fragment::TS: return TS();
    case Fragment::S2: return NS(2);
    case Fragment::S3: return NS(3);
    case Fragment::BS: return BS();
  }
  return S();
}

PreorderKind PreorderKind::parse(const std::string& s) {
  if (s == "S") return S();
  if (s == "CS") return CS();
  if (s == "RS") return RS();
  if (s == "TS") return TS();
  if (s == "BS") return BS();
  std::string digits;
  if (s.size() > 2 && s.rfind("NS", 0) == 0) digits = s.substr(2);
  else if (s.size() >= 2 && s.back() == 'S') digits = s.substr(0, s.size() - 1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
    return NS(static_cast<unsigned>(std::stoul(digits)));
  throw std::invalid_argument("unknown preorder kind '" + s + "'");
}

std::string PreorderKind::name() const {
  switch (base) {
    case Base::S: return "S";
    case Base::CS: return "CS";
    case Base::RS: return "RS";
    case Base::TS: return "TS";
    case Base::BS: return "BS";
    case Base::NS: return std::to_string(n) + "S";
  }
  return "?";
}

bool trace_equiv(Proc p, Proc q) { return p == q || traces(p) == traces(q); }

namespace {

std::vector<ActionId> initial_list(Proc p) {
  std::vector<ActionId> v;
  for (const auto& m : p->moves)
    if (v.empty() || v.back() != m.first) v.push_back(m.first);
  return v;
}

// Greatest fixed point by pair elimination over reach(p) x reach(q).
bool gfp_preorder(PreorderKind::Base base, Proc p, Proc q) {
  std::vector<Proc> xs = reachable(p), ys = reachable(q);
  std::unordered_map<Proc, std::size_t> xi, yi;
  for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = i;
  for (std::size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = i;
  std::vector<std::vector<std::size_t>> xpred(xs.size()), ypred(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (const auto& m : xs[i]->moves) xpred[xi[m.second]].push_back(i);
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (const auto& m : ys[i]->moves) ypred[yi[m.second]].push_back(i);

  const std::size_t W = ys.size();
  std::vector<char> rel(xs.size() * W, 0);
  auto at = [&](std::size_t i, std::size_t j) -> char& { return rel[i * W + j]; };

  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < W; ++j) {
      bool ok = true;
      if (base == PreorderKind::Base::CS) ok = xs[i]->moves.empty() == ys[j]->moves.empty();
      if (base == PreorderKind::Base::RS) ok = initial_list(xs[i]) == initial_list(ys[j]);
      at(i, j) = ok;
    }

  auto forth = [&](std::size_t i, std::size_t j) {
    for (const auto& [a, x2] : xs[i]->moves) {
      bool found = false;
      for (const auto& [b, y2] : ys[j]->moves)
        if (a == b && at(xi[x2], yi[y2])) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  auto back = [&](std::size_t i, std::size_t j) {
    for (const auto& [b, y2] : ys[j]->moves) {
      bool found = false;
      for (const auto& [a, x2] : xs[i]->moves)
        if (a == b && at(xi[x2], yi[y2])) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };

  std::deque<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < W; ++j)
      if (at(i, j)) work.emplace_back(i, j);
  while (!work.empty()) {
    auto [i, j] = work.front();
    work.pop_front();
    if (!at(i, j)) continue;
    bool ok = forth(i, j) && (base != PreorderKind::Base::BS || back(i, j));
    if (ok) continue;
    at(i, j) = 0;
    for (std::size_t pi : xpred[i])
      for (std::size_t pj : ypred[j])
        if (at(pi, pj)) work.emplace_back(pi, pj);
  }
  return at(xi[p], yi[q]);
}

struct PairHash {
  std::size_t operator()(const std::pair<Proc, Proc>& k) const {
    return std::hash<const void*>()(k.first) * 31 + std::hash<const void*>()(k.second);
  }
};

bool ts_rec(Proc p, Proc q, std::unordered_map<std::pair<Proc, Proc>, bool, PairHash>& memo) {
  auto key = std::make_pair(p, q);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool r = trace_equiv(p, q);
  if (r) {
    for (const auto& [a, p2] : p->moves) {
      bool found = false;
      for (const auto& [b, q2] : q->moves)
        if (a == b && ts_rec(p2, q2, memo)) {
          found = true;
          break;
        }
      if (!found) {
        r = false;
        break;
      }
    }
  }
  memo[key] = r;
  return r;
}

struct NsMemo {
  std::map<std::tuple<unsigned, Proc, Proc>, bool> m;
};

// p is n-nested simulated by q
bool ns_rec(unsigned n, Proc p, Proc q, NsMemo& memo) {
  if (n == 0) return true;
  auto key = std::make_tuple(n, p, q);
  auto it = memo.m.find(key);
  if (it != memo.m.end()) return it->second;
  bool r = true;
  for (const auto& [a, p2] : p->moves) {
    bool found = false;
    for (const auto& [b, q2] : q->moves)
      if (a == b && ns_rec(n, p2, q2, memo)) {
        found = true;
        break;
      }
    if (!found) {
      r = false;
      break;
    }
  }
  if (r && n > 1) r = ns_rec(n - 1, q, p, memo);
  memo.m[key] = r;
  return r;
}

}  // namespace

bool preorder(PreorderKind kind, Proc p, Proc q) {
  using B = PreorderKind::Base;
  switch (kind.base) {
    case B::S:
    case B::CS:
    case B::RS:
    case B::BS:
      return gfp_preorder(kind.base, p, q);
    case B::TS: {
      std::unordered_map<std::pair<Proc, Proc>, bool, PairHash> memo;
      return ts_rec(p, q, memo);
    }
    case B::NS: {
      // beyond this nesting level the relation no longer changes
      unsigned cap = p->depth + q->depth + 2;
      unsigned n = std::min(kind.n, cap);
      NsMemo memo;
      return ns_rec(n, p, q, memo);
    }
  }
  return false;
}

bool kernel_equiv(PreorderKind kind, Proc p, Proc q) { return preorder(kind, p, q) && preorder(kind, q, p); }

// ---------------------------------------------------------------- matrix

RelationMatrix::RelationMatrix(PreorderKind kind, const std::vector<Proc>& roots) {
  using B = PreorderKind::Base;
  states_ = reachable(roots);
  const std::size_t N = states_.size();
  for (std::size_t i = 0; i < N; ++i) index_[states_[i]] = i;
  const std::size_t words = (N * N + 63) / 64;

  std::vector<std::vector<std::pair<ActionId, std::size_t>>> succ(N);
  for (std::size_t i = 0; i < N; ++i)
    for (const auto& [a, q] : states_[i]->moves) succ[i].emplace_back(a, index_[q]);

  auto get = [&](const std::vector<std::uint64_t>& m, std::size_t i, std::size_t j) {
    std::size_t k = i * N + j;
    return (m[k >> 6] >> (k & 63)) & 1u;
  };
  auto set = [&](std::vector<std::uint64_t>& m, std::size_t i, std::size_t j) {
    std::size_t k = i * N + j;
    m[k >> 6] |= (std::uint64_t{1} << (k & 63));
  };
  // every move of i matched by j under m
  auto forth = [&](const std::vector<std::uint64_t>& m, std::size_t i, std::size_t j) {
    for (const auto& [a, i2] : succ[i]) {
      bool found = false;
      for (const auto& [b, j2] : succ[j])
        if (a == b && get(m, i2, j2)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };

  std::vector<std::size_t> side(N, 0);  // static side condition class
  if (kind.base == B::CS) {
    for (std::size_t i = 0; i < N; ++i) side[i] = succ[i].empty() ? 1 : 0;
  } else if (kind.base == B::RS) {
    std::map<std::vector<ActionId>, std::size_t> cls;
    for (std::size_t i = 0; i < N; ++i) side[i] = cls.emplace(initial_list(states_[i]), cls.size()).first->second;
  } else if (kind.base == B::TS) {
    std::map<TraceSet, std::size_t> cls;
    for (std::size_t i = 0; i < N; ++i) side[i] = cls.emplace(traces(states_[i]), cls.size()).first->second;
  }

  // states_ lists successors first, so row i only needs rows < i
  auto sweep = [&](const std::vector<std::uint64_t>* inverse) {
    std::vector<std::uint64_t> m(words, 0);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (side[i] != side[j]) continue;
        if (!forth(m, i, j)) continue;
        if (kind.base == B::BS && !forth(m, j, i)) continue;
        if (inverse && !get(*inverse, j, i)) continue;
        set(m, i, j);
      }
    return m;
  };
  // BS needs (j,i) of the same matrix: rows and columns both shrink in depth
  if (kind.base == B::BS) {
    // fill in order of max(i,j) so both (i2,j2) and (j2,i2) are ready
    std::vector<std::uint64_t> m(words, 0);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t t = 0; t <= k; ++t) {
        for (auto [i, j] : {std::pair{k, t}, std::pair{t, k}}) {
          if (forth(m, i, j) && forth(m, j, i)) set(m, i, j);
        }
      }
    bits_ = std::move(m);
    return;
  }
  if (kind.base == B::NS) {
    std::vector<std::uint64_t> level = sweep(nullptr);
    for (unsigned n = 2; n <= kind.n; ++n) {
      std::vector<std::uint64_t> next = sweep(&level);
      if (next == level) break;
      level = std::move(next);
    }
    bits_ = std::move(level);
    return;
  }
  bits_ = sweep(nullptr);
}

bool RelationMatrix::operator()(Proc p, Proc q) const {
  std::size_t i = index_.at(p), j = index_.at(q);
  std::size_t N = states_.size();
  std::size_t k = i * N + j;
  return (bits_[k >> 6] >> (k & 63)) & 1u;
}

}  // namespace hml
