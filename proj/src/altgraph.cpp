// SPDX-License-Identifier: MIT

#include "hml/altgraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hml {

VertexId AltGraph::add_vertex(Quant q) {
  labels_.push_back(q);
  succ_.emplace_back();
  return static_cast<VertexId>(labels_.size() - 1);
}

void AltGraph::add_edge(VertexId from, VertexId to) {
  if (from >= size() || to >= size()) throw std::out_of_range("edge references a missing vertex");
  auto& s = succ_[from];
  if (std::find(s.begin(), s.end(), to) == s.end()) s.push_back(to);
}

std::size_t AltGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

std::string AltGraph::to_dot(const std::function<std::string(VertexId)>& name) const {
  auto escape = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  std::ostringstream out;
  out << "digraph G {\n";
  for (VertexId v = 0; v < size(); ++v) {
    std::string caption = name ? name(v) : std::to_string(v);
    out << "  v" << v << " [label=\"" << escape(caption) << "\", shape="
        << (labels_[v] == Quant::Exists ? "ellipse" : "box");
    if (v == source) out << ", style=bold";
    if (v == target) out << ", peripheries=2";
    out << "];\n";
  }
  for (VertexId v = 0; v < size(); ++v)
    for (VertexId w : succ_[v]) out << "  v" << v << " -> v" << w << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

// Backward propagation; rank[v] is the round in which v was won.
std::vector<std::size_t> solve(const AltGraph& g) {
  constexpr auto lost = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> rank(n, lost);
  if (n == 0) return rank;
  std::vector<std::vector<VertexId>> pred(n);
  std::vector<std::size_t> pending(n);
  for (VertexId v = 0; v < n; ++v) {
    pending[v] = g.successors(v).size();
    for (VertexId w : g.successors(v)) pred[w].push_back(v);
  }
  std::deque<VertexId> queue{g.target};
  rank[g.target] = 0;
  std::size_t clock = 0;
  while (!queue.empty()) {
    VertexId w = queue.front();
    queue.pop_front();
    for (VertexId v : pred[w]) {
      if (rank[v] != lost) continue;
      if (g.label(v) == Quant::Exists || --pending[v] == 0) {
        rank[v] = ++clock;
        queue.push_back(v);
      }
    }
  }
  return rank;
}

}  // namespace

std::vector<bool> winning_vertices(const AltGraph& g) {
  auto rank = solve(g);
  std::vector<bool> win(rank.size());
  for (std::size_t i = 0; i < rank.size(); ++i) win[i] = rank[i] != std::numeric_limits<std::size_t>::max();
  return win;
}

bool reach_a(const AltGraph& g) {
  if (g.size() == 0) return false;
  return winning_vertices(g)[g.source];
}

std::vector<bool> winning_vertices_naive(const AltGraph& g) {
  std::vector<bool> win(g.size(), false);
  if (g.size() == 0) return win;
  win[g.target] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (win[v]) continue;
      const auto& s = g.successors(v);
      bool ok = g.label(v) == Quant::Exists
                    ? std::any_of(s.begin(), s.end(), [&](VertexId w) { return win[w]; })
                    : !s.empty() && std::all_of(s.begin(), s.end(), [&](VertexId w) { return win[w]; });
      if (ok) win[v] = changed = true;
    }
  }
  return win;
}

std::map<VertexId, std::vector<VertexId>> winning_subgraph(const AltGraph& g) {
  auto rank = solve(g);
  constexpr auto lost = std::numeric_limits<std::size_t>::max();
  if (g.size() == 0 || rank[g.source] == lost) throw std::logic_error("no alternating path from the source");
  std::map<VertexId, std::vector<VertexId>> out;
  std::vector<VertexId> stack{g.source};
  std::vector<bool> seen(g.size(), false);
  seen[g.source] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (v == g.target) continue;
    std::vector<VertexId> chosen;
    if (g.label(v) == Quant::Exists) {
      // an earlier-won successor keeps the strategy well founded
      VertexId best = 0;
      std::size_t best_rank = lost;
      for (VertexId w : g.successors(v))
        if (rank[w] < best_rank) best_rank = rank[w], best = w;
      chosen.push_back(best);
    } else {
      chosen = g.successors(v);
    }
    for (VertexId w : chosen)
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    out.emplace(v, std::move(chosen));
  }
  return out;
}

}  // namespace hml
