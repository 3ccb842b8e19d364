// SPDX-License-Identifier: MIT
//
// Alternating graphs: every vertex is existential or universal, and
// reachability is the least relation closed under the usual clauses.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hml {

enum class Quant : std::uint8_t { Exists, Forall };

using VertexId = std::uint32_t;

class AltGraph {
public:
  VertexId add_vertex(Quant q);
  // Duplicate edges are ignored.
  void add_edge(VertexId from, VertexId to);
  void set_label(VertexId v, Quant q) { labels_.at(v) = q; }

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const;
  Quant label(VertexId v) const { return labels_.at(v); }
  const std::vector<VertexId>& successors(VertexId v) const { return succ_.at(v); }

  VertexId source = 0;
  VertexId target = 0;

  // DOT text; `name` supplies vertex captions.
  std::string to_dot(const std::function<std::string(VertexId)>& name = {}) const;

private:
  std::vector<Quant> labels_;
  std::vector<std::vector<VertexId>> succ_;
};

// win[v] is true iff there is an alternating path from v to the target.
std::vector<bool> winning_vertices(const AltGraph& g);
bool reach_a(const AltGraph& g);

// Naive forward least-fixpoint iteration; used to cross-check reach_a.
std::vector<bool> winning_vertices_naive(const AltGraph& g);

// Strategy restricted to vertices reachable from the source: one successor
// for each existential vertex, every successor for each universal one.
// The target has no entry. Throws std::logic_error when reach_a is false.
std::map<VertexId, std::vector<VertexId>> winning_subgraph(const AltGraph& g);

}  // namespace hml
