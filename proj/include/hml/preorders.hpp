// SPDX-License-Identifier: MIT
//
// Simulation-based preorders on loop-free processes.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hml/formula.hpp"
#include "hml/lts.hpp"

namespace hml {

struct PreorderKind {
  enum class Base : std::uint8_t { S, CS, RS, TS, NS, BS };
  Base base = Base::S;
  unsigned n = 1;  // NS only

  static PreorderKind S() { return {Base::S, 1}; }
  static PreorderKind CS() { return {Base::CS, 1}; }
  static PreorderKind RS() { return {Base::RS, 1}; }
  static PreorderKind TS() { return {Base::TS, 1}; }
  static PreorderKind BS() { return {Base::BS, 1}; }
  static PreorderKind NS(unsigned n);
  static PreorderKind of(Fragment x);
  // "S", "CS", "RS", "TS", "BS", "2S", "3S", "NS4", "4S", ...
  static PreorderKind parse(const std::string& s);
  std::string name() const;
};

bool preorder(PreorderKind kind, Proc p, Proc q);
bool kernel_equiv(PreorderKind kind, Proc p, Proc q);
bool trace_equiv(Proc p, Proc q);

// The preorder on every pair of states reachable from the given roots,
// computed bottom-up in one sweep.
class RelationMatrix {
public:
  RelationMatrix(PreorderKind kind, const std::vector<Proc>& roots);
  bool operator()(Proc p, Proc q) const;
  const std::vector<Proc>& states() const { return states_; }
  std::size_t index(Proc p) const { return index_.at(p); }

private:
  std::vector<Proc> states_;
  std::unordered_map<Proc, std::size_t> index_;
  std::vector<std::uint64_t> bits_;  // the relation at the requested level
};

}  // namespace hml
