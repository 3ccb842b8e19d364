// SPDX-License-Identifier: MIT
//
// The satisfaction relation between processes and formulae.

#pragma once

#include <cstdint>
#include <unordered_map>

#include "hml/formula.hpp"
#include "hml/lts.hpp"

namespace hml {

bool satisfies(Proc p, Formula f);
// Evaluates the system directly, one entry per (state, variable).
bool satisfies_decl(Proc p, const EquationSystem& es);

// Reusable memo for many queries against the same formulae.
class Checker {
public:
  Checker() = default;
  explicit Checker(const EquationSystem* es) : es_(es) {}
  bool operator()(Proc p, Formula f);

private:
  const EquationSystem* es_ = nullptr;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace hml
