// SPDX-License-Identifier: MIT
//
// Characteristic formulae: deciding whether a formula is characteristic,
// synthesizing chi_X(p) as an equation system, and bounded checks of
// characteristic formulae modulo the kernel of a preorder.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hml/formula.hpp"
#include "hml/lts.hpp"
#include "hml/preorders.hpp"
#include "hml/primality.hpp"

namespace hml {

struct CharVerdict {
  bool is_characteristic = false;
  std::optional<Proc> witness;
  Confidence confidence = Confidence::Exact;
  std::string note;
};

// Characteristic within L_X iff satisfiable and prime.
CharVerdict decide_characteristic(Fragment x, Formula f, const Alphabet& a);

// One equation per reachable subprocess and family. The root variable is
// X_0 (the process itself); helper families are S_ (chi_S), C<k>_
// (chi_kS), B_ (the box form used by 2S) and D<m>_ (the negated form of
// the inverse part used from 3S on). Conjuncts follow the action order,
// then the subprocess id.
EquationSystem chi(PreorderKind x, Proc p, const Alphabet& a);
EquationSystem chi_ts(Proc p, const Alphabet& a);
// Box chains over the minimal non-traces t·a of p.
Formula exc_traces(Proc p, const Alphabet& a);
// es_expand(chi(x, p, a)).
Formula chi_formula(PreorderKind x, Proc p, const Alphabet& a);

// Looks for p with q |= f <=> p ≡_X q over every q of the universe.
CharVerdict char_mod_kernel_search(PreorderKind x, Formula f, const std::vector<Proc>& universe);

// S: never. CS and RS: exactly the formulae equivalent to the conjunction
// of [a]ff on the universe (witness 0). Other fragments fall back to the
// universe search and are bounded evidence.
CharVerdict char_mod_kernel_bounded(Fragment x, Formula f, const Alphabet& a, unsigned depth_budget = 3,
                                    unsigned width_budget = 2);

}  // namespace hml
