// SPDX-License-Identifier: MIT
//
// Primality: sequent graphs solved as alternating reachability, the
// preprocessing pipelines for complete and ready simulation, and the
// extraction of a process a prime formula characterizes.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hml/altgraph.hpp"
#include "hml/formula.hpp"
#include "hml/lts.hpp"

namespace hml {

// Which axiom closes a sequent. SIM: right is tt. CSIM: 0,0 => 0.
// RSIM: [a]ff,[a]ff => [a]ff, and the conjunction rules also fire
// against a right-hand [a]ff. `tt_axiom` adds the tt axiom to the
// other two sets.
enum class RuleSet : std::uint8_t { SIM, CSIM, RSIM };

struct Sequent {
  Formula left1;
  Formula left2;
  Formula right;
};

enum class RuleKind : std::uint8_t { None, Axiom, RAnd, ROr, LOr, LAnd, Diamond };

struct SequentGraph {
  AltGraph graph;
  std::vector<Sequent> vertices;  // index = vertex id; the target has a dummy entry
  std::vector<RuleKind> rule;     // rule applied at each vertex
};

SequentGraph build_sequent_graph(Formula f, RuleSet rules, bool tt_axiom = false);
SequentGraph build_sequent_graph(Formula l1, Formula l2, Formula r, RuleSet rules, bool tt_axiom = false);
std::string to_dot(const SequentGraph& g);

// Process read off a winning strategy, following the right-hand sides.
Proc witness(const SequentGraph& g);

enum class Confidence : std::uint8_t { Exact, BoundedEvidence };

struct PrimeResult {
  bool prime = false;
  Confidence confidence = Confidence::Exact;
  std::optional<Proc> witness;  // set when prime and satisfiable
  std::string note;
};

// Over alphabet a merged with the actions of f. Throws FragmentError when
// f is not in the fragment, BudgetExceeded when a bounded search runs out.
PrimeResult prime_check(Fragment x, Formula f, const Alphabet& a);
bool prime(Fragment x, Formula f, const Alphabet& a);

// The graph the S, CS and bounded RS procedures solve. Empty when the
// preprocessing already rejects; `note` then says why. Expects a
// satisfiable formula of the fragment.
struct PrimalityGraph {
  std::optional<SequentGraph> graph;
  std::string note;
};
PrimalityGraph primality_graph(Fragment x, Formula f, const Alphabet& a);

// RS primality through the disjunctive normal form: no bound on the
// alphabet, exponential in the number of disjunctions.
PrimeResult prime_rs_dnf(Formula f, const Alphabet& a);

// ------------------------------------------------------------ rewriting

// tt∨ψ -> tt and tt∧ψ -> ψ everywhere, modulo commutativity.
Formula rewrite_tt(Formula f);
// <a>tt -> tt together with the tt rules.
Formula rewrite_diamond(Formula f);
// Innermost zero normal form of a CS formula carrying the Zero atom.
Formula zero_normal_form(Formula f);

// Saturation for ready simulation. `is_tt` mirrors formula == tt.
struct SaturationResult {
  Formula formula;
  bool is_tt;
};
SaturationResult satur(Formula f, const Alphabet& a);
// Requires I(f) = {S}; returns nullopt when nothing but FALSE is left.
std::optional<Formula> simpl(Formula f, const Alphabet& a);
bool is_saturated(Formula f, const Alphabet& a);

// tt, [a]ff and 0 give 0; <a>φ gives a.p; conjunctions give sums.
Proc associated_process(Formula f);

// Length of the shortest trace every model must have.
unsigned trace_depth(Formula f);

// Exact for formulae whose trace-set candidates fit the budget.
bool prime_ts_bounded(Formula f, const Alphabet& a);

}  // namespace hml
