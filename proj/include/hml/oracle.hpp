// SPDX-License-Identifier: MIT
//
// Brute-force reference procedures: process enumeration, small-model
// satisfiability, bounded entailment and definition-level characteristic
// checks, plus generators for random and reduction-derived instances.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hml/formula.hpp"
#include "hml/lts.hpp"
#include "hml/preorders.hpp"

namespace hml {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Universe {
  Alphabet alphabet;
  unsigned max_depth = 2;
  unsigned max_width = 2;
};

// Every process of depth <= max_depth whose states have at most max_width
// distinct outgoing transitions, one term per bisimulation class, listed
// by depth and then by a fixed canonical order.
std::vector<Proc> enum_processes(const Universe& u, std::size_t cap = 2'000'000);

// Exact over all branching widths: the search runs on the finite set of
// process types induced by the subformulae of f, at depth md(f).
struct SatWitness {
  bool satisfiable = false;
  std::optional<Proc> model;
};
SatWitness brute_sat_witness(Formula f, const Alphabet& a = {}, std::size_t cap = 1'000'000);
bool brute_sat(Formula f, const Alphabet& a = {}, std::size_t cap = 1'000'000);

bool brute_entails(Formula f, Formula g, const std::vector<Proc>& universe);

// Searches a p of depth <= md(f) with p |= f and q |= f => p <=_X q for every
// q of depth <= md(f)+1 (any width). TS candidates range over every process
// with the one trace set all models share; other fragments use trees with
// at most #diamonds(f) transitions.
std::optional<Proc> brute_characteristic(PreorderKind x, Formula f, const Alphabet& a = {},
                                         std::size_t cap = 1'000'000);

// Checks q |= f  <=>  p <=_X q for every q in the universe; returns the first
// counterexample.
std::optional<Proc> characteristic_counterexample(PreorderKind x, Formula f, Proc p,
                                                  const std::vector<Proc>& universe);

// ------------------------------------------------------------ generators

// Propositional clauses in DIMACS style: literal +i is x_i, -i is ¬x_i.
using Cnf = std::vector<std::vector<int>>;

enum class EncodingTarget : std::uint8_t { RS, TS };
// RS: x_i -> <a_i>tt, ¬x_i -> [a_i]ff over actions a1..an.
// TS: x_i -> <b..><b..>tt and ¬x_i -> [b..][b..]ff along the binary
// index of i over actions b0, b1.
Formula encode_cnf(EncodingTarget target, const Cnf& cnf, std::size_t variables);
Alphabet encoding_alphabet(EncodingTarget target, std::size_t variables);
bool cnf_truth_table(const Cnf& cnf, std::size_t variables);

// Clause paths over b0/b1 and the full cube: trace equivalent iff the DNF
// is a tautology.
std::pair<Proc, Proc> encode_dnf_tautology(const Cnf& dnf, std::size_t variables);

Cnf random_cnf(std::uint64_t seed, std::size_t variables, std::size_t clauses, std::size_t width);

// Formulae of fragment x with formula_size (0 folded) at most `size`.
std::vector<Formula> random_instances(std::uint64_t seed, Fragment x, std::size_t size, std::size_t count,
                                      const Alphabet& a);
Proc random_process(std::uint64_t seed, const Universe& u);

// ------------------------------------------------------------ evaluation

// Bitset semantics of formulae over a fixed set of processes (closed
// under derivatives internally).
class UniverseEvaluator {
public:
  explicit UniverseEvaluator(const std::vector<Proc>& roots);
  const std::vector<std::uint64_t>& eval(Formula f);
  bool holds(Formula f, Proc p);
  std::size_t index(Proc p) const { return index_.at(p); }
  const std::vector<Proc>& states() const { return states_; }

private:
  std::vector<Proc> states_;
  std::unordered_map<Proc, std::size_t> index_;
  std::vector<std::vector<std::pair<ActionId, std::size_t>>> succ_;
  std::unordered_map<Formula, std::vector<std::uint64_t>> memo_;
};

}  // namespace hml
