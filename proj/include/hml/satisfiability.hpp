// SPDX-License-Identifier: MIT
//
// Satisfiability and validity for the modal fragments, plus the pruning
// of unsatisfiable subformulae.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hml/formula.hpp"
#include "hml/lts.hpp"

namespace hml {

class FragmentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A family of subsets of the alphabet. Subset X is encoded as a mask
// whose bit i is set when the i-th action of the alphabet is in X.
class InitialSets {
public:
  InitialSets() = default;
  explicit InitialSets(std::size_t alphabet_size);
  static InitialSets all(std::size_t alphabet_size);

  bool contains(std::uint32_t subset) const;
  void insert(std::uint32_t subset);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::optional<std::uint32_t> singleton() const;
  std::vector<std::uint32_t> members() const;
  std::size_t universe() const { return std::size_t{1} << n_; }
  std::size_t alphabet_size() const { return n_; }

  InitialSets operator|(const InitialSets& o) const;
  InitialSets operator&(const InitialSets& o) const;
  bool operator==(const InitialSets& o) const { return n_ == o.n_ && words_ == o.words_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// The largest alphabet initial_sets accepts.
inline constexpr std::size_t kMaxInitialSetAlphabet = 20;

InitialSets initial_sets(Formula f, const Alphabet& a);
std::uint32_t subset_mask(const std::set<ActionId>& s, const Alphabet& a);

enum class SatClassJ : std::uint8_t { Empty = 0, Zero = 1, Alpha = 2, Both = 3 };
SatClassJ class_J(Formula f);  // f in CS with 0 folded into the Zero atom
bool class_K(Formula f);       // f in S; true means {alpha}

bool sat(Fragment x, Formula f, const Alphabet& a);
// Dispatches on fragment_of(f) alone.
bool sat_any(Formula f, const Alphabet& a);
bool valid(Fragment x, Formula f, const Alphabet& a);
bool sat_tableau(Formula f, const std::optional<Alphabet>& a = std::nullopt);

struct TraceRequirements {
  TraceSet traces;
  TraceSet forbidden;
};
// f: disjunction-free TS formula after the ff rewrites.
TraceRequirements ts_required_forbidden(Formula f);
bool sat_ts_disjunct(Formula f);
bool sat_rs_disjunct(Formula f);

// Applies ff∧ψ→ff, ff∨ψ→ψ, <a>ff→ff to a fixpoint (modulo commutativity).
Formula ff_rewrite(Formula f);

// Equivalent formula whose unsatisfiable subformulae are gone, except ff
// directly under a box in RS. CS results carry the Zero atom.
Formula prune_unsat(Fragment x, Formula f, const Alphabet& a);

}  // namespace hml
