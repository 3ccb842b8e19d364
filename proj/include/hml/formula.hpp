// SPDX-License-Identifier: MIT
//
// Hash-consed modal formulae, fragment classification, negation
// pushing, DNF, size metrics and equation systems.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hml/lts.hpp"

namespace hml {

struct FNode;
using Formula = const FNode*;

struct FNode {
  // Zero is "no outgoing transitions"; the parser never produces it (it
  // expands 0 over the alphabet), but the complete-simulation pipeline
  // folds such conjunctions back into a single atom.
  enum class Kind : std::uint8_t { Tt, Ff, Zero, Dia, Box, And, Or, Neg, Var };
  Kind kind;
  ActionId act = 0;          // Dia / Box
  std::uint32_t var = 0;     // Var
  Formula left = nullptr;    // modal body, Neg operand, binary left
  Formula right = nullptr;   // binary right
  std::size_t id = 0;
  unsigned md = 0;           // modal depth
};

using K = FNode::Kind;

Formula tt();
Formula ff();
Formula zero();
Formula dia(ActionId a, Formula f);
Formula box(ActionId a, Formula f);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula neg(Formula f);
Formula var(std::uint32_t i);
// Left-nested; empty conjunction is tt, empty disjunction is ff.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

inline bool is(Formula f, K k) { return f->kind == k; }
inline bool is_binary(Formula f) { return f->kind == K::And || f->kind == K::Or; }

// Formula text. `0` needs an alphabet. Bare identifiers are variables
// and only accepted inside equation files.
Formula parse_formula(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);

std::string to_string(Formula f);
// Same, but conjunctions equivalent to 0 over `a` are printed as `0`.
std::string to_string(Formula f, const Alphabet& a);

Alphabet actions_in(Formula f);
// Distinct subformulae (DAG nodes), children before parents.
std::vector<Formula> subformulas(Formula f);

// ------------------------------------------------------------ fragments

enum class Fragment : std::uint8_t { S, CS, RS, TS, S2, S3, BS };
inline constexpr Fragment kAllFragments[] = {Fragment::S,  Fragment::CS, Fragment::RS, Fragment::TS,
                                             Fragment::S2, Fragment::S3, Fragment::BS};

std::string fragment_name(Fragment x);
std::optional<Fragment> parse_fragment(std::string_view s);

class FragmentSet {
public:
  FragmentSet() = default;
  explicit FragmentSet(std::uint8_t bits) : bits_(bits) {}
  bool has(Fragment x) const { return bits_ & (1u << static_cast<unsigned>(x)); }
  void add(Fragment x) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(x)); }
  std::uint8_t bits() const { return bits_; }
  std::string to_string() const;
  bool operator==(const FragmentSet& o) const { return bits_ == o.bits_; }

private:
  std::uint8_t bits_ = 0;
};

// Syntactic membership. Without an alphabet a conjunction of [a]ff is
// never read as 0, so CS membership then needs the Zero atom.
FragmentSet fragment_of(Formula f, const std::optional<Alphabet>& a = std::nullopt);

// True when f is a conjunction tree whose leaves are [x]ff for exactly
// the actions x of `a` (or is the Zero atom).
bool is_zero(Formula f, const Alphabet& a);
Formula fold_zero(Formula f, const Alphabet& a);
Formula expand_zero(Formula f, const Alphabet& a);
Formula zero_formula(const Alphabet& a);  // left-nested conjunction of [a]ff

// ------------------------------------------------------------ negation

// Pushes one negation through f. Zero needs an alphabet.
Formula dual(Formula f, const std::optional<Alphabet>& a = std::nullopt);
// Negation normal form (no Neg nodes).
Formula nnf(Formula f, const std::optional<Alphabet>& a = std::nullopt);

// ------------------------------------------------------------ DNF

std::vector<Formula> dnf_list(Formula f);
Formula to_dnf(Formula f);

// Enumerates the disjuncts of to_dnf(f) one at a time.
class DisjunctStream {
public:
  explicit DisjunctStream(Formula f);
  ~DisjunctStream();
  DisjunctStream(const DisjunctStream&) = delete;
  DisjunctStream& operator=(const DisjunctStream&) = delete;
  std::optional<Formula> next();

  struct Cursor;

private:
  std::unique_ptr<Cursor> root_;
  bool started_ = false;
  bool done_ = false;
};

// ------------------------------------------------------------ equations

struct EquationSystem {
  std::vector<std::string> names;   // names[i] is variable i
  std::vector<Formula> rhs;         // rhs[i] may reference var(j)
  std::uint32_t root = 0;
  std::optional<Alphabet> alphabet;

  std::size_t size() const { return rhs.size(); }
};

EquationSystem es_build(Formula f);
Formula es_expand(const EquationSystem& es);
void es_check(const EquationSystem& es);  // throws CycleError / runtime_error
EquationSystem parse_equations(std::string_view text);
std::string to_string(const EquationSystem& es);

// ------------------------------------------------------------ metrics

struct Metrics {
  std::uint64_t explicit_size = 0;   // saturates at UINT64_MAX
  std::size_t decl_size = 0;
  std::size_t eq_length = 0;
  unsigned modal_depth = 0;
};

std::uint64_t formula_size(Formula f);  // |f| counted on the syntax tree
std::size_t symbol_count(Formula rhs);  // equation right-hand side, vars count 1
Metrics metrics(Formula f);
Metrics metrics(const EquationSystem& es);
std::size_t count_diamonds(Formula f);  // diamond occurrences in the syntax tree

}  // namespace hml
