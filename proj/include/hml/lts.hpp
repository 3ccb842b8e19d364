// SPDX-License-Identifier: MIT
//
// Finite loop-free processes: interned actions, hash-consed CCS terms
// (0, a.p, p+p) and an explicit transition-system view.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hml {

using ActionId = std::uint32_t;

ActionId intern_action(std::string_view name);
const std::string& action_name(ActionId a);
// Lexicographic order on action names.
bool action_less(ActionId a, ActionId b);
bool is_identifier(std::string_view s);

class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<ActionId> acts);
  static Alphabet from_names(const std::vector<std::string>& names);
  // "a,b,c" or "a b c"
  static Alphabet parse(std::string_view list);

  bool contains(ActionId a) const;
  std::size_t size() const { return acts_.size(); }
  bool empty() const { return acts_.empty(); }
  const std::vector<ActionId>& actions() const { return acts_; }
  ActionId operator[](std::size_t i) const { return acts_[i]; }
  // position of a in the ordered alphabet, or npos
  std::size_t index_of(ActionId a) const;
  Alphabet merged(const Alphabet& other) const;
  std::string to_string() const;

  bool operator==(const Alphabet& o) const { return acts_ == o.acts_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::vector<ActionId> acts_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

class CycleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PNode;
using Proc = const PNode*;
using Move = std::pair<ActionId, Proc>;

struct PNode {
  enum class Kind : std::uint8_t { Nil, Prefix, Sum };
  Kind kind;
  ActionId act = 0;      // Prefix only
  Proc left = nullptr;   // Prefix body, or Sum left operand
  Proc right = nullptr;  // Sum right operand
  std::size_t id = 0;    // dense, creation order
  unsigned depth = 0;
  // Outgoing transitions, deduplicated, sorted by (action name, target id).
  std::vector<Move> moves;
};

Proc nil();
Proc prefix(ActionId a, Proc body);
Proc sum(Proc l, Proc r);
// Left-nested sum of the given terms; nil() for an empty list.
Proc sum_of(const std::vector<Proc>& ps);

Proc parse_process(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);
std::string to_string(Proc p);

// All distinct derivative terms reachable from p (p included), in
// reverse topological order: every target precedes its sources.
std::vector<Proc> reachable(Proc p);
std::vector<Proc> reachable(const std::vector<Proc>& roots);

using Trace = std::vector<ActionId>;
using TraceSet = std::set<Trace>;

std::set<ActionId> initials(Proc p);
const TraceSet& traces(Proc p);  // memoized per node
Alphabet actions_of(Proc p);

struct Observables {
  std::set<ActionId> initials;
  TraceSet traces;
  unsigned depth = 0;
  std::size_t size = 0;
};
Observables observables(Proc p);

// Explicit transition system; state ids are 0..states-1.
struct Lts {
  std::size_t states = 0;
  std::size_t root = 0;
  struct Edge {
    std::size_t src;
    ActionId act;
    std::size_t dst;
  };
  std::vector<Edge> edges;

  void check() const;          // references in range
  bool acyclic() const;
};

// One state per prefix occurrence: the term's syntax tree.
Lts term_to_lts(Proc p);
// Unfolds sharing; throws CycleError when the system has a cycle.
Proc lts_to_term(const Lts& l);

Lts parse_lts(std::string_view text);
std::string to_string(const Lts& l);

// Number of states plus transitions of the tree Lts.
std::size_t process_size(Proc p);

}  // namespace hml
