// SPDX-License-Identifier: MIT

#include "common.hpp"
#include "doctest.h"
#include "hml/modelcheck.hpp"
#include "hml/oracle.hpp"
#include "hml/preorders.hpp"
#include "hml/satisfiability.hpp"

using namespace hml;
using namespace testing;

namespace {

const char* kPhiA = "<a>([a]ff & [b]ff) & [b]ff & [a][a]ff & [a][b]ff";

std::set<Proc> as_set(const std::vector<Proc>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("enumeration") {
  CHECK(as_set(enum_processes({a_only(), 1, 1})) == std::set<Proc>{nil(), P("a.0")});
  CHECK(as_set(enum_processes({ab(), 1, 2})) == std::set<Proc>{nil(), P("a.0"), P("b.0"), P("a.0 + b.0")});
  // 8 possible moves below depth 1, at most 2 of them: 1 + 8 + 28
  CHECK(enum_processes({ab(), 2, 2}).size() == 37);
  CHECK(enum_processes({ab(), 3, 2}).size() == 2776);
  CHECK_THROWS_AS(enum_processes({ab(), 4, 2}, 1000), BudgetExceeded);
}

TEST_CASE("enumeration yields one term per bisimulation class") {
  auto u = enum_processes({ab(), 2, 2});
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) CHECK_FALSE(kernel_equiv(PreorderKind::BS(), u[i], u[j]));
}

TEST_CASE("brute-force satisfiability") {
  CHECK_FALSE(brute_sat(F("<a>tt & [a]ff"), ab()));
  auto w = brute_sat_witness(F("<a>tt & <a>[a]ff & <a><a>tt"), ab());
  REQUIRE(w.model);
  CHECK(satisfies(*w.model, F("<a>tt & <a>[a]ff & <a><a>tt")));
  // needs three distinct b-successors
  Formula wide = F("<b>(<a>tt & [b]ff) & <b>(<b>tt & [a]ff) & <b>([a]ff & [b]ff)");
  w = brute_sat_witness(wide, ab());
  REQUIRE(w.model);
  CHECK(satisfies(*w.model, wide));
}

TEST_CASE("brute-force entailment") {
  auto u = enum_processes({ab(), 2, 2});
  CHECK(brute_entails(F("<a>0"), F("(<a>0 & [b]ff) | (<a>0 & <b>tt)"), u));
  CHECK_FALSE(brute_entails(F("<a>tt"), F("<a>0"), u));
  for (Formula f : random_instances(1, Fragment::RS, 10, 20, ab())) CHECK(brute_entails(f, f, u));
}

TEST_CASE("brute-force characteristic search") {
  auto p = brute_characteristic(PreorderKind::TS(), F(kPhiA), ab());
  REQUIRE(p);
  CHECK(*p == P("a.0"));
  p = brute_characteristic(PreorderKind::S(), F("<a>tt"), ab());
  REQUIRE(p);
  CHECK(*p == P("a.0"));
  CHECK_FALSE(brute_characteristic(PreorderKind::S(), F("<a>tt | <b>tt"), ab()));
  auto u = enum_processes({ab(), 3, 2});
  CHECK_FALSE(characteristic_counterexample(PreorderKind::S(), F("<a>tt"), P("a.0"), u));
  CHECK(characteristic_counterexample(PreorderKind::S(), F("<a>tt"), P("a.0 + b.0"), u));
}

TEST_CASE("CNF encodings") {
  CHECK(encode_cnf(EncodingTarget::RS, {{1}}, 1) == parse_formula("<a1>tt"));
  Formula contra = encode_cnf(EncodingTarget::RS, {{1}, {-1}}, 1);
  Alphabet a = encoding_alphabet(EncodingTarget::RS, 1);
  CHECK_FALSE(sat(Fragment::RS, contra, a));
  CHECK_FALSE(brute_sat(contra, a));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Cnf c = random_cnf(seed, 4, 12, 3);
    Formula f = encode_cnf(EncodingTarget::TS, c, 4);
    CHECK(fragment_of(f).has(Fragment::TS));
    CHECK(sat(Fragment::TS, f, encoding_alphabet(EncodingTarget::TS, 4)) == cnf_truth_table(c, 4));
  }
}

TEST_CASE("DNF tautology encoding") {
  auto [p, q] = encode_dnf_tautology({{1}, {-1}}, 1);
  CHECK(trace_equiv(p, q));
  auto [r, s] = encode_dnf_tautology({{1, 2}, {-1}}, 2);
  CHECK_FALSE(trace_equiv(r, s));
}

TEST_CASE("generators are deterministic") {
  CHECK(random_instances(9, Fragment::CS, 10, 30, ab()) == random_instances(9, Fragment::CS, 10, 30, ab()));
  CHECK(random_process(4, {ab(), 3, 2}) == random_process(4, {ab(), 3, 2}));
  CHECK(random_cnf(2, 5, 9, 3) == random_cnf(2, 5, 9, 3));
  for (Formula f : random_instances(9, Fragment::RS, 10, 30, ab())) {
    CHECK(fragment_of(f, ab()).has(Fragment::RS));
    CHECK(formula_size(fold_zero(f, ab())) <= 10);
  }
}
