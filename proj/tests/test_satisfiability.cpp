// SPDX-License-Identifier: MIT

#include "common.hpp"
#include "doctest.h"
#include "hml/modelcheck.hpp"
#include "hml/oracle.hpp"
#include "hml/satisfiability.hpp"

using namespace hml;
using namespace testing;

namespace {

std::uint32_t mask(std::initializer_list<const char*> names) {
  std::set<ActionId> s;
  for (const char* n : names) s.insert(act(n));
  return subset_mask(s, ab());
}

}  // namespace

TEST_CASE("initial sets") {
  InitialSets z = initial_sets(F("0"), ab());
  CHECK(z.singleton() == std::optional<std::uint32_t>{0});
  CHECK(initial_sets(tt(), ab()).count() == 4);
  InitialSets s = initial_sets(F("<a>0"), ab());
  CHECK(s.count() == 2);
  CHECK(s.contains(mask({"a"})));
  CHECK(s.contains(mask({"a", "b"})));
  CHECK(initial_sets(F("<a>tt & [a]ff"), ab()).empty());
}

TEST_CASE("every model's initials are among the initial sets") {
  auto u = enum_processes({ab(), 2, 2});
  for (Formula f : random_instances(5, Fragment::RS, 10, 80, ab())) {
    InitialSets is = initial_sets(f, ab());
    for (Proc p : u)
      if (satisfies(p, f)) {
        INFO(to_string(f), " ", to_string(p));
        CHECK(is.contains(subset_mask(initials(p), ab())));
      }
  }
}

TEST_CASE("J and K") {
  CHECK(class_J(zero()) == SatClassJ::Zero);
  CHECK(class_J(tt()) == SatClassJ::Both);
  CHECK(class_J(F("<a>tt")) == SatClassJ::Alpha);
  CHECK(class_J(disj(zero(), F("<a>tt"))) == SatClassJ::Both);
  CHECK(class_J(conj(zero(), F("<a>tt"))) == SatClassJ::Empty);
  CHECK_FALSE(class_K(F("<a>ff")));
  CHECK(class_K(F("<a>tt & <b><a>tt")));
}

TEST_CASE("satisfiability examples") {
  CHECK_FALSE(sat(Fragment::S, F("<a>ff & tt"), ab()));
  CHECK_FALSE(sat(Fragment::RS, F("<a>tt & [a]ff"), ab()));
  CHECK_FALSE(sat(Fragment::CS, F("0 & <a>tt"), ab()));
  CHECK(sat(Fragment::CS, F("0 | <a>tt"), ab()));
  CHECK(sat(Fragment::TS, F("<a><b>tt & [a][a]ff"), ab()));
  CHECK_FALSE(sat(Fragment::TS, F("<a><b>tt & [a][b]ff"), ab()));
  CHECK_THROWS_AS(sat(Fragment::S, F("[a]ff"), ab()), FragmentError);
}

TEST_CASE("ff rewriting") {
  CHECK(ff_rewrite(F("<a>ff | <b>tt")) == F("<b>tt"));
  CHECK(ff_rewrite(F("[a]ff")) == F("[a]ff"));
  CHECK(ff_rewrite(F("<b>(<a>ff & tt)")) == ff());
  auto u = enum_processes({ab(), 3, 2});
  UniverseEvaluator ev(u);
  Formula pruned = prune_unsat(Fragment::CS, F("tt & (<a>ff | 0)"), ab());
  CHECK(ev.eval(expand_zero(pruned, ab())) == ev.eval(F("0")));
}

TEST_CASE("required and forbidden traces") {
  TraceRequirements t = ts_required_forbidden(tt());
  CHECK(t.traces == TraceSet{{}});
  CHECK(t.forbidden.empty());
  t = ts_required_forbidden(F("[a]ff"));
  CHECK(t.traces == TraceSet{{}});
  CHECK(t.forbidden == TraceSet{{act("a")}});
  Formula clash = F("<a>[b]ff & [a]ff");
  CHECK_FALSE(sat_ts_disjunct(clash));
  CHECK_FALSE(brute_sat(clash, ab()));
}

TEST_CASE("tableau") {
  CHECK(sat_tableau(tt()));
  CHECK_FALSE(sat_tableau(F("<a>tt & [a]ff")));
  CHECK(sat_tableau(F("[a]<b>tt & <a>tt")));
  CHECK_FALSE(sat_tableau(F("[a]<b>tt & <a>[b]ff")));
}

TEST_CASE("validity") {
  CHECK(valid(Fragment::RS, tt(), ab()));
  CHECK(valid(Fragment::RS, F("<a>tt | [a]ff"), ab()));
  CHECK_FALSE(valid(Fragment::RS, F("<a>tt"), ab()));
  CHECK(valid(Fragment::S2, F("<a>tt | !<a>tt"), ab()));
}

TEST_CASE("deciders agree with the brute-force oracle") {
  for (auto names : std::vector<std::vector<std::string>>{{"a"}, {"a", "b"}}) {
    Alphabet a = Alphabet::from_names(names);
    for (Fragment x : {Fragment::S, Fragment::CS, Fragment::RS, Fragment::TS, Fragment::S2, Fragment::S3, Fragment::BS})
      for (Formula f : random_instances(21 + static_cast<int>(x), x, 12, 80, a)) {
        INFO(fragment_name(x), " ", to_string(f, a));
        bool want = brute_sat(f, a);
        CHECK(sat(x, f, a) == want);
        CHECK(sat_tableau(f, a) == want);
      }
  }
}

TEST_CASE("pruning preserves meaning") {
  auto u = enum_processes({ab(), 3, 2});
  UniverseEvaluator ev(u);
  for (Fragment x : {Fragment::S, Fragment::CS, Fragment::RS})
    for (Formula f : random_instances(31, x, 12, 60, ab())) {
      if (!sat(x, f, ab())) continue;
      INFO(to_string(f, ab()));
      CHECK(ev.eval(expand_zero(prune_unsat(x, f, ab()), ab())) == ev.eval(f));
    }
}
