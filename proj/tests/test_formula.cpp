// SPDX-License-Identifier: MIT

#include "common.hpp"
#include "doctest.h"
#include "hml/formula.hpp"
#include "hml/oracle.hpp"

using namespace hml;
using namespace testing;

TEST_CASE("formula parsing") {
  CHECK(F("<a>tt") == dia(act("a"), tt()));
  CHECK(F("0") == conj(box(act("a"), ff()), box(act("b"), ff())));
  Formula phi = F(kPhi);
  Formula inner = conj(dia(act("a"), tt()), dia(act("b"), tt()));
  CHECK(phi == conj(dia(act("a"), inner), dia(act("b"), inner)));
  CHECK_THROWS_AS(parse_formula("0"), ParseError);
  CHECK_THROWS_AS(F("<a>tt &"), ParseError);
  CHECK_THROWS_AS(F("<a>"), ParseError);
}

TEST_CASE("formula printing round-trips") {
  for (const char* s : {"tt", "ff", "<a>tt | [b]ff", "!(<a>tt & <b><a>tt)", kPhi, "(<a>tt | <b>tt) & [a]([b]ff | <a>tt)"}) {
    Formula f = F(s);
    CHECK(F(to_string(f).c_str()) == f);
  }
  CHECK(to_string(F("0"), ab()) == "0");
  CHECK(to_string(F("<a>0"), ab()) == "<a>0");
}

TEST_CASE("fragment membership") {
  FragmentSet all = fragment_of(F("<a>tt"));
  for (Fragment x : {Fragment::S, Fragment::CS, Fragment::RS, Fragment::TS, Fragment::S2, Fragment::S3, Fragment::BS})
    CHECK(all.has(x));

  FragmentSet boxff = fragment_of(F("[a]ff"));
  CHECK_FALSE(boxff.has(Fragment::S));
  CHECK_FALSE(boxff.has(Fragment::CS));
  for (Fragment x : {Fragment::RS, Fragment::TS, Fragment::S2, Fragment::S3, Fragment::BS}) CHECK(boxff.has(x));

  FragmentSet bd = fragment_of(F("[a]<b>tt"));
  CHECK(bd.has(Fragment::BS));
  for (Fragment x : {Fragment::S, Fragment::CS, Fragment::RS, Fragment::TS, Fragment::S2, Fragment::S3})
    CHECK_FALSE(bd.has(x));

  // 0 counts as the CS atom once the alphabet is known
  CHECK(fragment_of(F("<a>0"), ab()).has(Fragment::CS));
  CHECK_FALSE(fragment_of(F("<a>0"), ab()).has(Fragment::S));
  CHECK(fragment_of(F("[a][b]ff")).has(Fragment::TS));
  CHECK_FALSE(fragment_of(F("[a][b]ff")).has(Fragment::RS));
  CHECK(fragment_of(F("!<a>tt")).has(Fragment::S2));
  CHECK_FALSE(fragment_of(F("!<a>tt")).has(Fragment::TS));
}

TEST_CASE("negation") {
  CHECK(dual(tt()) == ff());
  CHECK(dual(F("<a>tt")) == F("[a]ff"));
  CHECK(nnf(F("!(<a>tt & [b]ff)")) == F("[a]ff | <b>tt"));
  CHECK(nnf(neg(zero()), ab()) == F("<a>tt | <b>tt"));
}

TEST_CASE("metrics") {
  Formula phi = F(kPhi);
  Metrics m = metrics(phi);
  CHECK(m.explicit_size == 13);
  CHECK(m.decl_size == 2);
  CHECK(m.eq_length == 5);
  EquationSystem es = es_build(phi);
  CHECK(es.size() == 2);
  CHECK(metrics(es).eq_length == 5);
  CHECK(F("<a>[b]ff")->md == 2);
  CHECK(count_diamonds(phi) == 6);
}

TEST_CASE("equation systems") {
  EquationSystem t = es_build(tt());
  CHECK(t.size() == 1);
  CHECK(es_expand(t) == tt());

  EquationSystem es = parse_equations("root X\nX = <a>Y & <b>Y\nY = <a>tt & <b>tt\n");
  CHECK(es_expand(es) == F(kPhi));
  CHECK(es_expand(parse_equations(to_string(es))) == F(kPhi));
  CHECK_THROWS_AS(parse_equations("root X\nX = <a>Y\nY = <b>X\n"), CycleError);
  CHECK_THROWS(parse_equations("root X\nX = <a>Z\n"));
}

TEST_CASE("disjunctive normal form") {
  CHECK(dnf_list(F("<a>(<a>tt | <b>tt)")) ==
        std::vector<Formula>{F("<a><a>tt"), F("<a><b>tt")});
  CHECK(to_dnf(F(kPhi)) == F(kPhi));
  CHECK(dnf_list(F("<a>tt | <b>tt")).size() == 2);
  CHECK(dnf_list(F("(<a>tt | <b>tt) & (<a><a>tt | [b]ff)")).size() == 4);
  CHECK(to_dnf(F("<a>tt & (<b>tt | [a]ff)")) == F("(<a>tt & <b>tt) | (<a>tt & [a]ff)"));

  DisjunctStream s(F("(<a>tt | <b>tt) & (<a><a>tt | [b]ff)"));
  std::vector<Formula> streamed;
  while (auto d = s.next()) streamed.push_back(*d);
  CHECK(streamed == dnf_list(F("(<a>tt | <b>tt) & (<a><a>tt | [b]ff)")));
}

TEST_CASE("DNF is equivalent on the bounded universe") {
  auto u = enum_processes({ab(), 3, 2});
  UniverseEvaluator ev(u);
  for (Fragment x : {Fragment::S, Fragment::CS, Fragment::RS, Fragment::TS})
    for (Formula f : random_instances(11, x, 12, 60, ab())) {
      INFO(to_string(f));
      CHECK(ev.eval(f) == ev.eval(to_dnf(f)));
    }
}

TEST_CASE("disjunction and diamond laws") {
  auto u = enum_processes({ab(), 3, 2});
  UniverseEvaluator ev(u);
  Formula p = F("<a>tt & [b]ff"), q = F("<b><a>tt");
  CHECK(ev.eval(dia(act("a"), disj(p, q))) == ev.eval(disj(dia(act("a"), p), dia(act("a"), q))));
  CHECK(ev.eval(conj(p, disj(q, tt()))) == ev.eval(p));
  CHECK(ev.eval(conj(p, disj(q, F("<a>tt")))) == ev.eval(disj(conj(p, q), conj(p, F("<a>tt")))));
}

TEST_CASE("zero folding") {
  CHECK(is_zero(F("[b]ff & [a]ff"), ab()));
  CHECK_FALSE(is_zero(F("[a]ff"), ab()));
  CHECK(fold_zero(F("<a>0"), ab()) == dia(act("a"), zero()));
  CHECK(expand_zero(dia(act("a"), zero()), ab()) == F("<a>0"));
  CHECK(zero_formula(ab()) == F("0"));
}
