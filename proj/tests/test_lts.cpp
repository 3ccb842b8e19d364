// SPDX-License-Identifier: MIT

#include "common.hpp"
#include "doctest.h"
#include "hml/lts.hpp"
#include "hml/preorders.hpp"

using namespace hml;
using namespace testing;

TEST_CASE("process parsing") {
  CHECK(P("0") == nil());
  Proc p = P("a.0 + b.0");
  REQUIRE(p->kind == PNode::Kind::Sum);
  CHECK(p->left == prefix(act("a"), nil()));
  CHECK(p->right == prefix(act("b"), nil()));
  CHECK(P("a.(a.0+b.0)+b.(a.0+b.0)") == P(" a . ( a.0 + b.0 ) + b.(a.0 + b.0)"));
  CHECK_THROWS_AS(P("a.+0"), ParseError);
  CHECK_THROWS_AS(P("a.0 +"), ParseError);
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"0", "a.0", "a.0 + b.0", kP2, "a.(b.0 + c.c.0) + a.0"}) {
    Proc p = P(s);
    CHECK(P(to_string(p).c_str()) == p);
  }
}

TEST_CASE("observables") {
  auto o = observables(nil());
  CHECK(o.initials.empty());
  CHECK(o.traces == TraceSet{{}});
  CHECK(o.depth == 0);

  o = observables(P("a.0"));
  CHECK(o.traces == TraceSet{{}, {act("a")}});
  CHECK(o.depth == 1);

  TraceSet want{{}, {act("a")}, {act("a"), act("b")}, {act("b")}};
  CHECK(traces(P("a.b.0 + b.0")) == want);
  CHECK(initials(P(kP2)) == std::set<ActionId>{act("a"), act("b")});
}

TEST_CASE("sums are sets of moves") {
  CHECK(P("a.0 + a.0")->moves.size() == 1);
  CHECK(P("a.0 + 0")->moves.size() == 1);
  CHECK(kernel_equiv(PreorderKind::BS(), P("a.0 + a.0"), P("a.0")));
}

TEST_CASE("term and transition system conversions") {
  Lts nil_lts = term_to_lts(nil());
  CHECK(nil_lts.states == 1);
  CHECK(nil_lts.edges.empty());

  Lts t = term_to_lts(P(kP2));
  CHECK(t.states == 7);
  CHECK(t.edges.size() == 6);
  CHECK(lts_to_term(t) == P(kP2));

  // two paths into one state
  Lts d;
  d.states = 4;
  d.root = 0;
  d.edges = {{0, act("a"), 1}, {0, act("b"), 2}, {1, act("c"), 3}, {2, act("c"), 3}};
  Proc p = lts_to_term(d);
  CHECK(kernel_equiv(PreorderKind::BS(), p, P("a.c.0 + b.c.0")));

  Lts cyc;
  cyc.states = 2;
  cyc.edges = {{0, act("a"), 1}, {1, act("a"), 0}};
  CHECK_THROWS_AS(lts_to_term(cyc), CycleError);
}

TEST_CASE("transition system text format") {
  Lts l = parse_lts("# comment\nstates 3\nroot 0\n0 a 1\n0 b 2\n");
  CHECK(lts_to_term(l) == P("a.0 + b.0"));
  CHECK(parse_lts(to_string(l)).edges.size() == 2);
  CHECK_THROWS_AS(parse_lts("0 a 1\n"), ParseError);
  CHECK_THROWS_AS(parse_lts("states 2\n0 a 5\n"), ParseError);
}

TEST_CASE("alphabet") {
  Alphabet a = Alphabet::parse("b, a c");
  CHECK(a.size() == 3);
  CHECK(a.to_string() == "a,b,c");
  CHECK(a.merged(Alphabet::parse("d")).size() == 4);
  CHECK(a.index_of(act("zz")) == Alphabet::npos);
}

TEST_CASE("sizes") {
  CHECK(process_size(nil()) == 1);
  CHECK(process_size(P("a.0 + b.0")) == 5);
  CHECK(reachable(P(kP2)).size() == 3);
}
