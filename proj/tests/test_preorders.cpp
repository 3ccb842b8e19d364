// SPDX-License-Identifier: MIT

#include "common.hpp"
#include "doctest.h"
#include "hml/oracle.hpp"
#include "hml/preorders.hpp"

using namespace hml;
using namespace testing;

TEST_CASE("simulation basics") {
  CHECK(preorder(PreorderKind::S(), nil(), P(kP2)));
  CHECK(preorder(PreorderKind::S(), P("a.0"), P("a.0 + b.0")));
  CHECK_FALSE(preorder(PreorderKind::RS(), P("a.0"), P("a.0 + b.0")));
  CHECK_FALSE(preorder(PreorderKind::CS(), nil(), P("a.0")));
  CHECK(preorder(PreorderKind::S(), P("a.0 + a.a.0"), P("a.a.0")));
  CHECK_FALSE(preorder(PreorderKind::BS(), P("a.0 + a.a.0"), P("a.a.0")));
}

TEST_CASE("a.0 lies below every model of <a>tt") {
  for (Proc p : enum_processes({ab(), 2, 2}))
    if (!traces(p).count({act("a")})) continue;
    else CHECK(preorder(PreorderKind::S(), P("a.0"), p));
}

TEST_CASE("trace equivalence") {
  CHECK(trace_equiv(P(kP2), P(kP2)));
  CHECK(trace_equiv(P("a.b.0 + a.c.0"), P("a.(b.0 + c.0)")));
  CHECK_FALSE(trace_equiv(P("a.0"), P("b.0")));
}

TEST_CASE("trace simulation compares traces at every matched pair") {
  // equal traces at the root, but b.0 and b.0+c.0 differ
  CHECK_FALSE(preorder(PreorderKind::TS(), P("a.b.0 + a.c.0"), P("a.(b.0 + c.0)")));
  CHECK(preorder(PreorderKind::S(), P("a.b.0 + a.c.0"), P("a.(b.0 + c.0)")));
  // a.a.0 lies strictly below a.0 + a.a.0, which makes this pair equivalent
  Proc p = P("a.a.a.0 + a.(a.0 + a.a.0)"), q = P("a.(a.0 + a.a.0)");
  CHECK(trace_equiv(p, q));
  CHECK(preorder(PreorderKind::TS(), p, q));
  CHECK(preorder(PreorderKind::TS(), q, p));
  CHECK_FALSE(kernel_equiv(PreorderKind::BS(), p, q));
}

TEST_CASE("nested simulations") {
  CHECK(PreorderKind::NS(1).base == PreorderKind::Base::S);
  CHECK(PreorderKind::parse("2S").n == 2);
  CHECK(PreorderKind::parse("NS4").n == 4);
  CHECK(PreorderKind::parse("3S").name() == "3S");
  CHECK_THROWS(PreorderKind::parse("XS"));
  // simulation equivalent but not 2-nested
  Proc p = P("a.0 + a.b.0"), q = P("a.b.0");
  CHECK(kernel_equiv(PreorderKind::S(), p, q));
  CHECK_FALSE(preorder(PreorderKind::NS(2), p, q));
  CHECK(preorder(PreorderKind::NS(2), q, q));
  CHECK(preorder(PreorderKind::NS(40), P(kP2), P(kP2)));
}

TEST_CASE("relation matrix agrees with the pairwise deciders") {
  auto u = enum_processes({ab(), 2, 2});
  for (auto k : {PreorderKind::S(), PreorderKind::CS(), PreorderKind::RS(), PreorderKind::TS(), PreorderKind::NS(2),
                 PreorderKind::NS(3), PreorderKind::BS()}) {
    RelationMatrix m(k, u);
    std::size_t bad = 0;
    for (Proc p : u)
      for (Proc q : u) bad += m(p, q) != preorder(k, p, q);
    INFO(k.name());
    CHECK(bad == 0);
  }
}

TEST_CASE("bisimilarity is the kernel of itself") {
  auto u = enum_processes({ab(), 2, 2});
  RelationMatrix m(PreorderKind::BS(), u);
  // one term per bisimulation class
  for (Proc p : u)
    for (Proc q : u) CHECK(m(p, q) == (p == q));
}
