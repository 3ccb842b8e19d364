// SPDX-License-Identifier: MIT
#pragma once

#include "hml/formula.hpp"
#include "hml/lts.hpp"

namespace testing {

inline hml::Alphabet ab() { return hml::Alphabet::from_names({"a", "b"}); }
inline hml::Alphabet a_only() { return hml::Alphabet::from_names({"a"}); }

inline hml::Proc P(const char* s) { return hml::parse_process(s); }
inline hml::Formula F(const char* s, const hml::Alphabet& a = ab()) { return hml::parse_formula(s, a); }
inline hml::ActionId act(const char* s) { return hml::intern_action(s); }

// p2 of the running example: both branches offer a and b
inline const char* kP2 = "a.(a.0+b.0)+b.(a.0+b.0)";
inline const char* kPhi = "<a>(<a>tt & <b>tt) & <b>(<a>tt & <b>tt)";

}  // namespace testing
