// SPDX-License-Identifier: MIT

#include "hml/modelcheck.hpp"

#include <stdexcept>

namespace hml {

bool Checker::operator()(Proc p, Formula f) {
  std::uint64_t key = (static_cast<std::uint64_t>(p->id) << 32) ^ static_cast<std::uint64_t>(f->id);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool r = false;
  switch (f->kind) {
    case K::Tt: r = true; break;
    case K::Ff: r = false; break;
    case K::Zero: r = p->moves.empty(); break;
    case K::Dia:
      for (const auto& [a, q] : p->moves)
        if (a == f->act && (*this)(q, f->left)) {
          r = true;
          break;
        }
      break;
    case K::Box:
      r = true;
      for (const auto& [a, q] : p->moves)
        if (a == f->act && !(*this)(q, f->left)) {
          r = false;
          break;
        }
      break;
    case K::And: r = (*this)(p, f->left) && (*this)(p, f->right); break;
    case K::Or: r = (*this)(p, f->left) || (*this)(p, f->right); break;
    case K::Neg: r = !(*this)(p, f->left); break;
    case K::Var:
      if (!es_ || f->var >= es_->rhs.size()) throw std::invalid_argument("free variable in formula");
      r = (*this)(p, es_->rhs[f->var]);
      break;
  }
  memo_[key] = r;
  return r;
}

bool satisfies(Proc p, Formula f) {
  Checker c;
  return c(p, f);
}

bool satisfies_decl(Proc p, const EquationSystem& es) {
  es_check(es);
  Checker c(&es);
  return c(p, var(es.root));
}

}  // namespace hml
