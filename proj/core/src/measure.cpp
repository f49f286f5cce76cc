#include "permlang/measure.hpp"

#include "permlang/burn_check.hpp"

namespace permlang {

std::uint64_t pseudo_size(const ExprPtr& e) {
  if (!e) return 0;
  switch (e->kind) {
    case ExprKind::Lit:
      return 0;
    case ExprKind::Atomic:
      return 1;
    case ExprKind::Match: {
      std::uint64_t n = 2;
      for (const ExprPtr& k : e->kids) n += pseudo_size(k);
      return n;
    }
    default: {
      std::uint64_t n = 1;
      for (const ExprPtr& k : e->kids) n += pseudo_size(k);
      return n;
    }
  }
}

MeasureTriple config_measure(const Config& c) {
  MeasureTriple m;
  m.perms = c.state.call_perms;
  for (const ExprPtr& t : c.threads) {
    m.unprotected += nb_unprotected_apps(t);
    m.pseudo += pseudo_size(t);
  }
  return m;
}

}  // namespace permlang
