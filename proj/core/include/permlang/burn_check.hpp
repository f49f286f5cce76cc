#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

// Number of applications in e not protected by a burn. Burns hide their
// body; function bodies count as zero until applied; a match node costs one
// because reduction routes each branch through a fresh application.
std::uint64_t nb_unprotected_apps(const ExprPtr& e);

// The static discipline: every function body, in expressions and in values
// alike, must have no unprotected applications. Programs that satisfy it
// only re-enter function bodies through burns, which is what ties every
// call to a permission.
bool enough_burns(const ExprPtr& e);
bool enough_burns_val(const ValPtr& v);
bool enough_burns_heap(const State& s);

struct CheckViolation {
  std::string path;
  std::string kind;
  std::uint64_t count = 0;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckViolation> violations;
};

// Checks every thread and every heap cell, collecting one violation per
// offending function body with the path to it.
CheckReport enough_burns_cfg(const Config& c);

}  // namespace permlang
