#pragma once

#include <string>
#include <vector>

#include "permlang/program.hpp"

namespace permlang {

// Prints back to surface syntax. Parsing the output yields an equal AST.
// Throws std::runtime_error on literals with no surface form (locations,
// prophecy ids, closures, structured values) and on burn levels that match
// no declared name.
std::string print_program(const Program& p);
std::string print_expr(const ExprPtr& e, const std::vector<LevelDecl>& levels);

// Renders any runtime value for diagnostics and reports. Not surface
// syntax; never throws.
std::string show_val(const ValPtr& v);

// Stuck position rendering for traces: the head redex kind plus a short
// operand sketch.
std::string show_expr_head(const ExprPtr& e);

}  // namespace permlang
