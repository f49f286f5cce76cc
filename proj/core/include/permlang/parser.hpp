#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "permlang/program.hpp"

namespace permlang {

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(int line_, int col_, const std::string& message);
};

// Parses a source file: level declarations, an optional permissions clause
// and the main expression. Checks beyond the grammar: level names are
// declared once, burn and permission names refer to declared levels and the
// main expression is closed.
Program parse_program(const std::string& source);

// Parses a bare expression against a given level environment.
ExprPtr parse_expr(const std::string& source,
                   const std::vector<LevelDecl>& levels);

}  // namespace permlang
