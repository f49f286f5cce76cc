#pragma once

#include <cstdint>
#include <stdexcept>

#include "permlang/program.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

struct EraseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strips the instrumentation: burns reduce to their body and atomic blocks
// whose erased body is a single primitive heap instruction over value or
// variable operands (or a bare value) are unwrapped. Blocks that still
// group several instructions are kept, since removing them would change
// the interleaving semantics. Throws EraseError when a burn count contains
// an effect, because dropping the count would drop the effect.
ExprPtr erase_expr(const ExprPtr& e);

// Erases every thread and heap cell and empties the permission stock.
Config erase_config(const Config& c);

// Erases the main expression and clears the permissions clause. Level
// declarations stay, so the file remains self-describing.
Program erase_program(const Program& p);

// Atomic blocks remaining in an already-erased expression.
std::uint64_t count_atomic_blocks(const ExprPtr& e);

}  // namespace permlang
