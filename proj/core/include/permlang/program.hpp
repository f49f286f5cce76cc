#pragma once

#include <string>
#include <vector>

#include "permlang/level.hpp"
#include "permlang/multiset.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

struct LevelDecl {
  std::string name;
  Level level;
};

// A parsed source file: named levels in declaration order, the initial
// permission stock by level name and the main expression.
struct Program {
  std::vector<LevelDecl> levels;
  std::vector<std::string> permissions;
  ExprPtr main;
};

LevelMultiset initial_permissions(const Program& p);

// The starting configuration: one thread running main over an empty heap
// with the declared permission stock.
Config initial_config(const Program& p);

}  // namespace permlang
