#include "permlang/program.hpp"

#include <stdexcept>

namespace permlang {

LevelMultiset initial_permissions(const Program& p) {
  LevelMultiset stock;
  for (const std::string& name : p.permissions) {
    bool found = false;
    for (const LevelDecl& d : p.levels) {
      if (d.name == name) {
        stock.insert(d.level, 1);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("undeclared permission level '" + name + "'");
  }
  return stock;
}

Config initial_config(const Program& p) {
  Config c;
  c.threads.push_back(p.main);
  c.state.call_perms = initial_permissions(p);
  return c;
}

}  // namespace permlang
