#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "permlang/multiset.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

// Shared machine state: a heap of single cells, the allocation high-water
// mark, the set of live prophecy ids and the stock of call permissions.
// Freeing a cell removes it from the heap but never lowers next_loc, so
// locations are not reused.
struct State {
  std::map<std::uint64_t, ValPtr> heap;
  std::uint64_t next_loc = 1;
  std::set<std::uint64_t> prophs;
  LevelMultiset call_perms;
};

// A prophecy resolution: the id, the value the resolved expression produced
// and the payload it was resolved with.
struct Observation {
  ProphId id;
  ValPtr result;
  ValPtr payload;
};

struct Config {
  std::vector<ExprPtr> threads;
  State state;
};

bool state_equal(const State& a, const State& b);
bool config_equal(const Config& a, const Config& b);

}  // namespace permlang
