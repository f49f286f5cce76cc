#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permlang/multiset.hpp"
#include "permlang/semantics.hpp"
#include "permlang/state.hpp"

namespace permlang {

struct ExploreOptions {
  std::uint64_t max_states = 5'000'000;
  std::uint64_t max_depth = 0;
  bool check_measure = true;
  bool check_enough_burns_each_step = true;
  bool dedup = true;
  bool keep_terminal_states = false;
  std::uint64_t atomic_fuel = kDefaultAtomicFuel;
};

// One distinct way the program can finish: the per-thread final values and
// a digest of the canonical heap. `count` is the number of distinct
// deduplicated terminal states sharing this rendering.
struct TerminalOutcome {
  std::vector<std::string> values;
  std::string heap_digest;
  std::uint64_t count = 0;
};

// A replayable witness: feeding `schedule` to the script scheduler of run()
// reproduces the stuck step as its last entry.
struct StuckTrace {
  std::vector<std::size_t> schedule;
  std::size_t thread = 0;
  StuckInfo stuck;
};

struct MeasureEdge {
  std::vector<std::size_t> schedule;
  std::size_t thread = 0;
  MeasureTriple before;
  MeasureTriple after;
};

struct ExplorationReport {
  std::uint64_t states_visited = 0;
  std::uint64_t edges = 0;
  std::vector<TerminalOutcome> terminal_outcomes;
  std::vector<StuckTrace> stuck_traces;
  std::uint64_t stuck_total = 0;
  std::uint64_t longest_path = 0;
  bool measure_monotone = true;
  bool enough_burns_preserved = true;
  bool budget_hit = false;
  std::vector<MeasureEdge> measure_violations;
  std::vector<Config> terminal_states;
};

// Exhaustive interleaving exploration by iterative depth-first search.
// States are deduplicated up to consistent renaming of locations and
// prophecy ids; the next_loc watermark is ignored, so runs that allocate
// the same cells in a different order meet in one state. The measure is
// checked on every edge, also edges into already visited states, and the
// static discipline is re-checked on every new state. Stuck traces are
// first-visit schedules, capped at a small number; stuck_total counts all
// distinct stuck states.
ExplorationReport explore(const Config& c, const ExploreOptions& opts);

std::string report_to_json(const ExplorationReport& r);

}  // namespace permlang
