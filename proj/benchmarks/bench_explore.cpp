#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "permlang/erasure.hpp"
#include "permlang/explorer.hpp"
#include "permlang/parser.hpp"
#include "permlang/program.hpp"

using namespace permlang;

namespace {

Program load(const std::string& name) {
  std::ifstream in(std::string(PERMLANG_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

void bm_explore(benchmark::State& state, const char* name) {
  Program p = load(name);
  ExploreOptions opts;
  for (auto _ : state) {
    ExplorationReport r = explore(initial_config(p), opts);
    benchmark::DoNotOptimize(r.states_visited);
  }
}
BENCHMARK_CAPTURE(bm_explore, mailbox_demo, "mailbox_demo.plt");
BENCHMARK_CAPTURE(bm_explore, treiber, "treiber.plt");
BENCHMARK_CAPTURE(bm_explore, stack_push_2, "stack_push_2.plt");

void bm_explore_no_checks(benchmark::State& state) {
  Program p = load("stack_push_2.plt");
  ExploreOptions opts;
  opts.check_measure = false;
  opts.check_enough_burns_each_step = false;
  for (auto _ : state) {
    ExplorationReport r = explore(initial_config(p), opts);
    benchmark::DoNotOptimize(r.states_visited);
  }
}
BENCHMARK(bm_explore_no_checks);

void bm_erase_program(benchmark::State& state) {
  Program p = load("stack_push_2.plt");
  for (auto _ : state) benchmark::DoNotOptimize(erase_program(p).main);
}
BENCHMARK(bm_erase_program);

}  // namespace
