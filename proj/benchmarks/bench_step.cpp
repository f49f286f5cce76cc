#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "permlang/burn_check.hpp"
#include "permlang/parser.hpp"
#include "permlang/program.hpp"
#include "permlang/semantics.hpp"
#include "permlang/syntax.hpp"

using namespace permlang;

namespace {

std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(PERMLANG_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void bm_head_step_beta(benchmark::State& state) {
  ExprPtr e = ex::app(ex::lit(ex::vclo("f", "x", ex::var("x"))), ex::int_(1));
  State s;
  for (auto _ : state) benchmark::DoNotOptimize(head_step(e, s));
}
BENCHMARK(bm_head_step_beta);

void bm_prim_step_deep_context(benchmark::State& state) {
  ExprPtr e = ex::binop(BinOp::Plus, ex::int_(1), ex::int_(2));
  for (int i = 0; i < 64; ++i)
    e = ex::binop(BinOp::Plus, ex::int_(1), std::move(e));
  State s;
  for (auto _ : state) benchmark::DoNotOptimize(prim_step(e, s));
}
BENCHMARK(bm_prim_step_deep_context);

void bm_atomic_eval_block(benchmark::State& state) {
  ExprPtr body = ex::seq(
      ex::store(ex::lit(ex::vloc(1)),
                ex::binop(BinOp::Plus, ex::load(ex::lit(ex::vloc(1))),
                          ex::int_(1))),
      ex::load(ex::lit(ex::vloc(1))));
  State s;
  s.heap[1] = ex::vint(0);
  s.next_loc = 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(atomic_eval(body, s, kDefaultAtomicFuel));
}
BENCHMARK(bm_atomic_eval_block);

void bm_run_corpus(benchmark::State& state, const char* name) {
  std::string src = read_corpus(name);
  Program p = parse_program(src);
  Scheduler rr;
  RunOptions opts;
  for (auto _ : state) {
    RunOutcome out = run(initial_config(p), rr, opts);
    benchmark::DoNotOptimize(out.steps);
  }
}
BENCHMARK_CAPTURE(bm_run_corpus, faa_counter, "faa_counter.plt");
BENCHMARK_CAPTURE(bm_run_corpus, stack_push_pop, "stack_push_pop.plt");
BENCHMARK_CAPTURE(bm_run_corpus, treiber, "treiber.plt");

void bm_parse_and_check(benchmark::State& state) {
  std::string src = read_corpus("stack_push_2.plt");
  for (auto _ : state) {
    Program p = parse_program(src);
    benchmark::DoNotOptimize(enough_burns_cfg(initial_config(p)).ok);
  }
}
BENCHMARK(bm_parse_and_check);

}  // namespace
