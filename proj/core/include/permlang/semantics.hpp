#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permlang/multiset.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

inline constexpr std::uint64_t kDefaultAtomicFuel = 1'000'000;

// Nesting bound for evaluation inside an atomic block. Fuel limits the step
// count; this limits recursion depth, so a block that would otherwise
// overflow the native stack reports atomic-fuel instead.
inline constexpr std::uint64_t kAtomicDepthLimit = 10'000;

// Why an expression cannot take a step. `reason` is a stable machine
// readable code; `detail` adds context for humans.
struct StuckInfo {
  std::string reason;
  std::string detail;
};

// Result of reducing a head redex, or of prim_step on a whole expression.
struct HeadResult {
  enum class Tag { Stepped, Stuck, IsValue };
  Tag tag = Tag::Stuck;
  ExprPtr expr;
  State state;
  std::vector<Observation> observations;
  std::vector<ExprPtr> forks;
  StuckInfo stuck;
};

struct AtomicResult {
  bool ok = false;
  ValPtr value;
  State state;
  StuckInfo stuck;
};

// Reduces a head redex by one step. Allocation is deterministic: a fresh
// block starts at next_loc and prophecy creation picks the least unused id,
// so equal inputs give equal outputs. Values report IsValue; expressions
// whose head rule does not apply report Stuck with a reason code.
HeadResult head_step(const ExprPtr& e, const State& s,
                     std::uint64_t atomic_fuel = kDefaultAtomicFuel);

// Big-step evaluation of an atomic block body. Premises evaluate right to
// left, matching the small-step evaluation order outside blocks. Only the
// sequential fragment is allowed inside a block; fork, allocation, prophecy
// and the read-modify-write primitives report atomic-unsupported. The fuel
// bounds the number of evaluation steps, guarding against divergence.
AtomicResult atomic_eval(const ExprPtr& e, const State& s, std::uint64_t fuel);

// Decomposes into context and head redex, steps the redex and refills.
HeadResult prim_step(const ExprPtr& e, const State& s,
                     std::uint64_t atomic_fuel = kDefaultAtomicFuel);

struct ThreadStepResult {
  enum class Tag { Stepped, Stuck, NoStep };
  Tag tag = Tag::NoStep;
  Config config;
  std::vector<Observation> observations;
  StuckInfo stuck;
};

// Steps one thread of a configuration. Forked threads are appended to the
// right. NoStep means the thread is already a value (or the id is out of
// range); values never step.
ThreadStepResult tp_step(const Config& c, std::size_t tid,
                         std::uint64_t atomic_fuel = kDefaultAtomicFuel);

struct Scheduler {
  enum class Kind { RoundRobin, Random, Script };
  Kind kind = Kind::RoundRobin;
  std::uint64_t seed = 0;
  std::vector<std::size_t> script;
};

struct RunOptions {
  std::uint64_t max_steps = 1'000'000;
  bool trace_measure = false;
  std::uint64_t atomic_fuel = kDefaultAtomicFuel;
};

struct RunOutcome {
  enum class Tag { AllValues, Stuck, BudgetExhausted };
  Tag tag = Tag::BudgetExhausted;
  Config config;
  std::uint64_t steps = 0;
  std::size_t stuck_thread = 0;
  StuckInfo stuck;
  std::vector<Observation> observations;
  // Thread picked at each executed step; replaying it as a script scheduler
  // reproduces the run exactly.
  std::vector<std::size_t> schedule;
  // When trace_measure is set: the configuration measure before the first
  // step, then after every step.
  std::vector<MeasureTriple> measures;
};

// Drives a configuration under a scheduler until every thread is a value,
// a picked thread is stuck or the step budget runs out. Round-robin and
// random schedulers only pick non-value threads; a script scheduler follows
// its list and stops with BudgetExhausted when the list runs out.
RunOutcome run(const Config& c, const Scheduler& sched, const RunOptions& opts);

}  // namespace permlang
