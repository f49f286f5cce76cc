#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "permlang/explorer.hpp"
#include "permlang/program.hpp"

using namespace permlang;

namespace {

ExplorationReport explore_corpus(const char* name,
                                 const ExploreOptions& opts = {}) {
  Program p = helpers::load_corpus(name);
  return explore(initial_config(p), opts);
}

}  // namespace

TEST_SUITE("explorer") {
  TEST_CASE("trivial program: two states, one edge, one outcome") {
    ExplorationReport r = explore_corpus("trivial.plt");
    CHECK(r.states_visited == 2);
    CHECK(r.edges == 1);
    CHECK(r.longest_path == 1);
    CHECK(r.stuck_total == 0);
    CHECK(r.measure_monotone);
    CHECK(r.enough_burns_preserved);
    CHECK_FALSE(r.budget_hit);
    REQUIRE(r.terminal_outcomes.size() == 1);
    CHECK(r.terminal_outcomes[0].values == std::vector<std::string>{"#2"});
    CHECK(r.terminal_outcomes[0].heap_digest == "cbf29ce484222325");
    CHECK(r.terminal_outcomes[0].count == 1);
  }

  TEST_CASE("racing increments meet in deduplicated states") {
    ExploreOptions opts;
    opts.keep_terminal_states = true;
    ExplorationReport r = explore_corpus("faa_counter.plt", opts);
    CHECK(r.states_visited == 13);
    CHECK(r.edges == 14);
    CHECK(r.stuck_total == 0);
    CHECK(r.measure_monotone);

    std::set<std::vector<std::string>> values;
    for (const TerminalOutcome& o : r.terminal_outcomes) {
      values.insert(o.values);
      CHECK(o.heap_digest == "cbf29ce484222325");
    }
    std::set<std::vector<std::string>> want{{"#()", "#0"}, {"#()", "#1"}};
    CHECK(values == want);

    REQUIRE_FALSE(r.terminal_states.empty());
    for (const Config& c : r.terminal_states) {
      REQUIRE(c.state.heap.size() == 1);
      CHECK(val_equal(c.state.heap.begin()->second, ex::vint(2)));
    }
  }

  TEST_CASE("pinned state counts across the corpus") {
    ExplorationReport single_atomic = explore_corpus("single_atomic.plt");
    CHECK(single_atomic.states_visited == 4);
    CHECK(single_atomic.stuck_total == 0);

    ExplorationReport mailbox = explore_corpus("mailbox_demo.plt");
    CHECK(mailbox.states_visited == 50);
    CHECK(mailbox.stuck_total == 0);
    CHECK(mailbox.measure_monotone);
    CHECK(mailbox.enough_burns_preserved);

    ExplorationReport push2 = explore_corpus("stack_push_2.plt");
    CHECK(push2.states_visited == 3372);
    CHECK(push2.edges == 6394);
    CHECK(push2.longest_path == 170);
    CHECK(push2.stuck_total == 0);
    CHECK(push2.measure_monotone);
    CHECK(push2.terminal_outcomes.size() == 6);

    ExplorationReport pushpop = explore_corpus("stack_push_pop.plt");
    CHECK(pushpop.states_visited == 2019);
    CHECK(pushpop.edges == 3846);
    CHECK(pushpop.longest_path == 123);
    CHECK(pushpop.stuck_total == 0);

    ExplorationReport treiber = explore_corpus("treiber.plt");
    CHECK(treiber.states_visited == 1061);
    CHECK(treiber.edges == 1908);
    CHECK(treiber.longest_path == 76);
    CHECK(treiber.stuck_total == 0);
    CHECK(treiber.measure_monotone);
    CHECK(treiber.enough_burns_preserved);
  }

  TEST_CASE("a divergent program halts by revisiting itself") {
    ExploreOptions opts;
    opts.check_enough_burns_each_step = false;
    ExplorationReport r = explore_corpus("omega.plt", opts);
    CHECK(r.states_visited == 3);
    CHECK(r.edges == 3);
    CHECK(r.longest_path == 3);
    CHECK_FALSE(r.measure_monotone);
    CHECK(r.terminal_outcomes.empty());
    CHECK_FALSE(r.budget_hit);
    CHECK_FALSE(r.measure_violations.empty());
  }

  TEST_CASE("the knot through the heap also halts and fails the measure") {
    ExploreOptions opts;
    opts.check_enough_burns_each_step = false;
    ExplorationReport r = explore_corpus("landin_knot.plt", opts);
    CHECK(r.states_visited == 8);
    CHECK_FALSE(r.measure_monotone);
    CHECK(r.terminal_outcomes.empty());
    CHECK_FALSE(r.budget_hit);
  }

  TEST_CASE("the underfunded stack gets stuck on a missing permission") {
    ExplorationReport r = explore_corpus("stack_missing_perms.plt");
    CHECK(r.states_visited == 458);
    CHECK(r.edges == 787);
    CHECK(r.stuck_total == 91);
    CHECK(r.longest_path == 82);
    CHECK(r.measure_monotone);
    CHECK(r.enough_burns_preserved);
    REQUIRE_FALSE(r.stuck_traces.empty());
    CHECK(r.stuck_traces.size() == 64);
    for (const StuckTrace& t : r.stuck_traces)
      CHECK(t.stuck.reason == "burn-missing-permission");
  }

  TEST_CASE("stuck traces replay to the reported stuck step") {
    Program p = helpers::load_corpus("stack_missing_perms.plt");
    Config c0 = initial_config(p);
    ExplorationReport r = explore(c0, ExploreOptions{});
    REQUIRE(r.stuck_traces.size() >= 8);
    for (std::size_t i = 0; i < 8; ++i) {
      const StuckTrace& t = r.stuck_traces[i];
      CAPTURE(i);
      REQUIRE_FALSE(t.schedule.empty());
      CHECK(t.schedule.back() == t.thread);

      Scheduler script{Scheduler::Kind::Script, 0, t.schedule};
      RunOptions opts;
      RunOutcome out = run(c0, script, opts);
      REQUIRE(out.tag == RunOutcome::Tag::Stuck);
      CHECK(out.stuck_thread == t.thread);
      CHECK(out.stuck.reason == t.stuck.reason);
      CHECK(out.steps == t.schedule.size() - 1);
    }
  }

  TEST_CASE("exploration is deterministic") {
    ExplorationReport a = explore_corpus("stack_push_pop.plt");
    ExplorationReport b = explore_corpus("stack_push_pop.plt");
    CHECK(report_to_json(a) == report_to_json(b));
  }

  TEST_CASE("disabling deduplication expands the search tree") {
    ExploreOptions dedup;
    ExplorationReport with = explore_corpus("faa_counter.plt", dedup);

    ExploreOptions no_dedup;
    no_dedup.dedup = false;
    ExplorationReport without = explore_corpus("faa_counter.plt", no_dedup);

    CHECK_FALSE(without.budget_hit);
    CHECK(without.states_visited > with.states_visited);

    auto value_set = [](const ExplorationReport& r) {
      std::set<std::vector<std::string>> out;
      for (const TerminalOutcome& o : r.terminal_outcomes)
        out.insert(o.values);
      return out;
    };
    CHECK(value_set(with) == value_set(without));
  }

  TEST_CASE("budgets mark the report instead of spinning") {
    ExploreOptions tight;
    tight.max_states = 10;
    ExplorationReport r = explore_corpus("stack_push_2.plt", tight);
    CHECK(r.budget_hit);
    CHECK(r.states_visited <= 10);

    ExploreOptions shallow;
    shallow.max_depth = 5;
    ExplorationReport d = explore_corpus("stack_push_2.plt", shallow);
    CHECK(d.budget_hit);
    CHECK(d.longest_path <= 5);
  }

  TEST_CASE("the report serializes every top level field") {
    ExplorationReport r = explore_corpus("trivial.plt");
    std::string j = report_to_json(r);
    for (const char* key :
         {"\"states_visited\"", "\"edges\"", "\"longest_path\"",
          "\"measure_monotone\"", "\"enough_burns_preserved\"",
          "\"budget_hit\"", "\"stuck_total\"", "\"terminal_outcomes\"",
          "\"stuck_traces\"", "\"measure_violations\"", "\"heap_digest\"",
          "\"values\"", "\"count\""}) {
      CAPTURE(key);
      CHECK(j.find(key) != std::string::npos);
    }
    CHECK(j.find("\"measure_monotone\": true") != std::string::npos);
  }
}
