#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permlang/burn_check.hpp"
#include "permlang/erasure.hpp"
#include "permlang/explorer.hpp"
#include "permlang/measure.hpp"
#include "permlang/parser.hpp"
#include "permlang/printer.hpp"
#include "permlang/program.hpp"
#include "permlang/semantics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Returns the parsed program or exits with an input error.
permlang::Program load_program(const std::string& path) {
  std::optional<std::string> src = read_file(path);
  if (!src) {
    std::cerr << "error: cannot read '" << path << "'\n";
    std::exit(kExitInput);
  }
  try {
    return permlang::parse_program(*src);
  } catch (const permlang::ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    std::exit(kExitInput);
  }
}

bool parse_schedule(const std::string& spec, permlang::Scheduler& sched,
                    std::string& err) {
  if (spec == "rr") {
    sched.kind = permlang::Scheduler::Kind::RoundRobin;
    return true;
  }
  if (spec.rfind("rand:", 0) == 0) {
    sched.kind = permlang::Scheduler::Kind::Random;
    try {
      sched.seed = std::stoull(spec.substr(5));
    } catch (...) {
      err = "bad seed in '" + spec + "'";
      return false;
    }
    return true;
  }
  if (spec.rfind("script:", 0) == 0) {
    sched.kind = permlang::Scheduler::Kind::Script;
    std::string body = spec.substr(7);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        sched.script.push_back(std::stoull(item));
      } catch (...) {
        err = "bad thread index '" + item + "' in schedule script";
        return false;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return true;
  }
  err = "unknown schedule '" + spec + "' (want rr, rand:SEED or script:0,1,...)";
  return false;
}

int cmd_check(const std::string& path, bool as_json) {
  permlang::Program prog = load_program(path);
  permlang::Config cfg = permlang::initial_config(prog);
  permlang::CheckReport rep = permlang::enough_burns_cfg(cfg);
  if (as_json) {
    nlohmann::json j;
    j["ok"] = rep.ok;
    nlohmann::json vs = nlohmann::json::array();
    for (const permlang::CheckViolation& v : rep.violations)
      vs.push_back(
          {{"path", v.path}, {"kind", v.kind}, {"count", v.count}});
    j["violations"] = std::move(vs);
    std::cout << j.dump(2) << "\n";
  } else if (rep.ok) {
    std::cout << "check passed\n";
  } else {
    std::cout << "check failed: " << rep.violations.size()
              << " violation(s)\n";
    for (const permlang::CheckViolation& v : rep.violations)
      std::cout << "  " << v.path << ": " << v.kind << " (count " << v.count
                << ")\n";
  }
  return rep.ok ? kExitOk : kExitSemantic;
}

int cmd_run(const std::string& path, const std::string& schedule,
            std::uint64_t steps, bool trace) {
  permlang::Program prog = load_program(path);
  permlang::Scheduler sched;
  std::string err;
  if (!parse_schedule(schedule, sched, err)) {
    std::cerr << "error: " << err << "\n";
    return kExitInput;
  }
  permlang::RunOptions opts;
  opts.max_steps = steps;
  opts.trace_measure = trace;
  permlang::RunOutcome out =
      permlang::run(permlang::initial_config(prog), sched, opts);
  if (trace)
    for (std::size_t i = 0; i < out.measures.size(); ++i)
      std::cout << "measure[" << i << "] " << permlang::to_string(out.measures[i])
                << "\n";
  switch (out.tag) {
    case permlang::RunOutcome::Tag::AllValues:
      std::cout << "value " << permlang::show_val(out.config.threads[0]->lit)
                << "\n";
      return kExitOk;
    case permlang::RunOutcome::Tag::Stuck:
      std::cout << "stuck in thread " << out.stuck_thread << ": "
                << out.stuck.reason;
      if (!out.stuck.detail.empty()) std::cout << " (" << out.stuck.detail << ")";
      std::cout << "\n";
      return kExitSemantic;
    case permlang::RunOutcome::Tag::BudgetExhausted:
      std::cout << "budget exhausted\n";
      return kExitBudget;
  }
  return kExitSemantic;
}

int cmd_explore(const std::string& path, permlang::ExploreOptions opts,
                bool as_json, bool max_states_from_flag) {
  if (!max_states_from_flag) {
    if (const char* env = std::getenv("PERMLANG_MAX_STATES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) opts.max_states = v;
    }
  }
  permlang::Program prog = load_program(path);
  permlang::ExplorationReport rep =
      permlang::explore(permlang::initial_config(prog), opts);
  if (as_json) {
    std::cout << permlang::report_to_json(rep) << "\n";
  } else {
    std::cout << "states visited: " << rep.states_visited << "\n";
    std::cout << "edges: " << rep.edges << "\n";
    std::cout << "longest path: " << rep.longest_path << "\n";
    std::cout << "terminal outcomes: " << rep.terminal_outcomes.size() << "\n";
    for (const permlang::TerminalOutcome& o : rep.terminal_outcomes) {
      std::cout << "  values [";
      for (std::size_t i = 0; i < o.values.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << o.values[i];
      }
      std::cout << "] heap " << o.heap_digest << " count " << o.count << "\n";
    }
    std::cout << "stuck states: " << rep.stuck_total << "\n";
    for (const permlang::StuckTrace& t : rep.stuck_traces) {
      std::cout << "  schedule [";
      for (std::size_t i = 0; i < t.schedule.size(); ++i) {
        if (i) std::cout << " ";
        std::cout << t.schedule[i];
      }
      std::cout << "] thread " << t.thread << ": " << t.stuck.reason;
      if (!t.stuck.detail.empty()) std::cout << " (" << t.stuck.detail << ")";
      std::cout << "\n";
    }
    std::cout << "measure monotone: " << (rep.measure_monotone ? "yes" : "no")
              << "\n";
    std::cout << "discipline preserved: "
              << (rep.enough_burns_preserved ? "yes" : "no") << "\n";
    std::cout << "budget hit: " << (rep.budget_hit ? "yes" : "no") << "\n";
  }
  bool bad = rep.stuck_total > 0 || !rep.measure_monotone ||
             !rep.enough_burns_preserved;
  if (bad) return kExitSemantic;
  if (rep.budget_hit) return kExitBudget;
  return kExitOk;
}

int cmd_erase(const std::string& path, const std::string& out_path,
              bool strict) {
  permlang::Program prog = load_program(path);
  permlang::Program erased;
  try {
    erased = permlang::erase_program(prog);
  } catch (const permlang::EraseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  std::uint64_t residual = permlang::count_atomic_blocks(erased.main);
  if (strict && residual > 0) {
    std::cerr << "error: " << residual
              << " atomic block(s) remain after erasure\n";
    return kExitSemantic;
  }
  std::string text = permlang::print_program(erased);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitInput;
    }
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PermLang interpreter and termination checker"};
  app.require_subcommand(1);

  std::string file;
  bool json_flag = false;

  CLI::App* check = app.add_subcommand(
      "check", "Statically check that every application is burn protected");
  check->add_option("file", file, "program file")->required();
  check->add_flag("--json", json_flag, "machine readable report");

  std::string schedule = "rr";
  std::uint64_t steps = 1'000'000;
  bool trace = false;
  CLI::App* run = app.add_subcommand("run", "Run a program to completion");
  run->add_option("file", file, "program file")->required();
  run->add_option("--schedule", schedule,
                  "rr | rand:SEED | script:T0,T1,...");
  run->add_option("--steps", steps, "step budget");
  run->add_flag("--trace-measure", trace,
                "print the configuration measure after every step");

  permlang::ExploreOptions eopts;
  bool no_measure = false;
  bool no_burns = false;
  bool no_dedup = false;
  CLI::App* explore =
      app.add_subcommand("explore", "Exhaustively explore all interleavings");
  explore->add_option("file", file, "program file")->required();
  CLI::Option* max_states_opt =
      explore->add_option("--max-states", eopts.max_states, "state budget");
  explore->add_option("--max-depth", eopts.max_depth,
                      "depth budget (0 = unlimited)");
  explore->add_flag("--no-measure-check", no_measure,
                    "skip the per step measure check");
  explore->add_flag("--no-burns-check", no_burns,
                    "skip re-checking the static discipline per state");
  explore->add_flag("--no-dedup", no_dedup,
                    "do not merge states equal up to renaming");
  explore->add_flag("--json", json_flag, "machine readable report");

  std::string out_path;
  bool strict = false;
  CLI::App* erase = app.add_subcommand(
      "erase", "Strip burns and removable atomic blocks from a program");
  erase->add_option("file", file, "program file")->required();
  erase->add_option("-o,--output", out_path, "output file (default stdout)");
  erase->add_flag("--strict-heaplang", strict,
                  "fail if any atomic block survives erasure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (check->parsed()) return cmd_check(file, json_flag);
  if (run->parsed()) return cmd_run(file, schedule, steps, trace);
  if (explore->parsed()) {
    eopts.check_measure = !no_measure;
    eopts.check_enough_burns_each_step = !no_burns;
    eopts.dedup = !no_dedup;
    return cmd_explore(file, eopts, json_flag, max_states_opt->count() > 0);
  }
  if (erase->parsed()) return cmd_erase(file, out_path, strict);
  return kExitInput;
}
