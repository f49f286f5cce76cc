#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "permlang/parser.hpp"
#include "permlang/program.hpp"
#include "permlang/semantics.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace helpers {

using namespace permlang;

inline std::string corpus_path(const std::string& name) {
  return std::string(PERMLANG_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Program load_corpus(const std::string& name) {
  return parse_program(read_file(corpus_path(name)));
}

struct SeqResult {
  enum class Tag { Value, Stuck, OutOfSteps };
  Tag tag = Tag::OutOfSteps;
  ValPtr value;
  State state;
  StuckInfo stuck;
};

// Single-threaded small-step evaluation, the reference the atomic big-step
// relation is compared against.
inline SeqResult seq_run(ExprPtr e, State s, std::uint64_t max_steps) {
  SeqResult out;
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    if (is_value(e)) {
      out.tag = SeqResult::Tag::Value;
      out.value = e->lit;
      out.state = std::move(s);
      return out;
    }
    HeadResult h = prim_step(e, s);
    if (h.tag == HeadResult::Tag::Stuck) {
      out.tag = SeqResult::Tag::Stuck;
      out.stuck = std::move(h.stuck);
      out.state = std::move(s);
      return out;
    }
    e = std::move(h.expr);
    s = std::move(h.state);
  }
  return out;
}

// Reads a stack off a terminal heap: `head` is the cell holding the option
// typed head link, cells are (value, next) pairs. Returns the integer
// payloads top first, or nullopt if the shape is not a stack.
inline std::optional<std::vector<int>> read_stack(const State& s,
                                                  std::uint64_t head) {
  std::vector<int> out;
  auto it = s.heap.find(head);
  if (it == s.heap.end()) return std::nullopt;
  ValPtr link = it->second;
  for (int guard = 0; guard < 1000; ++guard) {
    const InjV* inj = as_inj(link);
    if (!inj) return std::nullopt;
    if (!inj->right) return out;
    const Loc* cell = as_loc(inj->payload);
    if (!cell) return std::nullopt;
    auto cit = s.heap.find(cell->index);
    if (cit == s.heap.end()) return std::nullopt;
    const PairV* pr = as_pair(cit->second);
    if (!pr) return std::nullopt;
    const std::int64_t* n = as_int(pr->first);
    if (!n) return std::nullopt;
    out.push_back(static_cast<int>(*n));
    link = pr->second;
  }
  return std::nullopt;
}

}  // namespace helpers
