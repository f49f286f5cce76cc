#include "permlang/explorer.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "permlang/burn_check.hpp"
#include "permlang/measure.hpp"
#include "permlang/printer.hpp"

namespace permlang {

namespace {

constexpr std::uint64_t kFnvBasis = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
constexpr std::uint64_t kFnvBasis2 = kFnvBasis ^ 0x9e3779b97f4a7c15ull;

constexpr std::size_t kMaxStuckTraces = 64;
constexpr std::size_t kMaxMeasureViolations = 16;

using Digest = std::pair<std::uint64_t, std::uint64_t>;

// Two independent FNV-1a streams over the canonical byte serialisation,
// plus a third stream restricted to the heap section.
struct Hasher {
  std::uint64_t h1 = kFnvBasis;
  std::uint64_t h2 = kFnvBasis2;
  std::uint64_t heap = kFnvBasis;
  bool in_heap = false;

  void byte(std::uint8_t b) {
    h1 = (h1 ^ b) * kFnvPrime;
    h2 = (h2 ^ static_cast<std::uint8_t>(b + 0x9e)) * kFnvPrime;
    if (in_heap) heap = (heap ^ b) * kFnvPrime;
  }

  void u64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(x >> (8 * i)));
  }

  void str(const std::string& s) {
    u64(s.size());
    for (char c : s) byte(static_cast<std::uint8_t>(c));
  }
};

// Serialises a configuration into the hasher while renaming locations and
// prophecy ids by first-visit order: thread expressions in thread order
// first, then heap cells in the order their locations were discovered.
// The next_loc watermark is deliberately left out.
struct Canonicalizer {
  Hasher h;
  std::map<std::uint64_t, std::uint64_t> loc_map;
  std::vector<std::uint64_t> loc_queue;
  std::map<std::uint64_t, std::uint64_t> proph_map;

  std::uint64_t canon_loc(std::uint64_t orig) {
    auto [it, fresh] = loc_map.try_emplace(orig, loc_map.size() + 1);
    if (fresh) loc_queue.push_back(orig);
    return it->second;
  }

  std::uint64_t canon_proph(std::uint64_t orig) {
    auto [it, fresh] = proph_map.try_emplace(orig, proph_map.size() + 1);
    (void)fresh;
    return it->second;
  }

  void walk_val(const ValPtr& v) {
    if (const std::int64_t* n = std::get_if<std::int64_t>(&v->v)) {
      h.byte(1);
      h.u64(static_cast<std::uint64_t>(*n));
    } else if (const bool* b = std::get_if<bool>(&v->v)) {
      h.byte(2);
      h.byte(*b ? 1 : 0);
    } else if (std::get_if<UnitV>(&v->v)) {
      h.byte(3);
    } else if (std::get_if<PoisonV>(&v->v)) {
      h.byte(4);
    } else if (const Loc* l = std::get_if<Loc>(&v->v)) {
      h.byte(5);
      h.u64(canon_loc(l->index));
    } else if (const ProphId* p = std::get_if<ProphId>(&v->v)) {
      h.byte(6);
      h.u64(canon_proph(p->index));
    } else if (const RecClosure* c = std::get_if<RecClosure>(&v->v)) {
      h.byte(7);
      h.str(c->self);
      h.str(c->arg);
      walk_expr(c->body);
    } else if (const PairV* p = std::get_if<PairV>(&v->v)) {
      h.byte(8);
      walk_val(p->first);
      walk_val(p->second);
    } else if (const InjV* i = std::get_if<InjV>(&v->v)) {
      h.byte(i->right ? 10 : 9);
      walk_val(i->payload);
    }
  }

  void walk_expr(const ExprPtr& e) {
    h.byte(static_cast<std::uint8_t>(0x20 + static_cast<int>(e->kind)));
    switch (e->kind) {
      case ExprKind::Lit:
        walk_val(e->lit);
        break;
      case ExprKind::Var:
        h.str(e->name);
        break;
      case ExprKind::Rec:
        h.str(e->name);
        h.str(e->name2);
        break;
      case ExprKind::Match:
      case ExprKind::Let:
        h.str(e->name);
        h.str(e->name2);
        break;
      case ExprKind::UnOpE:
        h.byte(static_cast<std::uint8_t>(e->un));
        break;
      case ExprKind::BinOpE:
        h.byte(static_cast<std::uint8_t>(e->bin));
        break;
      case ExprKind::Burn:
        h.u64(e->burn_from.value);
        h.u64(e->burn_to.value);
        break;
      default:
        break;
    }
    h.byte(static_cast<std::uint8_t>(e->kids.size()));
    for (const ExprPtr& k : e->kids) walk_expr(k);
  }
};

struct CanonResult {
  Digest digest;
  std::uint64_t heap_digest = 0;
};

CanonResult canonicalize(const Config& c) {
  Canonicalizer cz;
  cz.h.u64(c.threads.size());
  for (const ExprPtr& t : c.threads) cz.walk_expr(t);
  cz.h.u64(c.state.call_perms.entries().size());
  for (const auto& [lvl, cnt] : c.state.call_perms.entries()) {
    cz.h.u64(lvl.value);
    cz.h.u64(cnt);
  }
  cz.h.u64(c.state.prophs.size());
  cz.h.in_heap = true;
  std::size_t qi = 0;
  while (qi < cz.loc_queue.size()) {
    std::uint64_t orig = cz.loc_queue[qi++];
    auto it = c.state.heap.find(orig);
    if (it == c.state.heap.end()) {
      cz.h.byte(0);
      continue;
    }
    cz.h.byte(1);
    cz.walk_val(it->second);
  }
  cz.h.in_heap = false;
  return CanonResult{{cz.h.h1, cz.h.h2}, cz.h.heap};
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(x));
  return std::string(buf);
}

using ThreadMeasure = std::pair<std::uint64_t, std::uint64_t>;

ThreadMeasure thread_measure(const ExprPtr& t) {
  return {nb_unprotected_apps(t), pseudo_size(t)};
}

MeasureTriple sum_measure(const LevelMultiset& perms,
                          const std::vector<ThreadMeasure>& tm) {
  MeasureTriple m;
  m.perms = perms;
  for (const ThreadMeasure& x : tm) {
    m.unprotected += x.first;
    m.pseudo += x.second;
  }
  return m;
}

struct PathNode {
  Config cfg;
  Digest digest;
  std::uint64_t heap_digest = 0;
  std::vector<ThreadMeasure> tmeas;
  std::size_t next_tid = 0;
  std::size_t via_tid = 0;
  std::uint64_t best_suffix = 0;
};

std::vector<std::size_t> path_schedule(const std::vector<PathNode>& stack) {
  std::vector<std::size_t> sched;
  sched.reserve(stack.size());
  for (std::size_t i = 1; i < stack.size(); ++i)
    sched.push_back(stack[i].via_tid);
  return sched;
}

}  // namespace

ExplorationReport explore(const Config& c0, const ExploreOptions& opts) {
  ExplorationReport rep;

  std::set<Digest> visited;
  std::set<Digest> on_path;
  std::map<Digest, std::uint64_t> suffix_memo;
  std::map<std::pair<std::vector<std::string>, std::string>, std::uint64_t>
      terminal_map;

  std::vector<PathNode> stack;

  auto enter = [&](Config cfg, const CanonResult& canon, std::size_t via) {
    PathNode n;
    n.digest = canon.digest;
    n.heap_digest = canon.heap_digest;
    n.via_tid = via;
    n.tmeas.reserve(cfg.threads.size());
    for (const ExprPtr& t : cfg.threads) n.tmeas.push_back(thread_measure(t));
    n.cfg = std::move(cfg);
    ++rep.states_visited;
    if (opts.dedup) {
      visited.insert(n.digest);
      on_path.insert(n.digest);
    }
    if (opts.check_enough_burns_each_step && rep.enough_burns_preserved) {
      if (!enough_burns_cfg(n.cfg).ok) rep.enough_burns_preserved = false;
    }
    bool terminal = true;
    for (const ExprPtr& t : n.cfg.threads)
      if (!is_value(t)) {
        terminal = false;
        break;
      }
    if (terminal) {
      std::vector<std::string> values;
      values.reserve(n.cfg.threads.size());
      for (const ExprPtr& t : n.cfg.threads) values.push_back(show_val(t->lit));
      ++terminal_map[{std::move(values), hex64(n.heap_digest)}];
      if (opts.keep_terminal_states) rep.terminal_states.push_back(n.cfg);
    }
    stack.push_back(std::move(n));
  };

  enter(c0, canonicalize(c0), 0);

  bool out_of_budget = false;
  while (!stack.empty() && !out_of_budget) {
    PathNode& top = stack.back();

    std::size_t tid = top.next_tid;
    std::size_t n_threads = top.cfg.threads.size();
    while (tid < n_threads && is_value(top.cfg.threads[tid])) ++tid;

    if (tid >= n_threads) {
      Digest dig = top.digest;
      std::uint64_t suffix = top.best_suffix;
      if (opts.dedup) {
        on_path.erase(dig);
        suffix_memo[dig] = suffix;
      }
      stack.pop_back();
      if (stack.empty()) {
        rep.longest_path = suffix;
      } else {
        std::uint64_t via_parent = 1 + suffix;
        if (via_parent > stack.back().best_suffix)
          stack.back().best_suffix = via_parent;
      }
      continue;
    }
    top.next_tid = tid + 1;

    ThreadStepResult r = tp_step(top.cfg, tid, opts.atomic_fuel);
    if (r.tag == ThreadStepResult::Tag::NoStep) continue;
    if (r.tag == ThreadStepResult::Tag::Stuck) {
      ++rep.stuck_total;
      if (rep.stuck_traces.size() < kMaxStuckTraces) {
        StuckTrace st;
        st.schedule = path_schedule(stack);
        st.schedule.push_back(tid);
        st.thread = tid;
        st.stuck = r.stuck;
        rep.stuck_traces.push_back(std::move(st));
      }
      continue;
    }

    ++rep.edges;
    Config child = std::move(r.config);

    if (opts.check_measure) {
      std::vector<ThreadMeasure> child_tm = top.tmeas;
      child_tm[tid] = thread_measure(child.threads[tid]);
      for (std::size_t i = top.cfg.threads.size(); i < child.threads.size();
           ++i)
        child_tm.push_back(thread_measure(child.threads[i]));
      MeasureTriple before = sum_measure(top.cfg.state.call_perms, top.tmeas);
      MeasureTriple after = sum_measure(child.state.call_perms, child_tm);
      if (!triple_less(after, before)) {
        rep.measure_monotone = false;
        if (rep.measure_violations.size() < kMaxMeasureViolations) {
          MeasureEdge edge;
          edge.schedule = path_schedule(stack);
          edge.schedule.push_back(tid);
          edge.thread = tid;
          edge.before = std::move(before);
          edge.after = std::move(after);
          rep.measure_violations.push_back(std::move(edge));
        }
      }
    }

    CanonResult canon = canonicalize(child);
    if (opts.dedup && visited.count(canon.digest)) {
      std::uint64_t suffix = 0;
      if (!on_path.count(canon.digest)) {
        auto memo = suffix_memo.find(canon.digest);
        if (memo != suffix_memo.end()) suffix = memo->second;
      }
      std::uint64_t via_child = 1 + suffix;
      if (via_child > top.best_suffix) top.best_suffix = via_child;
      continue;
    }

    if (rep.states_visited >= opts.max_states) {
      rep.budget_hit = true;
      out_of_budget = true;
      continue;
    }
    if (opts.max_depth > 0 && stack.size() >= opts.max_depth) {
      rep.budget_hit = true;
      if (1 > top.best_suffix) top.best_suffix = 1;
      continue;
    }

    enter(std::move(child), canon, tid);
  }

  for (auto& [key, count] : terminal_map) {
    TerminalOutcome o;
    o.values = key.first;
    o.heap_digest = key.second;
    o.count = count;
    rep.terminal_outcomes.push_back(std::move(o));
  }
  return rep;
}

namespace {

nlohmann::json multiset_json(const LevelMultiset& ms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [lvl, cnt] : ms.entries())
    for (std::uint64_t i = 0; i < cnt; ++i) arr.push_back(lvl.value);
  return arr;
}

nlohmann::json triple_json(const MeasureTriple& m) {
  return nlohmann::json{{"perms", multiset_json(m.perms)},
                        {"unprotected", m.unprotected},
                        {"pseudo", m.pseudo}};
}

}  // namespace

std::string report_to_json(const ExplorationReport& r) {
  nlohmann::json j;
  j["states_visited"] = r.states_visited;
  j["edges"] = r.edges;
  j["longest_path"] = r.longest_path;
  j["measure_monotone"] = r.measure_monotone;
  j["enough_burns_preserved"] = r.enough_burns_preserved;
  j["budget_hit"] = r.budget_hit;
  j["stuck_total"] = r.stuck_total;

  nlohmann::json outcomes = nlohmann::json::array();
  for (const TerminalOutcome& o : r.terminal_outcomes)
    outcomes.push_back({{"values", o.values},
                        {"heap_digest", o.heap_digest},
                        {"count", o.count}});
  j["terminal_outcomes"] = std::move(outcomes);

  nlohmann::json traces = nlohmann::json::array();
  for (const StuckTrace& t : r.stuck_traces) {
    nlohmann::json jt;
    jt["schedule"] = t.schedule;
    jt["thread"] = t.thread;
    jt["reason"] = t.stuck.reason;
    if (!t.stuck.detail.empty()) jt["detail"] = t.stuck.detail;
    traces.push_back(std::move(jt));
  }
  j["stuck_traces"] = std::move(traces);

  nlohmann::json violations = nlohmann::json::array();
  for (const MeasureEdge& e : r.measure_violations)
    violations.push_back({{"schedule", e.schedule},
                          {"thread", e.thread},
                          {"before", triple_json(e.before)},
                          {"after", triple_json(e.after)}});
  j["measure_violations"] = std::move(violations);

  return j.dump(2);
}

}  // namespace permlang
