#include "permlang/semantics.hpp"

#include <random>
#include <utility>

#include "permlang/measure.hpp"

namespace permlang {

namespace {

HeadResult stepped(ExprPtr e, State s) {
  HeadResult r;
  r.tag = HeadResult::Tag::Stepped;
  r.expr = std::move(e);
  r.state = std::move(s);
  return r;
}

HeadResult stuck(std::string reason, std::string detail = "") {
  HeadResult r;
  r.tag = HeadResult::Tag::Stuck;
  r.stuck = StuckInfo{std::move(reason), std::move(detail)};
  return r;
}

// A kid that the head rule needs as a value, or nullptr.
const ValPtr& val_of(const ExprPtr& e) {
  static const ValPtr none;
  if (e && e->kind == ExprKind::Lit) return e->lit;
  return none;
}

struct OpOut {
  ValPtr value;
  StuckInfo fail;
  bool ok() const { return value != nullptr; }
};

OpOut op_value(ValPtr v) { return OpOut{std::move(v), {}}; }

OpOut op_stuck(std::string reason, std::string detail = "") {
  return OpOut{nullptr, StuckInfo{std::move(reason), std::move(detail)}};
}

OpOut eval_unop(UnOp op, const ValPtr& v) {
  switch (op) {
    case UnOp::Minus: {
      const std::int64_t* n = as_int(v);
      if (!n) return op_stuck("unop-type-error", "minus needs an integer");
      return op_value(ex::vint(static_cast<std::int64_t>(
          0ull - static_cast<std::uint64_t>(*n))));
    }
  }
  return op_stuck("unop-type-error");
}

OpOut eval_binop(BinOp op, const ValPtr& a, const ValPtr& b) {
  switch (op) {
    case BinOp::Plus:
    case BinOp::Minus:
    case BinOp::Mult: {
      const std::int64_t* x = as_int(a);
      const std::int64_t* y = as_int(b);
      if (!x || !y)
        return op_stuck("binop-type-error", "arithmetic needs integers");
      std::uint64_t ux = static_cast<std::uint64_t>(*x);
      std::uint64_t uy = static_cast<std::uint64_t>(*y);
      std::uint64_t r = op == BinOp::Plus    ? ux + uy
                        : op == BinOp::Minus ? ux - uy
                                             : ux * uy;
      return op_value(ex::vint(static_cast<std::int64_t>(r)));
    }
    case BinOp::Offset: {
      const Loc* l = as_loc(a);
      const std::int64_t* n = as_int(b);
      if (!l || !n)
        return op_stuck("binop-type-error",
                        "pointer addition needs a location and an integer");
      if (*n >= 0) {
        std::uint64_t r = l->index + static_cast<std::uint64_t>(*n);
        if (r < l->index) return op_stuck("ptr-add-out-of-range");
        return op_value(ex::vloc(r));
      }
      std::uint64_t mag = 0ull - static_cast<std::uint64_t>(*n);
      if (mag > l->index) return op_stuck("ptr-add-out-of-range");
      return op_value(ex::vloc(l->index - mag));
    }
    case BinOp::Eq: {
      if (!vals_compare_safe(a, b))
        return op_stuck("incomparable-equality", "neither operand is unboxed");
      return op_value(ex::vbool(val_equal(a, b)));
    }
    case BinOp::Lt:
    case BinOp::Le: {
      const std::int64_t* x = as_int(a);
      const std::int64_t* y = as_int(b);
      if (!x || !y)
        return op_stuck("binop-type-error", "comparison needs integers");
      return op_value(ex::vbool(op == BinOp::Lt ? *x < *y : *x <= *y));
    }
  }
  return op_stuck("binop-type-error");
}

ExprPtr beta_body(const RecClosure& clo, const ValPtr& fn_val,
                  const ValPtr& arg) {
  // Self first, argument second, so an argument binder equal to the self
  // binder shadows nothing that is still free afterwards.
  ExprPtr body = subst(clo.self, fn_val, clo.body);
  return subst(clo.arg, arg, body);
}

// Burn bookkeeping shared by the head rule and atomic evaluation. Check
// order is fixed: count form, count sign, level drop, stock membership.
StuckInfo apply_burn(const Expr& e, const ValPtr& count, State& s) {
  const std::int64_t* n = as_int(count);
  if (!n) return {"burn-count-not-integer", "receive count must be an integer"};
  if (*n < 0) return {"burn-negative-count", ""};
  if (!(e.burn_to < e.burn_from))
    return {"burn-level-not-lower", "minted level must sit strictly below"};
  if (!s.call_perms.contains(e.burn_from))
    return {"burn-missing-permission",
            "no permission at level " + std::to_string(e.burn_from.value)};
  LevelMultiset next = *ms_remove(s.call_perms, e.burn_from);
  next.insert(e.burn_to, static_cast<std::uint64_t>(*n));
  s.call_perms = std::move(next);
  return {};
}

struct AtomicEval {
  State& s;
  std::uint64_t fuel;
  StuckInfo fail;
  std::uint64_t depth = 0;

  // Returns nullptr on stuck with fail set. Premises evaluate right to
  // left; the heap is read and written at the moment the rule fires.
  ValPtr eval(const ExprPtr& e) {
    if (depth >= kAtomicDepthLimit) {
      fail = {"atomic-fuel", "evaluation depth limit reached inside the block"};
      return nullptr;
    }
    ++depth;
    ValPtr v = eval_node(e);
    --depth;
    return v;
  }

  ValPtr eval_node(const ExprPtr& e) {
    if (fuel == 0) {
      fail = {"atomic-fuel", "evaluation budget exhausted inside the block"};
      return nullptr;
    }
    --fuel;
    switch (e->kind) {
      case ExprKind::Lit:
        return e->lit;
      case ExprKind::Var:
        fail = {"free-variable", e->name};
        return nullptr;
      case ExprKind::Rec:
        return ex::vclo(e->name, e->name2, e->kids[0]);
      case ExprKind::App: {
        ValPtr arg = eval(e->kids[1]);
        if (!arg) return nullptr;
        ValPtr fn = eval(e->kids[0]);
        if (!fn) return nullptr;
        const RecClosure* clo = as_closure(fn);
        if (!clo) {
          fail = {"not-a-closure", "application head is not a function"};
          return nullptr;
        }
        return eval(beta_body(*clo, fn, arg));
      }
      case ExprKind::UnOpE: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        OpOut out = eval_unop(e->un, v);
        if (!out.ok()) {
          fail = out.fail;
          return nullptr;
        }
        return out.value;
      }
      case ExprKind::BinOpE: {
        ValPtr r = eval(e->kids[1]);
        if (!r) return nullptr;
        ValPtr l = eval(e->kids[0]);
        if (!l) return nullptr;
        OpOut out = eval_binop(e->bin, l, r);
        if (!out.ok()) {
          fail = out.fail;
          return nullptr;
        }
        return out.value;
      }
      case ExprKind::If: {
        ValPtr c = eval(e->kids[0]);
        if (!c) return nullptr;
        const bool* b = as_bool(c);
        if (!b) {
          fail = {"if-not-bool", ""};
          return nullptr;
        }
        return eval(e->kids[*b ? 1 : 2]);
      }
      case ExprKind::Pair: {
        ValPtr snd_v = eval(e->kids[1]);
        if (!snd_v) return nullptr;
        ValPtr fst_v = eval(e->kids[0]);
        if (!fst_v) return nullptr;
        return ex::vpair(std::move(fst_v), std::move(snd_v));
      }
      case ExprKind::Fst:
      case ExprKind::Snd: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        const PairV* p = as_pair(v);
        if (!p) {
          fail = {"proj-not-pair", ""};
          return nullptr;
        }
        return e->kind == ExprKind::Fst ? p->first : p->second;
      }
      case ExprKind::InjL:
      case ExprKind::InjR: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        return e->kind == ExprKind::InjL ? ex::vinjl(std::move(v))
                                         : ex::vinjr(std::move(v));
      }
      case ExprKind::Match: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        const InjV* inj = as_inj(v);
        if (!inj) {
          fail = {"match-not-injection", ""};
          return nullptr;
        }
        const std::string& binder = inj->right ? e->name2 : e->name;
        const ExprPtr& branch = e->kids[inj->right ? 2 : 1];
        return eval(subst(binder, inj->payload, branch));
      }
      case ExprKind::Let: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        return eval(subst(e->name, v, e->kids[1]));
      }
      case ExprKind::Seq: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        return eval(e->kids[1]);
      }
      case ExprKind::Load: {
        ValPtr v = eval(e->kids[0]);
        if (!v) return nullptr;
        const Loc* l = as_loc(v);
        if (!l) {
          fail = {"not-a-location", ""};
          return nullptr;
        }
        auto it = s.heap.find(l->index);
        if (it == s.heap.end()) {
          fail = {"unallocated-location", std::to_string(l->index)};
          return nullptr;
        }
        return it->second;
      }
      case ExprKind::Store: {
        ValPtr src = eval(e->kids[1]);
        if (!src) return nullptr;
        ValPtr dst = eval(e->kids[0]);
        if (!dst) return nullptr;
        const Loc* l = as_loc(dst);
        if (!l) {
          fail = {"not-a-location", ""};
          return nullptr;
        }
        auto it = s.heap.find(l->index);
        if (it == s.heap.end()) {
          fail = {"unallocated-location", std::to_string(l->index)};
          return nullptr;
        }
        it->second = std::move(src);
        return ex::vunit();
      }
      case ExprKind::Burn: {
        ValPtr count = eval(e->kids[1]);
        if (!count) return nullptr;
        StuckInfo burn_fail = apply_burn(*e, count, s);
        if (!burn_fail.reason.empty()) {
          fail = std::move(burn_fail);
          return nullptr;
        }
        return eval(e->kids[0]);
      }
      case ExprKind::Alloc:
      case ExprKind::Free:
      case ExprKind::CmpXchg:
      case ExprKind::Xchg:
      case ExprKind::Faa:
      case ExprKind::Fork:
      case ExprKind::NewProph:
      case ExprKind::Resolve:
      case ExprKind::Atomic:
        fail = {"atomic-unsupported",
                "construct not allowed inside an atomic block"};
        return nullptr;
    }
    fail = {"atomic-unsupported", ""};
    return nullptr;
  }
};

}  // namespace

AtomicResult atomic_eval(const ExprPtr& e, const State& s,
                         std::uint64_t fuel) {
  AtomicResult out;
  out.state = s;
  AtomicEval ev{out.state, fuel, {}};
  ValPtr v = ev.eval(e);
  if (!v) {
    out.ok = false;
    out.stuck = std::move(ev.fail);
    out.state = s;
    return out;
  }
  out.ok = true;
  out.value = std::move(v);
  return out;
}

HeadResult head_step(const ExprPtr& e, const State& s,
                     std::uint64_t atomic_fuel) {
  if (!e) return stuck("operand-not-a-value", "null expression");
  switch (e->kind) {
    case ExprKind::Lit: {
      HeadResult r;
      r.tag = HeadResult::Tag::IsValue;
      r.expr = e;
      r.state = s;
      return r;
    }
    case ExprKind::Var:
      return stuck("free-variable", e->name);
    case ExprKind::Rec:
      return stepped(ex::lit(ex::vclo(e->name, e->name2, e->kids[0])), s);
    case ExprKind::App: {
      const ValPtr& fn = val_of(e->kids[0]);
      const ValPtr& arg = val_of(e->kids[1]);
      if (!fn || !arg) return stuck("operand-not-a-value");
      const RecClosure* clo = as_closure(fn);
      if (!clo)
        return stuck("not-a-closure", "application head is not a function");
      return stepped(beta_body(*clo, fn, arg), s);
    }
    case ExprKind::UnOpE: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      OpOut out = eval_unop(e->un, v);
      if (!out.ok()) return stuck(out.fail.reason, out.fail.detail);
      return stepped(ex::lit(std::move(out.value)), s);
    }
    case ExprKind::BinOpE: {
      const ValPtr& l = val_of(e->kids[0]);
      const ValPtr& r = val_of(e->kids[1]);
      if (!l || !r) return stuck("operand-not-a-value");
      OpOut out = eval_binop(e->bin, l, r);
      if (!out.ok()) return stuck(out.fail.reason, out.fail.detail);
      return stepped(ex::lit(std::move(out.value)), s);
    }
    case ExprKind::If: {
      const ValPtr& c = val_of(e->kids[0]);
      if (!c) return stuck("operand-not-a-value");
      const bool* b = as_bool(c);
      if (!b) return stuck("if-not-bool");
      return stepped(e->kids[*b ? 1 : 2], s);
    }
    case ExprKind::Pair: {
      const ValPtr& a = val_of(e->kids[0]);
      const ValPtr& b = val_of(e->kids[1]);
      if (!a || !b) return stuck("operand-not-a-value");
      return stepped(ex::lit(ex::vpair(a, b)), s);
    }
    case ExprKind::Fst:
    case ExprKind::Snd: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      const PairV* p = as_pair(v);
      if (!p) return stuck("proj-not-pair");
      return stepped(ex::lit(e->kind == ExprKind::Fst ? p->first : p->second),
                     s);
    }
    case ExprKind::InjL:
    case ExprKind::InjR: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      return stepped(ex::lit(e->kind == ExprKind::InjL ? ex::vinjl(v)
                                                       : ex::vinjr(v)),
                     s);
    }
    case ExprKind::Match: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      const InjV* inj = as_inj(v);
      if (!inj) return stuck("match-not-injection");
      // The branch becomes a closure value applied to the payload, so the
      // step count and the measure see one application, the same as the
      // desugaring into case lambdas.
      const std::string& binder = inj->right ? e->name2 : e->name;
      const ExprPtr& branch = e->kids[inj->right ? 2 : 1];
      return stepped(
          ex::app(ex::lit(ex::vclo("", binder, branch)), ex::lit(inj->payload)),
          s);
    }
    case ExprKind::Let: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      return stepped(subst(e->name, v, e->kids[1]), s);
    }
    case ExprKind::Seq: {
      if (!is_value(e->kids[0])) return stuck("operand-not-a-value");
      return stepped(e->kids[1], s);
    }
    case ExprKind::Alloc: {
      const ValPtr& count = val_of(e->kids[0]);
      const ValPtr& init = val_of(e->kids[1]);
      if (!count || !init) return stuck("operand-not-a-value");
      const std::int64_t* n = as_int(count);
      if (!n) return stuck("alloc-count-not-integer");
      if (*n <= 0) return stuck("alloc-nonpositive", std::to_string(*n));
      State next = s;
      std::uint64_t base = next.next_loc;
      for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(*n); ++i)
        next.heap[base + i] = init;
      next.next_loc = base + static_cast<std::uint64_t>(*n);
      return stepped(ex::lit(ex::vloc(base)), std::move(next));
    }
    case ExprKind::Free: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      const Loc* l = as_loc(v);
      if (!l) return stuck("not-a-location");
      auto it = s.heap.find(l->index);
      if (it == s.heap.end())
        return stuck("unallocated-location", std::to_string(l->index));
      State next = s;
      next.heap.erase(l->index);
      return stepped(ex::unit(), std::move(next));
    }
    case ExprKind::Load: {
      const ValPtr& v = val_of(e->kids[0]);
      if (!v) return stuck("operand-not-a-value");
      const Loc* l = as_loc(v);
      if (!l) return stuck("not-a-location");
      auto it = s.heap.find(l->index);
      if (it == s.heap.end())
        return stuck("unallocated-location", std::to_string(l->index));
      return stepped(ex::lit(it->second), s);
    }
    case ExprKind::Store: {
      const ValPtr& dst = val_of(e->kids[0]);
      const ValPtr& src = val_of(e->kids[1]);
      if (!dst || !src) return stuck("operand-not-a-value");
      const Loc* l = as_loc(dst);
      if (!l) return stuck("not-a-location");
      if (!s.heap.count(l->index))
        return stuck("unallocated-location", std::to_string(l->index));
      State next = s;
      next.heap[l->index] = src;
      return stepped(ex::unit(), std::move(next));
    }
    case ExprKind::CmpXchg: {
      const ValPtr& dst = val_of(e->kids[0]);
      const ValPtr& expected = val_of(e->kids[1]);
      const ValPtr& desired = val_of(e->kids[2]);
      if (!dst || !expected || !desired) return stuck("operand-not-a-value");
      const Loc* l = as_loc(dst);
      if (!l) return stuck("not-a-location");
      auto it = s.heap.find(l->index);
      if (it == s.heap.end())
        return stuck("unallocated-location", std::to_string(l->index));
      ValPtr old = it->second;
      if (!vals_compare_safe(old, expected))
        return stuck("incomparable-equality",
                     "compare-exchange on boxed values");
      bool hit = val_equal(old, expected);
      State next = s;
      if (hit) next.heap[l->index] = desired;
      return stepped(ex::lit(ex::vpair(std::move(old), ex::vbool(hit))),
                     std::move(next));
    }
    case ExprKind::Xchg: {
      const ValPtr& dst = val_of(e->kids[0]);
      const ValPtr& src = val_of(e->kids[1]);
      if (!dst || !src) return stuck("operand-not-a-value");
      const Loc* l = as_loc(dst);
      if (!l) return stuck("not-a-location");
      auto it = s.heap.find(l->index);
      if (it == s.heap.end())
        return stuck("unallocated-location", std::to_string(l->index));
      ValPtr old = it->second;
      State next = s;
      next.heap[l->index] = src;
      return stepped(ex::lit(std::move(old)), std::move(next));
    }
    case ExprKind::Faa: {
      const ValPtr& dst = val_of(e->kids[0]);
      const ValPtr& delta = val_of(e->kids[1]);
      if (!dst || !delta) return stuck("operand-not-a-value");
      const Loc* l = as_loc(dst);
      if (!l) return stuck("not-a-location");
      auto it = s.heap.find(l->index);
      if (it == s.heap.end())
        return stuck("unallocated-location", std::to_string(l->index));
      const std::int64_t* old_n = as_int(it->second);
      const std::int64_t* add_n = as_int(delta);
      if (!old_n || !add_n)
        return stuck("faa-type-error", "fetch-and-add needs integers");
      ValPtr old = it->second;
      State next = s;
      next.heap[l->index] = ex::vint(static_cast<std::int64_t>(
          static_cast<std::uint64_t>(*old_n) +
          static_cast<std::uint64_t>(*add_n)));
      return stepped(ex::lit(std::move(old)), std::move(next));
    }
    case ExprKind::Fork: {
      HeadResult r = stepped(ex::unit(), s);
      r.forks.push_back(e->kids[0]);
      return r;
    }
    case ExprKind::NewProph: {
      State next = s;
      std::uint64_t id = 0;
      while (next.prophs.count(id)) ++id;
      next.prophs.insert(id);
      return stepped(ex::lit(ex::vproph(id)), std::move(next));
    }
    case ExprKind::Resolve: {
      const ValPtr& target = val_of(e->kids[1]);
      const ValPtr& payload = val_of(e->kids[2]);
      if (!target || !payload) return stuck("operand-not-a-value");
      const ProphId* p = as_proph(target);
      if (!p) return stuck("resolve-not-prophecy");
      const ExprPtr& inner = e->kids[0];
      if (is_value(inner))
        return stuck("resolve-inner-value",
                     "resolved expression is already a value");
      HeadResult h = head_step(inner, s, atomic_fuel);
      if (h.tag == HeadResult::Tag::Stuck)
        return stuck("resolve-inner-stuck", h.stuck.reason);
      if (!is_value(h.expr))
        return stuck("resolve-inner-not-value",
                     "resolved expression must step to a value");
      HeadResult r = stepped(h.expr, std::move(h.state));
      r.forks = std::move(h.forks);
      r.observations = std::move(h.observations);
      r.observations.push_back(Observation{*p, h.expr->lit, payload});
      return r;
    }
    case ExprKind::Burn: {
      const ValPtr& count = val_of(e->kids[1]);
      if (!count) return stuck("operand-not-a-value");
      State next = s;
      StuckInfo fail = apply_burn(*e, count, next);
      if (!fail.reason.empty()) return stuck(fail.reason, fail.detail);
      return stepped(e->kids[0], std::move(next));
    }
    case ExprKind::Atomic: {
      AtomicResult a = atomic_eval(e->kids[0], s, atomic_fuel);
      if (!a.ok)
        return stuck("atomic-block-stuck",
                     a.stuck.detail.empty()
                         ? a.stuck.reason
                         : a.stuck.reason + ": " + a.stuck.detail);
      return stepped(ex::lit(std::move(a.value)), std::move(a.state));
    }
  }
  return stuck("operand-not-a-value", "unknown expression kind");
}

HeadResult prim_step(const ExprPtr& e, const State& s,
                     std::uint64_t atomic_fuel) {
  std::optional<Decomposition> d = decompose(e);
  if (!d) {
    HeadResult r;
    r.tag = HeadResult::Tag::IsValue;
    r.expr = e;
    r.state = s;
    return r;
  }
  HeadResult h = head_step(d->redex, s, atomic_fuel);
  if (h.tag == HeadResult::Tag::Stepped) h.expr = fill(d->ctx, h.expr);
  return h;
}

ThreadStepResult tp_step(const Config& c, std::size_t tid,
                         std::uint64_t atomic_fuel) {
  ThreadStepResult out;
  if (tid >= c.threads.size()) return out;
  const ExprPtr& t = c.threads[tid];
  if (is_value(t)) return out;
  HeadResult h = prim_step(t, c.state, atomic_fuel);
  if (h.tag == HeadResult::Tag::Stuck) {
    out.tag = ThreadStepResult::Tag::Stuck;
    out.stuck = std::move(h.stuck);
    return out;
  }
  out.tag = ThreadStepResult::Tag::Stepped;
  out.config.threads = c.threads;
  out.config.threads[tid] = std::move(h.expr);
  for (ExprPtr& f : h.forks) out.config.threads.push_back(std::move(f));
  out.config.state = std::move(h.state);
  out.observations = std::move(h.observations);
  return out;
}

namespace {

bool all_values(const Config& c) {
  for (const ExprPtr& t : c.threads)
    if (!is_value(t)) return false;
  return true;
}

}  // namespace

RunOutcome run(const Config& c, const Scheduler& sched,
               const RunOptions& opts) {
  RunOutcome out;
  out.config = c;
  std::mt19937_64 rng(sched.seed);
  std::size_t rr_cursor = 0;
  std::size_t script_pos = 0;
  if (opts.trace_measure) out.measures.push_back(config_measure(out.config));
  for (;;) {
    if (all_values(out.config)) {
      out.tag = RunOutcome::Tag::AllValues;
      return out;
    }
    if (out.steps >= opts.max_steps) {
      out.tag = RunOutcome::Tag::BudgetExhausted;
      return out;
    }
    std::size_t tid = 0;
    switch (sched.kind) {
      case Scheduler::Kind::RoundRobin: {
        std::size_t n = out.config.threads.size();
        std::size_t probe = rr_cursor;
        for (std::size_t i = 0; i < n; ++i, ++probe) {
          if (!is_value(out.config.threads[probe % n])) break;
        }
        tid = probe % n;
        rr_cursor = (tid + 1) % n;
        break;
      }
      case Scheduler::Kind::Random: {
        std::vector<std::size_t> runnable;
        for (std::size_t i = 0; i < out.config.threads.size(); ++i)
          if (!is_value(out.config.threads[i])) runnable.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0,
                                                        runnable.size() - 1);
        tid = runnable[pick(rng)];
        break;
      }
      case Scheduler::Kind::Script: {
        if (script_pos >= sched.script.size()) {
          out.tag = RunOutcome::Tag::BudgetExhausted;
          return out;
        }
        tid = sched.script[script_pos++];
        if (tid >= out.config.threads.size() ||
            is_value(out.config.threads[tid])) {
          out.tag = RunOutcome::Tag::Stuck;
          out.stuck_thread = tid;
          out.stuck = {"script-thread-not-runnable", std::to_string(tid)};
          return out;
        }
        break;
      }
    }
    ThreadStepResult r = tp_step(out.config, tid, opts.atomic_fuel);
    if (r.tag == ThreadStepResult::Tag::Stuck) {
      out.tag = RunOutcome::Tag::Stuck;
      out.stuck_thread = tid;
      out.stuck = std::move(r.stuck);
      return out;
    }
    out.config = std::move(r.config);
    for (Observation& o : r.observations)
      out.observations.push_back(std::move(o));
    out.schedule.push_back(tid);
    ++out.steps;
    if (opts.trace_measure) out.measures.push_back(config_measure(out.config));
  }
}

}  // namespace permlang
