#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "permlang/program.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

// Random program generators for the property tests.
namespace gen {

using namespace permlang;

struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(rng);
  }

  std::int64_t small_int() { return static_cast<std::int64_t>(pick(19)) - 9; }

  bool coin() { return pick(2) == 0; }

  std::string name() {
    static const char* pool[] = {"x", "y", "z", "f", "g", "acc", "n"};
    return pool[pick(7)];
  }

  std::string binder() { return pick(5) == 0 ? "" : name(); }

  // A closed value with no heap references, boxed shapes included.
  ValPtr value(int depth) {
    switch (depth <= 0 ? pick(4) : pick(7)) {
      case 0:
        return ex::vint(small_int());
      case 1:
        return ex::vbool(coin());
      case 2:
        return ex::vunit();
      case 3:
        return ex::vpoison();
      case 4:
        return ex::vpair(value(depth - 1), value(depth - 1));
      case 5:
        return coin() ? ex::vinjl(value(depth - 1))
                      : ex::vinjr(value(depth - 1));
      default:
        return ex::vclo(binder(), binder(), ex::int_(small_int()));
    }
  }

  // A closed expression usable as a branch or body payload. Never contains
  // an application, so generated redexes keep their head constructor as the
  // only interesting node.
  ExprPtr quiet_expr(int depth) {
    if (depth <= 0) return ex::lit(value(0));
    switch (pick(5)) {
      case 0:
        return ex::lit(value(depth));
      case 1:
        return ex::binop(BinOp::Plus, quiet_expr(depth - 1),
                         quiet_expr(depth - 1));
      case 2:
        return ex::pair(quiet_expr(depth - 1), quiet_expr(depth - 1));
      case 3:
        return ex::seq(quiet_expr(depth - 1), quiet_expr(depth - 1));
      default:
        return ex::if_(ex::bool_(coin()), quiet_expr(depth - 1),
                       quiet_expr(depth - 1));
    }
  }

  // A head redex whose head constructor is not App, paired with a state the
  // step succeeds in. The state always carries one integer cell at location
  // 1, a permission at level 2 and prophecy id 0.
  ExprPtr non_app_redex(State& s) {
    s = State{};
    s.heap[1] = ex::vint(7);
    s.next_loc = 2;
    s.prophs.insert(0);
    s.call_perms.insert(Level{2});
    switch (pick(22)) {
      case 0:
        return ex::rec(binder(), binder(), quiet_expr(1));
      case 1:
        return ex::neg(ex::int_(small_int()));
      case 2: {
        BinOp arith[] = {BinOp::Plus, BinOp::Minus, BinOp::Mult};
        return ex::binop(arith[pick(3)], ex::int_(small_int()),
                         ex::int_(small_int()));
      }
      case 3:
        return ex::binop(BinOp::Offset, ex::lit(ex::vloc(5)),
                         ex::int_(static_cast<std::int64_t>(pick(10))));
      case 4: {
        BinOp cmp[] = {BinOp::Eq, BinOp::Lt, BinOp::Le};
        return ex::binop(cmp[pick(3)], ex::int_(small_int()),
                         ex::int_(small_int()));
      }
      case 5:
        return ex::if_(ex::bool_(coin()), quiet_expr(1), quiet_expr(1));
      case 6:
        return ex::pair(ex::lit(value(1)), ex::lit(value(1)));
      case 7: {
        ExprPtr p = ex::lit(ex::vpair(value(1), value(1)));
        return coin() ? ex::fst(p) : ex::snd(p);
      }
      case 8: {
        ExprPtr v = ex::lit(value(1));
        return coin() ? ex::injl(v) : ex::injr(v);
      }
      case 9: {
        ValPtr scrut =
            coin() ? ex::vinjl(value(1)) : ex::vinjr(value(1));
        return ex::match_(ex::lit(scrut), binder(), quiet_expr(1), binder(),
                          quiet_expr(1));
      }
      case 10:
        return ex::let_(name(), ex::lit(value(1)), quiet_expr(1));
      case 11:
        return ex::seq(ex::lit(value(1)), quiet_expr(1));
      case 12:
        return ex::alloc(ex::int_(1 + static_cast<std::int64_t>(pick(3))),
                         ex::lit(value(1)));
      case 13:
        return ex::free_(ex::lit(ex::vloc(1)));
      case 14:
        return ex::load(ex::lit(ex::vloc(1)));
      case 15:
        return ex::store(ex::lit(ex::vloc(1)), ex::lit(value(1)));
      case 16:
        return ex::cmpxchg(ex::lit(ex::vloc(1)), ex::int_(coin() ? 7 : 3),
                           ex::lit(value(1)));
      case 17:
        return ex::xchg(ex::lit(ex::vloc(1)), ex::lit(value(1)));
      case 18:
        return ex::faa(ex::lit(ex::vloc(1)), ex::int_(small_int()));
      case 19:
        return coin() ? ex::fork(quiet_expr(1)) : ex::newproph();
      case 20:
        return ex::resolve(
            ex::binop(BinOp::Plus, ex::int_(1), ex::int_(2)),
            ex::lit(ex::vproph(0)), ex::lit(value(1)));
      default:
        return coin()
                   ? ex::burn(quiet_expr(1), Level{2},
                              ex::int_(static_cast<std::int64_t>(pick(4))),
                              Level{1})
                   : ex::atomic(ex::binop(BinOp::Plus, ex::int_(small_int()),
                                          ex::int_(small_int())));
    }
  }

  // A closed expression in the fragment atomic blocks accept. Locations 1
  // and 2 are assumed allocated with integer cells; burns use levels 2 -> 1
  // against a stock seeded with level-2 permissions.
  ExprPtr atomic_fragment(int depth, std::vector<std::string> scope) {
    if (depth <= 0) {
      if (!scope.empty() && pick(3) == 0)
        return ex::var(scope[pick(scope.size())]);
      switch (pick(4)) {
        case 0:
          return ex::int_(small_int());
        case 1:
          return ex::bool_(coin());
        case 2:
          return ex::unit();
        default:
          return ex::lit(ex::vloc(1 + pick(2)));
      }
    }
    switch (pick(16)) {
      case 0: {
        std::string self = binder();
        std::string arg = binder();
        std::vector<std::string> inner = scope;
        if (!self.empty()) inner.push_back(self);
        if (!arg.empty()) inner.push_back(arg);
        return ex::rec(self, arg, atomic_fragment(depth - 1, inner));
      }
      case 1:
        return ex::app(atomic_fragment(depth - 1, scope),
                       atomic_fragment(depth - 1, scope));
      case 2:
        return ex::neg(atomic_fragment(depth - 1, scope));
      case 3: {
        BinOp ops[] = {BinOp::Plus, BinOp::Minus, BinOp::Mult, BinOp::Eq,
                       BinOp::Lt,   BinOp::Le};
        return ex::binop(ops[pick(6)], atomic_fragment(depth - 1, scope),
                         atomic_fragment(depth - 1, scope));
      }
      case 4:
        return ex::if_(atomic_fragment(depth - 1, scope),
                       atomic_fragment(depth - 1, scope),
                       atomic_fragment(depth - 1, scope));
      case 5:
        return ex::pair(atomic_fragment(depth - 1, scope),
                        atomic_fragment(depth - 1, scope));
      case 6:
        return coin() ? ex::fst(atomic_fragment(depth - 1, scope))
                      : ex::snd(atomic_fragment(depth - 1, scope));
      case 7:
        return coin() ? ex::injl(atomic_fragment(depth - 1, scope))
                      : ex::injr(atomic_fragment(depth - 1, scope));
      case 8: {
        std::string lb = binder();
        std::string rb = binder();
        std::vector<std::string> ls = scope;
        std::vector<std::string> rs = scope;
        if (!lb.empty()) ls.push_back(lb);
        if (!rb.empty()) rs.push_back(rb);
        return ex::match_(atomic_fragment(depth - 1, scope), lb,
                          atomic_fragment(depth - 1, ls), rb,
                          atomic_fragment(depth - 1, rs));
      }
      case 9: {
        std::string b = name();
        std::vector<std::string> inner = scope;
        inner.push_back(b);
        return ex::let_(b, atomic_fragment(depth - 1, scope),
                        atomic_fragment(depth - 1, inner));
      }
      case 10:
        return ex::seq(atomic_fragment(depth - 1, scope),
                       atomic_fragment(depth - 1, scope));
      case 11:
        return ex::load(atomic_fragment(depth - 1, scope));
      case 12:
        return ex::store(atomic_fragment(depth - 1, scope),
                         atomic_fragment(depth - 1, scope));
      case 13:
        return ex::burn(atomic_fragment(depth - 1, scope), Level{2},
                        ex::int_(static_cast<std::int64_t>(pick(3))),
                        Level{1});
      default:
        return atomic_fragment(0, scope);
    }
  }

  // A closed expression every node of which has surface syntax, for
  // print/parse round-trips. Burn levels come from `decls`.
  ExprPtr printable(int depth, std::vector<std::string> scope,
                    const std::vector<LevelDecl>& decls) {
    if (depth <= 0) {
      if (!scope.empty() && pick(3) == 0)
        return ex::var(scope[pick(scope.size())]);
      switch (pick(5)) {
        case 0:
          return ex::int_(small_int());
        case 1:
          return ex::bool_(coin());
        case 2:
          return ex::unit();
        case 3:
          return ex::poison();
        default:
          return ex::int_(small_int());
      }
    }
    auto sub = [&](std::vector<std::string> sc) {
      return printable(depth - 1, std::move(sc), decls);
    };
    auto extend = [&](const std::string& b) {
      std::vector<std::string> sc = scope;
      if (!b.empty()) sc.push_back(b);
      return sc;
    };
    switch (pick(23)) {
      case 0: {
        std::string self = binder();
        std::string arg = binder();
        std::vector<std::string> sc = scope;
        if (!self.empty()) sc.push_back(self);
        if (!arg.empty()) sc.push_back(arg);
        return ex::rec(self, arg, sub(sc));
      }
      case 1:
        return ex::app(sub(scope), sub(scope));
      case 2:
        return ex::neg(sub(scope));
      case 3: {
        BinOp ops[] = {BinOp::Plus, BinOp::Minus, BinOp::Mult, BinOp::Offset,
                       BinOp::Eq,   BinOp::Lt,    BinOp::Le};
        return ex::binop(ops[pick(7)], sub(scope), sub(scope));
      }
      case 4:
        return ex::if_(sub(scope), sub(scope), sub(scope));
      case 5:
        return ex::pair(sub(scope), sub(scope));
      case 6:
        return coin() ? ex::fst(sub(scope)) : ex::snd(sub(scope));
      case 7:
        return coin() ? ex::injl(sub(scope)) : ex::injr(sub(scope));
      case 8: {
        std::string lb = binder();
        std::string rb = binder();
        return ex::match_(sub(scope), lb, sub(extend(lb)), rb,
                          sub(extend(rb)));
      }
      case 9: {
        std::string b = name();
        return ex::let_(b, sub(scope), sub(extend(b)));
      }
      case 10:
        return ex::seq(sub(scope), sub(scope));
      case 11:
        return ex::alloc(sub(scope), sub(scope));
      case 12:
        return ex::free_(sub(scope));
      case 13:
        return ex::load(sub(scope));
      case 14:
        return ex::store(sub(scope), sub(scope));
      case 15:
        return ex::cmpxchg(sub(scope), sub(scope), sub(scope));
      case 16:
        return ex::xchg(sub(scope), sub(scope));
      case 17:
        return ex::faa(sub(scope), sub(scope));
      case 18:
        return ex::fork(sub(scope));
      case 19:
        return ex::newproph();
      case 20:
        return ex::resolve(sub(scope), sub(scope), sub(scope));
      case 21: {
        Level from = decls[pick(decls.size())].level;
        Level to = decls[pick(decls.size())].level;
        ExprPtr count =
            coin() ? ex::int_(static_cast<std::int64_t>(pick(4))) : sub(scope);
        return ex::burn(sub(scope), from, count, to);
      }
      default:
        return ex::atomic(sub(scope));
    }
  }
};

}  // namespace gen
