#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "permlang/level.hpp"

namespace permlang {

struct Val;
using ValPtr = std::shared_ptr<const Val>;
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct UnitV {};
struct PoisonV {};

struct Loc {
  std::uint64_t index = 0;
  friend constexpr auto operator<=>(Loc, Loc) = default;
};

struct ProphId {
  std::uint64_t index = 0;
  friend constexpr auto operator<=>(ProphId, ProphId) = default;
};

// A recursive closure. `self` and `arg` may be empty, meaning the binder is
// anonymous and binds nothing.
struct RecClosure {
  std::string self;
  std::string arg;
  ExprPtr body;
};

struct PairV {
  ValPtr first;
  ValPtr second;
};

struct InjV {
  bool right = false;
  ValPtr payload;
};

struct Val {
  std::variant<std::int64_t, bool, UnitV, PoisonV, Loc, ProphId, RecClosure,
               PairV, InjV>
      v;
};

enum class ExprKind {
  Lit,
  Var,
  Rec,
  App,
  UnOpE,
  BinOpE,
  If,
  Pair,
  Fst,
  Snd,
  InjL,
  InjR,
  Match,
  Let,
  Seq,
  Alloc,
  Free,
  Load,
  Store,
  CmpXchg,
  Xchg,
  Faa,
  Fork,
  NewProph,
  Resolve,
  Burn,
  Atomic,
};

enum class UnOp { Minus };
enum class BinOp { Plus, Minus, Mult, Offset, Eq, Lt, Le };

// One immutable AST node. Which fields are meaningful depends on `kind`:
//
//   Lit      lit                          kids []
//   Var      name                         kids []
//   Rec      name=self, name2=arg         kids [body]
//   App                                   kids [fn, arg]
//   UnOpE    un                           kids [operand]
//   BinOpE   bin                          kids [lhs, rhs]
//   If                                    kids [cond, then, else]
//   Pair                                  kids [first, second]
//   Fst/Snd/InjL/InjR/Free/Load/Fork/Atomic  kids [operand]
//   Match    name=left binder, name2=right binder
//                                         kids [scrutinee, lbody, rbody]
//   Let      name=binder                  kids [bound, body]
//   Seq                                   kids [first, second]
//   Alloc                                 kids [count, init]
//   Store                                 kids [dst, src]
//   CmpXchg                               kids [dst, expected, desired]
//   Xchg                                  kids [dst, src]
//   Faa                                   kids [dst, delta]
//   NewProph                              kids []
//   Resolve                               kids [inner, target, payload]
//   Burn     burn_from, burn_to           kids [body, count]
struct Expr {
  ExprKind kind = ExprKind::Lit;
  ValPtr lit;
  std::string name;
  std::string name2;
  UnOp un = UnOp::Minus;
  BinOp bin = BinOp::Plus;
  Level burn_from;
  Level burn_to;
  std::vector<ExprPtr> kids;
};

// Constructors. Expression factories are lowercase; value factories are
// prefixed with v.
namespace ex {

ValPtr vint(std::int64_t n);
ValPtr vbool(bool b);
ValPtr vunit();
ValPtr vpoison();
ValPtr vloc(std::uint64_t index);
ValPtr vproph(std::uint64_t index);
ValPtr vclo(std::string self, std::string arg, ExprPtr body);
ValPtr vpair(ValPtr first, ValPtr second);
ValPtr vinjl(ValPtr payload);
ValPtr vinjr(ValPtr payload);

ExprPtr lit(ValPtr v);
ExprPtr int_(std::int64_t n);
ExprPtr bool_(bool b);
ExprPtr unit();
ExprPtr poison();
ExprPtr var(std::string name);
ExprPtr rec(std::string self, std::string arg, ExprPtr body);
ExprPtr fun(std::string arg, ExprPtr body);
ExprPtr app(ExprPtr fn, ExprPtr arg);
ExprPtr neg(ExprPtr operand);
ExprPtr binop(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr if_(ExprPtr cond, ExprPtr then_e, ExprPtr else_e);
ExprPtr pair(ExprPtr first, ExprPtr second);
ExprPtr fst(ExprPtr operand);
ExprPtr snd(ExprPtr operand);
ExprPtr injl(ExprPtr operand);
ExprPtr injr(ExprPtr operand);
ExprPtr match_(ExprPtr scrut, std::string lbind, ExprPtr lbody,
               std::string rbind, ExprPtr rbody);
ExprPtr let_(std::string binder, ExprPtr bound, ExprPtr body);
ExprPtr seq(ExprPtr first, ExprPtr second);
ExprPtr alloc(ExprPtr count, ExprPtr init);
ExprPtr free_(ExprPtr operand);
ExprPtr load(ExprPtr operand);
ExprPtr store(ExprPtr dst, ExprPtr src);
ExprPtr cmpxchg(ExprPtr dst, ExprPtr expected, ExprPtr desired);
ExprPtr xchg(ExprPtr dst, ExprPtr src);
ExprPtr faa(ExprPtr dst, ExprPtr delta);
ExprPtr fork(ExprPtr body);
ExprPtr newproph();
ExprPtr resolve(ExprPtr inner, ExprPtr target, ExprPtr payload);
ExprPtr burn(ExprPtr body, Level from, ExprPtr count, Level to);
ExprPtr atomic(ExprPtr body);

}  // namespace ex

const std::int64_t* as_int(const ValPtr& v);
const bool* as_bool(const ValPtr& v);
bool is_unit(const ValPtr& v);
bool is_poison(const ValPtr& v);
const Loc* as_loc(const ValPtr& v);
const ProphId* as_proph(const ValPtr& v);
const RecClosure* as_closure(const ValPtr& v);
const PairV* as_pair(const ValPtr& v);
const InjV* as_inj(const ValPtr& v);

// An expression is a value exactly when it is a literal.
bool is_value(const ExprPtr& e);

bool val_equal(const ValPtr& a, const ValPtr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// A value is unboxed when it occupies a single machine word: a base literal,
// or an injection whose payload is a base literal. Closures, pairs and
// nested injections are boxed. Equality tests and CmpXchg are defined only
// when at least one side is unboxed.
bool val_is_unboxed(const ValPtr& v);
bool vals_compare_safe(const ValPtr& a, const ValPtr& b);

// Capture-free substitution of a closed value for a variable. Never descends
// into literals; closure bodies inside values are already closed when they
// are formed by evaluation. Returns the original pointer when nothing
// changed. An empty name substitutes nothing.
ExprPtr subst(const std::string& name, const ValPtr& v, const ExprPtr& e);

std::set<std::string> free_vars(const ExprPtr& e);
bool is_closed(const ExprPtr& e);

// One evaluation-context frame: an expression node together with the kid
// position the hole sits in. A context is a frame list, outermost first.
struct Frame {
  ExprPtr node;
  std::size_t hole = 0;
};

using EvalContext = std::vector<Frame>;

struct Decomposition {
  EvalContext ctx;
  ExprPtr redex;
};

// Splits a non-value expression into an evaluation context and the head
// redex it focuses. Returns nullopt exactly on values. Kids are tried right
// to left; branch and body positions are never frames, so redexes are always
// closed. fill is the inverse: fill(d.ctx, d.redex) rebuilds the expression.
std::optional<Decomposition> decompose(const ExprPtr& e);
ExprPtr fill(const EvalContext& ctx, ExprPtr e);

}  // namespace permlang
