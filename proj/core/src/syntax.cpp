#include "permlang/syntax.hpp"

#include "permlang/state.hpp"

namespace permlang {

namespace ex {

namespace {

ValPtr mkval(Val v) { return std::make_shared<const Val>(std::move(v)); }

ExprPtr mk(ExprKind k, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->kids = std::move(kids);
  return e;
}

}  // namespace

ValPtr vint(std::int64_t n) {
  Val v;
  v.v = n;
  return mkval(std::move(v));
}

ValPtr vbool(bool b) {
  Val v;
  v.v = b;
  return mkval(std::move(v));
}

ValPtr vunit() {
  Val v;
  v.v = UnitV{};
  return mkval(std::move(v));
}

ValPtr vpoison() {
  Val v;
  v.v = PoisonV{};
  return mkval(std::move(v));
}

ValPtr vloc(std::uint64_t index) {
  Val v;
  v.v = Loc{index};
  return mkval(std::move(v));
}

ValPtr vproph(std::uint64_t index) {
  Val v;
  v.v = ProphId{index};
  return mkval(std::move(v));
}

ValPtr vclo(std::string self, std::string arg, ExprPtr body) {
  Val v;
  v.v = RecClosure{std::move(self), std::move(arg), std::move(body)};
  return mkval(std::move(v));
}

ValPtr vpair(ValPtr first, ValPtr second) {
  Val v;
  v.v = PairV{std::move(first), std::move(second)};
  return mkval(std::move(v));
}

ValPtr vinjl(ValPtr payload) {
  Val v;
  v.v = InjV{false, std::move(payload)};
  return mkval(std::move(v));
}

ValPtr vinjr(ValPtr payload) {
  Val v;
  v.v = InjV{true, std::move(payload)};
  return mkval(std::move(v));
}

ExprPtr lit(ValPtr v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Lit;
  e->lit = std::move(v);
  return e;
}

ExprPtr int_(std::int64_t n) { return lit(vint(n)); }
ExprPtr bool_(bool b) { return lit(vbool(b)); }
ExprPtr unit() { return lit(vunit()); }
ExprPtr poison() { return lit(vpoison()); }

ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr rec(std::string self, std::string arg, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Rec;
  e->name = std::move(self);
  e->name2 = std::move(arg);
  e->kids = {std::move(body)};
  return e;
}

ExprPtr fun(std::string arg, ExprPtr body) {
  return rec("", std::move(arg), std::move(body));
}

ExprPtr app(ExprPtr fn, ExprPtr arg) {
  return mk(ExprKind::App, {std::move(fn), std::move(arg)});
}

ExprPtr neg(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::UnOpE;
  e->un = UnOp::Minus;
  e->kids = {std::move(operand)};
  return e;
}

ExprPtr binop(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BinOpE;
  e->bin = op;
  e->kids = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr if_(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
  return mk(ExprKind::If, {std::move(cond), std::move(then_e), std::move(else_e)});
}

ExprPtr pair(ExprPtr first, ExprPtr second) {
  return mk(ExprKind::Pair, {std::move(first), std::move(second)});
}

ExprPtr fst(ExprPtr operand) { return mk(ExprKind::Fst, {std::move(operand)}); }
ExprPtr snd(ExprPtr operand) { return mk(ExprKind::Snd, {std::move(operand)}); }
ExprPtr injl(ExprPtr operand) { return mk(ExprKind::InjL, {std::move(operand)}); }
ExprPtr injr(ExprPtr operand) { return mk(ExprKind::InjR, {std::move(operand)}); }

ExprPtr match_(ExprPtr scrut, std::string lbind, ExprPtr lbody,
               std::string rbind, ExprPtr rbody) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Match;
  e->name = std::move(lbind);
  e->name2 = std::move(rbind);
  e->kids = {std::move(scrut), std::move(lbody), std::move(rbody)};
  return e;
}

ExprPtr let_(std::string binder, ExprPtr bound, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Let;
  e->name = std::move(binder);
  e->kids = {std::move(bound), std::move(body)};
  return e;
}

ExprPtr seq(ExprPtr first, ExprPtr second) {
  return mk(ExprKind::Seq, {std::move(first), std::move(second)});
}

ExprPtr alloc(ExprPtr count, ExprPtr init) {
  return mk(ExprKind::Alloc, {std::move(count), std::move(init)});
}

ExprPtr free_(ExprPtr operand) {
  return mk(ExprKind::Free, {std::move(operand)});
}

ExprPtr load(ExprPtr operand) {
  return mk(ExprKind::Load, {std::move(operand)});
}

ExprPtr store(ExprPtr dst, ExprPtr src) {
  return mk(ExprKind::Store, {std::move(dst), std::move(src)});
}

ExprPtr cmpxchg(ExprPtr dst, ExprPtr expected, ExprPtr desired) {
  return mk(ExprKind::CmpXchg,
            {std::move(dst), std::move(expected), std::move(desired)});
}

ExprPtr xchg(ExprPtr dst, ExprPtr src) {
  return mk(ExprKind::Xchg, {std::move(dst), std::move(src)});
}

ExprPtr faa(ExprPtr dst, ExprPtr delta) {
  return mk(ExprKind::Faa, {std::move(dst), std::move(delta)});
}

ExprPtr fork(ExprPtr body) { return mk(ExprKind::Fork, {std::move(body)}); }

ExprPtr newproph() { return mk(ExprKind::NewProph, {}); }

ExprPtr resolve(ExprPtr inner, ExprPtr target, ExprPtr payload) {
  return mk(ExprKind::Resolve,
            {std::move(inner), std::move(target), std::move(payload)});
}

ExprPtr burn(ExprPtr body, Level from, ExprPtr count, Level to) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Burn;
  e->burn_from = from;
  e->burn_to = to;
  e->kids = {std::move(body), std::move(count)};
  return e;
}

ExprPtr atomic(ExprPtr body) { return mk(ExprKind::Atomic, {std::move(body)}); }

}  // namespace ex

const std::int64_t* as_int(const ValPtr& v) {
  return v ? std::get_if<std::int64_t>(&v->v) : nullptr;
}

const bool* as_bool(const ValPtr& v) {
  return v ? std::get_if<bool>(&v->v) : nullptr;
}

bool is_unit(const ValPtr& v) {
  return v && std::holds_alternative<UnitV>(v->v);
}

bool is_poison(const ValPtr& v) {
  return v && std::holds_alternative<PoisonV>(v->v);
}

const Loc* as_loc(const ValPtr& v) {
  return v ? std::get_if<Loc>(&v->v) : nullptr;
}

const ProphId* as_proph(const ValPtr& v) {
  return v ? std::get_if<ProphId>(&v->v) : nullptr;
}

const RecClosure* as_closure(const ValPtr& v) {
  return v ? std::get_if<RecClosure>(&v->v) : nullptr;
}

const PairV* as_pair(const ValPtr& v) {
  return v ? std::get_if<PairV>(&v->v) : nullptr;
}

const InjV* as_inj(const ValPtr& v) {
  return v ? std::get_if<InjV>(&v->v) : nullptr;
}

bool is_value(const ExprPtr& e) { return e && e->kind == ExprKind::Lit; }

bool val_equal(const ValPtr& a, const ValPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  if (const auto* x = std::get_if<std::int64_t>(&a->v))
    return *x == *std::get_if<std::int64_t>(&b->v);
  if (const auto* x = std::get_if<bool>(&a->v))
    return *x == *std::get_if<bool>(&b->v);
  if (std::holds_alternative<UnitV>(a->v)) return true;
  if (std::holds_alternative<PoisonV>(a->v)) return true;
  if (const auto* x = std::get_if<Loc>(&a->v))
    return *x == *std::get_if<Loc>(&b->v);
  if (const auto* x = std::get_if<ProphId>(&a->v))
    return *x == *std::get_if<ProphId>(&b->v);
  if (const auto* x = std::get_if<RecClosure>(&a->v)) {
    const auto* y = std::get_if<RecClosure>(&b->v);
    return x->self == y->self && x->arg == y->arg &&
           expr_equal(x->body, y->body);
  }
  if (const auto* x = std::get_if<PairV>(&a->v)) {
    const auto* y = std::get_if<PairV>(&b->v);
    return val_equal(x->first, y->first) && val_equal(x->second, y->second);
  }
  const auto* x = std::get_if<InjV>(&a->v);
  const auto* y = std::get_if<InjV>(&b->v);
  return x->right == y->right && val_equal(x->payload, y->payload);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Lit:
      return val_equal(a->lit, b->lit);
    case ExprKind::Var:
      return a->name == b->name;
    case ExprKind::Rec:
    case ExprKind::Match:
      if (a->name != b->name || a->name2 != b->name2) return false;
      break;
    case ExprKind::Let:
      if (a->name != b->name) return false;
      break;
    case ExprKind::UnOpE:
      if (a->un != b->un) return false;
      break;
    case ExprKind::BinOpE:
      if (a->bin != b->bin) return false;
      break;
    case ExprKind::Burn:
      if (a->burn_from != b->burn_from || a->burn_to != b->burn_to)
        return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

bool val_is_unboxed(const ValPtr& v) {
  if (!v) return false;
  if (std::holds_alternative<RecClosure>(v->v) ||
      std::holds_alternative<PairV>(v->v))
    return false;
  if (const InjV* inj = std::get_if<InjV>(&v->v)) {
    const ValPtr& p = inj->payload;
    if (!p) return false;
    return !std::holds_alternative<RecClosure>(p->v) &&
           !std::holds_alternative<PairV>(p->v) &&
           !std::holds_alternative<InjV>(p->v);
  }
  return true;
}

bool vals_compare_safe(const ValPtr& a, const ValPtr& b) {
  return val_is_unboxed(a) || val_is_unboxed(b);
}

ExprPtr subst(const std::string& name, const ValPtr& v, const ExprPtr& e) {
  if (name.empty() || !e) return e;
  switch (e->kind) {
    case ExprKind::Lit:
      return e;
    case ExprKind::Var:
      return e->name == name ? ex::lit(v) : e;
    case ExprKind::Rec:
      if (e->name == name || e->name2 == name) return e;
      break;
    default:
      break;
  }
  std::vector<ExprPtr> kids = e->kids;
  bool changed = false;
  auto sub_at = [&](std::size_t i) {
    ExprPtr r = subst(name, v, kids[i]);
    if (r != kids[i]) {
      kids[i] = std::move(r);
      changed = true;
    }
  };
  switch (e->kind) {
    case ExprKind::Match:
      sub_at(0);
      if (e->name != name) sub_at(1);
      if (e->name2 != name) sub_at(2);
      break;
    case ExprKind::Let:
      sub_at(0);
      if (e->name != name) sub_at(1);
      break;
    default:
      for (std::size_t i = 0; i < kids.size(); ++i) sub_at(i);
      break;
  }
  if (!changed) return e;
  auto out = std::make_shared<Expr>(*e);
  out->kids = std::move(kids);
  return out;
}

namespace {

void collect_free(const ExprPtr& e, std::set<std::string>& bound,
                  std::set<std::string>& out);

void collect_free_val(const ValPtr& v, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  if (!v) return;
  if (const RecClosure* c = std::get_if<RecClosure>(&v->v)) {
    bool added_self = !c->self.empty() && bound.insert(c->self).second;
    bool added_arg = !c->arg.empty() && bound.insert(c->arg).second;
    collect_free(c->body, bound, out);
    if (added_self) bound.erase(c->self);
    if (added_arg) bound.erase(c->arg);
    return;
  }
  if (const PairV* p = std::get_if<PairV>(&v->v)) {
    collect_free_val(p->first, bound, out);
    collect_free_val(p->second, bound, out);
    return;
  }
  if (const InjV* inj = std::get_if<InjV>(&v->v))
    collect_free_val(inj->payload, bound, out);
}

void collect_free(const ExprPtr& e, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::Lit:
      collect_free_val(e->lit, bound, out);
      return;
    case ExprKind::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case ExprKind::Rec: {
      bool added_self = !e->name.empty() && bound.insert(e->name).second;
      bool added_arg = !e->name2.empty() && bound.insert(e->name2).second;
      collect_free(e->kids[0], bound, out);
      if (added_self) bound.erase(e->name);
      if (added_arg) bound.erase(e->name2);
      return;
    }
    case ExprKind::Match: {
      collect_free(e->kids[0], bound, out);
      bool added_l = !e->name.empty() && bound.insert(e->name).second;
      collect_free(e->kids[1], bound, out);
      if (added_l) bound.erase(e->name);
      bool added_r = !e->name2.empty() && bound.insert(e->name2).second;
      collect_free(e->kids[2], bound, out);
      if (added_r) bound.erase(e->name2);
      return;
    }
    case ExprKind::Let: {
      collect_free(e->kids[0], bound, out);
      bool added = !e->name.empty() && bound.insert(e->name).second;
      collect_free(e->kids[1], bound, out);
      if (added) bound.erase(e->name);
      return;
    }
    default:
      for (const ExprPtr& k : e->kids) collect_free(k, bound, out);
      return;
  }
}

// The kid position evaluated next, or nullopt when the node itself is the
// head redex. Branch, body and count-free positions are not frames. Resolve
// descends into its innermost operand only when that operand's redex sits
// under a proper context; an inner head redex or value is handled by the
// resolve head rule itself.
std::optional<std::size_t> frame_pos(const ExprPtr& e) {
  const auto& k = e->kids;
  auto nonval = [&](std::size_t i) { return !is_value(k[i]); };
  switch (e->kind) {
    case ExprKind::App:
    case ExprKind::BinOpE:
    case ExprKind::Pair:
    case ExprKind::Alloc:
    case ExprKind::Store:
    case ExprKind::Xchg:
    case ExprKind::Faa:
      if (nonval(1)) return 1;
      if (nonval(0)) return 0;
      return std::nullopt;
    case ExprKind::UnOpE:
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::InjL:
    case ExprKind::InjR:
    case ExprKind::Free:
    case ExprKind::Load:
    case ExprKind::If:
    case ExprKind::Match:
    case ExprKind::Let:
    case ExprKind::Seq:
      if (nonval(0)) return 0;
      return std::nullopt;
    case ExprKind::CmpXchg:
      if (nonval(2)) return 2;
      if (nonval(1)) return 1;
      if (nonval(0)) return 0;
      return std::nullopt;
    case ExprKind::Resolve:
      if (nonval(2)) return 2;
      if (nonval(1)) return 1;
      if (nonval(0) && frame_pos(k[0]).has_value()) return 0;
      return std::nullopt;
    case ExprKind::Burn:
      if (nonval(1)) return 1;
      return std::nullopt;
    case ExprKind::Lit:
    case ExprKind::Var:
    case ExprKind::Rec:
    case ExprKind::Fork:
    case ExprKind::NewProph:
    case ExprKind::Atomic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

bool is_closed(const ExprPtr& e) { return free_vars(e).empty(); }

std::optional<Decomposition> decompose(const ExprPtr& e) {
  if (!e || is_value(e)) return std::nullopt;
  Decomposition d;
  ExprPtr cur = e;
  for (;;) {
    std::optional<std::size_t> pos = frame_pos(cur);
    if (!pos) {
      d.redex = std::move(cur);
      return d;
    }
    d.ctx.push_back(Frame{cur, *pos});
    cur = cur->kids[*pos];
  }
}

ExprPtr fill(const EvalContext& ctx, ExprPtr e) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    auto n = std::make_shared<Expr>(*it->node);
    n->kids[it->hole] = std::move(e);
    e = std::move(n);
  }
  return e;
}

bool state_equal(const State& a, const State& b) {
  if (a.next_loc != b.next_loc) return false;
  if (a.prophs != b.prophs) return false;
  if (!(a.call_perms == b.call_perms)) return false;
  if (a.heap.size() != b.heap.size()) return false;
  auto ib = b.heap.begin();
  for (const auto& [l, v] : a.heap) {
    if (l != ib->first || !val_equal(v, ib->second)) return false;
    ++ib;
  }
  return true;
}

bool config_equal(const Config& a, const Config& b) {
  if (a.threads.size() != b.threads.size()) return false;
  for (std::size_t i = 0; i < a.threads.size(); ++i)
    if (!expr_equal(a.threads[i], b.threads[i])) return false;
  return state_equal(a.state, b.state);
}

}  // namespace permlang
