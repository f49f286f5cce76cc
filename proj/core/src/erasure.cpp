#include "permlang/erasure.hpp"

#include <vector>

namespace permlang {

namespace {

bool val_has_effect(const ValPtr& v);

// A syntactic scan for operations whose removal would change the heap, the
// thread pool, or the prophecy pool. Closure bodies are scanned too, since a
// burn count could apply one.
bool expr_has_effect(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Store:
    case ExprKind::CmpXchg:
    case ExprKind::Xchg:
    case ExprKind::Faa:
    case ExprKind::Alloc:
    case ExprKind::Free:
    case ExprKind::Fork:
    case ExprKind::NewProph:
      return true;
    case ExprKind::Lit:
      return val_has_effect(e->lit);
    default:
      for (const ExprPtr& k : e->kids)
        if (expr_has_effect(k)) return true;
      return false;
  }
}

bool val_has_effect(const ValPtr& v) {
  if (const RecClosure* c = std::get_if<RecClosure>(&v->v))
    return expr_has_effect(c->body);
  if (const PairV* p = std::get_if<PairV>(&v->v))
    return val_has_effect(p->first) || val_has_effect(p->second);
  if (const InjV* i = std::get_if<InjV>(&v->v))
    return val_has_effect(i->payload);
  return false;
}

ValPtr erase_val(const ValPtr& v, const std::string& path);

// An atomic block can be dropped when its body is a single heap primitive
// with trivial operands, or already a value; such a block is equivalent to
// its body under any interleaving.
bool unwrappable(const ExprPtr& body) {
  if (body->kind == ExprKind::Lit) return true;
  switch (body->kind) {
    case ExprKind::Load:
    case ExprKind::Store:
    case ExprKind::CmpXchg:
    case ExprKind::Xchg:
    case ExprKind::Faa:
      for (const ExprPtr& k : body->kids)
        if (k->kind != ExprKind::Lit && k->kind != ExprKind::Var) return false;
      return true;
    default:
      return false;
  }
}

ExprPtr erase_rec(const ExprPtr& e, const std::string& path) {
  switch (e->kind) {
    case ExprKind::Lit: {
      ValPtr v = erase_val(e->lit, path);
      if (v == e->lit) return e;
      auto out = std::make_shared<Expr>(*e);
      out->lit = std::move(v);
      return out;
    }
    case ExprKind::Burn: {
      if (expr_has_effect(e->kids[1]))
        throw EraseError("burn count contains an effect at " + path +
                         "/burn.count");
      return erase_rec(e->kids[0], path + "/burn.body");
    }
    case ExprKind::Atomic: {
      ExprPtr body = erase_rec(e->kids[0], path + "/atomic.body");
      if (unwrappable(body)) return body;
      if (body == e->kids[0]) return e;
      auto out = std::make_shared<Expr>(*e);
      out->kids[0] = std::move(body);
      return out;
    }
    default: {
      bool changed = false;
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        ExprPtr k = erase_rec(e->kids[i], path + "/" + std::to_string(i));
        if (k != e->kids[i]) changed = true;
        kids.push_back(std::move(k));
      }
      if (!changed) return e;
      auto out = std::make_shared<Expr>(*e);
      out->kids = std::move(kids);
      return out;
    }
  }
}

ValPtr erase_val(const ValPtr& v, const std::string& path) {
  if (const RecClosure* c = std::get_if<RecClosure>(&v->v)) {
    ExprPtr body = erase_rec(c->body, path + "/closure.body");
    if (body == c->body) return v;
    auto out = std::make_shared<Val>();
    out->v = RecClosure{c->self, c->arg, std::move(body)};
    return out;
  }
  if (const PairV* p = std::get_if<PairV>(&v->v)) {
    ValPtr a = erase_val(p->first, path + "/pair.first");
    ValPtr b = erase_val(p->second, path + "/pair.second");
    if (a == p->first && b == p->second) return v;
    auto out = std::make_shared<Val>();
    out->v = PairV{std::move(a), std::move(b)};
    return out;
  }
  if (const InjV* i = std::get_if<InjV>(&v->v)) {
    ValPtr pay = erase_val(i->payload, path + "/inj.payload");
    if (pay == i->payload) return v;
    auto out = std::make_shared<Val>();
    out->v = InjV{i->right, std::move(pay)};
    return out;
  }
  return v;
}

}  // namespace

ExprPtr erase_expr(const ExprPtr& e) { return erase_rec(e, ""); }

Config erase_config(const Config& c) {
  Config out;
  out.threads.reserve(c.threads.size());
  for (std::size_t i = 0; i < c.threads.size(); ++i)
    out.threads.push_back(
        erase_rec(c.threads[i], "thread[" + std::to_string(i) + "]"));
  out.state.next_loc = c.state.next_loc;
  out.state.prophs = c.state.prophs;
  for (const auto& [loc, v] : c.state.heap)
    out.state.heap.emplace(loc,
                           erase_val(v, "heap[" + std::to_string(loc) + "]"));
  return out;
}

Program erase_program(const Program& p) {
  Program out;
  out.levels = p.levels;
  out.main = erase_expr(p.main);
  return out;
}

namespace {

std::uint64_t count_atomic_val(const ValPtr& v) {
  if (const RecClosure* c = std::get_if<RecClosure>(&v->v))
    return count_atomic_blocks(c->body);
  if (const PairV* p = std::get_if<PairV>(&v->v))
    return count_atomic_val(p->first) + count_atomic_val(p->second);
  if (const InjV* i = std::get_if<InjV>(&v->v))
    return count_atomic_val(i->payload);
  return 0;
}

}  // namespace

std::uint64_t count_atomic_blocks(const ExprPtr& e) {
  if (e->kind == ExprKind::Lit) return count_atomic_val(e->lit);
  std::uint64_t n = e->kind == ExprKind::Atomic ? 1 : 0;
  for (const ExprPtr& k : e->kids) n += count_atomic_blocks(k);
  return n;
}

}  // namespace permlang
