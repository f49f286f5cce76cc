#include "permlang/burn_check.hpp"

namespace permlang {

std::uint64_t nb_unprotected_apps(const ExprPtr& e) {
  if (!e) return 0;
  switch (e->kind) {
    case ExprKind::Lit:
    case ExprKind::Var:
    case ExprKind::Rec:
    case ExprKind::NewProph:
      return 0;
    case ExprKind::Burn:
      // The body is protected; only the receive count stays exposed.
      return nb_unprotected_apps(e->kids[1]);
    case ExprKind::App:
      return 1 + nb_unprotected_apps(e->kids[0]) +
             nb_unprotected_apps(e->kids[1]);
    case ExprKind::Match: {
      // A match costs one up front: reduction routes the taken branch
      // through a fresh application.
      std::uint64_t n = 1;
      for (const ExprPtr& k : e->kids) n += nb_unprotected_apps(k);
      return n;
    }
    default: {
      std::uint64_t n = 0;
      for (const ExprPtr& k : e->kids) n += nb_unprotected_apps(k);
      return n;
    }
  }
}

bool enough_burns_val(const ValPtr& v) {
  if (!v) return true;
  if (const RecClosure* c = as_closure(v))
    return nb_unprotected_apps(c->body) == 0 && enough_burns(c->body);
  if (const PairV* p = as_pair(v))
    return enough_burns_val(p->first) && enough_burns_val(p->second);
  if (const InjV* inj = as_inj(v)) return enough_burns_val(inj->payload);
  return true;
}

bool enough_burns(const ExprPtr& e) {
  if (!e) return true;
  switch (e->kind) {
    case ExprKind::Lit:
      return enough_burns_val(e->lit);
    case ExprKind::Var:
    case ExprKind::NewProph:
      return true;
    case ExprKind::Rec:
      return nb_unprotected_apps(e->kids[0]) == 0 && enough_burns(e->kids[0]);
    default:
      for (const ExprPtr& k : e->kids)
        if (!enough_burns(k)) return false;
      return true;
  }
}

bool enough_burns_heap(const State& s) {
  for (const auto& [l, v] : s.heap) {
    (void)l;
    if (!enough_burns_val(v)) return false;
  }
  return true;
}

namespace {

const char* slot_name(ExprKind kind, std::size_t i) {
  switch (kind) {
    case ExprKind::Rec:
      return "body";
    case ExprKind::App:
      return i == 0 ? "fn" : "arg";
    case ExprKind::UnOpE:
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::InjL:
    case ExprKind::InjR:
    case ExprKind::Free:
    case ExprKind::Load:
      return "operand";
    case ExprKind::BinOpE:
      return i == 0 ? "lhs" : "rhs";
    case ExprKind::If:
      return i == 0 ? "cond" : (i == 1 ? "then" : "else");
    case ExprKind::Pair:
      return i == 0 ? "first" : "second";
    case ExprKind::Match:
      return i == 0 ? "scrutinee" : (i == 1 ? "left" : "right");
    case ExprKind::Let:
      return i == 0 ? "bound" : "body";
    case ExprKind::Seq:
      return i == 0 ? "first" : "second";
    case ExprKind::Alloc:
      return i == 0 ? "count" : "init";
    case ExprKind::Store:
      return i == 0 ? "dst" : "src";
    case ExprKind::CmpXchg:
      return i == 0 ? "dst" : (i == 1 ? "expected" : "desired");
    case ExprKind::Xchg:
      return i == 0 ? "dst" : "src";
    case ExprKind::Faa:
      return i == 0 ? "dst" : "delta";
    case ExprKind::Resolve:
      return i == 0 ? "inner" : (i == 1 ? "target" : "payload");
    case ExprKind::Burn:
      return i == 0 ? "body" : "count";
    case ExprKind::Fork:
    case ExprKind::Atomic:
      return "body";
    default:
      return "kid";
  }
}

const char* kind_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::Lit: return "lit";
    case ExprKind::Var: return "var";
    case ExprKind::Rec: return "rec";
    case ExprKind::App: return "app";
    case ExprKind::UnOpE: return "unop";
    case ExprKind::BinOpE: return "binop";
    case ExprKind::If: return "if";
    case ExprKind::Pair: return "pair";
    case ExprKind::Fst: return "fst";
    case ExprKind::Snd: return "snd";
    case ExprKind::InjL: return "injl";
    case ExprKind::InjR: return "injr";
    case ExprKind::Match: return "match";
    case ExprKind::Let: return "let";
    case ExprKind::Seq: return "seq";
    case ExprKind::Alloc: return "ref";
    case ExprKind::Free: return "free";
    case ExprKind::Load: return "load";
    case ExprKind::Store: return "store";
    case ExprKind::CmpXchg: return "cas";
    case ExprKind::Xchg: return "xchg";
    case ExprKind::Faa: return "faa";
    case ExprKind::Fork: return "fork";
    case ExprKind::NewProph: return "newproph";
    case ExprKind::Resolve: return "resolve";
    case ExprKind::Burn: return "burn";
    case ExprKind::Atomic: return "atomic";
  }
  return "expr";
}

void walk_val(const ValPtr& v, const std::string& path,
              std::vector<CheckViolation>& out);

void walk_expr(const ExprPtr& e, const std::string& path,
               std::vector<CheckViolation>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Lit) {
    walk_val(e->lit, path, out);
    return;
  }
  if (e->kind == ExprKind::Rec) {
    std::uint64_t n = nb_unprotected_apps(e->kids[0]);
    if (n > 0)
      out.push_back(CheckViolation{path + "/rec.body",
                                   "unprotected-app-in-body", n});
  }
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    std::string kid_path =
        path + "/" + kind_name(e->kind) + "." + slot_name(e->kind, i);
    walk_expr(e->kids[i], kid_path, out);
  }
}

void walk_val(const ValPtr& v, const std::string& path,
              std::vector<CheckViolation>& out) {
  if (!v) return;
  if (const RecClosure* c = as_closure(v)) {
    std::uint64_t n = nb_unprotected_apps(c->body);
    if (n > 0)
      out.push_back(CheckViolation{path + "/closure.body",
                                   "unprotected-app-in-body", n});
    walk_expr(c->body, path + "/closure.body", out);
    return;
  }
  if (const PairV* p = as_pair(v)) {
    walk_val(p->first, path + "/pair.first", out);
    walk_val(p->second, path + "/pair.second", out);
    return;
  }
  if (const InjV* inj = as_inj(v)) walk_val(inj->payload, path + "/inj.payload", out);
}

}  // namespace

CheckReport enough_burns_cfg(const Config& c) {
  CheckReport report;
  for (std::size_t i = 0; i < c.threads.size(); ++i)
    walk_expr(c.threads[i], "thread[" + std::to_string(i) + "]",
              report.violations);
  for (const auto& [l, v] : c.state.heap)
    walk_val(v, "heap[" + std::to_string(l) + "]", report.violations);
  report.ok = report.violations.empty();
  return report;
}

}  // namespace permlang
