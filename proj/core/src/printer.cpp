#include "permlang/printer.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace permlang {

namespace {

// Binding tightness of each form, used to decide parenthesisation.
// 0 sequence, 1 statement forms, 2 comparisons, 3 additive, 4 multiplicative,
// 5 application, 6 prefix operators, 7 atoms.
int prec_of(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Seq:
      return 0;
    case ExprKind::Rec:
    case ExprKind::Let:
    case ExprKind::If:
    case ExprKind::Burn:
    case ExprKind::Match:
    case ExprKind::Resolve:
    case ExprKind::Store:
      return 1;
    case ExprKind::BinOpE:
      switch (e->bin) {
        case BinOp::Eq:
        case BinOp::Lt:
        case BinOp::Le:
          return 2;
        case BinOp::Plus:
        case BinOp::Minus:
        case BinOp::Offset:
          return 3;
        case BinOp::Mult:
          return 4;
      }
      return 4;
    case ExprKind::App:
      return 5;
    case ExprKind::UnOpE:
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::InjL:
    case ExprKind::InjR:
    case ExprKind::Load:
      return 6;
    default:
      return 7;
  }
}

// Whether the printed form ends in a greedy level-zero tail that would
// swallow a following ";;" on reparse. Such forms need parentheses when
// they sit in the left slot of a sequence.
bool right_open(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Seq:
    case ExprKind::Rec:
    case ExprKind::Let:
    case ExprKind::Burn:
      return true;
    case ExprKind::If:
      return right_open(e->kids[2]);
    default:
      return false;
  }
}

struct Printer {
  const std::vector<LevelDecl>& levels;
  std::ostringstream out;

  std::string level_name(Level l) const {
    for (const LevelDecl& d : levels)
      if (d.level == l) return d.name;
    throw std::runtime_error("no declared name for level " +
                             std::to_string(l.value));
  }

  std::optional<Level> omitted_receive_level(Level cp) const {
    std::optional<Level> best;
    for (const LevelDecl& d : levels)
      if (d.level < cp && (!best || d.level < *best)) best = d.level;
    if (best) return best;
    if (cp.value > 0) return Level{0};
    return std::nullopt;
  }

  static std::string binder(const std::string& b) { return b.empty() ? "_" : b; }

  void print(const ExprPtr& e, int min_prec, bool seq_left = false) {
    bool parens = prec_of(e) < min_prec || (seq_left && right_open(e));
    if (parens) out << "(";
    emit(e);
    if (parens) out << ")";
  }

  void emit_lit(const ValPtr& v) {
    if (const std::int64_t* n = std::get_if<std::int64_t>(&v->v)) {
      out << "#" << *n;
      return;
    }
    if (const bool* b = std::get_if<bool>(&v->v)) {
      out << (*b ? "#true" : "#false");
      return;
    }
    if (std::get_if<UnitV>(&v->v)) {
      out << "#()";
      return;
    }
    if (std::get_if<PoisonV>(&v->v)) {
      out << "#poison";
      return;
    }
    throw std::runtime_error("value has no surface syntax");
  }

  void emit(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Lit:
        emit_lit(e->lit);
        break;
      case ExprKind::Var:
        out << e->name;
        break;
      case ExprKind::Rec:
        if (e->name.empty())
          out << "fun: " << binder(e->name2) << " := ";
        else
          out << "rec: " << binder(e->name) << " " << binder(e->name2)
              << " := ";
        print(e->kids[0], 0);
        break;
      case ExprKind::App:
        print(e->kids[0], 5);
        out << " ";
        if (e->kids[1]->kind == ExprKind::UnOpE) {
          out << "(";
          emit(e->kids[1]);
          out << ")";
        } else {
          print(e->kids[1], 6);
        }
        break;
      case ExprKind::UnOpE:
        out << "-";
        print(e->kids[0], 6);
        break;
      case ExprKind::BinOpE: {
        const char* op = "";
        int lp = 0;
        int rp = 0;
        switch (e->bin) {
          case BinOp::Eq:
            op = " = ";
            lp = rp = 3;
            break;
          case BinOp::Lt:
            op = " < ";
            lp = rp = 3;
            break;
          case BinOp::Le:
            op = " <= ";
            lp = rp = 3;
            break;
          case BinOp::Plus:
            op = " + ";
            lp = 3;
            rp = 4;
            break;
          case BinOp::Minus:
            op = " - ";
            lp = 3;
            rp = 4;
            break;
          case BinOp::Offset:
            op = " +: ";
            lp = 3;
            rp = 4;
            break;
          case BinOp::Mult:
            op = " * ";
            lp = 4;
            rp = 5;
            break;
        }
        print(e->kids[0], lp);
        out << op;
        print(e->kids[1], rp);
        break;
      }
      case ExprKind::If:
        out << "if: ";
        print(e->kids[0], 1);
        out << " then ";
        print(e->kids[1], 1);
        out << " else ";
        print(e->kids[2], 1);
        break;
      case ExprKind::Pair:
        out << "(";
        print(e->kids[0], 0);
        out << ", ";
        print(e->kids[1], 0);
        out << ")";
        break;
      case ExprKind::Fst:
        out << "Fst ";
        print(e->kids[0], 6);
        break;
      case ExprKind::Snd:
        out << "Snd ";
        print(e->kids[0], 6);
        break;
      case ExprKind::InjL:
        out << "InjL ";
        print(e->kids[0], 6);
        break;
      case ExprKind::InjR:
        out << "InjR ";
        print(e->kids[0], 6);
        break;
      case ExprKind::Match:
        out << "match: ";
        print(e->kids[0], 1);
        out << " with InjL " << binder(e->name) << " => ";
        print(e->kids[1], 0);
        out << " | InjR " << binder(e->name2) << " => ";
        print(e->kids[2], 0);
        out << " end";
        break;
      case ExprKind::Let:
        out << "let: " << binder(e->name) << " := ";
        print(e->kids[0], 0);
        out << " in ";
        print(e->kids[1], 0);
        break;
      case ExprKind::Seq:
        print(e->kids[0], 1, true);
        out << " ;; ";
        print(e->kids[1], 0);
        break;
      case ExprKind::Alloc:
        out << "ref(";
        print(e->kids[0], 0);
        out << ", ";
        print(e->kids[1], 0);
        out << ")";
        break;
      case ExprKind::Free:
        out << "free(";
        print(e->kids[0], 0);
        out << ")";
        break;
      case ExprKind::Load:
        out << "!";
        print(e->kids[0], 6);
        break;
      case ExprKind::Store:
        print(e->kids[0], 2);
        out << " <- ";
        print(e->kids[1], 2);
        break;
      case ExprKind::CmpXchg:
        out << "CAS(";
        print(e->kids[0], 0);
        out << ", ";
        print(e->kids[1], 0);
        out << ", ";
        print(e->kids[2], 0);
        out << ")";
        break;
      case ExprKind::Xchg:
        out << "XCHG(";
        print(e->kids[0], 0);
        out << ", ";
        print(e->kids[1], 0);
        out << ")";
        break;
      case ExprKind::Faa:
        out << "FAA(";
        print(e->kids[0], 0);
        out << ", ";
        print(e->kids[1], 0);
        out << ")";
        break;
      case ExprKind::Fork:
        out << "fork(";
        print(e->kids[0], 0);
        out << ")";
        break;
      case ExprKind::NewProph:
        out << "newproph";
        break;
      case ExprKind::Resolve:
        out << "resolve ";
        print(e->kids[0], 2);
        out << " at ";
        print(e->kids[1], 2);
        out << " to ";
        print(e->kids[2], 2);
        break;
      case ExprKind::Burn: {
        out << "burn " << level_name(e->burn_from);
        const ExprPtr& count = e->kids[1];
        bool zero_count = count->kind == ExprKind::Lit &&
                          std::holds_alternative<std::int64_t>(count->lit->v) &&
                          std::get<std::int64_t>(count->lit->v) == 0;
        std::optional<Level> canon = omitted_receive_level(e->burn_from);
        if (!(zero_count && canon && *canon == e->burn_to)) {
          out << " receive ";
          print(count, 2);
          out << " times " << level_name(e->burn_to);
        }
        out << " in ";
        print(e->kids[0], 0);
        break;
      }
      case ExprKind::Atomic:
        out << "atomic(";
        print(e->kids[0], 0);
        out << ")";
        break;
    }
  }
};

std::string show_val_rec(const ValPtr& v);

}  // namespace

std::string print_expr(const ExprPtr& e, const std::vector<LevelDecl>& levels) {
  Printer p{levels};
  p.print(e, 0);
  return p.out.str();
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  for (const LevelDecl& d : p.levels)
    out << "level " << d.name << " = " << d.level.value << ";\n";
  if (!p.permissions.empty()) {
    out << "permissions [";
    for (std::size_t i = 0; i < p.permissions.size(); ++i) {
      if (i) out << ", ";
      out << p.permissions[i];
    }
    out << "];\n";
  }
  if (!p.levels.empty() || !p.permissions.empty()) out << "\n";
  out << print_expr(p.main, p.levels) << "\n";
  return out.str();
}

namespace {

std::string show_val_rec(const ValPtr& v) {
  if (const std::int64_t* n = std::get_if<std::int64_t>(&v->v))
    return "#" + std::to_string(*n);
  if (const bool* b = std::get_if<bool>(&v->v)) return *b ? "#true" : "#false";
  if (std::get_if<UnitV>(&v->v)) return "#()";
  if (std::get_if<PoisonV>(&v->v)) return "#poison";
  if (const Loc* l = std::get_if<Loc>(&v->v))
    return "loc(" + std::to_string(l->index) + ")";
  if (const ProphId* p = std::get_if<ProphId>(&v->v))
    return "proph(" + std::to_string(p->index) + ")";
  if (std::get_if<RecClosure>(&v->v)) return "<closure>";
  if (const PairV* p = std::get_if<PairV>(&v->v))
    return "(" + show_val_rec(p->first) + ", " + show_val_rec(p->second) + ")";
  if (const InjV* i = std::get_if<InjV>(&v->v))
    return (i->right ? "InjR " : "InjL ") + show_val_rec(i->payload);
  return "<?>";
}

}  // namespace

std::string show_val(const ValPtr& v) { return show_val_rec(v); }

std::string show_expr_head(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Lit:
      return "value " + show_val(e->lit);
    case ExprKind::Var:
      return "variable " + e->name;
    case ExprKind::Rec:
      return "rec";
    case ExprKind::App:
      return "application";
    case ExprKind::UnOpE:
      return "unary operator";
    case ExprKind::BinOpE:
      return "binary operator";
    case ExprKind::If:
      return "if";
    case ExprKind::Pair:
      return "pair";
    case ExprKind::Fst:
      return "Fst";
    case ExprKind::Snd:
      return "Snd";
    case ExprKind::InjL:
      return "InjL";
    case ExprKind::InjR:
      return "InjR";
    case ExprKind::Match:
      return "match";
    case ExprKind::Let:
      return "let";
    case ExprKind::Seq:
      return "sequence";
    case ExprKind::Alloc:
      return "ref";
    case ExprKind::Free:
      return "free";
    case ExprKind::Load:
      return "load";
    case ExprKind::Store:
      return "store";
    case ExprKind::CmpXchg:
      return "CAS";
    case ExprKind::Xchg:
      return "XCHG";
    case ExprKind::Faa:
      return "FAA";
    case ExprKind::Fork:
      return "fork";
    case ExprKind::NewProph:
      return "newproph";
    case ExprKind::Resolve:
      return "resolve";
    case ExprKind::Burn:
      return "burn at level " + std::to_string(e->burn_from.value);
    case ExprKind::Atomic:
      return "atomic block";
  }
  return "<?>";
}

}  // namespace permlang
