#include "permlang/multiset.hpp"

#include <sstream>

namespace permlang {

LevelMultiset ms_union(const LevelMultiset& a, const LevelMultiset& b) {
  LevelMultiset out = a;
  for (const auto& [l, n] : b.entries()) out.insert(l, n);
  return out;
}

std::optional<LevelMultiset> ms_remove(const LevelMultiset& a, Level l) {
  LevelMultiset out = a;
  if (!out.remove_one(l)) return std::nullopt;
  return out;
}

bool ms_contains(const LevelMultiset& a, Level l) { return a.contains(l); }

LevelMultiset ms_insert_n(const LevelMultiset& a, Level l, std::uint64_t n) {
  LevelMultiset out = a;
  out.insert(l, n);
  return out;
}

std::uint64_t ms_size(const LevelMultiset& a) { return a.size(); }

LevelMultiset ms_intersect(const LevelMultiset& a, const LevelMultiset& b) {
  LevelMultiset out;
  for (const auto& [l, n] : a.entries()) {
    std::uint64_t m = b.count(l);
    out.insert(l, n < m ? n : m);
  }
  return out;
}

LevelMultiset ms_difference(const LevelMultiset& a, const LevelMultiset& b) {
  LevelMultiset out;
  for (const auto& [l, n] : a.entries()) {
    std::uint64_t m = b.count(l);
    if (n > m) out.insert(l, n - m);
  }
  return out;
}

bool mult1_less(const LevelMultiset& a, const LevelMultiset& b) {
  for (const auto& [y, yn] : b.entries()) {
    (void)yn;
    LevelMultiset b0 = *ms_remove(b, y);
    // a must be b0 plus some x with all elements below y.
    bool b0_sub_a = true;
    for (const auto& [l, n] : b0.entries()) {
      if (a.count(l) < n) {
        b0_sub_a = false;
        break;
      }
    }
    if (!b0_sub_a) continue;
    LevelMultiset x = ms_difference(a, b0);
    bool all_below = true;
    for (const auto& [l, n] : x.entries()) {
      (void)n;
      if (!(l < y)) {
        all_below = false;
        break;
      }
    }
    if (all_below) return true;
  }
  return false;
}

bool mult_less(const LevelMultiset& a, const LevelMultiset& b) {
  if (a == b) return false;
  LevelMultiset c = ms_intersect(a, b);
  LevelMultiset bd = ms_difference(b, c);
  if (bd.empty()) return false;
  LevelMultiset ad = ms_difference(a, c);
  Level top = bd.entries().rbegin()->first;
  for (const auto& [l, n] : ad.entries()) {
    (void)n;
    if (!(l < top)) return false;
  }
  return true;
}

bool triple_less(const MeasureTriple& a, const MeasureTriple& b) {
  if (mult_less(a.perms, b.perms)) return true;
  if (a.perms != b.perms) return false;
  if (a.unprotected != b.unprotected) return a.unprotected < b.unprotected;
  return a.pseudo < b.pseudo;
}

std::string to_string(const LevelMultiset& ms) {
  std::ostringstream out;
  out << "[";
  bool first = true;
  for (const auto& [l, n] : ms.entries()) {
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!first) out << ", ";
      out << l.value;
      first = false;
    }
  }
  out << "]";
  return out.str();
}

std::string to_string(const MeasureTriple& m) {
  std::ostringstream out;
  out << "(" << to_string(m.perms) << ", " << m.unprotected << ", " << m.pseudo
      << ")";
  return out.str();
}

}  // namespace permlang
