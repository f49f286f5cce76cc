#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>

#include "permlang/level.hpp"

namespace permlang {

// Finite multiset of levels, stored as level -> multiplicity with no zero
// entries.
class LevelMultiset {
 public:
  using Rep = std::map<Level, std::uint64_t>;

  LevelMultiset() = default;
  LevelMultiset(std::initializer_list<Level> items) {
    for (Level l : items) insert(l);
  }

  void insert(Level l, std::uint64_t n = 1) {
    if (n == 0) return;
    rep_[l] += n;
  }

  bool remove_one(Level l) {
    auto it = rep_.find(l);
    if (it == rep_.end()) return false;
    if (--it->second == 0) rep_.erase(it);
    return true;
  }

  bool contains(Level l) const { return rep_.count(l) != 0; }

  std::uint64_t count(Level l) const {
    auto it = rep_.find(l);
    return it == rep_.end() ? 0 : it->second;
  }

  std::uint64_t size() const {
    std::uint64_t total = 0;
    for (const auto& [l, n] : rep_) total += n;
    return total;
  }

  bool empty() const { return rep_.empty(); }

  const Rep& entries() const { return rep_; }

  friend bool operator==(const LevelMultiset&, const LevelMultiset&) = default;

 private:
  Rep rep_;
};

// Additive union a ++ b.
LevelMultiset ms_union(const LevelMultiset& a, const LevelMultiset& b);

// a with one copy of l removed, or nullopt if l is absent.
std::optional<LevelMultiset> ms_remove(const LevelMultiset& a, Level l);

bool ms_contains(const LevelMultiset& a, Level l);

// a with n copies of l added (n may be zero).
LevelMultiset ms_insert_n(const LevelMultiset& a, Level l, std::uint64_t n);

std::uint64_t ms_size(const LevelMultiset& a);

// Pointwise minimum (multiset intersection).
LevelMultiset ms_intersect(const LevelMultiset& a, const LevelMultiset& b);

// Multiset difference a - b, truncating at zero per level.
LevelMultiset ms_difference(const LevelMultiset& a, const LevelMultiset& b);

// One Dershowitz-Manna step: b = b0 ++ [y] and a = b0 ++ x with every element
// of x strictly below y.
bool mult1_less(const LevelMultiset& a, const LevelMultiset& b);

// Transitive closure of mult1_less, decided by the standard characterization:
// a != b, and with c the pointwise minimum, b - c is nonempty and every
// element of a - c lies strictly below some element of b - c.
bool mult_less(const LevelMultiset& a, const LevelMultiset& b);

// The termination measure of a configuration: permission stock under the
// multiset order, then unprotected application count, then pseudo size,
// compared lexicographically.
struct MeasureTriple {
  LevelMultiset perms;
  std::uint64_t unprotected = 0;
  std::uint64_t pseudo = 0;

  friend bool operator==(const MeasureTriple&, const MeasureTriple&) = default;
};

bool triple_less(const MeasureTriple& a, const MeasureTriple& b);

std::string to_string(const LevelMultiset& ms);
std::string to_string(const MeasureTriple& m);

}  // namespace permlang
