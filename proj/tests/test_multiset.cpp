#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "permlang/multiset.hpp"

using namespace permlang;

namespace {

oracle::Ms random_ms(std::mt19937_64& rng, std::uint64_t max_level,
                     std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size_d(0, max_size);
  std::uniform_int_distribution<std::uint64_t> lvl_d(0, max_level);
  oracle::Ms out(size_d(rng));
  for (auto& v : out) v = lvl_d(rng);
  std::sort(out.begin(), out.end());
  return out;
}

// One descent step taken directly from the defining relation: replace a
// random occurrence by a random multiset of strictly smaller values.
oracle::Ms random_descent(std::mt19937_64& rng, const oracle::Ms& b,
                          std::size_t max_fill) {
  oracle::Ms a = b;
  std::uniform_int_distribution<std::size_t> pos_d(0, a.size() - 1);
  std::size_t i = pos_d(rng);
  std::uint64_t y = a[i];
  a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
  if (y > 0) {
    std::uniform_int_distribution<std::size_t> fill_d(0, max_fill);
    std::uniform_int_distribution<std::uint64_t> low_d(0, y - 1);
    std::size_t k = fill_d(rng);
    for (std::size_t j = 0; j < k; ++j) a.push_back(low_d(rng));
  }
  std::sort(a.begin(), a.end());
  return a;
}

const oracle::MultOracle& built_oracle() {
  static oracle::MultOracle o = [] {
    oracle::MultOracle out;
    out.max_level = 3;
    out.cap = 8;
    out.build();
    return out;
  }();
  return o;
}

}  // namespace

TEST_SUITE("multiset") {
  TEST_CASE("operations keep the no-zero-entry representation") {
    LevelMultiset m{Level{1}, Level{1}, Level{3}};
    CHECK(m.size() == 3);
    CHECK(m.count(Level{1}) == 2);
    CHECK(m.count(Level{2}) == 0);

    auto removed = ms_remove(m, Level{3});
    REQUIRE(removed.has_value());
    CHECK_FALSE(removed->contains(Level{3}));
    CHECK(removed->entries().size() == 1);
    CHECK_FALSE(ms_remove(m, Level{5}).has_value());

    LevelMultiset zero = ms_insert_n(m, Level{9}, 0);
    CHECK(zero == m);
    CHECK(ms_insert_n(m, Level{9}, 2).count(Level{9}) == 2);

    LevelMultiset a{Level{1}, Level{2}, Level{2}};
    LevelMultiset b{Level{2}, Level{3}};
    CHECK(ms_union(a, b).size() == 5);
    CHECK(ms_intersect(a, b) == LevelMultiset{Level{2}});
    CHECK(ms_difference(a, b) == LevelMultiset{Level{1}, Level{2}});
    CHECK(ms_difference(b, a) == LevelMultiset{Level{3}});
    LevelMultiset diff = ms_difference(a, b);
    for (const auto& [l, n] : diff.entries()) {
      (void)l;
      CHECK(n > 0);
    }
  }

  TEST_CASE("mult1_less matches one replacement step exhaustively") {
    const oracle::MultOracle& o = built_oracle();
    std::vector<oracle::Ms> universe = oracle::enumerate_multisets(3, 4);
    for (const oracle::Ms& a : universe) {
      for (const oracle::Ms& b : universe) {
        bool got = mult1_less(oracle::from_ms(a), oracle::from_ms(b));
        bool want = o.step(a, b);
        CAPTURE(to_string(oracle::from_ms(a)));
        CAPTURE(to_string(oracle::from_ms(b)));
        CHECK(got == want);
      }
    }
  }

  TEST_CASE("mult_less matches closure reachability exhaustively") {
    const oracle::MultOracle& o = built_oracle();
    std::vector<oracle::Ms> universe = oracle::enumerate_multisets(3, 4);
    std::size_t below_pairs = 0;
    for (const oracle::Ms& a : universe) {
      for (const oracle::Ms& b : universe) {
        bool got = mult_less(oracle::from_ms(a), oracle::from_ms(b));
        bool want = o.less(a, b);
        CAPTURE(to_string(oracle::from_ms(a)));
        CAPTURE(to_string(oracle::from_ms(b)));
        CHECK(got == want);
        if (want) ++below_pairs;
      }
    }
    CHECK(universe.size() == 70);
    CHECK(below_pairs > 0);
  }

  TEST_CASE("mult_less is irreflexive on random multisets") {
    std::mt19937_64 rng(20260816);
    for (int i = 0; i < 10000; ++i) {
      LevelMultiset m = oracle::from_ms(random_ms(rng, 6, 8));
      CHECK_FALSE(mult_less(m, m));
    }
  }

  TEST_CASE("mult_less is transitive along random descent chains") {
    std::mt19937_64 rng(977);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
      oracle::Ms c = random_ms(rng, 6, 6);
      if (c.empty()) continue;
      oracle::Ms b = random_descent(rng, c, 3);
      if (b.empty()) continue;
      oracle::Ms a = random_descent(rng, b, 3);
      LevelMultiset la = oracle::from_ms(a);
      LevelMultiset lb = oracle::from_ms(b);
      LevelMultiset lc = oracle::from_ms(c);
      REQUIRE(mult_less(lb, lc));
      REQUIRE(mult_less(la, lb));
      CHECK(mult_less(la, lc));
      CHECK_FALSE(mult_less(lc, la));
      ++checked;
    }
    CHECK(checked > 8000);
  }

  TEST_CASE("random greedy descent bottoms out") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      oracle::Ms m{3, 3, 3, 3};
      std::uint64_t steps = 0;
      while (!m.empty()) {
        m = random_descent(rng, m, 3);
        ++steps;
        REQUIRE(steps < 1000000);
      }
      CHECK(steps > 0);
    }
  }

  TEST_CASE("triple_less is lexicographic with the multiset order first") {
    MeasureTriple small{LevelMultiset{Level{1}}, 100, 100};
    MeasureTriple big{LevelMultiset{Level{2}}, 0, 0};
    CHECK(triple_less(small, big));
    CHECK_FALSE(triple_less(big, small));

    MeasureTriple a{LevelMultiset{Level{2}}, 3, 9};
    MeasureTriple b{LevelMultiset{Level{2}}, 4, 0};
    CHECK(triple_less(a, b));
    CHECK_FALSE(triple_less(b, a));

    MeasureTriple c{LevelMultiset{Level{2}}, 4, 1};
    CHECK(triple_less(c, MeasureTriple{LevelMultiset{Level{2}}, 4, 2}));
    CHECK_FALSE(triple_less(c, c));
  }
}
