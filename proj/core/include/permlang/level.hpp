#pragma once

#include <compare>
#include <cstdint>

namespace permlang {

// A call-permission level. Levels are naturals ordered by <; burning a
// permission at level cp may only mint permissions at some cp' < cp.
struct Level {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(Level, Level) = default;
};

}  // namespace permlang
