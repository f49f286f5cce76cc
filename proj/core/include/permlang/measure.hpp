#pragma once

#include <cstdint>

#include "permlang/multiset.hpp"
#include "permlang/state.hpp"
#include "permlang/syntax.hpp"

namespace permlang {

// Structural size driving the third measure component. Values weigh
// nothing, so substitution never increases it. An atomic block weighs one
// regardless of its body, matching its single visible step.
std::uint64_t pseudo_size(const ExprPtr& e);

// The termination measure of a whole configuration: the shared permission
// stock, then the sum of unprotected applications over all threads, then
// the sum of pseudo sizes. Ordered lexicographically by triple_less with
// the Dershowitz-Manna order on the first component.
MeasureTriple config_measure(const Config& c);

}  // namespace permlang
