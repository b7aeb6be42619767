#pragma once

#include <algorithm>
#include <span>

namespace dsfusion::detail {

// Strict lexicographic order over (subset, value) sequences. Binary rules
// evaluate with their operands in this order so that swapping the arguments
// replays the identical floating-point computation.
template <typename Entry, double Entry::*Value>
bool canonical_less(std::span<const Entry> a, std::span<const Entry> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Entry& x, const Entry& y) {
    if (x.subset != y.subset) return x.subset < y.subset;
    return x.*Value < y.*Value;
  });
}

}  // namespace dsfusion::detail
