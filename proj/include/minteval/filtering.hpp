#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minteval/registry.hpp"

namespace minteval {

// Result of top-k selection. `indices` is ordered best-first; ties are broken
// by lower row id, so the selection is invariant to input order.
struct Selection {
  std::string metric;
  int k = 0;
  std::vector<int64_t> indices;
};

Selection topk_filter(const std::vector<std::pair<int64_t, double>>& scores, int k,
                      Polarity polarity);  // InvalidArgument

// |A n B| / |A u B|, treated as sets of row ids. Both-empty is defined as 1.0
// (the sets are identical; the 0/0 ratio is otherwise undefined).
double jaccard(const Selection& a, const Selection& b);

}  // namespace minteval
