#include "minteval/filtering.hpp"

#include <algorithm>
#include <set>

namespace minteval {

Selection topk_filter(const std::vector<std::pair<int64_t, double>>& scores, int k,
                      Polarity polarity) {
  if (k < 1) fail(Errc::InvalidArgument, "k must be >= 1");
  if (scores.empty()) fail(Errc::InvalidArgument, "topk_filter needs a non-empty score list");

  std::vector<std::pair<int64_t, double>> rows = scores;
  auto better = [polarity](const std::pair<int64_t, double>& a,
                           const std::pair<int64_t, double>& b) {
    if (a.second != b.second) {
      return polarity == Polarity::HigherBetter ? a.second > b.second : a.second < b.second;
    }
    return a.first < b.first;
  };
  const size_t take = std::min<size_t>(static_cast<size_t>(k), rows.size());
  std::partial_sort(rows.begin(), rows.begin() + take, rows.end(), better);

  Selection selection;
  selection.k = k;
  selection.indices.reserve(take);
  for (size_t i = 0; i < take; ++i) selection.indices.push_back(rows[i].first);
  return selection;
}

double jaccard(const Selection& a, const Selection& b) {
  std::set<int64_t> sa(a.indices.begin(), a.indices.end());
  std::set<int64_t> sb(b.indices.begin(), b.indices.end());
  if (sa.empty() && sb.empty()) return 1.0;
  size_t inter = 0;
  for (int64_t id : sa) inter += sb.count(id);
  const size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace minteval
