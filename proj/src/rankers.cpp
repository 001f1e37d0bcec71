#include "minteval/rankers.hpp"

#include <algorithm>

namespace minteval {

namespace {

void check_args(const std::vector<std::string>& systems,
                const std::vector<std::string>& metrics) {
  if (systems.size() < 2) fail(Errc::InvalidArgument, "autorank needs at least 2 systems");
  if (metrics.empty()) fail(Errc::InvalidArgument, "autorank needs at least 1 metric");
}

// Linear map onto [1, count] with the best value at 1 and the worst at
// count; degenerate inputs map to the midpoint (1 + count) / 2.
std::vector<double> scale_to_ranks(const std::vector<double>& values, Polarity polarity,
                                   double count) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> out(values.size());
  if (lo == hi) {
    std::fill(out.begin(), out.end(), (1.0 + count) / 2.0);
    return out;
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const double unit = polarity == Polarity::HigherBetter
                            ? (hi - values[i]) / (hi - lo)
                            : (values[i] - lo) / (hi - lo);
    out[i] = 1.0 + unit * (count - 1.0);
  }
  return out;
}

}  // namespace

RankTable autorank_system(const ScoreTable& table, const std::string& lp,
                          const std::vector<std::string>& systems,
                          const std::vector<std::string>& metrics,
                          const MetricRegistry& registry) {
  check_args(systems, metrics);
  const double n = static_cast<double>(systems.size());

  std::vector<double> totals(systems.size(), 0.0);
  for (const auto& metric : metrics) {
    const MetricSpec& spec = registry.at(metric);
    std::vector<double> means;
    means.reserve(systems.size());
    for (const auto& system : systems) {
      const auto segs = table.segs(lp, system, metric);
      if (segs.empty()) {
        fail(Errc::MissingScores,
             "system '" + system + "' has no '" + metric + "' scores for lp '" + lp + "'");
      }
      double sum = 0.0;
      for (int64_t seg : segs) sum += table.at({lp, system, seg, metric});
      means.push_back(sum / static_cast<double>(segs.size()));
    }
    const auto scaled = scale_to_ranks(means, spec.polarity, n);
    for (size_t i = 0; i < systems.size(); ++i) totals[i] += scaled[i];
  }

  RankTable out;
  out.lp = lp;
  for (size_t i = 0; i < systems.size(); ++i) {
    out.system_values[systems[i]] = totals[i] / static_cast<double>(metrics.size());
  }
  return out;
}

RankTable autorank_instance(const ScoreTable& table, const std::string& lp,
                            const std::vector<std::string>& systems,
                            const std::vector<std::string>& metrics,
                            const MetricRegistry& registry) {
  if (systems.empty()) fail(Errc::InvalidArgument, "autorank needs at least 1 system");
  if (metrics.empty()) fail(Errc::InvalidArgument, "autorank needs at least 1 metric");

  // The instance grid is the union of segs per system, fixed across metrics;
  // every metric must cover every instance.
  std::vector<std::pair<std::string, int64_t>> instances;
  for (const auto& system : systems) {
    auto segs = table.segs(lp, system, metrics[0]);
    if (segs.empty()) {
      fail(Errc::MissingScores,
           "system '" + system + "' has no '" + metrics[0] + "' scores for lp '" + lp + "'");
    }
    for (int64_t seg : segs) instances.emplace_back(system, seg);
  }
  const double total = static_cast<double>(instances.size());

  std::vector<double> sums(instances.size(), 0.0);
  for (const auto& metric : metrics) {
    const MetricSpec& spec = registry.at(metric);
    std::vector<double> values;
    values.reserve(instances.size());
    for (const auto& [system, seg] : instances) {
      values.push_back(table.at({lp, system, seg, metric}));
    }
    const auto scaled = scale_to_ranks(values, spec.polarity, total);
    for (size_t i = 0; i < instances.size(); ++i) sums[i] += scaled[i];
  }

  RankTable out;
  out.lp = lp;
  std::map<std::string, std::pair<double, size_t>> per_system;  // sum, count
  for (size_t i = 0; i < instances.size(); ++i) {
    const double value = sums[i] / static_cast<double>(metrics.size());
    out.instance_values[instances[i]] = value;
    auto& [sum, count] = per_system[instances[i].first];
    sum += value;
    ++count;
  }
  for (const auto& [system, acc] : per_system) {
    out.system_values[system] = acc.first / static_cast<double>(acc.second);
  }
  return out;
}

}  // namespace minteval
