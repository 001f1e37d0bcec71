#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minteval/registry.hpp"

namespace minteval {

// Ensemble rank values; lower is better. System values lie in [1, N]
// (N = number of systems); instance values lie in [1, T] (T = total
// instances across all systems).
struct RankTable {
  std::string lp;
  std::map<std::string, double> system_values;
  std::map<std::pair<std::string, int64_t>, double> instance_values;  // empty for system variant
};

// Per metric, min-max scales the per-system score means onto [1, N] with the
// best system (by the metric's polarity) at 1, then averages the scaled
// values across metrics. A metric with identical means for all systems
// contributes (1 + N) / 2 to every system.
RankTable autorank_system(const ScoreTable& table, const std::string& lp,
                          const std::vector<std::string>& systems,
                          const std::vector<std::string>& metrics,
                          const MetricRegistry& registry);

// Instance-level variant: each metric's (system, seg) scores are scaled
// jointly onto [1, T] over the union of all systems' instances, averaged
// across metrics per instance; a system's value is the mean over its
// instances.
RankTable autorank_instance(const ScoreTable& table, const std::string& lp,
                            const std::vector<std::string>& systems,
                            const std::vector<std::string>& metrics,
                            const MetricRegistry& registry);

}  // namespace minteval
