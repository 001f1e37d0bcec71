#include <doctest.h>

#include "minteval/rankers.hpp"
#include "minteval/rng.hpp"
#include "testutil.hpp"

using namespace minteval;

namespace {

// Independent recomputation of scale-then-average at system level.
std::map<std::string, double> brute_autorank(
    const ScoreTable& table, const std::string& lp, const std::vector<std::string>& systems,
    const std::vector<std::string>& metrics, const MetricRegistry& reg) {
  std::map<std::string, double> totals;
  const double n = static_cast<double>(systems.size());
  for (const auto& metric : metrics) {
    std::map<std::string, double> means;
    for (const auto& system : systems) {
      auto segs = table.segs(lp, system, metric);
      double sum = 0;
      for (auto seg : segs) sum += table.at({lp, system, seg, metric});
      means[system] = sum / static_cast<double>(segs.size());
    }
    double lo = 1e300, hi = -1e300;
    for (auto& [s, v] : means) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (const auto& system : systems) {
      double scaled;
      if (lo == hi) {
        scaled = (1.0 + n) / 2.0;
      } else if (reg.at(metric).polarity == Polarity::HigherBetter) {
        scaled = 1.0 + (hi - means[system]) / (hi - lo) * (n - 1.0);
      } else {
        scaled = 1.0 + (means[system] - lo) / (hi - lo) * (n - 1.0);
      }
      totals[system] += scaled;
    }
  }
  for (auto& [s, v] : totals) v /= static_cast<double>(metrics.size());
  return totals;
}

}  // namespace

TEST_CASE("system autorank spaces three systems linearly") {
  auto reg = MetricRegistry::standard();
  ScoreTable table;
  const std::vector<double> means = {0.9, 0.8, 0.7};
  for (size_t s = 0; s < 3; ++s) {
    table.insert({"lp", "sys" + std::to_string(s), 0, "comet"}, means[s]);
  }
  auto ranks = autorank_system(table, "lp", {"sys0", "sys1", "sys2"}, {"comet"}, reg);
  CHECK(ranks.system_values["sys0"] == doctest::Approx(1.0));
  CHECK(ranks.system_values["sys1"] == doctest::Approx(2.0));
  CHECK(ranks.system_values["sys2"] == doctest::Approx(3.0));
}

TEST_CASE("lower-is-better metrics flip the scaling") {
  auto reg = MetricRegistry::standard();
  ScoreTable table;
  table.insert({"lp", "a", 0, "metricx"}, 2.0);
  table.insert({"lp", "b", 0, "metricx"}, 4.0);
  auto ranks = autorank_system(table, "lp", {"a", "b"}, {"metricx"}, reg);
  CHECK(ranks.system_values["a"] == doctest::Approx(1.0));
  CHECK(ranks.system_values["b"] == doctest::Approx(2.0));
}

TEST_CASE("mixed polarity ensemble equals brute force recomputation") {
  auto reg = MetricRegistry::standard();
  Rng rng(8);
  std::vector<std::string> systems = {"s1", "s2", "s3", "s4"};
  std::vector<std::string> metrics = {"comet", "metricx", "chrf"};
  auto table = testutil::grid_table(
      "lp", systems, metrics,
      [&rng](size_t, int64_t, size_t) { return rng.normal(); }, 6);
  auto ranks = autorank_system(table, "lp", systems, metrics, reg);
  auto brute = brute_autorank(table, "lp", systems, metrics, reg);
  for (const auto& system : systems) {
    CHECK(ranks.system_values[system] ==
          doctest::Approx(brute[system]).epsilon(0).scale(1e-12));
  }
}

TEST_CASE("system autorank rejects missing scores") {
  auto reg = MetricRegistry::standard();
  ScoreTable table;
  table.insert({"lp", "a", 0, "comet"}, 0.5);
  table.insert({"lp", "b", 0, "chrf"}, 10.0);
  CHECK_THROWS_AS(autorank_system(table, "lp", {"a", "b"}, {"comet"}, reg), Error);
}

TEST_CASE("instance autorank endpoints") {
  auto reg = MetricRegistry::standard();
  ScoreTable table;
  table.insert({"lp", "sys", 0, "comet"}, 0.9);
  table.insert({"lp", "sys", 1, "comet"}, 0.1);
  auto ranks = autorank_instance(table, "lp", {"sys"}, {"comet"}, reg);
  CHECK(ranks.instance_values[{"sys", 0}] == doctest::Approx(1.0));
  CHECK(ranks.instance_values[{"sys", 1}] == doctest::Approx(2.0));
  CHECK(ranks.system_values["sys"] == doctest::Approx(1.5));
}

TEST_CASE("degenerate metric contributes the midpoint everywhere") {
  auto reg = MetricRegistry::standard();
  std::vector<std::string> systems = {"a", "b"};
  auto table = testutil::grid_table(
      "lp", systems, {"comet"}, [](size_t, int64_t, size_t) { return 0.25; }, 3);
  auto ranks = autorank_instance(table, "lp", systems, {"comet"}, reg);
  const double t = 6.0;  // 2 systems x 3 segs
  for (const auto& [key, value] : ranks.instance_values) {
    CHECK(value == doctest::Approx((1.0 + t) / 2.0));
  }
  auto sys_ranks = autorank_system(table, "lp", systems, {"comet"}, reg);
  CHECK(sys_ranks.system_values["a"] == doctest::Approx(1.5));
}

TEST_CASE("instance autorank equals brute force on a random grid") {
  auto reg = MetricRegistry::standard();
  Rng rng(19);
  std::vector<std::string> systems = {"s1", "s2", "s3"};
  std::vector<std::string> metrics = {"comet", "metricx"};
  auto table = testutil::grid_table(
      "lp", systems, metrics,
      [&rng](size_t, int64_t, size_t) { return rng.normal(); }, 4);

  auto ranks = autorank_instance(table, "lp", systems, metrics, reg);

  // brute force
  std::vector<std::pair<std::string, int64_t>> instances;
  for (const auto& s : systems)
    for (int64_t seg = 0; seg < 4; ++seg) instances.emplace_back(s, seg);
  const double t = static_cast<double>(instances.size());
  std::map<std::pair<std::string, int64_t>, double> totals;
  for (const auto& metric : metrics) {
    double lo = 1e300, hi = -1e300;
    for (const auto& [s, seg] : instances) {
      const double v = table.at({"lp", s, seg, metric});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (const auto& inst : instances) {
      const double v = table.at({"lp", inst.first, inst.second, metric});
      double scaled;
      if (reg.at(metric).polarity == Polarity::HigherBetter) {
        scaled = 1.0 + (hi - v) / (hi - lo) * (t - 1.0);
      } else {
        scaled = 1.0 + (v - lo) / (hi - lo) * (t - 1.0);
      }
      totals[inst] += scaled;
    }
  }
  for (const auto& inst : instances) {
    CHECK(ranks.instance_values[inst] ==
          doctest::Approx(totals[inst] / metrics.size()).epsilon(0).scale(1e-12));
  }
}

TEST_CASE("autorank is invariant to positive affine metric transforms") {
  auto reg = MetricRegistry::standard();
  Rng rng(29);
  std::vector<std::string> systems = {"s1", "s2", "s3"};
  std::vector<std::string> metrics = {"comet", "metricx"};
  auto table = testutil::grid_table(
      "lp", systems, metrics,
      [&rng](size_t, int64_t, size_t) { return rng.normal(); }, 5);

  ScoreTable scaled;
  for (const auto& [key, value] : table.entries()) {
    const double v = key.metric == "comet" ? 3.5 * value + 11.0 : value;
    scaled.insert(key, v);
  }

  auto base_sys = autorank_system(table, "lp", systems, metrics, reg);
  auto scaled_sys = autorank_system(scaled, "lp", systems, metrics, reg);
  auto base_ins = autorank_instance(table, "lp", systems, metrics, reg);
  auto scaled_ins = autorank_instance(scaled, "lp", systems, metrics, reg);
  for (const auto& s : systems) {
    CHECK(base_sys.system_values[s] ==
          doctest::Approx(scaled_sys.system_values[s]).epsilon(0).scale(1e-9));
  }
  for (const auto& [key, value] : base_ins.instance_values) {
    CHECK(value == doctest::Approx(scaled_ins.instance_values[key]).epsilon(0).scale(1e-9));
  }
}

TEST_CASE("ensemble value lies between per-metric scaled extremes") {
  auto reg = MetricRegistry::standard();
  Rng rng(37);
  std::vector<std::string> systems = {"s1", "s2", "s3", "s4"};
  std::vector<std::string> metrics = {"comet", "chrf", "metricx"};
  auto table = testutil::grid_table(
      "lp", systems, metrics,
      [&rng](size_t, int64_t, size_t) { return rng.normal(); }, 5);
  auto ranks = autorank_system(table, "lp", systems, metrics, reg);
  for (const auto& s : systems) {
    double lo = 1e300, hi = -1e300;
    for (const auto& metric : metrics) {
      auto single = autorank_system(table, "lp", systems, {metric}, reg);
      lo = std::min(lo, single.system_values[s]);
      hi = std::max(hi, single.system_values[s]);
    }
    CHECK(ranks.system_values[s] >= lo - 1e-12);
    CHECK(ranks.system_values[s] <= hi + 1e-12);
  }
}
