#include "minteval/adjust.hpp"

#include <algorithm>
#include <set>

namespace minteval {

namespace {

// Feature rows for the given (lp, system) pairs; the row grid is the seg set
// of the first feature metric, and every metric must cover it exactly.
struct FeatureRows {
  DataMatrix X;
  std::vector<std::pair<std::string, int64_t>> keys;  // (system, seg) per row
};

FeatureRows gather_features(const ScoreTable& table, const std::string& lp,
                            const std::vector<std::string>& systems,
                            const std::vector<std::string>& features) {
  FeatureRows rows;
  for (const auto& system : systems) {
    auto segs = table.segs(lp, system, features[0]);
    if (segs.empty()) {
      fail(Errc::MissingScores, "system '" + system + "' has no '" + features[0] +
                                    "' scores for lp '" + lp + "'");
    }
    for (int64_t seg : segs) rows.keys.emplace_back(system, seg);
  }
  rows.X = DataMatrix(rows.keys.size(), features.size());
  std::vector<std::string> missing;
  for (size_t r = 0; r < rows.keys.size(); ++r) {
    const auto& [system, seg] = rows.keys[r];
    for (size_t c = 0; c < features.size(); ++c) {
      auto v = table.find({lp, system, seg, features[c]});
      if (!v) {
        missing.push_back("(" + system + ", " + std::to_string(seg) + ", " + features[c] + ")");
        continue;
      }
      rows.X.at(r, c) = *v;
    }
  }
  if (!missing.empty()) {
    std::string joined;
    for (size_t i = 0; i < missing.size() && i < 8; ++i) {
      if (i) joined += ", ";
      joined += missing[i];
    }
    if (missing.size() > 8) joined += ", ... " + std::to_string(missing.size() - 8) + " more";
    fail(Errc::MissingScores, "missing feature scores: " + joined);
  }
  return rows;
}

std::vector<double> gather_target(const ScoreTable& table, const std::string& lp,
                                  const std::vector<std::pair<std::string, int64_t>>& keys,
                                  const std::string& metric, Errc missing_code) {
  std::vector<double> y;
  y.reserve(keys.size());
  std::vector<std::string> missing;
  for (const auto& [system, seg] : keys) {
    auto v = table.find({lp, system, seg, metric});
    if (!v) {
      missing.push_back("(" + system + ", " + std::to_string(seg) + ", " + metric + ")");
      continue;
    }
    y.push_back(*v);
  }
  if (!missing.empty()) {
    std::string joined;
    for (size_t i = 0; i < missing.size() && i < 8; ++i) {
      if (i) joined += ", ";
      joined += missing[i];
    }
    if (missing.size() > 8) joined += ", ... " + std::to_string(missing.size() - 8) + " more";
    fail(missing_code, "missing target scores: " + joined);
  }
  return y;
}

void check_features(const std::vector<std::string>& features, const std::string& target) {
  if (features.empty()) fail(Errc::InvalidArgument, "need at least one feature metric");
  std::set<std::string> seen;
  for (const auto& f : features) {
    if (!seen.insert(f).second) fail(Errc::InvalidArgument, "duplicate feature '" + f + "'");
    if (f == target) {
      fail(Errc::LeakageError,
           "interfering metric '" + target + "' cannot be one of its own features");
    }
  }
}

}  // namespace

void AdjustSpec::validate() const {
  if (interfering_metric.empty()) fail(Errc::InvalidArgument, "no interfering metric given");
  if (training_systems.empty()) fail(Errc::InvalidArgument, "no training systems given");
  check_features(feature_metrics, interfering_metric);
  // Adjustment corrects a metric from other metrics; it never consumes human
  // judgements.
  for (const auto& f : feature_metrics) {
    if (f == "human") {
      fail(Errc::LeakageError, "'human' cannot be a feature when the target is a metric");
    }
  }
  forest_cfg.validate();
}

ForestModel train_mintadjust(const ScoreTable& table, const AdjustSpec& spec) {
  spec.validate();
  FeatureRows rows = gather_features(table, spec.lp, spec.training_systems, spec.feature_metrics);
  std::vector<double> y =
      gather_target(table, spec.lp, rows.keys, spec.interfering_metric, Errc::MissingScores);
  ForestModel model = fit_forest(rows.X, y, spec.forest_cfg);
  model.feature_names = spec.feature_metrics;
  model.target_name = spec.interfering_metric;
  model.lp = spec.lp;
  return model;
}

ScoreTable apply_mintadjust(const ForestModel& model, const ScoreTable& table,
                            const std::vector<std::string>& systems, const std::string& lp) {
  if (model.feature_names.empty()) {
    fail(Errc::InvalidArgument, "model carries no feature names; cannot map score columns");
  }
  if (systems.empty()) fail(Errc::InvalidArgument, "no systems requested");
  FeatureRows rows = gather_features(table, lp, systems, model.feature_names);
  std::vector<double> predictions = model.predict(rows.X);

  const std::string out_metric = "adjusted:" + model.target_name;
  ScoreTable out;
  for (size_t r = 0; r < rows.keys.size(); ++r) {
    const auto& [system, seg] = rows.keys[r];
    out.insert({lp, system, seg, out_metric}, predictions[r]);
  }
  return out;
}

ForestModel train_human_ensemble(const ScoreTable& table, const HumanEnsembleSpec& spec) {
  if (spec.lps.empty()) fail(Errc::InvalidArgument, "no training lps given");
  if (spec.training_systems.empty()) fail(Errc::InvalidArgument, "no training systems given");
  check_features(spec.feature_metrics, spec.human_metric);
  spec.forest_cfg.validate();

  DataMatrix X;
  std::vector<double> y;
  std::vector<std::pair<std::string, int64_t>> all_keys;
  size_t total_rows = 0;
  std::vector<FeatureRows> per_lp;
  for (const auto& lp : spec.lps) {
    per_lp.push_back(gather_features(table, lp, spec.training_systems, spec.feature_metrics));
    total_rows += per_lp.back().keys.size();
  }
  X = DataMatrix(total_rows, spec.feature_metrics.size());
  size_t row = 0;
  for (size_t l = 0; l < spec.lps.size(); ++l) {
    const auto& rows = per_lp[l];
    auto targets =
        gather_target(table, spec.lps[l], rows.keys, spec.human_metric, Errc::MissingHuman);
    for (size_t r = 0; r < rows.keys.size(); ++r, ++row) {
      for (size_t c = 0; c < spec.feature_metrics.size(); ++c) X.at(row, c) = rows.X.at(r, c);
      y.push_back(targets[r]);
    }
  }

  ForestModel model = fit_forest(X, y, spec.forest_cfg);
  model.feature_names = spec.feature_metrics;
  model.target_name = spec.human_metric;
  model.lp = spec.lps.size() == 1 ? spec.lps[0] : "";
  return model;
}

}  // namespace minteval
