#pragma once

#include <string>
#include <vector>

#include "minteval/forest.hpp"
#include "minteval/registry.hpp"

namespace minteval {

struct AdjustSpec {
  std::string interfering_metric;            // regression target
  std::vector<std::string> feature_metrics;  // must not include the target or `human`
  std::vector<std::string> training_systems;
  std::string lp;
  ForestConfig forest_cfg;

  void validate() const;  // LeakageError, InvalidArgument
};

// Fits one forest per call: X = feature-metric scores, y = the interfering
// metric's scores, over every segment of every training system in the lp.
// Every training (system, seg) must carry all features and the target.
ForestModel train_mintadjust(const ScoreTable& table, const AdjustSpec& spec);
// MissingScores, LeakageError

// Emits `adjusted:<target>` for every segment of every requested system
// (systems under interference and not, alike). Outputs inherit the forest's
// training-range bound.
ScoreTable apply_mintadjust(const ForestModel& model, const ScoreTable& table,
                            const std::vector<std::string>& systems,
                            const std::string& lp);  // MissingScores

struct HumanEnsembleSpec {
  std::vector<std::string> feature_metrics;
  // Rows from every listed (lp, system) combination are pooled into one
  // training set; a single-lp list gives the per-lp variant.
  std::vector<std::string> lps;
  std::vector<std::string> training_systems;
  std::string human_metric = "human";
  ForestConfig forest_cfg;
};

// The annotated-ensemble baseline: identical machinery, but the regression
// target is the human score column instead of a metric.
ForestModel train_human_ensemble(const ScoreTable& table,
                                 const HumanEnsembleSpec& spec);  // MissingScores, MissingHuman

}  // namespace minteval
