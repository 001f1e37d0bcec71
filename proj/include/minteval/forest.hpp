#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "minteval/error.hpp"

namespace minteval {

// Row-major dense matrix of features.
struct DataMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  DataMatrix() = default;
  DataMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double at(size_t r, size_t c) const { return data[r * cols + c]; }
  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  const double* row(size_t r) const { return data.data() + r * cols; }
};

struct ForestConfig {
  int n_trees = 1000;
  int max_depth = 4;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  bool bootstrap = true;
  double max_features = 1.0;  // fraction of features considered per split
  uint64_t seed = 0;
  int jobs = 1;

  void validate() const;  // InvalidArgument
};

// feature < 0 marks a leaf; `value` is the mean target of the training rows
// that reached it. Rows with x <= threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // node 0 is the root

  double predict_row(const double* row) const;
};

struct ForestModel {
  ForestConfig config;
  size_t n_features = 0;
  std::vector<std::string> feature_names;  // optional; same length as n_features when set
  std::string target_name;                 // optional metadata
  std::string lp;                          // optional metadata
  double target_min = 0.0;
  double target_max = 0.0;
  std::vector<RegressionTree> trees;

  // Mean of per-tree leaf values, clamped to [target_min, target_max] so the
  // range invariant holds exactly.
  std::vector<double> predict(const DataMatrix& X) const;  // DimensionMismatch
  double predict_row(const double* row) const;

  nlohmann::json to_json() const;
  static ForestModel from_json(const nlohmann::json& doc);  // MalformedRow
};

// CART regression fit. Splits minimize the summed squared error of the two
// children, searched exhaustively over midpoints of consecutive sorted
// distinct feature values; impurity ties resolve to the lower feature index,
// then the lower threshold. Tree t draws its bootstrap resample and feature
// subsets from derive_seed(cfg.seed, t), so results are independent of
// cfg.jobs and of how many trees follow.
ForestModel fit_forest(const DataMatrix& X, const std::vector<double>& y,
                       const ForestConfig& cfg);  // TooFewRows, NonFiniteInput

void save_forest(const ForestModel& model, const std::string& path);
ForestModel load_forest(const std::string& path);

}  // namespace minteval
