#include "minteval/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "minteval/parallel.hpp"
#include "minteval/rng.hpp"

namespace minteval {

using nlohmann::json;

void ForestConfig::validate() const {
  if (n_trees < 1) fail(Errc::InvalidArgument, "n_trees must be >= 1");
  if (max_depth < 1) fail(Errc::InvalidArgument, "max_depth must be >= 1");
  if (min_samples_split < 2) fail(Errc::InvalidArgument, "min_samples_split must be >= 2");
  if (min_samples_leaf < 1) fail(Errc::InvalidArgument, "min_samples_leaf must be >= 1");
  if (!(max_features > 0.0) || max_features > 1.0) {
    fail(Errc::InvalidArgument, "max_features must be in (0, 1]");
  }
}

double RegressionTree::predict_row(const double* row) const {
  int32_t node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode& n = nodes[node];
    node = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[node].value;
}

namespace {

struct SplitCandidate {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const DataMatrix& X, const std::vector<double>& y, const ForestConfig& cfg,
              uint64_t seed)
      : X_(X), y_(y), cfg_(cfg), rng_(seed) {
    features_per_split_ =
        std::max<size_t>(1, static_cast<size_t>(cfg.max_features * static_cast<double>(X.cols)));
    all_features_.resize(X.cols);
    std::iota(all_features_.begin(), all_features_.end(), 0);
  }

  RegressionTree build() {
    std::vector<uint32_t> rows(X_.rows);
    if (cfg_.bootstrap) {
      for (auto& r : rows) r = static_cast<uint32_t>(rng_.index(X_.rows));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    tree_.nodes.clear();
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  // Appends the subtree for `rows` and returns its node id. Rows keep their
  // incoming order when partitioned, so repeated fits are bit-identical.
  int32_t grow(std::vector<uint32_t>& rows, int depth) {
    const size_t n = rows.size();
    double sum = 0.0, sumsq = 0.0;
    for (uint32_t r : rows) {
      sum += y_[r];
      sumsq += y_[r] * y_[r];
    }
    const double mean = sum / static_cast<double>(n);
    const double sse = std::max(0.0, sumsq - sum * sum / static_cast<double>(n));

    const int32_t id = static_cast<int32_t>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{});
    tree_.nodes[id].value = mean;

    if (depth >= cfg_.max_depth || n < static_cast<size_t>(cfg_.min_samples_split) ||
        sse <= 0.0) {
      return id;
    }
    SplitCandidate best = find_split(rows);
    if (!best.found) return id;

    std::vector<uint32_t> left, right;
    left.reserve(n);
    right.reserve(n);
    for (uint32_t r : rows) {
      (X_.at(r, best.feature) <= best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    tree_.nodes[id].feature = best.feature;
    tree_.nodes[id].threshold = best.threshold;
    const int32_t left_id = grow(left, depth + 1);
    tree_.nodes[id].left = left_id;
    const int32_t right_id = grow(right, depth + 1);
    tree_.nodes[id].right = right_id;
    return id;
  }

  SplitCandidate find_split(const std::vector<uint32_t>& rows) {
    const size_t n = rows.size();
    SplitCandidate best;

    const std::vector<int>& features = sample_features();
    scratch_.resize(n);
    for (int f : features) {
      for (size_t i = 0; i < n; ++i) {
        scratch_[i] = {X_.at(rows[i], f), y_[rows[i]]};
      }
      std::stable_sort(scratch_.begin(), scratch_.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });

      double total_sum = 0.0, total_sumsq = 0.0;
      for (const auto& [x, yv] : scratch_) {
        total_sum += yv;
        total_sumsq += yv * yv;
      }
      double left_sum = 0.0, left_sumsq = 0.0;
      for (size_t i = 1; i < n; ++i) {
        const double yv = scratch_[i - 1].second;
        left_sum += yv;
        left_sumsq += yv * yv;
        if (!(scratch_[i - 1].first < scratch_[i].first)) continue;
        const size_t n_left = i, n_right = n - i;
        if (n_left < static_cast<size_t>(cfg_.min_samples_leaf) ||
            n_right < static_cast<size_t>(cfg_.min_samples_leaf)) {
          continue;
        }
        const double right_sum = total_sum - left_sum;
        const double right_sumsq = total_sumsq - left_sumsq;
        const double sse_left = left_sumsq - left_sum * left_sum / static_cast<double>(n_left);
        const double sse_right =
            right_sumsq - right_sum * right_sum / static_cast<double>(n_right);
        const double sse = std::max(0.0, sse_left) + std::max(0.0, sse_right);
        if (sse < best.sse) {
          double lo = scratch_[i - 1].first, hi = scratch_[i].first;
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;  // keep training rows routed by sorted position
          best.found = true;
          best.feature = f;
          best.threshold = mid;
          best.sse = sse;
        }
      }
    }
    return best;
  }

  // Ascending subset of feature indices; the full set when max_features = 1.
  const std::vector<int>& sample_features() {
    if (features_per_split_ >= X_.cols) return all_features_;
    sampled_ = all_features_;
    for (size_t i = 0; i < features_per_split_; ++i) {
      const size_t j = i + rng_.index(sampled_.size() - i);
      std::swap(sampled_[i], sampled_[j]);
    }
    sampled_.resize(features_per_split_);
    std::sort(sampled_.begin(), sampled_.end());
    return sampled_;
  }

  const DataMatrix& X_;
  const std::vector<double>& y_;
  const ForestConfig& cfg_;
  Rng rng_;
  size_t features_per_split_ = 0;
  RegressionTree tree_;
  std::vector<int> all_features_;
  std::vector<int> sampled_;
  std::vector<std::pair<double, double>> scratch_;
};

}  // namespace

ForestModel fit_forest(const DataMatrix& X, const std::vector<double>& y,
                       const ForestConfig& cfg) {
  cfg.validate();
  if (X.rows < 2) fail(Errc::TooFewRows, "need at least 2 training rows, got " +
                                             std::to_string(X.rows));
  if (X.cols < 1) fail(Errc::InvalidArgument, "need at least 1 feature");
  if (y.size() != X.rows) {
    fail(Errc::DimensionMismatch, "target length " + std::to_string(y.size()) +
                                      " does not match row count " + std::to_string(X.rows));
  }
  for (double v : X.data)
    if (!std::isfinite(v)) fail(Errc::NonFiniteInput, "non-finite feature value");
  for (double v : y)
    if (!std::isfinite(v)) fail(Errc::NonFiniteInput, "non-finite target value");

  ForestModel model;
  model.config = cfg;
  model.n_features = X.cols;
  model.target_min = *std::min_element(y.begin(), y.end());
  model.target_max = *std::max_element(y.begin(), y.end());
  model.trees.resize(cfg.n_trees);
  parallel_for(cfg.jobs, static_cast<size_t>(cfg.n_trees), [&](size_t t) {
    TreeBuilder builder(X, y, cfg, derive_seed(cfg.seed, t));
    model.trees[t] = builder.build();
  });
  return model;
}

double ForestModel::predict_row(const double* row) const {
  double sum = 0.0;
  for (const auto& tree : trees) sum += tree.predict_row(row);
  const double mean = sum / static_cast<double>(trees.size());
  return std::clamp(mean, target_min, target_max);
}

std::vector<double> ForestModel::predict(const DataMatrix& X) const {
  if (X.cols != n_features) {
    fail(Errc::DimensionMismatch, "model expects " + std::to_string(n_features) +
                                      " features, got " + std::to_string(X.cols));
  }
  std::vector<double> out(X.rows);
  for (size_t r = 0; r < X.rows; ++r) out[r] = predict_row(X.row(r));
  return out;
}

namespace {

json node_to_json(const RegressionTree& tree, int32_t id) {
  const TreeNode& n = tree.nodes[id];
  if (n.is_leaf()) return json{{"v", n.value}};
  return json{{"f", n.feature},
              {"t", n.threshold},
              {"l", node_to_json(tree, n.left)},
              {"r", node_to_json(tree, n.right)}};
}

int32_t node_from_json(const json& doc, RegressionTree& tree) {
  const int32_t id = static_cast<int32_t>(tree.nodes.size());
  tree.nodes.push_back(TreeNode{});
  if (doc.contains("v")) {
    tree.nodes[id].value = doc.at("v").get<double>();
    return id;
  }
  tree.nodes[id].feature = doc.at("f").get<int>();
  tree.nodes[id].threshold = doc.at("t").get<double>();
  const int32_t left_id = node_from_json(doc.at("l"), tree);
  tree.nodes[id].left = left_id;
  const int32_t right_id = node_from_json(doc.at("r"), tree);
  tree.nodes[id].right = right_id;
  return id;
}

}  // namespace

json ForestModel::to_json() const {
  json trees_json = json::array();
  for (const auto& tree : trees) trees_json.push_back(node_to_json(tree, 0));
  return json{{"format", "minteval-forest"},
              {"version", 1},
              {"config",
               {{"n_trees", config.n_trees},
                {"max_depth", config.max_depth},
                {"min_samples_split", config.min_samples_split},
                {"min_samples_leaf", config.min_samples_leaf},
                {"bootstrap", config.bootstrap},
                {"max_features", config.max_features},
                {"seed", config.seed}}},
              {"n_features", n_features},
              {"feature_names", feature_names},
              {"target_name", target_name},
              {"lp", lp},
              {"target_range", {target_min, target_max}},
              {"trees", trees_json}};
}

ForestModel ForestModel::from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "minteval-forest" ||
        doc.at("version").get<int>() != 1) {
      fail(Errc::MalformedRow, "unsupported forest model format/version");
    }
    ForestModel model;
    const json& cfg = doc.at("config");
    model.config.n_trees = cfg.at("n_trees").get<int>();
    model.config.max_depth = cfg.at("max_depth").get<int>();
    model.config.min_samples_split = cfg.at("min_samples_split").get<int>();
    model.config.min_samples_leaf = cfg.at("min_samples_leaf").get<int>();
    model.config.bootstrap = cfg.at("bootstrap").get<bool>();
    model.config.max_features = cfg.at("max_features").get<double>();
    model.config.seed = cfg.at("seed").get<uint64_t>();
    model.n_features = doc.at("n_features").get<size_t>();
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.target_name = doc.value("target_name", std::string());
    model.lp = doc.value("lp", std::string());
    model.target_min = doc.at("target_range").at(0).get<double>();
    model.target_max = doc.at("target_range").at(1).get<double>();
    for (const auto& tree_json : doc.at("trees")) {
      RegressionTree tree;
      node_from_json(tree_json, tree);
      model.trees.push_back(std::move(tree));
    }
    if (model.trees.empty()) fail(Errc::MalformedRow, "forest model has no trees");
    return model;
  } catch (const json::exception& e) {
    fail(Errc::MalformedRow, std::string("bad forest model document: ") + e.what());
  }
}

void save_forest(const ForestModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << model.to_json().dump();
  out << '\n';
}

ForestModel load_forest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(Errc::MalformedRow, path + ": " + e.what());
  }
  return ForestModel::from_json(doc);
}

}  // namespace minteval
