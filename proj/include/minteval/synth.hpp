#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minteval/forest.hpp"
#include "minteval/metaeval.hpp"
#include "minteval/registry.hpp"

namespace minteval {

// Generative model with a known latent quality, used to make interference
// effects measurable at desk scale. Per segment s, a difficulty mu_s ~ N(0,1)
// is drawn. Every translation (one per baseline system, pool_size candidates
// for the selection system) then draws, in this order:
//   q      = mu_s + skill + N(0, sigma_quality^2)      (latent quality)
//   u      ~ N(0, 1)                                   (shared spurious part)
//   int    = q + spurious_load * u + N(0, sigma_metric^2)
//   neu_k  = q + spurious_load * u + N(0, sigma_metric^2)   k = 1..k_neural
//   lex_k  = q + N(0, sigma_lex^2)                          k = 1..k_lex
//   human  = q + N(0, sigma_human^2)
// The selection system ("mbr") emits the candidate with the highest `int`
// score; its greedy twin emits candidate 0 of the same pool. Scores live on
// an unbounded real scale; the pipeline is scale-agnostic. All defaults are
// tuning choices made to keep the interference effect visible but not
// degenerate.
struct ScenarioConfig {
  int n_segs = 500;
  int n_baseline_systems = 4;
  int pool_size = 20;
  int k_neural = 3;
  int k_lex = 2;
  double spurious_load = 0.6;  // weight of the component shared by neural-like metrics
  double sigma_metric = 0.5;
  double sigma_lex = 1.0;  // lexical-like metrics are noisier trackers of quality
  double sigma_human = 0.3;
  double sigma_quality = 1.0;
  std::vector<double> baseline_skills;  // empty: evenly spaced in [-0.3, 0.3]
  double mbr_skill = 0.0;               // skill of the pooled model (mbr + greedy twin)
  uint64_t seed = 0;

  void validate() const;  // InvalidConfig
  std::vector<double> resolved_baseline_skills() const;
};

struct SyntheticWorld {
  ScenarioConfig config;
  MetricRegistry registry;  // standard() plus int / neu* / lex* / quality
  // Metrics per (system, seg): "int", "neu1..", "lex1..", "human", and
  // "quality" (the latent q itself, the meta-evaluation ground truth).
  ScoreTable scores;
  std::string lp = "synthetic";
  std::vector<std::string> baseline_systems;  // "base1", ...
  std::string greedy_system = "greedy";
  std::string mbr_system = "mbr";
  std::vector<int> chosen_index;  // per seg, argmax of `int` over the pool

  std::vector<std::string> safe_metrics() const;  // neu* then lex*
  std::vector<std::string> all_systems() const;   // baselines, greedy, mbr
};

SyntheticWorld generate_scenario(const ScenarioConfig& cfg);

struct ScenarioEvalConfig {
  int bootstrap_B = 1000;
  uint64_t eval_seed = 1;  // drives per-pair bootstrap seeds
  ForestConfig forest;     // used for the adjustment model
  bool include_greedy_in_training = true;
};

struct MethodEval {
  double spa = 0.0;
  double ins_pa = 0.0;
};

struct ScenarioReport {
  // Keyed "int", each safe metric, "autorank-ins", "adjusted:int"; SPA and
  // Ins-PA are computed against latent quality over the system pairs that
  // contain the selection system.
  std::vector<std::pair<std::string, MethodEval>> methods;
  double mbr_int_mean = 0.0;
  double greedy_int_mean = 0.0;
  double mbr_quality_mean = 0.0;
  double greedy_quality_mean = 0.0;
  // Deltas of `int` (y) against the first lexical-like metric (x), for the
  // (mbr, greedy) pair and for the first two baseline systems.
  DeltaPairReport mint_delta;
  DeltaPairReport baseline_delta;

  const MethodEval& method(const std::string& name) const;  // InvalidArgument
};

// Trains the adjustment model on the non-selection systems, applies it to
// every system, scores every method against latent quality, and runs the
// delta/quadrant comparison.
ScenarioReport evaluate_scenario(const SyntheticWorld& world, const ScenarioEvalConfig& cfg);

}  // namespace minteval
