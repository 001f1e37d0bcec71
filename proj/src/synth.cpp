#include "minteval/synth.hpp"

#include <algorithm>
#include <cmath>

#include "minteval/adjust.hpp"
#include "minteval/rankers.hpp"
#include "minteval/rng.hpp"

namespace minteval {

void ScenarioConfig::validate() const {
  if (n_segs < 1) fail(Errc::InvalidConfig, "n_segs must be >= 1");
  if (n_baseline_systems < 1) fail(Errc::InvalidConfig, "need at least 1 baseline system");
  if (pool_size < 1) fail(Errc::InvalidConfig, "pool_size must be >= 1");
  if (k_neural < 0 || k_lex < 0) fail(Errc::InvalidConfig, "metric counts must be >= 0");
  if (k_neural + k_lex < 2) {
    fail(Errc::InvalidConfig, "need at least 2 safe metrics (k_neural + k_lex >= 2)");
  }
  if (spurious_load < 0) fail(Errc::InvalidConfig, "spurious_load must be >= 0");
  for (double s : {sigma_metric, sigma_lex, sigma_human, sigma_quality}) {
    if (s < 0) fail(Errc::InvalidConfig, "sigmas must be >= 0");
  }
  if (!baseline_skills.empty() &&
      baseline_skills.size() != static_cast<size_t>(n_baseline_systems)) {
    fail(Errc::InvalidConfig, "baseline_skills must match n_baseline_systems");
  }
}

std::vector<double> ScenarioConfig::resolved_baseline_skills() const {
  if (!baseline_skills.empty()) return baseline_skills;
  std::vector<double> skills(n_baseline_systems);
  if (n_baseline_systems == 1) {
    skills[0] = 0.0;
    return skills;
  }
  for (int i = 0; i < n_baseline_systems; ++i) {
    skills[i] = -0.3 + 0.6 * static_cast<double>(i) / (n_baseline_systems - 1);
  }
  return skills;
}

std::vector<std::string> SyntheticWorld::safe_metrics() const {
  std::vector<std::string> out;
  for (int k = 1; k <= config.k_neural; ++k) out.push_back("neu" + std::to_string(k));
  for (int k = 1; k <= config.k_lex; ++k) out.push_back("lex" + std::to_string(k));
  return out;
}

std::vector<std::string> SyntheticWorld::all_systems() const {
  std::vector<std::string> out = baseline_systems;
  out.push_back(greedy_system);
  out.push_back(mbr_system);
  return out;
}

namespace {

// One translation's scores on every metric.
struct Draw {
  double quality = 0.0;
  double interfering = 0.0;
  std::vector<double> neural;
  std::vector<double> lexical;
  double human = 0.0;
};

Draw draw_translation(Rng& rng, const ScenarioConfig& cfg, double mu, double skill) {
  Draw d;
  d.quality = mu + skill + rng.normal(0.0, cfg.sigma_quality);
  const double u = rng.normal(0.0, 1.0);
  d.interfering = d.quality + cfg.spurious_load * u + rng.normal(0.0, cfg.sigma_metric);
  d.neural.reserve(cfg.k_neural);
  for (int k = 0; k < cfg.k_neural; ++k) {
    d.neural.push_back(d.quality + cfg.spurious_load * u + rng.normal(0.0, cfg.sigma_metric));
  }
  d.lexical.reserve(cfg.k_lex);
  for (int k = 0; k < cfg.k_lex; ++k) {
    d.lexical.push_back(d.quality + rng.normal(0.0, cfg.sigma_lex));
  }
  d.human = d.quality + rng.normal(0.0, cfg.sigma_human);
  return d;
}

void record(ScoreTable& scores, const std::string& lp, const std::string& system, int64_t seg,
            const Draw& d) {
  scores.insert({lp, system, seg, "int"}, d.interfering);
  for (size_t k = 0; k < d.neural.size(); ++k) {
    scores.insert({lp, system, seg, "neu" + std::to_string(k + 1)}, d.neural[k]);
  }
  for (size_t k = 0; k < d.lexical.size(); ++k) {
    scores.insert({lp, system, seg, "lex" + std::to_string(k + 1)}, d.lexical[k]);
  }
  scores.insert({lp, system, seg, "human"}, d.human);
  scores.insert({lp, system, seg, "quality"}, d.quality);
}

}  // namespace

SyntheticWorld generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  SyntheticWorld world;
  world.config = cfg;
  world.registry = MetricRegistry::standard();
  world.registry.add({"int", Polarity::HigherBetter, MetricFamily::NeuralRef});
  for (int k = 1; k <= cfg.k_neural; ++k) {
    world.registry.add({"neu" + std::to_string(k), Polarity::HigherBetter, MetricFamily::NeuralRef});
  }
  for (int k = 1; k <= cfg.k_lex; ++k) {
    world.registry.add({"lex" + std::to_string(k), Polarity::HigherBetter, MetricFamily::Lexical});
  }
  world.registry.add({"quality", Polarity::HigherBetter, MetricFamily::Human});

  const auto skills = cfg.resolved_baseline_skills();
  for (int b = 0; b < cfg.n_baseline_systems; ++b) {
    world.baseline_systems.push_back("base" + std::to_string(b + 1));
  }

  Rng rng(cfg.seed);
  world.chosen_index.reserve(cfg.n_segs);
  for (int seg = 0; seg < cfg.n_segs; ++seg) {
    const double mu = rng.normal(0.0, 1.0);
    for (int b = 0; b < cfg.n_baseline_systems; ++b) {
      record(world.scores, world.lp, world.baseline_systems[b], seg,
             draw_translation(rng, cfg, mu, skills[b]));
    }
    std::vector<Draw> pool;
    pool.reserve(cfg.pool_size);
    for (int c = 0; c < cfg.pool_size; ++c) {
      pool.push_back(draw_translation(rng, cfg, mu, cfg.mbr_skill));
    }
    int chosen = 0;
    for (int c = 1; c < cfg.pool_size; ++c) {
      if (pool[c].interfering > pool[chosen].interfering) chosen = c;
    }
    world.chosen_index.push_back(chosen);
    record(world.scores, world.lp, world.greedy_system, seg, pool[0]);
    record(world.scores, world.lp, world.mbr_system, seg, pool[chosen]);
  }
  return world;
}

const MethodEval& ScenarioReport::method(const std::string& name) const {
  for (const auto& [method_name, eval] : methods) {
    if (method_name == name) return eval;
  }
  fail(Errc::InvalidArgument, "no method '" + name + "' in scenario report");
}

namespace {

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

ScenarioReport evaluate_scenario(const SyntheticWorld& world, const ScenarioEvalConfig& cfg) {
  const ScenarioConfig& scenario = world.config;
  if (scenario.n_baseline_systems < 2) {
    fail(Errc::InvalidConfig, "evaluation needs at least 2 baseline systems");
  }

  const auto safe = world.safe_metrics();
  std::vector<std::string> training_systems = world.baseline_systems;
  if (cfg.include_greedy_in_training) training_systems.push_back(world.greedy_system);

  AdjustSpec spec;
  spec.interfering_metric = "int";
  spec.feature_metrics = safe;
  spec.training_systems = training_systems;
  spec.lp = world.lp;
  spec.forest_cfg = cfg.forest;
  ForestModel model = train_mintadjust(world.scores, spec);

  ScoreTable table = world.scores;
  const auto systems = world.all_systems();
  table.merge(apply_mintadjust(model, world.scores, systems, world.lp));

  RankTable ranks = autorank_instance(table, world.lp, systems, safe, world.registry);
  for (const auto& [key, value] : ranks.instance_values) {
    table.insert({world.lp, key.first, key.second, "autorank-ins"}, value);
  }

  std::vector<std::string> methods{"int"};
  methods.insert(methods.end(), safe.begin(), safe.end());
  methods.push_back("autorank-ins");
  methods.push_back("adjusted:int");

  // All synthetic systems share the seg grid 0..n_segs-1.
  std::vector<int64_t> segs(scenario.n_segs);
  for (int s = 0; s < scenario.n_segs; ++s) segs[s] = s;

  const size_t mbr_idx = systems.size() - 1;
  std::vector<std::pair<size_t, size_t>> mint_pairs;
  for (size_t i = 0; i + 1 < systems.size(); ++i) mint_pairs.emplace_back(mbr_idx, i);

  // One shared resample plan per system pair, reused by the quality side and
  // every method, so all p-values for a pair see the same resamples.
  std::vector<BootstrapPlan> plans;
  plans.reserve(mint_pairs.size());
  for (size_t k = 0; k < mint_pairs.size(); ++k) {
    plans.push_back(make_bootstrap_plan(segs.size(), cfg.bootstrap_B,
                                        derive_seed(cfg.eval_seed, k)));
  }

  auto oriented_scores = [&](const std::string& system, const std::string& metric) {
    auto v = scores_for(table, world.lp, system, metric, segs);
    if (world.registry.at(metric).polarity == Polarity::LowerBetter) {
      for (auto& x : v) x = -x;
    }
    return v;
  };

  PMatrix human_p(systems.size());
  {
    std::vector<std::vector<double>> quality;
    for (const auto& system : systems) {
      quality.push_back(scores_for(table, world.lp, system, "quality", segs));
    }
    for (size_t k = 0; k < mint_pairs.size(); ++k) {
      const auto [i, j] = mint_pairs[k];
      human_p.set(i, j, paired_bootstrap_p(quality[i], quality[j], plans[k]));
    }
  }

  ScenarioReport report;
  for (const auto& metric : methods) {
    std::vector<std::vector<double>> values;
    for (const auto& system : systems) values.push_back(oriented_scores(system, metric));

    PMatrix metric_p(systems.size());
    for (size_t k = 0; k < mint_pairs.size(); ++k) {
      const auto [i, j] = mint_pairs[k];
      metric_p.set(i, j, paired_bootstrap_p(values[i], values[j], plans[k]));
    }

    MethodEval eval;
    eval.spa = spa(human_p, metric_p, mint_pairs);

    std::vector<InsPaTuple> tuples;
    for (size_t i = 0; i + 1 < systems.size(); ++i) {
      auto pair_tuples = build_inspa_tuples(table, world.lp, {systems[mbr_idx], systems[i]},
                                            metric, "quality", world.registry);
      tuples.insert(tuples.end(), pair_tuples.begin(), pair_tuples.end());
    }
    eval.ins_pa = ins_pa(tuples);
    report.methods.emplace_back(metric, eval);
  }

  report.mbr_int_mean = mean_of(scores_for(table, world.lp, world.mbr_system, "int", segs));
  report.greedy_int_mean = mean_of(scores_for(table, world.lp, world.greedy_system, "int", segs));
  report.mbr_quality_mean =
      mean_of(scores_for(table, world.lp, world.mbr_system, "quality", segs));
  report.greedy_quality_mean =
      mean_of(scores_for(table, world.lp, world.greedy_system, "quality", segs));

  const std::string delta_x = scenario.k_lex > 0 ? "lex1" : safe.front();
  report.mint_delta =
      delta_pair(table, world.lp, world.mbr_system, world.greedy_system, delta_x, "int");
  report.baseline_delta = delta_pair(table, world.lp, world.baseline_systems[0],
                                     world.baseline_systems[1], delta_x, "int");
  return report;
}

}  // namespace minteval
