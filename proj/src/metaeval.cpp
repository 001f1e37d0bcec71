#include "minteval/metaeval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "minteval/rng.hpp"

namespace minteval {

BootstrapPlan make_bootstrap_plan(size_t n, int B, uint64_t seed) {
  if (n < 2) fail(Errc::TooFewSegments, "paired bootstrap needs at least 2 segments");
  if (B < 1) fail(Errc::InvalidArgument, "B must be >= 1");
  BootstrapPlan plan;
  plan.n = n;
  plan.B = B;
  plan.indices.resize(static_cast<size_t>(B) * n);
  Rng rng(seed);
  for (auto& idx : plan.indices) idx = static_cast<uint32_t>(rng.index(n));
  return plan;
}

double paired_bootstrap_p(std::span<const double> a, std::span<const double> b,
                          const BootstrapPlan& plan) {
  if (a.size() != b.size()) {
    fail(Errc::LengthMismatch, "paired vectors differ in length: " + std::to_string(a.size()) +
                                   " vs " + std::to_string(b.size()));
  }
  if (a.size() != plan.n) {
    fail(Errc::LengthMismatch, "bootstrap plan was built for " + std::to_string(plan.n) +
                                   " segments, got " + std::to_string(a.size()));
  }
  // Half-units: 2 per win for a, 1 per tie. Comparing sums is equivalent to
  // comparing means and keeps ties exact.
  int64_t half_units = 0;
  for (int r = 0; r < plan.B; ++r) {
    const uint32_t* idx = plan.resample(r);
    double sum_a = 0.0, sum_b = 0.0;
    for (size_t k = 0; k < plan.n; ++k) {
      sum_a += a[idx[k]];
      sum_b += b[idx[k]];
    }
    if (sum_a > sum_b) half_units += 2;
    else if (sum_a == sum_b) half_units += 1;
  }
  // p = half_units / 2B, evaluated so that the complementary direction sums
  // with this one to exactly 1.0 in double arithmetic.
  const int64_t two_b = 2 * static_cast<int64_t>(plan.B);
  if (2 * half_units <= two_b) {
    return static_cast<double>(half_units) / static_cast<double>(two_b);
  }
  return 1.0 - static_cast<double>(two_b - half_units) / static_cast<double>(two_b);
}

double paired_bootstrap_p(std::span<const double> a, std::span<const double> b, int B,
                          uint64_t seed) {
  if (a.size() != b.size()) {
    fail(Errc::LengthMismatch, "paired vectors differ in length: " + std::to_string(a.size()) +
                                   " vs " + std::to_string(b.size()));
  }
  return paired_bootstrap_p(a, b, make_bootstrap_plan(a.size(), B, seed));
}

void PMatrix::set(size_t i, size_t j, double p) {
  if (i >= n_ || j >= n_ || i == j) fail(Errc::InvalidArgument, "bad p-matrix cell");
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidArgument, "p must lie in [0, 1]");
  p_[i * n_ + j] = p;
  p_[j * n_ + i] = 1.0 - p;
}

double spa(const PMatrix& human, const PMatrix& scorer,
           std::span<const std::pair<size_t, size_t>> pairs) {
  if (human.size() != scorer.size()) {
    fail(Errc::ShapeMismatch, "p-matrices cover different system counts");
  }
  if (pairs.empty()) fail(Errc::InvalidArgument, "spa needs at least one system pair");
  double sum = 0.0;
  for (const auto& [i, j] : pairs) {
    if (i >= human.size() || j >= human.size() || i == j) {
      fail(Errc::InvalidArgument, "bad system pair in spa");
    }
    sum += 1.0 - std::abs(human.at(i, j) - scorer.at(i, j));
  }
  return sum / static_cast<double>(pairs.size());
}

double spa(const PMatrix& human, const PMatrix& scorer) {
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < human.size(); ++i)
    for (size_t j = i + 1; j < human.size(); ++j) pairs.emplace_back(i, j);
  return spa(human, scorer, pairs);
}

double ins_pa(std::span<const InsPaTuple> tuples) {
  if (tuples.empty()) fail(Errc::EmptySet, "ins_pa needs at least one tuple");
  size_t correct = 0;
  for (const auto& t : tuples) {
    if (t.human_tie) {
      correct += t.metric_plus == t.metric_minus ? 1 : 0;
    } else {
      correct += t.metric_plus > t.metric_minus ? 1 : 0;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(tuples.size());
}

std::vector<InsPaTuple> build_inspa_tuples(const ScoreTable& table, const std::string& lp,
                                           const std::vector<std::string>& systems,
                                           const std::string& scorer_metric,
                                           const std::string& human_metric,
                                           const MetricRegistry& registry,
                                           const TranslationTable* texts) {
  if (systems.size() < 2) fail(Errc::InvalidArgument, "need at least 2 systems");
  const MetricSpec& scorer = registry.at(scorer_metric);
  const MetricSpec& human = registry.at(human_metric);

  auto side_id = [&](const std::string& system, int64_t seg) -> std::string {
    if (texts) {
      const TranslationRow* row = texts->find(lp, system, seg);
      if (row) return row->hyp;
    }
    return system;
  };

  std::vector<InsPaTuple> tuples;
  std::set<std::tuple<int64_t, std::string, std::string>> seen;
  for (size_t i = 0; i < systems.size(); ++i) {
    for (size_t j = i + 1; j < systems.size(); ++j) {
      auto segs = shared_segs(table, lp, {systems[i], systems[j]},
                              {scorer_metric, human_metric});
      for (int64_t seg : segs) {
        double h_i = oriented(human, table.at({lp, systems[i], seg, human_metric}));
        double h_j = oriented(human, table.at({lp, systems[j], seg, human_metric}));
        double m_i = oriented(scorer, table.at({lp, systems[i], seg, scorer_metric}));
        double m_j = oriented(scorer, table.at({lp, systems[j], seg, scorer_metric}));

        InsPaTuple t;
        t.src = seg;
        std::string plus_id, minus_id;
        if (h_i > h_j) {
          t.metric_plus = m_i;
          t.metric_minus = m_j;
          plus_id = side_id(systems[i], seg);
          minus_id = side_id(systems[j], seg);
        } else if (h_j > h_i) {
          t.metric_plus = m_j;
          t.metric_minus = m_i;
          plus_id = side_id(systems[j], seg);
          minus_id = side_id(systems[i], seg);
        } else {
          t.human_tie = true;
          t.metric_plus = m_i;
          t.metric_minus = m_j;
          plus_id = side_id(systems[i], seg);
          minus_id = side_id(systems[j], seg);
          if (minus_id < plus_id) {
            std::swap(plus_id, minus_id);
            std::swap(t.metric_plus, t.metric_minus);
          }
        }
        if (seen.emplace(seg, plus_id, minus_id).second) tuples.push_back(t);
      }
    }
  }
  return tuples;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::map<std::string, double> borda(
    const std::map<std::string, std::map<std::string, double>>& values) {
  if (values.empty()) fail(Errc::EmptySet, "borda needs at least one method");
  std::set<std::string> lps;
  for (const auto& [method, by_lp] : values)
    for (const auto& [lp, v] : by_lp) lps.insert(lp);
  if (lps.empty()) fail(Errc::EmptySet, "borda needs at least one language pair");

  std::vector<std::string> methods;
  for (const auto& [method, by_lp] : values) methods.push_back(method);

  std::map<std::string, double> rank_sums;
  for (const auto& lp : lps) {
    std::vector<double> column;
    column.reserve(methods.size());
    for (const auto& method : methods) {
      const auto& by_lp = values.at(method);
      auto it = by_lp.find(lp);
      if (it == by_lp.end()) {
        fail(Errc::MissingCell, "method '" + method + "' has no value for lp '" + lp + "'");
      }
      column.push_back(it->second);
    }
    // Rank 1 = best; the meta-metric is higher-is-better, so rank on the
    // negated values.
    for (auto& v : column) v = -v;
    const auto ranks = average_ranks(column);
    for (size_t m = 0; m < methods.size(); ++m) rank_sums[methods[m]] += ranks[m];
  }
  std::map<std::string, double> out;
  for (const auto& [method, sum] : rank_sums) {
    out[method] = sum / static_cast<double>(lps.size());
  }
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) fail(Errc::LengthMismatch, "pearson inputs misaligned");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    fail(Errc::InvalidArgument, "pearson undefined for zero-variance input");
  }
  return cov / std::sqrt(var_a * var_b);
}

double spearman_per_source(const ScoreTable& table, const std::string& lp,
                           const std::string& metric_a, const std::string& metric_b) {
  const auto systems = table.systems(lp);
  if (systems.size() < 2) {
    fail(Errc::NoValidSources, "need at least 2 systems in lp '" + lp + "'");
  }
  auto segs = shared_segs(table, lp, systems, {metric_a, metric_b});
  double sum = 0.0;
  size_t used = 0;
  for (int64_t seg : segs) {
    std::vector<double> va, vb;
    va.reserve(systems.size());
    vb.reserve(systems.size());
    for (const auto& system : systems) {
      va.push_back(table.at({lp, system, seg, metric_a}));
      vb.push_back(table.at({lp, system, seg, metric_b}));
    }
    const bool const_a = std::all_of(va.begin(), va.end(), [&](double v) { return v == va[0]; });
    const bool const_b = std::all_of(vb.begin(), vb.end(), [&](double v) { return v == vb[0]; });
    if (const_a || const_b) continue;
    const auto ra = average_ranks(va);
    const auto rb = average_ranks(vb);
    sum += pearson(ra, rb);
    ++used;
  }
  if (used == 0) {
    fail(Errc::NoValidSources, "no source with score variance in both metrics for lp '" + lp + "'");
  }
  return sum / static_cast<double>(used);
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) fail(Errc::LengthMismatch, "ols inputs misaligned");
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  OlsFit fit;
  if (sxx == 0.0) {
    fit.slope = 0.0;
    fit.intercept = mean_y;
  } else {
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
  }
  return fit;
}

DeltaPairReport delta_pair(const ScoreTable& table, const std::string& lp,
                           const std::string& system_a, const std::string& system_b,
                           const std::string& metric_x, const std::string& metric_y) {
  DeltaPairReport report;
  report.system_a = system_a;
  report.system_b = system_b;
  report.segs = shared_segs(table, lp, {system_a, system_b}, {metric_x, metric_y});
  if (report.segs.size() < 3) {
    fail(Errc::InsufficientOverlap, "pair (" + system_a + ", " + system_b + ") shares only " +
                                        std::to_string(report.segs.size()) + " segments");
  }
  size_t pp = 0, pm = 0, mp = 0, mm = 0, axis = 0;
  for (int64_t seg : report.segs) {
    const double dx = table.at({lp, system_a, seg, metric_x}) -
                      table.at({lp, system_b, seg, metric_x});
    const double dy = table.at({lp, system_a, seg, metric_y}) -
                      table.at({lp, system_b, seg, metric_y});
    report.dx.push_back(dx);
    report.dy.push_back(dy);
    if (dx == 0.0 || dy == 0.0) ++axis;
    else if (dx > 0 && dy > 0) ++pp;
    else if (dx > 0 && dy < 0) ++pm;
    else if (dx < 0 && dy > 0) ++mp;
    else ++mm;
  }
  const double n = static_cast<double>(report.segs.size());
  report.shares = {static_cast<double>(pp) / n, static_cast<double>(pm) / n,
                   static_cast<double>(mp) / n, static_cast<double>(mm) / n,
                   static_cast<double>(axis) / n};
  report.fit = ols_fit(report.dx, report.dy);
  return report;
}

DeltaReport delta_quadrants(const ScoreTable& table, const std::string& lp,
                            const std::pair<std::string, std::string>& pair_biased,
                            const std::pair<std::string, std::string>& pair_reference,
                            const std::string& metric_x, const std::string& metric_y) {
  DeltaReport report;
  report.biased = delta_pair(table, lp, pair_biased.first, pair_biased.second, metric_x, metric_y);
  report.reference =
      delta_pair(table, lp, pair_reference.first, pair_reference.second, metric_x, metric_y);
  return report;
}

}  // namespace minteval
