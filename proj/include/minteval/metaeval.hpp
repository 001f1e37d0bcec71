#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minteval/registry.hpp"

namespace minteval {

// --- paired bootstrap -------------------------------------------------------

// Precomputed joint resample: B draws of n segment indices with replacement.
// Reusing one plan across scorers (and across both directions of a system
// pair) is what makes p(i,j) + p(j,i) = 1 hold exactly.
struct BootstrapPlan {
  size_t n = 0;
  int B = 0;
  std::vector<uint32_t> indices;  // B * n, row-major

  const uint32_t* resample(int b) const { return indices.data() + static_cast<size_t>(b) * n; }
};

BootstrapPlan make_bootstrap_plan(size_t n, int B, uint64_t seed);

// p-value that the first vector's mean exceeds the second's under B joint
// resamples of segment indices; ties count half to each side.
double paired_bootstrap_p(std::span<const double> a, std::span<const double> b,
                          const BootstrapPlan& plan);  // LengthMismatch
double paired_bootstrap_p(std::span<const double> a, std::span<const double> b, int B,
                          uint64_t seed);  // LengthMismatch, TooFewSegments

struct PairwisePValue {
  std::string lp;
  std::string system_i;
  std::string system_j;
  std::string scorer;
  double p = 0.5;
  int B = 0;
  uint64_t seed = 0;
};

// Pairwise p-values for n systems; p(j,i) is stored as 1 - p(i,j).
class PMatrix {
 public:
  explicit PMatrix(size_t n) : n_(n), p_(n * n, 0.5) {}

  size_t size() const { return n_; }
  void set(size_t i, size_t j, double p);
  double at(size_t i, size_t j) const { return p_[i * n_ + j]; }

 private:
  size_t n_;
  std::vector<double> p_;
};

// Soft pairwise accuracy: mean over unordered system pairs of
// 1 - |p_human - p_scorer|.
double spa(const PMatrix& human, const PMatrix& scorer);  // ShapeMismatch
double spa(const PMatrix& human, const PMatrix& scorer,
           std::span<const std::pair<size_t, size_t>> pairs);

// --- instance-level pairwise accuracy ---------------------------------------

// One (human-favored, human-disfavored) translation pair with the scorer's
// judgements, oriented so that higher means better.
struct InsPaTuple {
  int64_t src = 0;
  double metric_plus = 0.0;
  double metric_minus = 0.0;
  bool human_tie = false;
};

// Fraction of tuples where the scorer prefers the human-favored side. Tuples
// with tied human scores count 1 only when the scorer's scores are exactly
// equal (no tie-calibration threshold).
double ins_pa(std::span<const InsPaTuple> tuples);  // EmptySet

// Builds the tuple set across all pairs of the given systems for one lp.
// Orientation within a tuple follows the human metric; the scorer's values
// are sign-oriented by its registered polarity. Tuples deduplicate by
// (seg, favored text, disfavored text) when a translation table is supplied,
// otherwise by (seg, favored system, disfavored system); human-tied tuples
// canonicalize the side order before deduplication.
std::vector<InsPaTuple> build_inspa_tuples(
    const ScoreTable& table, const std::string& lp,
    const std::vector<std::string>& systems, const std::string& scorer_metric,
    const std::string& human_metric, const MetricRegistry& registry,
    const TranslationTable* texts = nullptr);

// --- aggregation over language pairs ----------------------------------------

// values: method -> lp -> meta-metric value (higher is better). Within each
// lp methods are ranked 1 = best with average ranks on ties; the result maps
// each method to its mean rank over lps (lower is better).
std::map<std::string, double> borda(
    const std::map<std::string, std::map<std::string, double>>& values);  // MissingCell

// --- correlation ------------------------------------------------------------

// Mean over segments of the Spearman rank correlation, across systems,
// between two metrics' scores. Segments where either metric has zero
// variance are skipped.
double spearman_per_source(const ScoreTable& table, const std::string& lp,
                           const std::string& metric_a,
                           const std::string& metric_b);  // NoValidSources

// Average ranks (ties share the mean of their positions), 1-based.
std::vector<double> average_ranks(std::span<const double> values);
double pearson(std::span<const double> a, std::span<const double> b);

// --- delta / quadrant analysis ----------------------------------------------

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of y on x. With zero variance in x the slope is
// defined as 0 and the intercept as mean(y).
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);  // LengthMismatch

struct QuadrantShares {
  double pos_pos = 0.0;
  double pos_neg = 0.0;
  double neg_pos = 0.0;
  double neg_neg = 0.0;
  double axis = 0.0;  // share of points with dx == 0 or dy == 0

  double agreement() const { return pos_pos + neg_neg; }
};

struct DeltaPairReport {
  std::string system_a;
  std::string system_b;
  std::vector<int64_t> segs;
  std::vector<double> dx;
  std::vector<double> dy;
  QuadrantShares shares;
  OlsFit fit;
};

struct DeltaReport {
  DeltaPairReport biased;
  DeltaPairReport reference;
};

// Per-segment score deltas between the systems of each pair for two metrics,
// with sign-quadrant shares and an OLS line of dy on dx. Points on an axis
// are reported in the separate axis bucket, not assigned to a quadrant.
DeltaPairReport delta_pair(const ScoreTable& table, const std::string& lp,
                           const std::string& system_a, const std::string& system_b,
                           const std::string& metric_x,
                           const std::string& metric_y);  // InsufficientOverlap (< 3 segs)

DeltaReport delta_quadrants(const ScoreTable& table, const std::string& lp,
                            const std::pair<std::string, std::string>& pair_biased,
                            const std::pair<std::string, std::string>& pair_reference,
                            const std::string& metric_x, const std::string& metric_y);

}  // namespace minteval
