#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minteval/error.hpp"

namespace minteval {

enum class Polarity { HigherBetter, LowerBetter };
enum class MetricFamily { Lexical, NeuralRef, NeuralQE, Ensemble, Human, Adjusted };

const char* polarity_name(Polarity p);
const char* family_name(MetricFamily f);
Polarity parse_polarity(const std::string& s);        // InvalidArgument
MetricFamily parse_family(const std::string& s);      // InvalidArgument

struct MetricSpec {
  std::string name;
  Polarity polarity = Polarity::HigherBetter;
  MetricFamily family = MetricFamily::Lexical;
};

// true when score `a` is preferred over score `b` under the metric's polarity.
inline bool prefers(const MetricSpec& m, double a, double b) {
  return m.polarity == Polarity::HigherBetter ? a > b : a < b;
}

// Orients a score so that higher always means better.
inline double oriented(const MetricSpec& m, double score) {
  return m.polarity == Polarity::HigherBetter ? score : -score;
}

class MetricRegistry {
 public:
  // The metrics this toolkit knows out of the box: chrf, bleu, comet, bleurt,
  // xcomet, xcomet-qe, cometkiwi, metricx, metricx-qe (the metricx pair is
  // lower-is-better), human, autorank, autorank-ins.
  static MetricRegistry standard();

  void add(MetricSpec spec);  // DuplicateKey if the name is taken
  bool contains(const std::string& name) const;
  // Resolves a metric by name. Names of the form "adjusted:<m>" resolve
  // implicitly when <m> is registered, inheriting its polarity.
  const MetricSpec& at(const std::string& name) const;  // UnknownMetric
  std::vector<std::string> names() const;

 private:
  mutable std::map<std::string, MetricSpec> specs_;
};

struct ScoreKey {
  std::string lp;
  std::string system;
  int64_t seg = 0;
  std::string metric;

  auto operator<=>(const ScoreKey&) const = default;
};

// Long-format score storage: one entry per (lp, system, seg, metric).
// Immutable in practice once loaded; safe for concurrent reads.
class ScoreTable {
 public:
  using Map = std::map<ScoreKey, double>;

  void insert(ScoreKey key, double score);  // DuplicateKey / NonFiniteInput
  void merge(const ScoreTable& other);      // DuplicateKey on collision

  bool contains(const ScoreKey& key) const { return entries_.count(key) > 0; }
  std::optional<double> find(const ScoreKey& key) const;
  double at(const ScoreKey& key) const;  // MissingScores
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  std::vector<std::string> lps() const;
  std::vector<std::string> systems(const std::string& lp) const;
  std::vector<std::string> metrics() const;
  std::vector<int64_t> segs(const std::string& lp, const std::string& system,
                            const std::string& metric) const;

 private:
  Map entries_;
};

struct TranslationRow {
  std::string lp;
  std::string system;
  int64_t seg = 0;
  std::string src;
  std::string hyp;
  std::optional<std::string> ref;
};

class TranslationTable {
 public:
  void add(TranslationRow row);  // DuplicateKey on (lp, system, seg); MalformedRow on empty src
  const std::vector<TranslationRow>& rows() const { return rows_; }
  const TranslationRow* find(const std::string& lp, const std::string& system,
                             int64_t seg) const;

 private:
  std::vector<TranslationRow> rows_;
  std::map<std::tuple<std::string, std::string, int64_t>, size_t> index_;
};

struct CandidatePool {
  std::string lp;
  int64_t seg = 0;
  std::string src;
  std::optional<std::string> ref;
  // Order is significant: index 0 is the designated baseline/greedy candidate.
  std::vector<std::string> candidates;
};

// --- file ingestion -------------------------------------------------------
//
// Score tables: TSV with header `lp\tsystem\tseg\tmetric\tscore`, or JSONL
// (one object per line, keys lp/system/seg/metric/score) when the path ends
// in .jsonl. UTF-8, Unix newlines. Scores serialize with 6 decimal places.

ScoreTable load_score_table(const std::string& path, const MetricRegistry& registry);
void save_score_table(const ScoreTable& table, const std::string& path);
std::string score_table_to_tsv(const ScoreTable& table);

// Translation tables: TSV with header `lp\tsystem\tseg\tsrc\thyp\tref`
// (ref column may be empty). Cell text must not contain tabs or newlines.
TranslationTable load_translation_table(const std::string& path);

// Pools: JSONL `{lp, seg, src, ref?, candidates: [..]}`.
std::vector<CandidatePool> load_pools(const std::string& path);

// --- alignment ------------------------------------------------------------

// Dense matrix of scores over the segments shared by every requested
// (system, metric) pair. Rows are sorted by seg id; columns are
// systems x metrics in the given order (metric fastest).
struct AlignedMatrix {
  std::vector<int64_t> segs;
  std::vector<std::pair<std::string, std::string>> columns;  // (system, metric)
  std::vector<double> values;                                // row-major

  double at(size_t row, size_t col) const { return values[row * columns.size() + col]; }
};

AlignedMatrix join_segments(const ScoreTable& table, const std::string& lp,
                            const std::vector<std::string>& systems,
                            const std::vector<std::string>& metrics);

// Convenience used throughout meta-evaluation: the scores of one
// (system, metric) vector over an explicit seg list. MissingScores if a seg
// is absent.
std::vector<double> scores_for(const ScoreTable& table, const std::string& lp,
                               const std::string& system, const std::string& metric,
                               const std::vector<int64_t>& segs);

// Segments for which every listed (system, metric) entry exists.
std::vector<int64_t> shared_segs(const ScoreTable& table, const std::string& lp,
                                 const std::vector<std::string>& systems,
                                 const std::vector<std::string>& metrics);

}  // namespace minteval
