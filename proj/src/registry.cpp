#include "minteval/registry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minteval {

using nlohmann::json;

const char* polarity_name(Polarity p) {
  return p == Polarity::HigherBetter ? "higher" : "lower";
}

const char* family_name(MetricFamily f) {
  switch (f) {
    case MetricFamily::Lexical: return "lexical";
    case MetricFamily::NeuralRef: return "neural-ref";
    case MetricFamily::NeuralQE: return "neural-qe";
    case MetricFamily::Ensemble: return "ensemble";
    case MetricFamily::Human: return "human";
    case MetricFamily::Adjusted: return "adjusted";
  }
  return "unknown";
}

Polarity parse_polarity(const std::string& s) {
  if (s == "higher") return Polarity::HigherBetter;
  if (s == "lower") return Polarity::LowerBetter;
  fail(Errc::InvalidArgument, "unknown polarity '" + s + "' (expected higher|lower)");
}

MetricFamily parse_family(const std::string& s) {
  if (s == "lexical") return MetricFamily::Lexical;
  if (s == "neural-ref") return MetricFamily::NeuralRef;
  if (s == "neural-qe") return MetricFamily::NeuralQE;
  if (s == "ensemble") return MetricFamily::Ensemble;
  if (s == "human") return MetricFamily::Human;
  if (s == "adjusted") return MetricFamily::Adjusted;
  fail(Errc::InvalidArgument, "unknown metric family '" + s + "'");
}

MetricRegistry MetricRegistry::standard() {
  MetricRegistry reg;
  reg.add({"chrf", Polarity::HigherBetter, MetricFamily::Lexical});
  reg.add({"bleu", Polarity::HigherBetter, MetricFamily::Lexical});
  reg.add({"comet", Polarity::HigherBetter, MetricFamily::NeuralRef});
  reg.add({"bleurt", Polarity::HigherBetter, MetricFamily::NeuralRef});
  reg.add({"xcomet", Polarity::HigherBetter, MetricFamily::NeuralRef});
  reg.add({"xcomet-qe", Polarity::HigherBetter, MetricFamily::NeuralQE});
  reg.add({"cometkiwi", Polarity::HigherBetter, MetricFamily::NeuralQE});
  reg.add({"metricx", Polarity::LowerBetter, MetricFamily::NeuralRef});
  reg.add({"metricx-qe", Polarity::LowerBetter, MetricFamily::NeuralQE});
  reg.add({"human", Polarity::HigherBetter, MetricFamily::Human});
  reg.add({"autorank", Polarity::LowerBetter, MetricFamily::Ensemble});
  reg.add({"autorank-ins", Polarity::LowerBetter, MetricFamily::Ensemble});
  return reg;
}

void MetricRegistry::add(MetricSpec spec) {
  if (spec.name.empty()) fail(Errc::InvalidArgument, "metric name must be non-empty");
  auto [it, inserted] = specs_.emplace(spec.name, spec);
  if (!inserted) fail(Errc::DuplicateKey, "metric '" + spec.name + "' already registered");
}

bool MetricRegistry::contains(const std::string& name) const {
  if (specs_.count(name)) return true;
  constexpr std::string_view prefix = "adjusted:";
  if (name.rfind(prefix, 0) == 0) return specs_.count(name.substr(prefix.size())) > 0;
  return false;
}

const MetricSpec& MetricRegistry::at(const std::string& name) const {
  auto it = specs_.find(name);
  if (it != specs_.end()) return it->second;
  constexpr std::string_view prefix = "adjusted:";
  if (name.rfind(prefix, 0) == 0) {
    auto base = specs_.find(name.substr(prefix.size()));
    if (base != specs_.end()) {
      // Materialize the derived spec so the reference stays valid.
      MetricSpec derived{name, base->second.polarity, MetricFamily::Adjusted};
      return specs_.emplace(name, derived).first->second;
    }
  }
  fail(Errc::UnknownMetric, "metric '" + name + "' is not registered");
}

std::vector<std::string> MetricRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

void ScoreTable::insert(ScoreKey key, double score) {
  if (!std::isfinite(score)) {
    fail(Errc::NonFiniteInput, "non-finite score for (" + key.lp + ", " + key.system +
                                   ", " + std::to_string(key.seg) + ", " + key.metric + ")");
  }
  auto [it, inserted] = entries_.emplace(std::move(key), score);
  if (!inserted) {
    const ScoreKey& k = it->first;
    fail(Errc::DuplicateKey, "duplicate entry (" + k.lp + ", " + k.system + ", " +
                                 std::to_string(k.seg) + ", " + k.metric + ")");
  }
}

void ScoreTable::merge(const ScoreTable& other) {
  for (const auto& [key, score] : other.entries_) insert(key, score);
}

std::optional<double> ScoreTable::find(const ScoreKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double ScoreTable::at(const ScoreKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    fail(Errc::MissingScores, "no score for (" + key.lp + ", " + key.system + ", " +
                                  std::to_string(key.seg) + ", " + key.metric + ")");
  }
  return it->second;
}

std::vector<std::string> ScoreTable::lps() const {
  std::set<std::string> seen;
  for (const auto& [key, v] : entries_) seen.insert(key.lp);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> ScoreTable::systems(const std::string& lp) const {
  std::set<std::string> seen;
  for (const auto& [key, v] : entries_)
    if (key.lp == lp) seen.insert(key.system);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> ScoreTable::metrics() const {
  std::set<std::string> seen;
  for (const auto& [key, v] : entries_) seen.insert(key.metric);
  return {seen.begin(), seen.end()};
}

std::vector<int64_t> ScoreTable::segs(const std::string& lp, const std::string& system,
                                      const std::string& metric) const {
  std::vector<int64_t> out;
  for (const auto& [key, v] : entries_)
    if (key.lp == lp && key.system == system && key.metric == metric)
      out.push_back(key.seg);
  return out;
}

void TranslationTable::add(TranslationRow row) {
  if (row.src.empty()) {
    fail(Errc::MalformedRow, "empty src for (" + row.lp + ", " + row.system + ", " +
                                 std::to_string(row.seg) + ")");
  }
  auto key = std::make_tuple(row.lp, row.system, row.seg);
  if (index_.count(key)) {
    fail(Errc::DuplicateKey, "duplicate translation row (" + row.lp + ", " + row.system +
                                 ", " + std::to_string(row.seg) + ")");
  }
  index_.emplace(std::move(key), rows_.size());
  rows_.push_back(std::move(row));
}

const TranslationRow* TranslationTable::find(const std::string& lp,
                                             const std::string& system,
                                             int64_t seg) const {
  auto it = index_.find(std::make_tuple(lp, system, seg));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_score(const std::string& s, const std::string& path, size_t lineno) {
  try {
    size_t consumed = 0;
    double v = std::stod(s, &consumed);
    if (consumed != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": unparsable score '" + s + "'");
  }
}

int64_t parse_seg(const std::string& s, const std::string& path, size_t lineno) {
  try {
    size_t consumed = 0;
    int64_t v = std::stoll(s, &consumed);
    if (consumed != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": unparsable seg id '" + s + "'");
  }
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ScoreTable load_score_table_jsonl(const std::string& path, const MetricRegistry& registry) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  ScoreTable table;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("lp") || !obj.contains("system") ||
        !obj.contains("seg") || !obj.contains("metric") || !obj.contains("score")) {
      fail(Errc::MalformedRow,
           path + ":" + std::to_string(lineno) + ": expected keys lp, system, seg, metric, score");
    }
    ScoreKey key{obj["lp"].get<std::string>(), obj["system"].get<std::string>(),
                 obj["seg"].get<int64_t>(), obj["metric"].get<std::string>()};
    if (!registry.contains(key.metric)) {
      fail(Errc::UnknownMetric,
           path + ":" + std::to_string(lineno) + ": metric '" + key.metric + "' is not registered");
    }
    double score = obj["score"].get<double>();
    try {
      table.insert(std::move(key), score);
    } catch (const Error& e) {
      if (e.code() == Errc::DuplicateKey)
        fail(Errc::DuplicateKey, path + ":" + std::to_string(lineno) + ": " + e.what());
      throw;
    }
  }
  return table;
}

}  // namespace

ScoreTable load_score_table(const std::string& path, const MetricRegistry& registry) {
  if (has_suffix(path, ".jsonl")) return load_score_table_jsonl(path, registry);

  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  ScoreTable table;
  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) fail(Errc::MalformedRow, path + ": empty file");
  ++lineno;
  if (strip_cr(line) != "lp\tsystem\tseg\tmetric\tscore") {
    fail(Errc::MalformedRow, path + ":1: expected header 'lp\\tsystem\\tseg\\tmetric\\tscore'");
  }
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 5) {
      fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": expected 5 columns, got " +
                                   std::to_string(fields.size()));
    }
    ScoreKey key{fields[0], fields[1], parse_seg(fields[2], path, lineno), fields[3]};
    if (!registry.contains(key.metric)) {
      fail(Errc::UnknownMetric,
           path + ":" + std::to_string(lineno) + ": metric '" + key.metric + "' is not registered");
    }
    double score = parse_score(fields[4], path, lineno);
    try {
      table.insert(std::move(key), score);
    } catch (const Error& e) {
      if (e.code() == Errc::DuplicateKey)
        fail(Errc::DuplicateKey, path + ":" + std::to_string(lineno) + ": " + e.what());
      throw;
    }
  }
  return table;
}

std::string score_table_to_tsv(const ScoreTable& table) {
  std::ostringstream out;
  out << "lp\tsystem\tseg\tmetric\tscore\n";
  char buf[64];
  for (const auto& [key, score] : table.entries()) {
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    out << key.lp << '\t' << key.system << '\t' << key.seg << '\t' << key.metric << '\t'
        << buf << '\n';
  }
  return out.str();
}

void save_score_table(const ScoreTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << score_table_to_tsv(table);
}

TranslationTable load_translation_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  TranslationTable table;
  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) fail(Errc::MalformedRow, path + ": empty file");
  ++lineno;
  if (strip_cr(line) != "lp\tsystem\tseg\tsrc\thyp\tref") {
    fail(Errc::MalformedRow, path + ":1: expected header 'lp\\tsystem\\tseg\\tsrc\\thyp\\tref'");
  }
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 6) {
      fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": expected 6 columns, got " +
                                   std::to_string(fields.size()));
    }
    TranslationRow row;
    row.lp = fields[0];
    row.system = fields[1];
    row.seg = parse_seg(fields[2], path, lineno);
    row.src = fields[3];
    row.hyp = fields[4];
    if (!fields[5].empty()) row.ref = fields[5];
    try {
      table.add(std::move(row));
    } catch (const Error& e) {
      fail(e.code(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return table;
}

std::vector<CandidatePool> load_pools(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::vector<CandidatePool> pools;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!obj.contains("lp") || !obj.contains("seg") || !obj.contains("src") ||
        !obj.contains("candidates")) {
      fail(Errc::MalformedRow,
           path + ":" + std::to_string(lineno) + ": expected keys lp, seg, src, candidates");
    }
    CandidatePool pool;
    pool.lp = obj["lp"].get<std::string>();
    pool.seg = obj["seg"].get<int64_t>();
    pool.src = obj["src"].get<std::string>();
    if (obj.contains("ref") && !obj["ref"].is_null()) pool.ref = obj["ref"].get<std::string>();
    for (const auto& c : obj["candidates"]) pool.candidates.push_back(c.get<std::string>());
    if (pool.candidates.empty()) {
      fail(Errc::EmptyPool, path + ":" + std::to_string(lineno) + ": pool has no candidates");
    }
    pools.push_back(std::move(pool));
  }
  return pools;
}

std::vector<int64_t> shared_segs(const ScoreTable& table, const std::string& lp,
                                 const std::vector<std::string>& systems,
                                 const std::vector<std::string>& metrics) {
  std::set<int64_t> shared;
  bool first = true;
  for (const auto& system : systems) {
    for (const auto& metric : metrics) {
      auto segs = table.segs(lp, system, metric);
      std::set<int64_t> cur(segs.begin(), segs.end());
      if (first) {
        shared = std::move(cur);
        first = false;
      } else {
        std::set<int64_t> keep;
        std::set_intersection(shared.begin(), shared.end(), cur.begin(), cur.end(),
                              std::inserter(keep, keep.begin()));
        shared = std::move(keep);
      }
      if (shared.empty()) return {};
    }
  }
  return {shared.begin(), shared.end()};
}

AlignedMatrix join_segments(const ScoreTable& table, const std::string& lp,
                            const std::vector<std::string>& systems,
                            const std::vector<std::string>& metrics) {
  if (systems.empty() || metrics.empty()) {
    fail(Errc::InvalidArgument, "join_segments needs at least one system and one metric");
  }
  AlignedMatrix out;
  out.segs = shared_segs(table, lp, systems, metrics);
  if (out.segs.size() < 2) {
    fail(Errc::InsufficientOverlap,
         "only " + std::to_string(out.segs.size()) + " shared segment(s) for lp " + lp);
  }
  for (const auto& system : systems)
    for (const auto& metric : metrics) out.columns.emplace_back(system, metric);
  out.values.reserve(out.segs.size() * out.columns.size());
  for (int64_t seg : out.segs) {
    for (const auto& [system, metric] : out.columns) {
      out.values.push_back(table.at({lp, system, seg, metric}));
    }
  }
  return out;
}

std::vector<double> scores_for(const ScoreTable& table, const std::string& lp,
                               const std::string& system, const std::string& metric,
                               const std::vector<int64_t>& segs) {
  std::vector<double> out;
  out.reserve(segs.size());
  for (int64_t seg : segs) out.push_back(table.at({lp, system, seg, metric}));
  return out;
}

}  // namespace minteval
