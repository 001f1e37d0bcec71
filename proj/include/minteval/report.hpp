#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minteval/error.hpp"

namespace minteval {

// Aggregated meta-evaluation values: methods as rows, meta-metrics as
// columns. Row and column order follow first appearance in the input, so
// rendering is byte-deterministic. Cells may be absent (rendered "--" and
// skipped when marking the best value).
struct MetaEvalReport {
  std::vector<std::string> methods;
  std::vector<std::string> columns;
  std::map<std::pair<std::string, std::string>, double> values;

  void set(const std::string& method, const std::string& column, double value);
  std::optional<double> get(const std::string& method, const std::string& column) const;
  bool empty() const { return values.empty(); }
};

// TSV with header `method\tcolumn\tvalue`, one cell per row.
MetaEvalReport load_report(const std::string& path);

enum class ReportFormat { Tsv, Markdown };

// 4-decimal cells; the best value per column is marked (trailing '*' in TSV,
// bold in markdown; ties mark every holder). Columns whose name starts with
// "borda" rank lower-is-better, all others higher-is-better.
std::string render_report(const MetaEvalReport& report, ReportFormat format);  // EmptyReport

}  // namespace minteval
