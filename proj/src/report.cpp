#include "minteval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minteval {

void MetaEvalReport::set(const std::string& method, const std::string& column, double value) {
  if (std::find(methods.begin(), methods.end(), method) == methods.end()) {
    methods.push_back(method);
  }
  if (std::find(columns.begin(), columns.end(), column) == columns.end()) {
    columns.push_back(column);
  }
  auto [it, inserted] = values.emplace(std::make_pair(method, column), value);
  if (!inserted) {
    fail(Errc::DuplicateKey, "duplicate report cell (" + method + ", " + column + ")");
  }
}

std::optional<double> MetaEvalReport::get(const std::string& method,
                                          const std::string& column) const {
  auto it = values.find(std::make_pair(method, column));
  if (it == values.end()) return std::nullopt;
  return it->second;
}

MetaEvalReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  MetaEvalReport report;
  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) fail(Errc::MalformedRow, path + ": empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "method\tcolumn\tvalue") {
    fail(Errc::MalformedRow, path + ":1: expected header 'method\\tcolumn\\tvalue'");
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos) {
      fail(Errc::MalformedRow, path + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    const std::string method = line.substr(0, t1);
    const std::string column = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string value_text = line.substr(t2 + 1);
    try {
      size_t consumed = 0;
      const double value = std::stod(value_text, &consumed);
      if (consumed != value_text.size()) throw std::invalid_argument(value_text);
      report.set(method, column, value);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::MalformedRow,
           path + ":" + std::to_string(lineno) + ": unparsable value '" + value_text + "'");
    }
  }
  return report;
}

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

bool lower_is_better(const std::string& column) {
  return column.rfind("borda", 0) == 0;
}

// Best cell holders per column, compared on the rendered 4-decimal value so
// marking agrees with what the reader sees.
std::map<std::string, std::vector<std::string>> best_by_column(const MetaEvalReport& report) {
  std::map<std::string, std::vector<std::string>> best;
  for (const auto& column : report.columns) {
    std::optional<double> best_value;
    std::vector<std::string> holders;
    const bool lower = lower_is_better(column);
    for (const auto& method : report.methods) {
      auto v = report.get(method, column);
      if (!v) continue;
      const double rounded = std::stod(format_value(*v));
      if (!best_value || (lower ? rounded < *best_value : rounded > *best_value)) {
        best_value = rounded;
        holders.assign(1, method);
      } else if (rounded == *best_value) {
        holders.push_back(method);
      }
    }
    best[column] = std::move(holders);
  }
  return best;
}

}  // namespace

std::string render_report(const MetaEvalReport& report, ReportFormat format) {
  if (report.empty()) fail(Errc::EmptyReport, "report has no cells");
  const auto best = best_by_column(report);
  auto is_best = [&](const std::string& method, const std::string& column) {
    const auto& holders = best.at(column);
    return std::find(holders.begin(), holders.end(), method) != holders.end();
  };

  std::ostringstream out;
  if (format == ReportFormat::Tsv) {
    out << "method";
    for (const auto& column : report.columns) out << '\t' << column;
    out << '\n';
    for (const auto& method : report.methods) {
      out << method;
      for (const auto& column : report.columns) {
        auto v = report.get(method, column);
        out << '\t';
        if (!v) {
          out << "--";
        } else {
          out << format_value(*v);
          if (is_best(method, column)) out << '*';
        }
      }
      out << '\n';
    }
  } else {
    out << "| method |";
    for (const auto& column : report.columns) out << ' ' << column << " |";
    out << '\n';
    out << "| --- |";
    for (size_t i = 0; i < report.columns.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& method : report.methods) {
      out << "| " << method << " |";
      for (const auto& column : report.columns) {
        auto v = report.get(method, column);
        if (!v) {
          out << " -- |";
        } else if (is_best(method, column)) {
          out << " **" << format_value(*v) << "** |";
        } else {
          out << ' ' << format_value(*v) << " |";
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace minteval
