#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "minteval/registry.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(MINTEVAL_TEST_DATA_DIR) + "/" + name;
}

// Scratch directory wiped on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto candidate = base / ("minteval-test-" + std::to_string(std::random_device{}()));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

// Table with one entry per (system, seg, metric) from a dense value grid.
inline minteval::ScoreTable grid_table(
    const std::string& lp, const std::vector<std::string>& systems,
    const std::vector<std::string>& metrics,
    const std::function<double(size_t sys, int64_t seg, size_t metric)>& value, int n_segs) {
  minteval::ScoreTable table;
  for (size_t s = 0; s < systems.size(); ++s) {
    for (int64_t seg = 0; seg < n_segs; ++seg) {
      for (size_t m = 0; m < metrics.size(); ++m) {
        table.insert({lp, systems[s], seg, metrics[m]}, value(s, seg, m));
      }
    }
  }
  return table;
}

}  // namespace testutil
