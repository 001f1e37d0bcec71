#include "minteval/mbr.hpp"

#include <cmath>

namespace minteval {

void UtilityMatrix::validate() const {
  for (const auto& row : values) {
    if (row.size() != values.size()) {
      fail(Errc::DimensionMismatch, "utility matrix for seg " + std::to_string(seg) +
                                        " is not square");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        fail(Errc::NonFiniteInput,
             "non-finite utility in matrix for seg " + std::to_string(seg));
      }
    }
  }
}

UtilityMatrix utility_matrix(const CandidatePool& pool, const UtilityFn& utility) {
  if (pool.candidates.empty()) {
    fail(Errc::EmptyPool, "pool for seg " + std::to_string(pool.seg) + " is empty");
  }
  const size_t n = pool.candidates.size();
  UtilityMatrix m;
  m.seg = pool.seg;
  m.values.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      m.values[i][j] = utility(pool.candidates[i], pool.candidates[j]);
    }
  }
  return m;
}

UtilityMatrix utility_matrix(const CandidatePool& pool, const MbrConfig& cfg) {
  switch (cfg.utility) {
    case MbrUtilityKind::Chrf:
      return utility_matrix(pool, [&cfg](std::string_view hyp, std::string_view ref) {
        return sentence_chrf(hyp, ref, cfg.chrf_char_order, cfg.chrf_beta);
      });
    case MbrUtilityKind::Bleu:
      return utility_matrix(pool, [&cfg](std::string_view hyp, std::string_view ref) {
        return sentence_bleu(hyp, ref, cfg.bleu);
      });
    case MbrUtilityKind::Precomputed:
      if (!cfg.matrix) fail(Errc::InvalidArgument, "precomputed utility requires a matrix");
      return *cfg.matrix;
  }
  fail(Errc::InvalidArgument, "unknown utility kind");
}

MbrResult mbr_select(const UtilityMatrix& matrix, bool include_self) {
  matrix.validate();
  const size_t n = matrix.size();
  if (n == 0) fail(Errc::EmptyPool, "empty utility matrix");

  MbrResult result;
  result.expected_utility.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    size_t count = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!include_self && j == i) continue;
      sum += matrix.values[i][j];
      ++count;
    }
    // A 1-candidate pool with include_self off has no pseudo-references;
    // its expected utility is defined as 0 and it wins by default.
    result.expected_utility[i] = count > 0 ? sum / static_cast<double>(count) : 0.0;
  }
  size_t best = 0;
  for (size_t i = 1; i < n; ++i) {
    if (result.expected_utility[i] > result.expected_utility[best]) best = i;
  }
  result.chosen = best;
  return result;
}

MbrResult mbr_select(const CandidatePool& pool, const MbrConfig& cfg) {
  if (pool.candidates.empty()) {
    fail(Errc::EmptyPool, "pool for seg " + std::to_string(pool.seg) + " is empty");
  }
  UtilityMatrix m = utility_matrix(pool, cfg);
  if (m.size() != pool.candidates.size()) {
    fail(Errc::DimensionMismatch,
         "matrix size " + std::to_string(m.size()) + " does not match pool size " +
             std::to_string(pool.candidates.size()) + " for seg " + std::to_string(pool.seg));
  }
  return mbr_select(m, cfg.include_self);
}

}  // namespace minteval
