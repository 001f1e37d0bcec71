#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minteval/lexmetrics.hpp"
#include "minteval/registry.hpp"

namespace minteval {

// values[i][j] = utility of candidate i scored against candidate j used as
// pseudo-reference.
struct UtilityMatrix {
  int64_t seg = 0;
  std::vector<std::vector<double>> values;

  size_t size() const { return values.size(); }
  void validate() const;  // DimensionMismatch / NonFiniteInput
};

enum class MbrUtilityKind { Chrf, Bleu, Precomputed };

struct MbrConfig {
  MbrUtilityKind utility = MbrUtilityKind::Chrf;
  BleuConfig bleu;                       // used when utility == Bleu
  int chrf_char_order = 6;
  double chrf_beta = 2.0;
  std::optional<UtilityMatrix> matrix;   // required when Precomputed
  // Whether candidate i itself counts as a pseudo-reference when computing
  // its expected utility (uniform distribution over the whole pool). Both
  // conventions appear in practice, so this is configurable.
  bool include_self = true;
};

struct MbrResult {
  size_t chosen = 0;
  std::vector<double> expected_utility;
};

using UtilityFn = std::function<double(std::string_view hyp, std::string_view ref)>;

UtilityMatrix utility_matrix(const CandidatePool& pool, const UtilityFn& utility);  // EmptyPool
UtilityMatrix utility_matrix(const CandidatePool& pool, const MbrConfig& cfg);

// argmax over candidates of mean utility against the pseudo-reference set;
// ties resolve to the lowest index.
MbrResult mbr_select(const CandidatePool& pool, const MbrConfig& cfg);
MbrResult mbr_select(const UtilityMatrix& matrix, bool include_self);

}  // namespace minteval
