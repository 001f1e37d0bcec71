#include <doctest.h>

#include <algorithm>

#include "minteval/mbr.hpp"
#include "minteval/rng.hpp"

using namespace minteval;

namespace {

CandidatePool make_pool(std::vector<std::string> candidates) {
  CandidatePool pool;
  pool.lp = "en-de";
  pool.seg = 0;
  pool.src = "src";
  pool.candidates = std::move(candidates);
  return pool;
}

}  // namespace

TEST_CASE("utility matrix of a singleton pool") {
  auto pool = make_pool({"hello world"});
  MbrConfig cfg;
  auto m = utility_matrix(pool, cfg);
  CHECK(m.size() == 1);
  CHECK(m.values[0][0] == 100.0);  // chrf identity
}

TEST_CASE("utility matrix of identical candidates") {
  auto pool = make_pool({"same text", "same text"});
  MbrConfig cfg;
  auto m = utility_matrix(pool, cfg);
  for (const auto& row : m.values)
    for (double v : row) CHECK(v == 100.0);
}

TEST_CASE("utility matrix cells equal pairwise sentence chrf") {
  auto pool = make_pool({"the cat sat", "a dog ran fast", "the cat sat down"});
  MbrConfig cfg;
  auto m = utility_matrix(pool, cfg);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      CHECK(m.values[i][j] ==
            sentence_chrf(pool.candidates[i], pool.candidates[j]));
    }
  }
}

TEST_CASE("empty pool is rejected") {
  CandidatePool pool;
  pool.seg = 3;
  MbrConfig cfg;
  CHECK_THROWS_AS(mbr_select(pool, cfg), Error);
}

TEST_CASE("identical candidates tie-break to index 0") {
  auto pool = make_pool({"same", "same", "same"});
  MbrConfig cfg;
  auto result = mbr_select(pool, cfg);
  CHECK(result.chosen == 0);
}

TEST_CASE("precomputed matrix arithmetic") {
  UtilityMatrix m;
  m.values = {{1.0, 0.0}, {0.0, 2.0}};
  auto result = mbr_select(m, /*include_self=*/true);
  CHECK(result.expected_utility[0] == doctest::Approx(0.5));
  CHECK(result.expected_utility[1] == doctest::Approx(1.0));
  CHECK(result.chosen == 1);
}

TEST_CASE("precomputed matrix must match pool size") {
  auto pool = make_pool({"a", "b", "c"});
  MbrConfig cfg;
  cfg.utility = MbrUtilityKind::Precomputed;
  cfg.matrix = UtilityMatrix{};
  cfg.matrix->values = {{1.0, 0.0}, {0.0, 2.0}};
  try {
    mbr_select(pool, cfg);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("chrf selection equals brute force over candidates") {
  auto pool = make_pool({"the cat sat on the mat", "a cat sat on the mat",
                         "the cat is sitting on a mat", "dogs run in the park",
                         "the cat sat on mat", "cat the sat on the mat"});
  MbrConfig cfg;
  auto result = mbr_select(pool, cfg);

  // brute force: recompute expected utilities from scratch
  size_t best = 0;
  double best_value = -1.0;
  for (size_t i = 0; i < pool.candidates.size(); ++i) {
    double sum = 0.0;
    for (size_t j = 0; j < pool.candidates.size(); ++j) {
      sum += sentence_chrf(pool.candidates[i], pool.candidates[j]);
    }
    const double expected = sum / static_cast<double>(pool.candidates.size());
    CHECK(result.expected_utility[i] == doctest::Approx(expected).epsilon(0).scale(1e-12));
    if (expected > best_value) {
      best_value = expected;
      best = i;
    }
  }
  CHECK(result.chosen == best);
}

TEST_CASE("permuting candidates maps the winner with them") {
  auto pool = make_pool({"the cat sat on the mat", "a cat sat on a mat",
                         "the dog sat on the mat", "entirely different words here"});
  MbrConfig cfg;
  auto base = mbr_select(pool, cfg);
  const std::string winner = pool.candidates[base.chosen];

  std::vector<size_t> perm = {2, 0, 3, 1};
  CandidatePool shuffled = pool;
  for (size_t i = 0; i < perm.size(); ++i) shuffled.candidates[i] = pool.candidates[perm[i]];
  auto permuted = mbr_select(shuffled, cfg);
  CHECK(shuffled.candidates[permuted.chosen] == winner);
}

TEST_CASE("duplicating the winner keeps the winning text") {
  auto pool = make_pool({"the cat sat on the mat", "a cat sat on a mat",
                         "the dog sat on the mat"});
  MbrConfig cfg;
  auto base = mbr_select(pool, cfg);
  const std::string winner = pool.candidates[base.chosen];

  CandidatePool bigger = pool;
  bigger.candidates.push_back(winner);
  auto result = mbr_select(bigger, cfg);
  CHECK(bigger.candidates[result.chosen] == winner);
}

TEST_CASE("include_self toggling changes the pseudo-reference set") {
  auto pool = make_pool({"the cat sat on the mat", "a cat sat on a mat",
                         "the dog sat quietly", "cats sit on mats"});
  MbrConfig with_self;
  MbrConfig without_self;
  without_self.include_self = false;

  auto matrix = utility_matrix(pool, with_self);
  auto a = mbr_select(pool, with_self);
  auto b = mbr_select(pool, without_self);

  const size_t n = pool.candidates.size();
  for (size_t i = 0; i < n; ++i) {
    double sum_all = 0.0, sum_others = 0.0;
    for (size_t j = 0; j < n; ++j) {
      sum_all += matrix.values[i][j];
      if (j != i) sum_others += matrix.values[i][j];
    }
    CHECK(a.expected_utility[i] == doctest::Approx(sum_all / n).epsilon(0).scale(1e-12));
    CHECK(b.expected_utility[i] ==
          doctest::Approx(sum_others / (n - 1)).epsilon(0).scale(1e-12));
  }
}
