#include <doctest.h>

#include "minteval/registry.hpp"
#include "testutil.hpp"

using namespace minteval;

namespace {

const char* kHeader = "lp\tsystem\tseg\tmetric\tscore\n";

}  // namespace

TEST_CASE("metric registry lookups and polarity") {
  auto reg = MetricRegistry::standard();
  CHECK(reg.at("chrf").polarity == Polarity::HigherBetter);
  CHECK(reg.at("metricx").polarity == Polarity::LowerBetter);
  CHECK(reg.at("human").family == MetricFamily::Human);
  CHECK(prefers(reg.at("metricx"), 1.0, 2.0));
  CHECK(prefers(reg.at("comet"), 2.0, 1.0));

  CHECK_THROWS_AS(reg.at("nonsense"), Error);
  CHECK_THROWS_AS(reg.add({"chrf", Polarity::HigherBetter, MetricFamily::Lexical}), Error);

  // adjusted:<m> resolves implicitly and inherits polarity
  CHECK(reg.contains("adjusted:metricx"));
  CHECK(reg.at("adjusted:metricx").polarity == Polarity::LowerBetter);
  CHECK(reg.at("adjusted:comet").family == MetricFamily::Adjusted);
  CHECK_FALSE(reg.contains("adjusted:nonsense"));
}

TEST_CASE("load_score_table parses valid tsv") {
  testutil::TempDir dir;
  auto path = dir.file("scores.tsv");
  testutil::write_file(path, std::string(kHeader) +
                                 "en-de\tsysA\t1\tchrf\t50.5\n"
                                 "en-de\tsysA\t2\tchrf\t61.25\n");
  auto table = load_score_table(path, MetricRegistry::standard());
  CHECK(table.size() == 2);
  CHECK(table.at({"en-de", "sysA", 2, "chrf"}) == doctest::Approx(61.25));
}

TEST_CASE("load_score_table rejects unregistered metric with line number") {
  testutil::TempDir dir;
  auto path = dir.file("scores.tsv");
  testutil::write_file(path, std::string(kHeader) +
                                 "en-de\tsysA\t1\tchrf\t50.5\n"
                                 "en-de\tsysA\t1\tbogus\t1.0\n");
  try {
    load_score_table(path, MetricRegistry::standard());
    FAIL("expected UnknownMetric");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownMetric);
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}

TEST_CASE("load_score_table rejects duplicate keys") {
  testutil::TempDir dir;
  auto path = dir.file("scores.tsv");
  testutil::write_file(path, std::string(kHeader) +
                                 "en-de\tsysA\t1\tchrf\t50.5\n"
                                 "en-de\tsysA\t1\tchrf\t51.5\n");
  try {
    load_score_table(path, MetricRegistry::standard());
    FAIL("expected DuplicateKey");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DuplicateKey);
  }
}

TEST_CASE("load_score_table rejects malformed rows") {
  testutil::TempDir dir;
  auto path = dir.file("scores.tsv");

  testutil::write_file(path, std::string(kHeader) + "en-de\tsysA\t1\tchrf\n");
  CHECK_THROWS_AS(load_score_table(path, MetricRegistry::standard()), Error);

  testutil::write_file(path, std::string(kHeader) + "en-de\tsysA\t1\tchrf\tnot-a-number\n");
  try {
    load_score_table(path, MetricRegistry::standard());
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedRow);
  }

  testutil::write_file(path, "wrong\theader\n");
  CHECK_THROWS_AS(load_score_table(path, MetricRegistry::standard()), Error);
}

TEST_CASE("score table jsonl ingestion matches tsv semantics") {
  testutil::TempDir dir;
  auto path = dir.file("scores.jsonl");
  testutil::write_file(
      path,
      "{\"lp\":\"en-de\",\"system\":\"sysA\",\"seg\":1,\"metric\":\"bleu\",\"score\":30.0}\n"
      "{\"lp\":\"en-de\",\"system\":\"sysB\",\"seg\":1,\"metric\":\"bleu\",\"score\":31.5}\n");
  auto table = load_score_table(path, MetricRegistry::standard());
  CHECK(table.size() == 2);
  CHECK(table.at({"en-de", "sysB", 1, "bleu"}) == doctest::Approx(31.5));

  testutil::write_file(path,
                       "{\"lp\":\"en-de\",\"system\":\"s\",\"seg\":1,\"metric\":\"zzz\",\"score\":1}\n");
  try {
    load_score_table(path, MetricRegistry::standard());
    FAIL("expected UnknownMetric");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownMetric);
  }
}

TEST_CASE("score table round-trips through serialization") {
  auto reg = MetricRegistry::standard();
  ScoreTable table;
  table.insert({"en-zh", "sysA", 7, "chrf"}, 12.3456789);
  table.insert({"en-zh", "sysA", 7, "bleu"}, -3.25);
  table.insert({"zh-en", "sysB", 1, "comet"}, 0.123456);

  testutil::TempDir dir;
  auto path = dir.file("round.tsv");
  save_score_table(table, path);
  auto reloaded = load_score_table(path, reg);
  CHECK(reloaded.size() == table.size());
  // identical up to the 6-decimal serialization
  for (const auto& [key, value] : table.entries()) {
    CHECK(reloaded.at(key) == doctest::Approx(value).epsilon(0).scale(1e-6));
  }
  // a second round trip is byte-identical
  auto path2 = dir.file("round2.tsv");
  save_score_table(reloaded, path2);
  CHECK(testutil::read_file(path) == testutil::read_file(path2));
}

TEST_CASE("score table insert guards") {
  ScoreTable table;
  table.insert({"lp", "s", 0, "chrf"}, 1.0);
  CHECK_THROWS_AS(table.insert({"lp", "s", 0, "chrf"}, 2.0), Error);
  CHECK_THROWS_AS(table.insert({"lp", "s", 1, "chrf"}, std::nan("")), Error);
  CHECK_THROWS_AS(table.at({"lp", "s", 9, "chrf"}), Error);
}

TEST_CASE("join_segments aligns shared segments") {
  auto table = testutil::grid_table(
      "lp", {"a", "b"}, {"chrf"}, [](size_t s, int64_t seg, size_t) {
        return static_cast<double>(10 * (s + 1) + seg);
      }, 3);
  auto m = join_segments(table, "lp", {"a", "b"}, {"chrf"});
  CHECK(m.segs == std::vector<int64_t>{0, 1, 2});
  CHECK(m.columns.size() == 2);
  CHECK(m.at(0, 0) == 10.0);
  CHECK(m.at(2, 1) == 22.0);
}

TEST_CASE("join_segments demands at least two shared segments") {
  ScoreTable table;
  table.insert({"lp", "a", 1, "chrf"}, 1.0);
  table.insert({"lp", "a", 2, "chrf"}, 2.0);
  table.insert({"lp", "b", 2, "chrf"}, 3.0);
  table.insert({"lp", "b", 3, "chrf"}, 4.0);
  try {
    join_segments(table, "lp", {"a", "b"}, {"chrf"});
    FAIL("expected InsufficientOverlap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientOverlap);
  }
}

TEST_CASE("join_segments covers systems x metrics grid") {
  auto table = testutil::grid_table(
      "lp", {"a", "b", "c"}, {"chrf", "bleu"},
      [](size_t s, int64_t seg, size_t m) {
        return static_cast<double>(100 * (s + 1) + 10 * (m + 1) + seg);
      }, 5);
  auto m = join_segments(table, "lp", {"a", "b", "c"}, {"chrf", "bleu"});
  CHECK(m.segs.size() == 5);
  CHECK(m.columns.size() == 6);
  // column order: (a,chrf), (a,bleu), (b,chrf), ...
  CHECK(m.at(0, 0) == 110.0);
  CHECK(m.at(0, 1) == 120.0);
  CHECK(m.at(4, 5) == 324.0);
}

TEST_CASE("join_segments is invariant to insertion order") {
  std::vector<std::tuple<std::string, int64_t, double>> rows = {
      {"a", 2, 1.0}, {"b", 1, 2.0}, {"a", 1, 3.0}, {"b", 2, 4.0}};
  ScoreTable fwd, rev;
  for (const auto& [sys, seg, v] : rows) fwd.insert({"lp", sys, seg, "chrf"}, v);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    rev.insert({"lp", std::get<0>(*it), std::get<1>(*it), "chrf"}, std::get<2>(*it));
  }
  auto ma = join_segments(fwd, "lp", {"a", "b"}, {"chrf"});
  auto mb = join_segments(rev, "lp", {"a", "b"}, {"chrf"});
  CHECK(ma.segs == mb.segs);
  CHECK(ma.values == mb.values);
}

TEST_CASE("translation table ingestion") {
  testutil::TempDir dir;
  auto path = dir.file("translations.tsv");
  testutil::write_file(path,
                       "lp\tsystem\tseg\tsrc\thyp\tref\n"
                       "en-de\tsysA\t1\tsource text\thypo text\tref text\n"
                       "en-de\tsysA\t2\tquelle\thypothese\t\n");
  auto table = load_translation_table(path);
  CHECK(table.rows().size() == 2);
  CHECK(table.find("en-de", "sysA", 1)->ref.value() == "ref text");
  CHECK_FALSE(table.find("en-de", "sysA", 2)->ref.has_value());
  CHECK(table.find("en-de", "sysA", 3) == nullptr);

  testutil::write_file(path,
                       "lp\tsystem\tseg\tsrc\thyp\tref\n"
                       "en-de\tsysA\t1\t\thyp\tref\n");
  CHECK_THROWS_AS(load_translation_table(path), Error);
}

TEST_CASE("pool ingestion") {
  testutil::TempDir dir;
  auto path = dir.file("pools.jsonl");
  testutil::write_file(
      path,
      "{\"lp\":\"en-de\",\"seg\":0,\"src\":\"s\",\"ref\":\"r\",\"candidates\":[\"a\",\"b\"]}\n"
      "{\"lp\":\"en-de\",\"seg\":1,\"src\":\"s2\",\"candidates\":[\"c\"]}\n");
  auto pools = load_pools(path);
  CHECK(pools.size() == 2);
  CHECK(pools[0].candidates.size() == 2);
  CHECK(pools[0].ref.value() == "r");
  CHECK_FALSE(pools[1].ref.has_value());

  testutil::write_file(path, "{\"lp\":\"x\",\"seg\":0,\"src\":\"s\",\"candidates\":[]}\n");
  CHECK_THROWS_AS(load_pools(path), Error);
}
