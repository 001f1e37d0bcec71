#include "minteval/lexmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minteval {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Byte offsets of code point starts in `text` (UTF-8 continuation bytes have
// the form 10xxxxxx). A trailing offset equal to text.size() is appended.
std::vector<size_t> codepoint_starts(std::string_view text) {
  std::vector<size_t> starts;
  starts.reserve(text.size() + 1);
  for (size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  starts.push_back(text.size());
  return starts;
}

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!is_space(c)) out.push_back(c);
  return out;
}

}  // namespace

NGramProfile NGramProfile::from_chars(std::string_view text, int order) {
  NGramProfile profile;
  profile.order = order;
  auto starts = codepoint_starts(text);
  const int n_points = static_cast<int>(starts.size()) - 1;
  for (int i = 0; i + order <= n_points; ++i) {
    const size_t begin = starts[i];
    const size_t end = starts[i + order];
    ++profile.counts[std::string(text.substr(begin, end - begin))];
  }
  return profile;
}

NGramProfile NGramProfile::from_tokens(const std::vector<std::string_view>& tokens, int order) {
  NGramProfile profile;
  profile.order = order;
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i + order <= n; ++i) {
    std::string key;
    for (int j = 0; j < order; ++j) {
      if (j) key.push_back('\x1f');
      key.append(tokens[i + j]);
    }
    ++profile.counts[std::move(key)];
  }
  return profile;
}

int NGramProfile::total() const {
  int sum = 0;
  for (const auto& [gram, count] : counts) sum += count;
  return sum;
}

int clipped_matches(const NGramProfile& hyp, const NGramProfile& ref) {
  int matches = 0;
  for (const auto& [gram, count] : hyp.counts) {
    auto it = ref.counts.find(gram);
    if (it != ref.counts.end()) matches += std::min(count, it->second);
  }
  return matches;
}

std::vector<std::string_view> split_tokens(std::string_view text, LexTokenizer tokenizer) {
  std::vector<std::string_view> tokens;
  if (tokenizer == LexTokenizer::Whitespace) {
    size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      size_t start = i;
      while (i < text.size() && !is_space(text[i])) ++i;
      if (i > start) tokens.push_back(text.substr(start, i - start));
    }
  } else {
    auto starts = codepoint_starts(text);
    for (size_t k = 0; k + 1 < starts.size(); ++k) {
      std::string_view piece = text.substr(starts[k], starts[k + 1] - starts[k]);
      if (piece.size() == 1 && is_space(piece[0])) continue;
      tokens.push_back(piece);
    }
  }
  return tokens;
}

double sentence_chrf(std::string_view hyp, std::string_view ref, int char_order, double beta) {
  if (ref.empty()) fail(Errc::EmptyReference, "chrf reference must be non-empty");
  if (char_order < 1) fail(Errc::InvalidArgument, "char_order must be >= 1");

  const std::string hyp_chars = strip_whitespace(hyp);
  const std::string ref_chars = strip_whitespace(ref);

  double sum_prec = 0.0, sum_rec = 0.0;
  int active_orders = 0;
  for (int n = 1; n <= char_order; ++n) {
    auto hyp_prof = NGramProfile::from_chars(hyp_chars, n);
    auto ref_prof = NGramProfile::from_chars(ref_chars, n);
    const int hyp_total = hyp_prof.total();
    const int ref_total = ref_prof.total();
    if (hyp_total == 0 && ref_total == 0) continue;
    const int matches = clipped_matches(hyp_prof, ref_prof);
    sum_prec += hyp_total > 0 ? static_cast<double>(matches) / hyp_total : 0.0;
    sum_rec += ref_total > 0 ? static_cast<double>(matches) / ref_total : 0.0;
    ++active_orders;
  }
  if (active_orders == 0) return 0.0;

  const double prec = sum_prec / active_orders;
  const double rec = sum_rec / active_orders;
  if (prec + rec == 0.0) return 0.0;
  const double b2 = beta * beta;
  return 100.0 * (1.0 + b2) * prec * rec / (b2 * prec + rec);
}

namespace {

struct BleuStats {
  std::vector<int64_t> correct;  // clipped matches per order
  std::vector<int64_t> total;    // hyp n-gram count per order
  int64_t hyp_len = 0;
  int64_t ref_len = 0;

  explicit BleuStats(int max_order) : correct(max_order, 0), total(max_order, 0) {}
};

void accumulate(BleuStats& stats, std::string_view hyp, std::string_view ref,
                const BleuConfig& cfg) {
  if (ref.empty()) fail(Errc::EmptyReference, "bleu reference must be non-empty");
  auto hyp_tokens = split_tokens(hyp, cfg.tokenizer);
  auto ref_tokens = split_tokens(ref, cfg.tokenizer);
  stats.hyp_len += static_cast<int64_t>(hyp_tokens.size());
  stats.ref_len += static_cast<int64_t>(ref_tokens.size());
  for (int n = 1; n <= cfg.max_order; ++n) {
    auto hyp_prof = NGramProfile::from_tokens(hyp_tokens, n);
    auto ref_prof = NGramProfile::from_tokens(ref_tokens, n);
    stats.total[n - 1] += hyp_prof.total();
    stats.correct[n - 1] += clipped_matches(hyp_prof, ref_prof);
  }
}

double score_from_stats(const BleuStats& stats, const BleuConfig& cfg) {
  if (stats.hyp_len == 0) return 0.0;

  int used_orders = cfg.max_order;
  if (cfg.effective_order) {
    used_orders = 0;
    for (int n = 1; n <= cfg.max_order; ++n)
      if (stats.total[n - 1] > 0) used_orders = n;
    if (used_orders == 0) return 0.0;
  }

  double log_sum = 0.0;
  double smooth = 1.0;
  for (int n = 1; n <= used_orders; ++n) {
    const int64_t total = stats.total[n - 1];
    const int64_t correct = stats.correct[n - 1];
    double precision;
    if (total == 0) {
      return 0.0;  // only reachable with effective_order off
    } else if (correct == 0) {
      if (cfg.smoothing == BleuSmoothing::None) return 0.0;
      smooth *= 2.0;
      precision = 1.0 / (smooth * static_cast<double>(total));
    } else {
      precision = static_cast<double>(correct) / static_cast<double>(total);
    }
    log_sum += std::log(precision);
  }

  double bp = 1.0;
  if (stats.hyp_len < stats.ref_len) {
    bp = std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));
  }
  return 100.0 * bp * std::exp(log_sum / used_orders);
}

}  // namespace

double sentence_bleu(std::string_view hyp, std::string_view ref, const BleuConfig& cfg) {
  if (cfg.max_order < 1) fail(Errc::InvalidArgument, "max_order must be >= 1");
  BleuStats stats(cfg.max_order);
  accumulate(stats, hyp, ref, cfg);
  return score_from_stats(stats, cfg);
}

double corpus_bleu(const std::vector<std::pair<std::string, std::string>>& pairs,
                   const BleuConfig& cfg) {
  if (cfg.max_order < 1) fail(Errc::InvalidArgument, "max_order must be >= 1");
  if (pairs.empty()) fail(Errc::EmptyCorpus, "corpus_bleu needs at least one pair");
  BleuStats stats(cfg.max_order);
  for (const auto& [hyp, ref] : pairs) accumulate(stats, hyp, ref, cfg);
  return score_from_stats(stats, cfg);
}

}  // namespace minteval
