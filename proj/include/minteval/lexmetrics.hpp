#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minteval/error.hpp"

namespace minteval {

enum class LexTokenizer { Whitespace, Char };
enum class BleuSmoothing { None, ExpForZeroNumerators };

struct BleuConfig {
  int max_order = 4;
  BleuSmoothing smoothing = BleuSmoothing::ExpForZeroNumerators;
  LexTokenizer tokenizer = LexTokenizer::Whitespace;
  // When true, orders whose n-gram denominator is zero (hyp shorter than n)
  // are excluded from the geometric mean, so identity inputs score 100 even
  // for sentences shorter than max_order.
  bool effective_order = true;
};

// Bag of n-grams of a single order. Character n-grams are extracted from the
// text with all whitespace removed, over Unicode code points (so multi-byte
// UTF-8 sequences count as one symbol). Token n-grams come from
// whitespace-split tokens, or per-code-point tokens for LexTokenizer::Char.
struct NGramProfile {
  int order = 1;
  std::unordered_map<std::string, int> counts;

  static NGramProfile from_chars(std::string_view text, int order);
  static NGramProfile from_tokens(const std::vector<std::string_view>& tokens, int order);

  int total() const;
};

// Sum over hyp n-grams of min(count in hyp, count in ref).
int clipped_matches(const NGramProfile& hyp, const NGramProfile& ref);

std::vector<std::string_view> split_tokens(std::string_view text, LexTokenizer tokenizer);

// chrF: F_beta over character n-gram precisions/recalls averaged across
// orders 1..char_order, scaled to [0, 100]. An order contributes to the
// average when either side has at least one n-gram of that order; a side
// with no n-grams contributes precision/recall 0 for it. Whitespace is
// removed before n-gram extraction. beta = 2 weights recall twice as much
// as precision.
double sentence_chrf(std::string_view hyp, std::string_view ref, int char_order = 6,
                     double beta = 2.0);  // EmptyReference

double sentence_bleu(std::string_view hyp, std::string_view ref,
                     const BleuConfig& cfg = {});  // EmptyReference

// Micro-aggregated corpus BLEU: n-gram statistics are pooled across pairs
// before the geometric mean. Not the average of sentence scores.
double corpus_bleu(const std::vector<std::pair<std::string, std::string>>& pairs,
                   const BleuConfig& cfg = {});  // EmptyCorpus, EmptyReference

}  // namespace minteval
