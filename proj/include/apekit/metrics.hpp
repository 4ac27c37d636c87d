#pragma once

// Corpus-level BLEU and ChrF plus the tokenizer shared with TER.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace apekit::metrics {

enum class TokenScheme { whitespace, punct_split };

struct TokenizerConfig {
  TokenScheme scheme = TokenScheme::punct_split;
  bool lowercase = false;

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

/// BLEU default: case-sensitive punctuation splitting.
inline constexpr TokenizerConfig kBleuTokenizer{TokenScheme::punct_split, false};
/// TER with normalization: lowercase plus punctuation splitting.
inline constexpr TokenizerConfig kTerNormalized{TokenScheme::punct_split, true};

TokenScheme parse_scheme(std::string_view name);
std::string_view scheme_name(TokenScheme s);

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config);

inline constexpr int kBleuOrder = 4;

/// Additive sufficient statistics for BLEU.
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& o);
  friend bool operator==(const BleuStats&, const BleuStats&) = default;
};

struct BleuScore {
  double score = 0;  // [0, 100]
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  BleuStats stats;
};

BleuStats bleu_sentence_stats(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref);

/// Geometric mean of the defined precisions times the brevity penalty.
/// Orders with no hypothesis n-grams are left out of the mean; a zero
/// precision on a defined order gives 0.
BleuScore bleu_from_stats(const BleuStats& stats);

/// Sentence BLEU with add-one smoothing for orders 2..4.
double bleu_sentence_smoothed(const BleuStats& stats);

/// Throws DataError on size mismatch or empty input.
BleuScore bleu_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                      const TokenizerConfig& tok = kBleuTokenizer);

/// Additive statistics for ChrF, one entry per n-gram order.
struct ChrfStats {
  std::vector<std::size_t> matches, hyp_totals, ref_totals;
  explicit ChrfStats(int max_n = 6)
      : matches(max_n, 0), hyp_totals(max_n, 0), ref_totals(max_n, 0) {}
  ChrfStats& operator+=(const ChrfStats& o);
};

ChrfStats chrf_sentence_stats(std::string_view hyp, std::string_view ref, int max_n);
double chrf_from_stats(const ChrfStats& stats, double beta);

/// Character n-gram F-beta in [0, 100] with whitespace removed. Precision and
/// recall are averaged over orders present in both sides, then combined.
double chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
            int max_n = 6, double beta = 2.0);

}  // namespace apekit::metrics
