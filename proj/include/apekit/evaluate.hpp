#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apekit/metrics.hpp"
#include "apekit/ter.hpp"

namespace apekit {

struct EvaluateOptions {
  metrics::TokenizerConfig bleu_tok = metrics::kBleuTokenizer;
  metrics::TokenizerConfig ter_tok = metrics::kTerNormalized;
  int chrf_max_n = 6;
  double chrf_beta = 2.0;
  bool per_sentence = false;
  unsigned threads = 1;
};

struct SentenceScores {
  double bleu = 0;  // add-one smoothed
  double chrf = 0;
  ter::TerScore ter;
};

struct MetricReport {
  metrics::BleuScore bleu;
  double chrf = 0;
  ter::TerScore ter;
  std::optional<std::vector<SentenceScores>> per_sentence;
};

/// Corpus BLEU, ChrF and TER of hyps against refs.
/// Throws DataError on length mismatch, empty input or an empty reference.
MetricReport evaluate(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                      const EvaluateOptions& options = {});

}  // namespace apekit
