#include "apekit/evaluate.hpp"

#include "apekit/error.hpp"
#include "apekit/parallel.hpp"

namespace apekit {

MetricReport evaluate(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                      const EvaluateOptions& options) {
  if (hyps.size() != refs.size()) {
    throw DataError("evaluate: " + std::to_string(hyps.size()) + " hypotheses but " +
                    std::to_string(refs.size()) + " references");
  }
  if (refs.empty()) throw DataError("evaluate: empty input");
  const std::size_t n = refs.size();
  std::vector<metrics::BleuStats> bleu(n);
  std::vector<metrics::ChrfStats> chrf(n, metrics::ChrfStats(options.chrf_max_n));
  std::vector<ter::TerScore> ter(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    bleu[i] = metrics::bleu_sentence_stats(metrics::tokenize(hyps[i], options.bleu_tok),
                                           metrics::tokenize(refs[i], options.bleu_tok));
    chrf[i] = metrics::chrf_sentence_stats(hyps[i], refs[i], options.chrf_max_n);
    const auto ref = metrics::tokenize(refs[i], options.ter_tok);
    if (ref.empty()) {
      throw DataError("evaluate: reference on line " + std::to_string(i + 1) +
                      " is empty after tokenization");
    }
    ter[i] = ter::ter_tokens(metrics::tokenize(hyps[i], options.ter_tok), ref).score;
  });

  MetricReport report;
  metrics::BleuStats bleu_total;
  metrics::ChrfStats chrf_total(options.chrf_max_n);
  for (std::size_t i = 0; i < n; ++i) {
    bleu_total += bleu[i];
    chrf_total += chrf[i];
    report.ter.edits += ter[i].edits;
    report.ter.ref_len += ter[i].ref_len;
  }
  report.bleu = metrics::bleu_from_stats(bleu_total);
  report.chrf = metrics::chrf_from_stats(chrf_total, options.chrf_beta);
  report.ter.score =
      static_cast<double>(report.ter.edits.total()) / static_cast<double>(report.ter.ref_len);
  if (options.per_sentence) {
    std::vector<SentenceScores> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i].bleu = metrics::bleu_sentence_smoothed(bleu[i]);
      rows[i].chrf = metrics::chrf_from_stats(chrf[i], options.chrf_beta);
      rows[i].ter = ter[i];
    }
    report.per_sentence = std::move(rows);
  }
  return report;
}

}  // namespace apekit
