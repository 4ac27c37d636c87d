#include "apekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "apekit/error.hpp"
#include "apekit/text.hpp"

namespace apekit::metrics {

TokenScheme parse_scheme(std::string_view name) {
  if (name == "whitespace") return TokenScheme::whitespace;
  if (name == "punct_split") return TokenScheme::punct_split;
  throw ConfigError("unknown tokenizer scheme '" + std::string(name) +
                    "' (expected whitespace or punct_split)");
}

std::string_view scheme_name(TokenScheme s) {
  return s == TokenScheme::whitespace ? "whitespace" : "punct_split";
}

std::vector<std::string> tokenize(std::string_view s, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < s.size();) {
    const auto d = text::decode_at(s, i);
    const auto bytes = s.substr(i, d.length);
    i += d.length;
    if (text::is_whitespace(d.value)) {
      flush();
    } else if (config.scheme == TokenScheme::punct_split && d.valid &&
               text::is_punctuation(d.value)) {
      flush();
      tokens.emplace_back(bytes);
    } else {
      current.append(bytes);
    }
  }
  flush();
  if (config.lowercase) {
    for (auto& t : tokens) t = text::lowercase(t);
  }
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < kBleuOrder; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  hyp_len += o.hyp_len;
  ref_len += o.ref_len;
  return *this;
}

namespace {

/// Interns tokens of both sentences so n-grams can be keyed by fixed-width ids.
struct Interned {
  std::vector<std::uint32_t> hyp, ref;
};

Interned intern(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  Interned out;
  auto id_of = [&](const std::string& tok) {
    return ids.emplace(tok, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  for (const auto& t : hyp) out.hyp.push_back(id_of(t));
  for (const auto& t : ref) out.ref.push_back(id_of(t));
  return out;
}

std::string ngram_key(const std::vector<std::uint32_t>& ids, std::size_t start, int n) {
  std::string key(static_cast<std::size_t>(n) * 4, '\0');
  for (int k = 0; k < n; ++k) {
    const auto v = ids[start + k];
    for (int b = 0; b < 4; ++b) key[k * 4 + b] = static_cast<char>((v >> (8 * b)) & 0xFF);
  }
  return key;
}

std::unordered_map<std::string, std::size_t> ngram_counts(const std::vector<std::uint32_t>& ids,
                                                          int n) {
  std::unordered_map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i + n <= ids.size(); ++i) ++counts[ngram_key(ids, i, n)];
  return counts;
}

}  // namespace

BleuStats bleu_sentence_stats(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref) {
  BleuStats s;
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  const auto ids = intern(hyp, ref);
  for (int n = 1; n <= kBleuOrder; ++n) {
    if (hyp.size() < static_cast<std::size_t>(n)) break;
    const auto h = ngram_counts(ids.hyp, n);
    const auto r = ngram_counts(ids.ref, n);
    std::size_t matched = 0;
    for (const auto& [gram, count] : h) {
      const auto it = r.find(gram);
      if (it != r.end()) matched += std::min(count, it->second);
    }
    s.matches[n - 1] = matched;
    s.totals[n - 1] = hyp.size() - n + 1;
  }
  return s;
}

BleuScore bleu_from_stats(const BleuStats& stats) {
  BleuScore b;
  b.stats = stats;
  b.hyp_len = stats.hyp_len;
  b.ref_len = stats.ref_len;
  for (int n = 0; n < kBleuOrder; ++n) {
    b.precisions[n] = stats.totals[n] == 0 ? 0.0
                                           : static_cast<double>(stats.matches[n]) /
                                                 static_cast<double>(stats.totals[n]);
  }
  if (stats.hyp_len == 0) {
    b.brevity_penalty = 0.0;
    b.score = 0.0;
    return b;
  }
  b.brevity_penalty =
      stats.hyp_len < stats.ref_len
          ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len))
          : 1.0;
  double log_sum = 0.0;
  int defined = 0;
  for (int n = 0; n < kBleuOrder; ++n) {
    if (stats.totals[n] == 0) continue;
    if (stats.matches[n] == 0) {
      b.score = 0.0;
      return b;
    }
    log_sum += std::log(b.precisions[n]);
    ++defined;
  }
  b.score = 100.0 * b.brevity_penalty * std::exp(log_sum / defined);
  return b;
}

double bleu_sentence_smoothed(const BleuStats& stats) {
  if (stats.hyp_len == 0 || stats.matches[0] == 0) return 0.0;
  double log_sum = std::log(static_cast<double>(stats.matches[0]) / stats.totals[0]);
  for (int n = 1; n < kBleuOrder; ++n) {
    log_sum += std::log((stats.matches[n] + 1.0) / (stats.totals[n] + 1.0));
  }
  const double bp =
      stats.hyp_len < stats.ref_len
          ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len))
          : 1.0;
  return 100.0 * bp * std::exp(log_sum / kBleuOrder);
}

namespace {

void check_aligned(std::size_t hyps, std::size_t refs, const char* what) {
  if (hyps != refs) {
    throw DataError(std::string(what) + ": " + std::to_string(hyps) + " hypotheses but " +
                    std::to_string(refs) + " references");
  }
}

}  // namespace

BleuScore bleu_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                      const TokenizerConfig& tok) {
  check_aligned(hyps.size(), refs.size(), "BLEU");
  if (hyps.empty()) throw DataError("BLEU: empty corpus");
  BleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    total += bleu_sentence_stats(tokenize(hyps[i], tok), tokenize(refs[i], tok));
  }
  return bleu_from_stats(total);
}

ChrfStats& ChrfStats::operator+=(const ChrfStats& o) {
  for (std::size_t n = 0; n < matches.size() && n < o.matches.size(); ++n) {
    matches[n] += o.matches[n];
    hyp_totals[n] += o.hyp_totals[n];
    ref_totals[n] += o.ref_totals[n];
  }
  return *this;
}

namespace {

/// Scalars of `s` with whitespace removed, each as its UTF-8 bytes.
std::vector<std::string_view> chars_without_space(std::string_view s) {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto d = text::decode_at(s, i);
    if (!text::is_whitespace(d.value)) out.push_back(s.substr(i, d.length));
    i += d.length;
  }
  return out;
}

std::unordered_map<std::string, std::size_t> char_ngrams(const std::vector<std::string_view>& cs,
                                                         int n) {
  std::unordered_map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i + n <= cs.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) key.append(cs[i + k]);
    ++counts[key];
  }
  return counts;
}

}  // namespace

ChrfStats chrf_sentence_stats(std::string_view hyp, std::string_view ref, int max_n) {
  if (max_n < 1) throw ConfigError("ChrF: max_n must be >= 1");
  ChrfStats s(max_n);
  const auto h = chars_without_space(hyp);
  const auto r = chars_without_space(ref);
  for (int n = 1; n <= max_n; ++n) {
    const auto hc = char_ngrams(h, n);
    const auto rc = char_ngrams(r, n);
    std::size_t matched = 0;
    for (const auto& [gram, count] : hc) {
      const auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    s.matches[n - 1] = matched;
    s.hyp_totals[n - 1] = h.size() >= static_cast<std::size_t>(n) ? h.size() - n + 1 : 0;
    s.ref_totals[n - 1] = r.size() >= static_cast<std::size_t>(n) ? r.size() - n + 1 : 0;
  }
  return s;
}

double chrf_from_stats(const ChrfStats& stats, double beta) {
  if (!(beta > 0.0)) throw ConfigError("ChrF: beta must be > 0");
  double p_sum = 0.0, r_sum = 0.0;
  int effective = 0;
  bool any = false;
  for (std::size_t n = 0; n < stats.matches.size(); ++n) {
    any = any || stats.hyp_totals[n] > 0 || stats.ref_totals[n] > 0;
    if (stats.hyp_totals[n] == 0 || stats.ref_totals[n] == 0) continue;
    p_sum += static_cast<double>(stats.matches[n]) / static_cast<double>(stats.hyp_totals[n]);
    r_sum += static_cast<double>(stats.matches[n]) / static_cast<double>(stats.ref_totals[n]);
    ++effective;
  }
  if (!any) return 100.0;
  if (effective == 0) return 0.0;
  const double p = p_sum / effective;
  const double r = r_sum / effective;
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom <= 0.0) return 0.0;
  return 100.0 * (1.0 + b2) * p * r / denom;
}

double chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs, int max_n,
            double beta) {
  check_aligned(hyps.size(), refs.size(), "ChrF");
  if (!(beta > 0.0)) throw ConfigError("ChrF: beta must be > 0");
  ChrfStats total(max_n);
  for (std::size_t i = 0; i < hyps.size(); ++i) total += chrf_sentence_stats(hyps[i], refs[i], max_n);
  return chrf_from_stats(total, beta);
}

}  // namespace apekit::metrics
