#include "apekit/filter.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>

#include "apekit/error.hpp"
#include "apekit/parallel.hpp"
#include "apekit/random.hpp"
#include "apekit/text.hpp"

namespace apekit::filter {

void FilterConfig::validate() const {
  if (!(t > 0.0 && t < 1.0)) {
    throw ConfigError("ratio tolerance t must satisfy 0 < t < 1, got " + std::to_string(t));
  }
  if (expected_src_lang.empty() || expected_tgt_lang.empty()) {
    throw ConfigError("expected_src_lang and expected_tgt_lang must be non-empty");
  }
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::ratio: return "ratio";
    case Stage::normalize: return "normalize";
    case Stage::dedup: return "dedup";
    case Stage::langid: return "langid";
    case Stage::split: return "split";
  }
  return "?";
}

GlobalRatio compute_global_ratio(const Corpus& corpus, Field num, Field den) {
  if (corpus.empty()) throw DataError("cannot compute a global ratio on an empty corpus");
  GlobalRatio r;
  for (const auto& t : corpus) {
    r.numerator_chars += text::char_count(field_of(t, num));
    r.denominator_chars += text::char_count(field_of(t, den));
  }
  if (r.denominator_chars == 0) {
    throw DataError("global ratio undefined: field " + std::string(field_name(den)) +
                    " has no characters in the whole corpus");
  }
  r.r_c = static_cast<double>(r.numerator_chars) / static_cast<double>(r.denominator_chars);
  return r;
}

StageOutput ratio_filter(const Corpus& corpus, const GlobalRatio& r, double t, Field num,
                         Field den) {
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("ratio tolerance t must satisfy 0 < t < 1");
  if (r.denominator_chars == 0) throw DataError("global ratio has a zero denominator");
  StageOutput out{corpus.like(), {}};
  // Compare a/b against (1±t)·N/D in cross-multiplied form.
  const long double big_n = static_cast<long double>(r.numerator_chars);
  const long double big_d = static_cast<long double>(r.denominator_chars);
  const long double lo = 1.0L - static_cast<long double>(t);
  const long double hi = 1.0L + static_cast<long double>(t);
  for (const auto& trip : corpus) {
    const auto a = static_cast<long double>(text::char_count(field_of(trip, num)));
    const auto b_count = text::char_count(field_of(trip, den));
    if (b_count == 0) {
      out.removed.push_back({trip, Stage::ratio, "degenerate"});
      continue;
    }
    const auto b = static_cast<long double>(b_count);
    const long double lhs = a * big_d;
    if (lo * big_n * b <= lhs && lhs <= hi * big_n * b) {
      out.kept.add(trip);
    } else {
      out.removed.push_back({trip, Stage::ratio, "ratio"});
    }
  }
  return out;
}

namespace {

std::optional<char> straight_replacement(char32_t cp) {
  switch (cp) {
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x00AB: case 0x00BB:
      return '"';
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x00B4: case 0x0060:
      return '\'';
    case 0x00A0: case 0x202F: case 0x2007:
      return ' ';
    default:
      return std::nullopt;
  }
}

}  // namespace

std::string normalize_punctuation(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto d = text::decode_at(s, i);
    if (!d.valid) {
      out.push_back(s[i]);
      i += 1;
      continue;
    }
    i += d.length;
    if (d.value == '\r') continue;
    char32_t cp = d.value;
    if (const auto r = straight_replacement(cp)) cp = static_cast<unsigned char>(*r);
    if (cp == ' ' && !out.empty() && out.back() == ' ') continue;
    text::append_utf8(out, cp);
  }
  return out;
}

Triplet normalize_triplet(Triplet t) {
  t.src = normalize_punctuation(t.src);
  t.mt = normalize_punctuation(t.mt);
  t.pe = normalize_punctuation(t.pe);
  return t;
}

StageOutput dedup(const Corpus& corpus) {
  // (src, mt) -> index of the current survivor
  std::map<std::pair<std::string_view, std::string_view>, std::size_t> best;
  std::vector<std::size_t> pe_len(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& t = corpus[i];
    pe_len[i] = text::char_count(t.pe);
    auto [it, inserted] = best.emplace(std::pair<std::string_view, std::string_view>(t.src, t.mt), i);
    if (!inserted && pe_len[i] > pe_len[it->second]) it->second = i;
  }
  std::vector<bool> survives(corpus.size(), false);
  for (const auto& [_, idx] : best) survives[idx] = true;
  StageOutput out{corpus.like(), {}};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (survives[i]) {
      out.kept.add(corpus[i]);
    } else {
      out.removed.push_back({corpus[i], Stage::dedup, "duplicate"});
    }
  }
  return out;
}

namespace {

enum class LangVerdict { keep, wrong, error };

LangVerdict judge(const Triplet& t, const LanguageClassifier& c, const std::string& src_lang,
                  const std::string& tgt_lang) {
  try {
    return c.classify(t.src) == src_lang && c.classify(t.pe) == tgt_lang ? LangVerdict::keep
                                                                         : LangVerdict::wrong;
  } catch (const std::exception&) {
    return LangVerdict::error;
  }
}

StageOutput language_filter_impl(const Corpus& corpus, const LanguageClassifier& classifier,
                                 const std::string& src_lang, const std::string& tgt_lang,
                                 unsigned threads) {
  std::vector<LangVerdict> verdicts(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    verdicts[i] = judge(corpus[i], classifier, src_lang, tgt_lang);
  });
  StageOutput out{corpus.like(), {}};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    switch (verdicts[i]) {
      case LangVerdict::keep: out.kept.add(corpus[i]); break;
      case LangVerdict::wrong: out.removed.push_back({corpus[i], Stage::langid, "langid"}); break;
      case LangVerdict::error:
        out.removed.push_back({corpus[i], Stage::langid, "langid_error"});
        break;
    }
  }
  return out;
}

}  // namespace

StageOutput language_filter(const Corpus& corpus, const LanguageClassifier& classifier,
                            const std::string& expected_src_lang,
                            const std::string& expected_tgt_lang) {
  return language_filter_impl(corpus, classifier, expected_src_lang, expected_tgt_lang, 1);
}

Splits split_holdout(const Corpus& corpus, std::size_t dev_size, std::size_t test_size,
                     std::uint64_t seed) {
  const std::size_t held = dev_size + test_size;
  if (held > 0 && held >= corpus.size()) {
    throw DataError("dev_size + test_size (" + std::to_string(held) +
                    ") must be smaller than the corpus (" + std::to_string(corpus.size()) + ")");
  }
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, 0x5e1d0u));
  rng.shuffle(order);

  // 0 = train, 1 = dev, 2 = test
  std::vector<unsigned char> bucket(corpus.size(), 0);
  for (std::size_t k = 0; k < dev_size; ++k) bucket[order[k]] = 1;
  for (std::size_t k = dev_size; k < held; ++k) bucket[order[k]] = 2;

  Splits s{corpus.like(), corpus.like(), corpus.like()};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    switch (bucket[i]) {
      case 0: s.train.add(corpus[i]); break;
      case 1: s.dev.add(corpus[i]); break;
      default: s.test.add(corpus[i]); break;
    }
  }
  return s;
}

PipelineResult run_filter_pipeline(const Corpus& corpus, const FilterConfig& config,
                                   const LanguageClassifier& classifier, unsigned threads) {
  config.validate();
  PipelineResult result;
  auto& report = result.report;
  report.input_count = corpus.size();

  Corpus current = corpus;
  if (config.enable_ratio_filter) {
    report.r_c = compute_global_ratio(current, config.global_numerator, config.global_denominator);
    auto out = ratio_filter(current, report.r_c, config.t, config.ratio_numerator,
                            config.ratio_denominator);
    report.removed_by_ratio = out.removed.size();
    report.degenerate = static_cast<std::size_t>(std::count_if(
        out.removed.begin(), out.removed.end(),
        [](const Removal& r) { return r.reason == "degenerate"; }));
    std::move(out.removed.begin(), out.removed.end(), std::back_inserter(result.removed));
    current = std::move(out.kept);
    report.stage_order.push_back(Stage::ratio);
  } else if (!current.empty()) {
    report.r_c = compute_global_ratio(current, config.global_numerator, config.global_denominator);
  }

  {
    std::vector<Triplet> normalized(current.size());
    parallel_for(current.size(), threads,
                 [&](std::size_t i) { normalized[i] = normalize_triplet(current[i]); });
    Corpus next = current.like();
    for (auto& t : normalized) next.add(std::move(t));
    current = std::move(next);
    report.stage_order.push_back(Stage::normalize);
  }

  {
    auto out = dedup(current);
    report.removed_by_dedup = out.removed.size();
    std::move(out.removed.begin(), out.removed.end(), std::back_inserter(result.removed));
    current = std::move(out.kept);
    report.stage_order.push_back(Stage::dedup);
  }

  if (config.enable_langid) {
    auto out = language_filter_impl(current, classifier, config.expected_src_lang,
                                    config.expected_tgt_lang, threads);
    report.removed_by_langid = out.removed.size();
    std::move(out.removed.begin(), out.removed.end(), std::back_inserter(result.removed));
    current = std::move(out.kept);
    report.stage_order.push_back(Stage::langid);
  }

  report.kept_count = current.size();
  result.splits = split_holdout(current, config.dev_size, config.test_size, config.seed);
  report.stage_order.push_back(Stage::split);
  report.train_size = result.splits.train.size();
  report.dev_size = result.splits.dev.size();
  report.test_size = result.splits.test.size();
  return result;
}

}  // namespace apekit::filter
