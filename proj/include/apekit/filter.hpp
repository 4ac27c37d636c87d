#pragma once

// Corpus-construction pipeline: length-ratio filtering against a global
// character ratio, punctuation normalization, deduplication, language-ID
// filtering and a seeded dev/test holdout.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apekit/langid.hpp"
#include "apekit/triplet.hpp"

namespace apekit::filter {

struct FilterConfig {
  double t = 0.2;
  // Fields whose per-triplet character ratio is tested.
  Field ratio_numerator = Field::src;
  Field ratio_denominator = Field::pe;
  // Fields whose corpus totals define r_c.
  Field global_numerator = Field::src;
  Field global_denominator = Field::mt;
  std::size_t dev_size = 10000;
  std::size_t test_size = 10000;
  std::uint64_t seed = 0;
  std::string expected_src_lang = "en";
  std::string expected_tgt_lang = "de";
  bool enable_ratio_filter = true;
  bool enable_langid = true;

  /// Throws ConfigError unless 0 < t < 1.
  void validate() const;
};

struct GlobalRatio {
  double r_c = 0;
  std::size_t numerator_chars = 0;
  std::size_t denominator_chars = 0;
};

enum class Stage { ratio, normalize, dedup, langid, split };
std::string_view stage_name(Stage s);

struct Removal {
  Triplet triplet;
  Stage stage;
  std::string reason;  // "ratio", "degenerate", "duplicate", "langid", "langid_error"
};

struct StageOutput {
  Corpus kept;
  std::vector<Removal> removed;
};

struct FilterReport {
  std::size_t input_count = 0;
  std::size_t removed_by_ratio = 0;
  std::size_t removed_by_dedup = 0;
  std::size_t removed_by_langid = 0;
  std::size_t kept_count = 0;
  // Of removed_by_ratio, how many had an empty denominator field.
  std::size_t degenerate = 0;
  GlobalRatio r_c;
  std::size_t train_size = 0, dev_size = 0, test_size = 0;
  std::vector<Stage> stage_order;

  bool reconciles() const {
    return input_count == kept_count + removed_by_ratio + removed_by_dedup + removed_by_langid &&
           kept_count == train_size + dev_size + test_size;
  }
};

struct Splits {
  Corpus train, dev, test;
};

struct PipelineResult {
  Splits splits;
  FilterReport report;
  std::vector<Removal> removed;
};

/// Ratio of total characters of `num` over `den` across the corpus.
/// Throws DataError on an empty corpus or zero denominator.
GlobalRatio compute_global_ratio(const Corpus& corpus, Field num = Field::src,
                                 Field den = Field::mt);

/// Keeps a triplet iff (1-t)·r_c <= chars(num)/chars(den) <= (1+t)·r_c.
/// Triplets whose denominator is empty are removed as "degenerate".
StageOutput ratio_filter(const Corpus& corpus, const GlobalRatio& r, double t,
                         Field num = Field::src, Field den = Field::pe);

/// Straightens typographic quotes and guillemets, maps non-breaking spaces
/// to spaces, drops carriage returns and collapses runs of spaces. En and em
/// dashes are left alone. Idempotent and never lengthens the text.
std::string normalize_punctuation(std::string_view text);

Triplet normalize_triplet(Triplet t);

/// Among triplets sharing (src, mt) keeps the one with the longest pe
/// (earliest on ties). Survivors keep their relative order.
StageOutput dedup(const Corpus& corpus);

StageOutput language_filter(const Corpus& corpus, const LanguageClassifier& classifier,
                            const std::string& expected_src_lang,
                            const std::string& expected_tgt_lang);

/// Seeded uniform draw of dev and test; every split keeps the input's
/// relative order. Requires dev_size + test_size < |corpus| unless both are 0.
Splits split_holdout(const Corpus& corpus, std::size_t dev_size, std::size_t test_size,
                     std::uint64_t seed);

/// ratio -> normalize -> dedup -> langid -> split.
PipelineResult run_filter_pipeline(const Corpus& corpus, const FilterConfig& config,
                                   const LanguageClassifier& classifier, unsigned threads = 1);

}  // namespace apekit::filter
