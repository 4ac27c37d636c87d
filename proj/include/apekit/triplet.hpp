#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace apekit {

/// One (source, machine translation, post-edit) record.
struct Triplet {
  std::string id;
  std::string src;
  std::string mt;
  std::string pe;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

enum class Field { src, mt, pe };

std::string_view field_name(Field f);
/// Parses "src" / "mt" / "pe"; throws ConfigError otherwise.
Field parse_field(std::string_view name);
const std::string& field_of(const Triplet& t, Field f);
std::string& field_of(Triplet& t, Field f);

/// True when src, mt and pe are all non-empty after trimming.
bool is_admissible(const Triplet& t);

/// Ordered triplet container. Iteration order is insertion order.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::string src_lang, std::string tgt_lang)
      : src_lang_(std::move(src_lang)), tgt_lang_(std::move(tgt_lang)) {}

  /// Appends; throws DataError on a duplicate id.
  void add(Triplet t);

  const std::vector<Triplet>& triplets() const { return triplets_; }
  std::size_t size() const { return triplets_.size(); }
  bool empty() const { return triplets_.empty(); }
  const Triplet& operator[](std::size_t i) const { return triplets_[i]; }
  auto begin() const { return triplets_.begin(); }
  auto end() const { return triplets_.end(); }

  const std::string& src_lang() const { return src_lang_; }
  const std::string& tgt_lang() const { return tgt_lang_; }

  /// Empty corpus with the same language pair.
  Corpus like() const { return Corpus(src_lang_, tgt_lang_); }

  bool contains_id(const std::string& id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.src_lang_ == b.src_lang_ && a.tgt_lang_ == b.tgt_lang_ && a.triplets_ == b.triplets_;
  }

 private:
  std::vector<Triplet> triplets_;
  std::map<std::string, std::size_t> index_;
  std::string src_lang_ = "en";
  std::string tgt_lang_ = "de";
};

enum class CorpusFormat { jsonl, tsv };

CorpusFormat parse_format(std::string_view name);

/// Id given to the record on 1-based line `line` when the file carries none.
std::string auto_id(std::size_t line);

Corpus read_corpus(const std::filesystem::path& path, CorpusFormat format,
                   std::string src_lang = "en", std::string tgt_lang = "de");
Corpus parse_corpus(std::string_view content, CorpusFormat format,
                    std::string src_lang = "en", std::string tgt_lang = "de");

/// Throws DataError for TSV when any text contains a tab or line break.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);
std::string format_corpus(const Corpus& corpus, CorpusFormat format);

/// Whitespace-token and character counts per field.
struct CorpusStats {
  std::size_t n_triplets = 0;
  std::size_t tokens_src = 0, tokens_mt = 0, tokens_pe = 0;
  std::size_t chars_src = 0, chars_mt = 0, chars_pe = 0;

  CorpusStats& operator+=(const CorpusStats& o);
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) { return a += b; }
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats triplet_stats(const Triplet& t);
CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace apekit
