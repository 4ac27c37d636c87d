#include "apekit/langid.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "apekit/error.hpp"
#include "apekit/text.hpp"

namespace apekit {

namespace {

bool is_letter(char32_t cp) {
  return !text::is_whitespace(cp) && !text::is_punctuation(cp) && !(cp >= '0' && cp <= '9') &&
         cp > 0x20 && cp != 0xFFFD;
}

/// Calls fn(ngram) for every 1..max_order gram of every padded word.
template <class Fn>
void for_each_ngram(std::string_view s, int max_order, Fn&& fn) {
  const auto scalars = text::to_scalars(text::lowercase(s));
  std::vector<char32_t> word;
  auto flush = [&] {
    if (word.empty()) return;
    std::vector<char32_t> padded;
    padded.reserve(word.size() + 2);
    padded.push_back(' ');
    padded.insert(padded.end(), word.begin(), word.end());
    padded.push_back(' ');
    for (int n = 1; n <= max_order; ++n) {
      for (std::size_t i = 0; i + n <= padded.size(); ++i) {
        if (n == 1 && padded[i] == ' ') continue;
        std::string gram;
        for (int k = 0; k < n; ++k) text::append_utf8(gram, padded[i + k]);
        fn(gram);
      }
    }
    word.clear();
  };
  for (char32_t cp : scalars) {
    if (is_letter(cp)) {
      word.push_back(cp);
    } else {
      flush();
    }
  }
  flush();
}

}  // namespace

void CharNgramClassifier::train(const std::string& lang, std::string_view sample) {
  auto& profile = profiles_[lang];
  for_each_ngram(sample, kMaxOrder, [&](const std::string& g) {
    profile.counts[g] += 1;
    profile.total += 1;
    if (seen_.emplace(g, 1).second) ++vocabulary_;
  });
}

std::vector<std::string> CharNgramClassifier::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, _] : profiles_) out.push_back(lang);
  return out;
}

std::map<std::string, double> CharNgramClassifier::scores(std::string_view text) const {
  std::map<std::string, double> out;
  for (const auto& [lang, _] : profiles_) out[lang] = 0.0;
  const double vocab = static_cast<double>(vocabulary_) + 1.0;
  for_each_ngram(text, kMaxOrder, [&](const std::string& g) {
    for (const auto& [lang, profile] : profiles_) {
      const auto it = profile.counts.find(g);
      const double c = it == profile.counts.end() ? 0.0 : it->second;
      out[lang] += std::log((c + 1.0) / (profile.total + vocab));
    }
  });
  return out;
}

std::string CharNgramClassifier::classify(std::string_view text) const {
  if (profiles_.empty()) throw DataError("language classifier has no trained profiles");
  bool has_letter = false;
  for (char32_t cp : text::to_scalars(text)) {
    if (is_letter(cp)) {
      has_letter = true;
      break;
    }
  }
  if (!has_letter) return "und";
  std::string best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto& [lang, score] : scores(text)) {
    if (score > best_score) {
      best_score = score;
      best = lang;
    }
  }
  return best;
}

const CharNgramClassifier& CharNgramClassifier::builtin() {
  static const CharNgramClassifier instance = [] {
    CharNgramClassifier c;
    for (const auto& [lang, sample] : builtin_language_samples()) c.train(lang, sample);
    return c;
  }();
  return instance;
}

LabelFileClassifier LabelFileClassifier::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open language label file " + path.string());
  std::unordered_map<std::string, std::string> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ": line " + std::to_string(lineno) +
                      ": expected 'text<TAB>lang'");
    }
    labels[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return LabelFileClassifier(std::move(labels));
}

std::string LabelFileClassifier::classify(std::string_view text) const {
  const auto it = labels_.find(std::string(text));
  if (it == labels_.end()) throw DataError("no language label for text");
  return it->second;
}

}  // namespace apekit
