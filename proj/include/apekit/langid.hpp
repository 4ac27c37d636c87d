#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace apekit {

/// Maps a text to a language code. Implementations may throw to signal
/// that a text cannot be classified; callers treat that as a rejection.
class LanguageClassifier {
 public:
  virtual ~LanguageClassifier() = default;
  virtual std::string classify(std::string_view text) const = 0;
};

/// Returns the same code for every input. Useful as a permissive or
/// rejecting stand-in.
class ConstantClassifier final : public LanguageClassifier {
 public:
  explicit ConstantClassifier(std::string code) : code_(std::move(code)) {}
  std::string classify(std::string_view) const override { return code_; }

 private:
  std::string code_;
};

/// Multinomial naive Bayes over character 1- to 4-grams of lowercased,
/// space-padded words, with add-one smoothing per language profile.
class CharNgramClassifier final : public LanguageClassifier {
 public:
  static constexpr int kMaxOrder = 4;

  CharNgramClassifier() = default;

  /// Adds `sample` to the profile for `lang`.
  void train(const std::string& lang, std::string_view sample);

  std::vector<std::string> languages() const;

  /// Log-likelihood of `text` under each profile.
  std::map<std::string, double> scores(std::string_view text) const;

  /// Best-scoring language; "und" for text without letters. Throws
  /// DataError when no profile is trained.
  std::string classify(std::string_view text) const override;

  /// Ships with en, de, fr and es profiles built from embedded sample text.
  static const CharNgramClassifier& builtin();

 private:
  struct Profile {
    std::unordered_map<std::string, double> counts;
    double total = 0;
  };
  std::map<std::string, Profile> profiles_;
  std::size_t vocabulary_ = 0;
  std::unordered_map<std::string, int> seen_;
};

/// Labels read from an external tool's output: one "text TAB lang" pair per
/// line. Lookups of unseen texts throw DataError.
class LabelFileClassifier final : public LanguageClassifier {
 public:
  explicit LabelFileClassifier(std::unordered_map<std::string, std::string> labels)
      : labels_(std::move(labels)) {}
  static LabelFileClassifier from_file(const std::filesystem::path& path);
  std::string classify(std::string_view text) const override;

 private:
  std::unordered_map<std::string, std::string> labels_;
};

/// Embedded sample text used to build the default profiles.
const std::map<std::string, std::string_view>& builtin_language_samples();

}  // namespace apekit
