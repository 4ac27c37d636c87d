#pragma once

// Paired bootstrap significance, kappa agreement and adequacy aggregation.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apekit/metrics.hpp"

namespace apekit::stats {

enum class BootstrapMetric { bleu, ter };

BootstrapMetric parse_bootstrap_metric(std::string_view name);
std::string_view bootstrap_metric_name(BootstrapMetric m);

struct BootstrapOptions {
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  BootstrapMetric metric = BootstrapMetric::bleu;
  metrics::TokenizerConfig tok = metrics::kBleuTokenizer;
  unsigned threads = 1;
};

struct BootstrapResult {
  std::size_t n_samples = 0;
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  std::size_t ties = 0;
  double p_value = 1.0;
  std::uint64_t seed = 0;
  BootstrapMetric metric = BootstrapMetric::bleu;
  double score_a = 0;  // full test set
  double score_b = 0;

  bool significant(double alpha) const { return p_value < alpha; }
};

/// Sample i draws |refs| indices with replacement from Rng(derive_seed(seed, i)).
/// p_value = 1 - wins_winner / n_samples; ties are wins for neither system.
/// For TER, lower is better. Throws DataError on length mismatch or empty input,
/// ConfigError when n_samples == 0.
BootstrapResult bootstrap_significance(const std::vector<std::string>& hyps_a,
                                       const std::vector<std::string>& hyps_b,
                                       const std::vector<std::string>& refs,
                                       const BootstrapOptions& options = {});

enum class Weighting { none, quadratic };

std::string_view weighting_name(Weighting w);
Weighting parse_weighting(std::string_view name);

struct KappaResult {
  double kappa = 0;
  double observed_agreement = 0;
  double expected_agreement = 0;
  Weighting weighting = Weighting::none;
};

/// Throws UndefinedStatistic when the expected agreement is 1.
KappaResult cohen_kappa(const std::vector<int>& a, const std::vector<int>& b);

/// Quadratic weights (i - j)^2 / (max - min)^2 on the scale [min, max].
/// Observed and expected agreements are reported as 1 - weighted disagreement.
/// Throws UndefinedStatistic when the expected weighted disagreement is 0.
KappaResult weighted_kappa(const std::vector<int>& a, const std::vector<int>& b,
                           int scale_min = 1, int scale_max = 5);

struct PairwiseKappa {
  double mean = 0;                                    // NaN if every pair is undefined
  std::vector<std::vector<std::optional<double>>> matrix;  // symmetric, diagonal 1
  std::size_t pairs = 0;
  std::size_t skipped = 0;
};

/// Mean kappa over unordered annotator pairs; undefined pairs are skipped.
PairwiseKappa pairwise_average_kappa(const std::vector<std::vector<int>>& ratings,
                                     Weighting weighting, int scale_min = 1, int scale_max = 5);

enum class System { nmt, ape, human };
inline constexpr std::array<System, 3> kSystems{System::nmt, System::ape, System::human};

std::string_view system_name(System s);

inline constexpr int kCantDecide = 0;

struct AdequacyRecord {
  std::string annotator;
  std::string item;
  System system = System::nmt;
  int score = kCantDecide;  // 1..5 or kCantDecide
  std::size_t line = 0;
};

/// CSV rows: annotator_id,item_id,system,score with score in 1..5 or X.
/// A header row starting with "annotator" is skipped.
class AdequacyTable {
 public:
  static AdequacyTable parse(std::string_view csv);
  static AdequacyTable read(const std::filesystem::path& path);

  void add(AdequacyRecord r);
  const std::vector<AdequacyRecord>& records() const { return records_; }
  std::vector<std::string> annotators() const;  // first-seen order

 private:
  std::vector<AdequacyRecord> records_;
};

struct SystemMeans {
  std::array<double, 3> mean{};  // indexed like kSystems; NaN when nothing is used
};

struct AnnotatorSummary {
  std::string annotator;
  std::size_t used = 0;
  std::size_t assigned = 0;
  SystemMeans means;
};

struct AdequacySummary {
  std::vector<AnnotatorSummary> annotators;
  AnnotatorSummary overall;  // pooled over every used evaluation
};

/// An item counts for an annotator only when all three systems have a 1..5 score.
AdequacySummary adequacy_summary(const AdequacyTable& table);

/// Per annotator, one rating per (item, system) unit that every annotator
/// rated with a numeric score; units follow the first annotator's order.
struct AgreementMatrix {
  std::vector<std::string> annotators;
  std::vector<std::string> units;  // "item/system"
  std::vector<std::vector<int>> ratings;
};

AgreementMatrix agreement_matrix(const AdequacyTable& table);

}  // namespace apekit::stats
