#pragma once

// Data-size ablation sampling, upsampled corpus mixing and TER-bucket analysis.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apekit/metrics.hpp"
#include "apekit/triplet.hpp"

namespace apekit::analysis {

inline constexpr std::array<std::size_t, 6> kDefaultSampleSizes{6250,  12500,  25000,
                                                               50000, 100000, 125000};
/// Training-set size of the WMT APE EN-DE (NMT) task, drawn as a vertical marker.
inline constexpr std::size_t kWmtApeSize = 13441;

struct SampleSpec {
  std::vector<std::size_t> sizes;
  std::size_t replicates = 3;
  std::uint64_t base_seed = 0;

  /// Throws ConfigError unless sizes are non-empty, positive and strictly
  /// ascending and replicates >= 1; DataError if a size exceeds corpus_size.
  void validate(std::size_t corpus_size) const;
};

std::uint64_t sample_seed(std::uint64_t base_seed, std::size_t size, std::size_t replicate);

struct Sample {
  std::size_t size = 0;
  std::size_t replicate = 0;  // 0-based
  std::uint64_t seed = 0;
  Corpus corpus;              // triplets keep their corpus order
};

/// One uniform draw without replacement per (size, replicate), independent
/// of every other draw. Output is ordered by size, then replicate.
std::vector<Sample> draw_samples(const Corpus& corpus, const SampleSpec& spec,
                                 unsigned threads = 1);

struct RunResult {
  std::size_t size = 0;
  std::size_t replicate = 0;
  double value = 0;
};

struct CurvePoint {
  std::size_t size = 0;
  std::size_t runs = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
};

struct CurveReport {
  std::string metric;
  std::vector<CurvePoint> points;  // ascending size
  std::optional<double> baseline;  // horizontal reference line
  std::vector<std::size_t> markers{kWmtApeSize};
};

/// Throws DataError on empty input.
CurveReport curve_report(const std::vector<RunResult>& results, std::string metric,
                         std::optional<double> baseline = std::nullopt);

/// Trains-and-scores stand-in: maps one sample to a metric value.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const Sample& sample) const = 0;
};

/// Deterministic saturating curve plus per-sample jitter derived from the
/// sampled ids, so replicates differ and reruns agree.
class MockScorer : public Scorer {
 public:
  MockScorer(double floor = 20.0, double ceiling = 60.0, double scale = 250.0,
             double jitter = 0.5)
      : floor_(floor), ceiling_(ceiling), scale_(scale), jitter_(jitter) {}
  double score(const Sample& sample) const override;

 private:
  double floor_, ceiling_, scale_, jitter_;
};

struct AblationResult {
  std::vector<Sample> samples;
  std::vector<RunResult> runs;
  CurveReport curve;
};

AblationResult run_ablation(const Corpus& corpus, const SampleSpec& spec, const Scorer& scorer,
                            std::string metric, std::optional<double> baseline = std::nullopt,
                            unsigned threads = 1);

/// factor copies of every triplet of `a` (ids "id@k", k = 1..factor, with
/// meta origin_id) followed by all of `b`, then shuffled with `seed`.
/// Throws ConfigError when factor == 0.
Corpus upsample_mix(const Corpus& a, std::size_t factor, const Corpus& b, std::uint64_t seed);

inline constexpr std::size_t kBucketCount = 10;

struct Bucket {
  std::string label;  // ">90", "81-90", ..., "<=10"
  std::size_t count = 0;
  std::size_t baseline_edits = 0;
  std::size_t ape_edits = 0;
  std::size_t ref_len = 0;
  std::optional<double> baseline_ter;  // x100, empty bucket -> nullopt
  std::optional<double> ape_ter;
  std::optional<double> delta_ter;    // ape - baseline; negative is an improvement
};

struct BucketAnalysis {
  std::vector<Bucket> buckets;             // canonical order, worst first
  std::vector<std::size_t> assignment;     // bucket index per item
  std::size_t total = 0;
};

/// Index of the bucket for sentence TER edits / ref_len (x100): (90, inf) -> 0,
/// (80, 90] -> 1, ..., (10, 20] -> 8, [0, 10] -> 9. Exact integer comparison.
std::size_t bucket_index(std::size_t edits, std::size_t ref_len);
std::string_view bucket_label(std::size_t index);

/// Throws DataError on length mismatch, empty input or an empty reference.
BucketAnalysis ter_buckets(const std::vector<std::string>& baseline_hyps,
                           const std::vector<std::string>& ape_hyps,
                           const std::vector<std::string>& refs,
                           const metrics::TokenizerConfig& tok = metrics::kTerNormalized,
                           unsigned threads = 1);

/// Plot data: "size,mean,min,max" rows.
std::string curve_csv(const CurveReport& report);
/// Plot data: "bucket,count,baseline_ter,ape_ter,delta_ter" rows; empty cells for empty buckets.
std::string buckets_csv(const BucketAnalysis& analysis);

}  // namespace apekit::analysis
