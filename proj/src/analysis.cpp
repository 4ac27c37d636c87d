#include "apekit/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "apekit/error.hpp"
#include "apekit/parallel.hpp"
#include "apekit/random.hpp"
#include "apekit/ter.hpp"

namespace apekit::analysis {

void SampleSpec::validate(std::size_t corpus_size) const {
  if (sizes.empty()) throw ConfigError("sample spec: no sizes");
  if (replicates == 0) throw ConfigError("sample spec: replicates must be >= 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw ConfigError("sample spec: sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw ConfigError("sample spec: sizes must be strictly ascending");
    }
  }
  if (sizes.back() > corpus_size) {
    throw DataError("sample size " + std::to_string(sizes.back()) + " exceeds corpus size " +
                    std::to_string(corpus_size));
  }
}

std::uint64_t sample_seed(std::uint64_t base_seed, std::size_t size, std::size_t replicate) {
  return derive_seed(base_seed, size, replicate);
}

std::vector<Sample> draw_samples(const Corpus& corpus, const SampleSpec& spec, unsigned threads) {
  spec.validate(corpus.size());
  std::vector<Sample> out;
  for (std::size_t size : spec.sizes) {
    for (std::size_t r = 0; r < spec.replicates; ++r) {
      out.push_back({size, r, sample_seed(spec.base_seed, size, r), corpus.like()});
    }
  }
  parallel_for(out.size(), threads, [&](std::size_t k) {
    auto& s = out[k];
    Rng rng(s.seed);
    std::vector<std::size_t> idx(corpus.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    // Partial Fisher-Yates: the first `size` slots are a uniform draw.
    for (std::size_t i = 0; i < s.size; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(s.size);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) s.corpus.add(corpus[i]);
  });
  return out;
}

CurveReport curve_report(const std::vector<RunResult>& results, std::string metric,
                         std::optional<double> baseline) {
  if (results.empty()) throw DataError("curve report: no results");
  std::map<std::size_t, std::vector<double>> by_size;
  for (const auto& r : results) by_size[r.size].push_back(r.value);
  CurveReport report;
  report.metric = std::move(metric);
  report.baseline = baseline;
  for (const auto& [size, values] : by_size) {
    CurvePoint p;
    p.size = size;
    p.runs = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    p.mean = sum / static_cast<double>(values.size());
    p.min = *std::min_element(values.begin(), values.end());
    p.max = *std::max_element(values.begin(), values.end());
    // Rounding can put the mean a hair outside [min, max] for equal values.
    p.mean = std::clamp(p.mean, p.min, p.max);
    report.points.push_back(p);
  }
  return report;
}

double MockScorer::score(const Sample& sample) const {
  std::uint64_t h = sample.seed;
  for (const auto& t : sample.corpus) {
    for (unsigned char c : t.id) h = mix64(h ^ c);
  }
  const double noise = (static_cast<double>(h >> 11) * 0x1.0p-53) * 2.0 - 1.0;
  const double x = static_cast<double>(sample.size) / scale_;
  return ceiling_ - (ceiling_ - floor_) * std::exp(-x) + jitter_ * noise;
}

AblationResult run_ablation(const Corpus& corpus, const SampleSpec& spec, const Scorer& scorer,
                            std::string metric, std::optional<double> baseline,
                            unsigned threads) {
  AblationResult result;
  result.samples = draw_samples(corpus, spec, threads);
  result.runs.resize(result.samples.size());
  parallel_for(result.samples.size(), threads, [&](std::size_t i) {
    const auto& s = result.samples[i];
    result.runs[i] = {s.size, s.replicate, scorer.score(s)};
  });
  result.curve = curve_report(result.runs, std::move(metric), baseline);
  return result;
}

Corpus upsample_mix(const Corpus& a, std::size_t factor, const Corpus& b, std::uint64_t seed) {
  if (factor == 0) throw ConfigError("upsample factor must be >= 1");
  std::vector<Triplet> all;
  all.reserve(factor * a.size() + b.size());
  for (std::size_t k = 1; k <= factor; ++k) {
    for (const auto& t : a) {
      Triplet copy = t;
      copy.id = t.id + "@" + std::to_string(k);
      copy.meta["origin_id"] = t.id;
      all.push_back(std::move(copy));
    }
  }
  all.insert(all.end(), b.begin(), b.end());
  Rng rng(derive_seed(seed, 0x313c));
  rng.shuffle(all);
  Corpus out = a.like();
  for (auto& t : all) out.add(std::move(t));
  return out;
}

std::size_t bucket_index(std::size_t edits, std::size_t ref_len) {
  for (std::size_t b = 0; b + 1 < kBucketCount; ++b) {
    const std::size_t threshold = 90 - 10 * b;
    if (100 * edits > threshold * ref_len) return b;
  }
  return kBucketCount - 1;
}

std::string_view bucket_label(std::size_t index) {
  static constexpr std::array<std::string_view, kBucketCount> labels{
      ">90", "81-90", "71-80", "61-70", "51-60", "41-50", "31-40", "21-30", "11-20", "<=10"};
  return labels.at(index);
}

BucketAnalysis ter_buckets(const std::vector<std::string>& baseline_hyps,
                           const std::vector<std::string>& ape_hyps,
                           const std::vector<std::string>& refs,
                           const metrics::TokenizerConfig& tok, unsigned threads) {
  if (baseline_hyps.size() != refs.size() || ape_hyps.size() != refs.size()) {
    throw DataError("buckets: baseline has " + std::to_string(baseline_hyps.size()) +
                    " lines, APE " + std::to_string(ape_hyps.size()) + ", references " +
                    std::to_string(refs.size()));
  }
  if (refs.empty()) throw DataError("buckets: empty input");
  const std::size_t n = refs.size();
  std::vector<ter::TerScore> base(n), ape(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto ref = metrics::tokenize(refs[i], tok);
    if (ref.empty()) {
      throw DataError("buckets: reference on line " + std::to_string(i + 1) + " is empty");
    }
    base[i] = ter::ter_tokens(metrics::tokenize(baseline_hyps[i], tok), ref).score;
    ape[i] = ter::ter_tokens(metrics::tokenize(ape_hyps[i], tok), ref).score;
  });

  BucketAnalysis out;
  out.total = n;
  out.buckets.resize(kBucketCount);
  for (std::size_t b = 0; b < kBucketCount; ++b) out.buckets[b].label = bucket_label(b);
  out.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = bucket_index(base[i].edits.total(), base[i].ref_len);
    out.assignment[i] = b;
    auto& bucket = out.buckets[b];
    ++bucket.count;
    bucket.baseline_edits += base[i].edits.total();
    bucket.ape_edits += ape[i].edits.total();
    bucket.ref_len += base[i].ref_len;
  }
  for (auto& bucket : out.buckets) {
    if (bucket.count == 0) continue;
    const double len = static_cast<double>(bucket.ref_len);
    bucket.baseline_ter = 100.0 * static_cast<double>(bucket.baseline_edits) / len;
    bucket.ape_ter = 100.0 * static_cast<double>(bucket.ape_edits) / len;
    bucket.delta_ter = *bucket.ape_ter - *bucket.baseline_ter;
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

std::string curve_csv(const CurveReport& report) {
  std::string out = "size,mean,min,max\n";
  for (const auto& p : report.points) {
    out += std::to_string(p.size) + "," + num(p.mean) + "," + num(p.min) + "," + num(p.max) + "\n";
  }
  return out;
}

std::string buckets_csv(const BucketAnalysis& analysis) {
  std::string out = "bucket,count,baseline_ter,ape_ter,delta_ter\n";
  for (const auto& b : analysis.buckets) {
    out += b.label + "," + std::to_string(b.count) + "," + opt_num(b.baseline_ter) + "," +
           opt_num(b.ape_ter) + "," + opt_num(b.delta_ter) + "\n";
  }
  return out;
}

}  // namespace apekit::analysis
