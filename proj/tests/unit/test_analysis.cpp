#include <doctest.h>

#include <map>
#include <set>

#include "apekit/analysis.hpp"
#include "apekit/error.hpp"
#include "apekit/random.hpp"
#include "../support/gen.hpp"

using namespace apekit;
using namespace apekit::analysis;

namespace {

Corpus numbered(std::size_t n, const std::string& prefix = "") {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = prefix + std::to_string(i);
    c.add({id, "src " + id, "mt " + id, "pe " + id, {}});
  }
  return c;
}

// Bucket by the listed ranges using exact rational comparisons.
std::size_t reference_bucket(std::size_t edits, std::size_t ref_len) {
  for (std::size_t b = 0; b < 9; ++b) {
    const std::size_t lower = 90 - 10 * b;  // bucket b is (lower, lower + 10]
    if (100 * edits > lower * ref_len) return b;
  }
  return 9;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("default sample sizes give 18 samples") {
    const auto corpus = numbered(125000);
    SampleSpec spec;
    spec.sizes.assign(kDefaultSampleSizes.begin(), kDefaultSampleSizes.end());
    const auto samples = draw_samples(corpus, spec, 4);
    CHECK(samples.size() == 18);
    for (const auto& s : samples) CHECK(s.corpus.size() == s.size);
  }

  TEST_CASE("full-size sample is a permutation of the corpus") {
    const auto corpus = numbered(500);
    SampleSpec spec{{500}, 1, 9};
    const auto samples = draw_samples(corpus, spec);
    REQUIRE(samples.size() == 1);
    std::set<std::string> ids;
    for (const auto& t : samples[0].corpus) ids.insert(t.id);
    CHECK(ids.size() == 500);
  }

  TEST_CASE("samples are deterministic, distinct and without replacement") {
    const auto corpus = numbered(2000);
    SampleSpec spec{{100, 400, 1000}, 3, 77};
    const auto a = draw_samples(corpus, spec, 1);
    const auto b = draw_samples(corpus, spec, 3);
    REQUIRE(a.size() == 9);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].corpus == b[i].corpus);
      CHECK(a[i].seed == sample_seed(77, a[i].size, a[i].replicate));
      std::set<std::string> ids;
      for (const auto& t : a[i].corpus) ids.insert(t.id);
      CHECK(ids.size() == a[i].size);
    }
    CHECK_FALSE(a[0].corpus == a[1].corpus);
    spec.base_seed = 78;
    CHECK_FALSE(draw_samples(corpus, spec)[0].corpus == a[0].corpus);
  }

  TEST_CASE("sample spec validation") {
    const auto corpus = numbered(10);
    CHECK_THROWS_AS(draw_samples(corpus, {{5, 20}, 1, 0}), DataError);
    CHECK_THROWS_AS(draw_samples(corpus, {{5, 5}, 1, 0}), ConfigError);
    CHECK_THROWS_AS(draw_samples(corpus, {{5, 2}, 1, 0}), ConfigError);
    CHECK_THROWS_AS(draw_samples(corpus, {{5}, 0, 0}), ConfigError);
    CHECK_THROWS_AS(draw_samples(corpus, {{}, 1, 0}), ConfigError);
  }

  TEST_CASE("curve report arithmetic") {
    const auto r = curve_report({{100, 0, 60}, {100, 1, 61}, {100, 2, 62}, {50, 0, 40}}, "BLEU", 30.0);
    REQUIRE(r.points.size() == 2);
    CHECK(r.points[0].size == 50);
    CHECK(r.points[0].mean == 40);
    CHECK(r.points[0].min == 40);
    CHECK(r.points[0].max == 40);
    CHECK(r.points[1].mean == doctest::Approx(61));
    CHECK(r.points[1].min == 60);
    CHECK(r.points[1].max == 62);
    CHECK(r.points[1].runs == 3);
    CHECK(r.baseline == 30.0);
    CHECK(r.markers == std::vector<std::size_t>{13441});
    CHECK_THROWS_AS(curve_report({}, "BLEU"), DataError);
  }

  TEST_CASE("curve points bracket their mean on random results") {
    Rng rng(3);
    for (int round = 0; round < 100; ++round) {
      std::vector<RunResult> runs;
      for (std::size_t s = 1; s <= 5; ++s) {
        for (std::size_t r = 0; r < 3; ++r) runs.push_back({s * 10, r, rng.unit() * 1e6});
      }
      for (const auto& p : curve_report(runs, "x").points) {
        CHECK(p.min <= p.mean);
        CHECK(p.mean <= p.max);
      }
    }
  }

  TEST_CASE("ablation with the mock scorer") {
    const auto corpus = numbered(1250);
    const auto res = run_ablation(corpus, {{62, 125, 250, 500, 1000, 1250}, 3, 1}, MockScorer{},
                                  "BLEU", 25.0, 4);
    CHECK(res.samples.size() == 18);
    CHECK(res.runs.size() == 18);
    CHECK(res.curve.points.size() == 6);
    for (std::size_t i = 1; i < res.curve.points.size(); ++i) {
      CHECK(res.curve.points[i].mean > res.curve.points[i - 1].mean);
    }
  }

  TEST_CASE("upsample mix sizes and counts") {
    const auto a = numbered(1414, "a");
    const auto b = numbered(5600, "b");
    const auto m = upsample_mix(a, 10, b, 42);
    CHECK(m.size() == 19740);
    std::map<std::string, int> origin;
    std::size_t from_b = 0;
    for (const auto& t : m) {
      const auto it = t.meta.find("origin_id");
      if (it != t.meta.end()) ++origin[it->second];
      else ++from_b;
    }
    CHECK(origin.size() == 1414);
    for (const auto& [id, n] : origin) CHECK(n == 10);
    CHECK(from_b == 5600);
    CHECK(upsample_mix(a, 10, b, 42) == m);
    CHECK_THROWS_AS(upsample_mix(a, 0, b, 1), ConfigError);
  }

  TEST_CASE("upsample conserves the text multiset") {
    Rng rng(5);
    Corpus a, b;
    for (int i = 0; i < 30; ++i) a.add({"a" + std::to_string(i), gen::sentence(rng), "m", "p", {}});
    for (int i = 0; i < 20; ++i) b.add({"b" + std::to_string(i), gen::sentence(rng), "m", "p", {}});
    std::multiset<std::string> expected, got;
    for (int k = 0; k < 3; ++k) {
      for (const auto& t : a) expected.insert(t.src);
    }
    for (const auto& t : b) expected.insert(t.src);
    for (const auto& t : upsample_mix(a, 3, b, 1)) got.insert(t.src);
    CHECK(got == expected);
    CHECK(upsample_mix(a, 1, Corpus{}, 2).size() == a.size());
  }

  TEST_CASE("bucket labels and boundaries") {
    CHECK(bucket_label(0) == ">90");
    CHECK(bucket_label(1) == "81-90");
    CHECK(bucket_label(8) == "11-20");
    CHECK(bucket_label(9) == "<=10");
    CHECK(bucket_index(1, 10) == 9);   // exactly 10.0
    CHECK(bucket_index(0, 10) == 9);
    CHECK(bucket_index(2, 10) == 8);   // exactly 20.0
    CHECK(bucket_index(9, 10) == 1);   // exactly 90.0
    CHECK(bucket_index(10, 10) == 0);
    CHECK(bucket_index(30, 10) == 0);  // above 100
    for (std::size_t L = 1; L <= 40; ++L) {
      for (std::size_t e = 0; e <= 2 * L; ++e) CHECK(bucket_index(e, L) == reference_bucket(e, L));
    }
  }

  TEST_CASE("sentence at exactly ten percent lands in the lowest bucket") {
    const std::vector<std::string> refs{"a b c d e f g h i j"};
    const std::vector<std::string> base{"a b c d e f g h i x"};
    const auto r = ter_buckets(base, base, refs);
    CHECK(r.assignment == std::vector<std::size_t>{9});
    CHECK(r.buckets[9].count == 1);
    CHECK(r.buckets[9].baseline_ter.value() == doctest::Approx(10.0));
  }

  TEST_CASE("identical APE output gives zero deltas") {
    Rng rng(13);
    std::vector<std::string> refs, hyps;
    for (int i = 0; i < 300; ++i) {
      refs.push_back(gen::sentence(rng, 2, 10));
      hyps.push_back(gen::sentence(rng, 1, 10));
    }
    const auto r = ter_buckets(hyps, hyps, refs, metrics::kTerNormalized, 4);
    CHECK(r.buckets.size() == kBucketCount);
    std::size_t total = 0;
    for (const auto& b : r.buckets) {
      total += b.count;
      if (b.count) CHECK(*b.delta_ter == 0.0);
      else CHECK_FALSE(b.delta_ter.has_value());
    }
    CHECK(total == refs.size());
    CHECK(r.total == refs.size());
  }

  TEST_CASE("fixing an error gives a negative delta") {
    const std::vector<std::string> refs{"the cat sat on the mat", "a b"};
    const std::vector<std::string> base{"the dog sat on the mat", "a b"};
    const std::vector<std::string> ape{"the cat sat on the mat", "a b"};
    const auto r = ter_buckets(base, ape, refs);
    const auto b = r.buckets[r.assignment[0]];
    CHECK(*b.delta_ter < 0);
    CHECK(*b.baseline_ter == doctest::Approx(100.0 / 6.0));
    CHECK_THROWS_AS(ter_buckets(base, ape, {"x"}), DataError);
  }

  TEST_CASE("csv exports") {
    const auto curve = curve_report({{10, 0, 1.5}}, "BLEU");
    const auto csv = curve_csv(curve);
    CHECK(csv.find("size") == 0);
    CHECK(csv.find("10,1.5,1.5,1.5") != std::string::npos);
    const auto b = ter_buckets({"a"}, {"a"}, {"a"});
    const auto bcsv = buckets_csv(b);
    std::size_t lines = 0;
    for (char ch : bcsv) lines += ch == '\n';
    CHECK(lines == 11);
  }
}
