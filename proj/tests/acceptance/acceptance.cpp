// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Tolerances and time limits are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apekit/analysis.hpp"
#include "apekit/cli.hpp"
#include "apekit/filter.hpp"
#include "apekit/json_io.hpp"
#include "apekit/metrics.hpp"
#include "apekit/random.hpp"
#include "apekit/stats.hpp"
#include "apekit/ter.hpp"
#include "apekit/transform.hpp"
#include "support/gen.hpp"

using namespace apekit;
namespace fs = std::filesystem;

namespace {

constexpr double kAc1Seconds = 60.0;
constexpr double kAc3Seconds = 10.0;
constexpr double kAc4Seconds = 5.0;
constexpr double kBleuTol = 1e-6;
constexpr double kPrecisionTol = 1e-9;
constexpr double kChrfTol = 1e-3;
constexpr double kKappaTol = 1e-6;

using Tokens = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Tokens words_of(const std::string& s) {
  Tokens t;
  std::istringstream in(s);
  for (std::string w; in >> w;) t.push_back(w);
  return t;
}

std::size_t levenshtein(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<Tokens> all_sequences(std::size_t vocab, std::size_t max_len) {
  std::vector<Tokens> out{{}};
  std::vector<Tokens> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Tokens> next;
    for (const auto& s : frontier) {
      for (std::size_t v = 0; v < vocab; ++v) {
        auto t = s;
        t.push_back(std::string(1, static_cast<char>('a' + v)));
        next.push_back(t);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------- AC1

struct HandCase {
  const char* hyp;
  const char* ref;
  std::size_t edits;
};

// Each total was worked out by hand as shifts plus remaining word edits.
const std::vector<HandCase> kHandCases{
    {"b a c", "a b c", 1},
    {"a x c", "a b c", 1},
    {"a b c", "a b c", 0},
    {"", "a b c", 3},
    {"a b c d", "a b c", 1},
    {"a b", "a b c", 1},
    {"c a b", "a b c", 1},
    {"d e f a b c", "a b c d e f", 1},
    {"x y z", "a b c", 3},
    {"the cat sat on the mat", "on the mat the cat sat", 1},
    {"a b c x", "x a b c", 1},
    {"b a", "a b", 1},
    {"a a a", "a a", 1},
    {"a b c", "a c", 1},
    {"a c", "a b c", 1},
    {"b c a d", "a b c d", 1},
    {"a b x c", "a b c y", 2},
    {"a b c d e f", "a b c d e f g h", 2},
    {"x b a c", "a b c", 2},
    {"b a d c", "a b c d", 2},
};

Outcome ac1() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0, violations = 0;
  auto check_pair = [&](const Tokens& h, const Tokens& r) {
    const auto res = ter::ter_tokens(h, r);
    const auto greedy = res.score.edits.total();
    const auto oracle = ter::ter_oracle_tokens(h, r);
    const auto lev = levenshtein(h, r);
    ++checked;
    if (!(oracle <= greedy && greedy <= lev) || ter::apply_edit_script(h, res.script) != r) {
      ++violations;
    }
  };

  const auto seqs = all_sequences(3, 5);
  for (const auto& r : seqs) {
    if (r.empty()) continue;
    for (const auto& h : seqs) check_pair(h, r);
  }
  const std::size_t exhaustive = checked;

  Rng rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const auto vocab = 2 + rng.below(4);
    const auto h = gen::tokens(rng, 8, vocab);
    auto r = gen::tokens(rng, 8, vocab);
    if (r.empty()) r.push_back("a");
    check_pair(h, r);
  }
  o.require(violations == 0, std::to_string(violations) + " bound violations");

  std::size_t hand_ok = 0;
  for (const auto& c : kHandCases) {
    const auto h = words_of(c.hyp), r = words_of(c.ref);
    const auto res = ter::ter_tokens(h, r);
    const bool ok = res.score.edits.total() == c.edits && ter::ter_oracle_tokens(h, r) == c.edits;
    hand_ok += ok;
    o.require(ok, std::string("hand case '") + c.hyp + "' -> '" + c.ref + "'");
  }
  const auto swap = ter::ter_sentence("b a c", "a b c");
  o.require(swap.score.score == 1.0 / 3.0 && swap.score.edits.shifts == 1, "b a c shift case");

  const double secs = seconds_since(t0);
  o.require(secs < kAc1Seconds, "runtime over limit");
  if (o.pass) {
    o.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(checked - exhaustive) +
               " random pairs, 0 violations; " + std::to_string(hand_ok) + "/" +
               std::to_string(kHandCases.size()) + " hand cases; " + std::to_string(secs) + " s";
  }
  return o;
}

// ---------------------------------------------------------------- AC2

Outcome ac2() {
  Outcome o;
  const std::vector<std::string> same{"the cat sat on the mat .", "a dog ran home"};
  const auto id = metrics::bleu_corpus(same, same);
  o.require(std::abs(id.score - 100.0) <= kBleuTol, "BLEU identity");

  const auto clip = metrics::bleu_corpus({"the the the the the the the"}, {"the cat is on the mat"});
  o.require(std::abs(clip.precisions[0] - 2.0 / 7.0) <= kPrecisionTol, "clipped unigram precision");

  const double chrf = metrics::chrf({"ab"}, {"abc"}, 1, 2.0);
  o.require(std::abs(chrf - 71.4286) <= kChrfTol, "ChrF hand fixture");

  const auto ter = ter::ter_corpus({"a x", "a b c d e f g h"}, {"a b", "a b c d e f g h"});
  o.require(ter.score == 0.1, "corpus TER fixture");

  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "BLEU %.6f, p1 %.9f, ChrF %.4f, TER %.1f", id.score,
                  clip.precisions[0], chrf, ter.score);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------- AC3

class AcceptAll final : public LanguageClassifier {
 public:
  std::string classify(std::string_view) const override { return "ok"; }
};

std::string filler(Rng& rng, const std::string& prefix, std::size_t len) {
  std::string s = prefix;
  while (s.size() < len) s += static_cast<char>('a' + rng.below(26));
  return s.substr(0, len);
}

Outcome ac3() {
  Outcome o;
  constexpr std::size_t kNormal = 9300, kOutliers = 500, kDuplicates = 200;
  Rng rng(3);
  Corpus corpus;
  std::set<std::string> outliers;
  // Per duplicate group: the id that must survive.
  std::map<std::string, std::string> expected_survivor;
  std::vector<Triplet> normal;
  for (std::size_t i = 0; i < kNormal; ++i) {
    const auto len = 20 + static_cast<std::size_t>(rng.below(40));
    const auto tag = std::to_string(i) + " ";
    normal.push_back({"n" + std::to_string(i), filler(rng, "s" + tag, len),
                      filler(rng, "m" + tag, len), filler(rng, "p" + tag, len), {}});
  }
  std::vector<Triplet> planted;
  for (std::size_t i = 0; i < kOutliers; ++i) {
    const auto len = 20 + static_cast<std::size_t>(rng.below(40));
    const auto tag = std::to_string(i) + " ";
    planted.push_back({"o" + std::to_string(i), filler(rng, "S" + tag, len),
                       filler(rng, "M" + tag, len), filler(rng, "P" + tag, 3 * len), {}});
    outliers.insert(planted.back().id);
  }
  for (std::size_t i = 0; i < kDuplicates; ++i) {
    const auto& base = normal[i * 7];
    const auto len = base.pe.size();
    const bool longer = i % 2 == 0;
    Triplet d{"d" + std::to_string(i), base.src, base.mt,
              filler(rng, "q" + std::to_string(i) + " ", longer ? len + 1 : len - 1), {}};
    expected_survivor[base.src] = longer ? d.id : base.id;
    planted.push_back(d);
  }
  std::vector<Triplet> all = normal;
  all.insert(all.end(), planted.begin(), planted.end());
  rng.shuffle(all);
  for (auto& t : all) corpus.add(std::move(t));

  filter::FilterConfig cfg;
  cfg.dev_size = 1000;
  cfg.test_size = 1000;
  cfg.seed = 11;
  cfg.expected_src_lang = cfg.expected_tgt_lang = "ok";
  const AcceptAll clf;

  const auto t0 = Clock::now();
  const auto a = filter::run_filter_pipeline(corpus, cfg, clf, 4);
  const auto b = filter::run_filter_pipeline(corpus, cfg, clf, 1);
  const double secs = seconds_since(t0);

  const auto& rep = a.report;
  o.require(rep.input_count == 10000, "input count");
  o.require(rep.reconciles(), "report does not reconcile");
  o.require(rep.removed_by_ratio == kOutliers, "ratio removals " + std::to_string(rep.removed_by_ratio));
  o.require(rep.removed_by_dedup == kDuplicates, "dedup removals " + std::to_string(rep.removed_by_dedup));
  std::size_t outliers_removed = 0;
  for (const auto& r : a.removed) outliers_removed += outliers.count(r.triplet.id) && r.reason == "ratio";
  o.require(outliers_removed == kOutliers, "not every planted outlier was removed");

  std::size_t survivors_ok = 0;
  for (const auto* part : {&a.splits.train, &a.splits.dev, &a.splits.test}) {
    for (const auto& t : *part) {
      const auto it = expected_survivor.find(t.src);
      if (it != expected_survivor.end()) survivors_ok += it->second == t.id;
    }
  }
  o.require(survivors_ok == kDuplicates, "dedup kept the wrong representative");
  o.require(a.splits.dev.size() == 1000 && a.splits.test.size() == 1000 &&
                a.splits.train.size() == 10000 - kOutliers - kDuplicates - 2000,
            "split sizes");
  o.require(a.splits.train == b.splits.train && a.splits.dev == b.splits.dev &&
                a.splits.test == b.splits.test && to_json(a.report) == to_json(b.report),
            "runs differ");
  o.require(secs < kAc3Seconds, "runtime over limit");
  if (o.pass) {
    o.detail = "10000 in, 500 ratio + 200 dedup removed, train/dev/test " +
               std::to_string(a.splits.train.size()) + "/1000/1000, two runs identical; " +
               std::to_string(secs) + " s";
  }
  return o;
}

// ---------------------------------------------------------------- AC4

Outcome ac4() {
  Outcome o;
  constexpr std::size_t kTotal = 161413;
  Corpus corpus;
  for (std::size_t i = 0; i < kTotal; ++i) {
    const auto s = "segment " + std::to_string(i);
    corpus.add({std::to_string(i), s, s, s, {}});
  }
  filter::FilterConfig cfg;
  cfg.enable_langid = false;
  const auto t0 = Clock::now();
  const auto r = filter::run_filter_pipeline(corpus, cfg, AcceptAll{}, 4);
  const double secs = seconds_since(t0);
  o.require(r.splits.train.size() == 141413, "train " + std::to_string(r.splits.train.size()));
  o.require(r.splits.dev.size() == 10000 && r.splits.test.size() == 10000, "dev/test sizes");
  o.require(secs < kAc4Seconds, "runtime over limit");
  if (o.pass) o.detail = "161413 -> train 141413, dev 10000, test 10000; " + std::to_string(secs) + " s";
  return o;
}

// ---------------------------------------------------------------- AC5

Outcome ac5() {
  Outcome o;
  Rng rng(55);
  std::size_t identical = 0, with_br = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto t = gen::subtitle_triplet(rng, i, false);
    with_br += transform::count_br(t.mt) > 0;
    const auto pre = transform::preprocess(t);
    std::vector<std::string> mt;
    for (const auto& p : pre.parts) mt.push_back(p.mt);
    identical += transform::postprocess(mt, pre.log, Field::mt) == t.mt;
  }
  o.require(identical == 1000, std::to_string(identical) + "/1000 identical");
  o.require(with_br > 0, "generator produced no <br>");
  if (o.pass) {
    o.detail = "1000/1000 mt restored byte-identically (" + std::to_string(with_br) + " with <br>)";
  }
  return o;
}

// ---------------------------------------------------------------- AC6

Outcome ac6() {
  Outcome o;
  const auto k1 = stats::cohen_kappa({1, 1, 2, 2}, {2, 2, 1, 1});
  const auto k2 = stats::cohen_kappa({1, 2, 1, 2}, {1, 2, 2, 2});
  const auto k3 = stats::cohen_kappa({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
  o.require(std::abs(k1.kappa + 1.0) <= kKappaTol, "kappa -1 fixture");
  o.require(std::abs(k2.kappa - 0.5) <= kKappaTol, "kappa 0.5 fixture");
  o.require(std::abs(k3.kappa - 1.0) <= kKappaTol, "kappa 1 fixture");
  // Scale 1..3, a = [1,3], b = [3,1]: weights (i-j)^2/4, observed disagreement 1,
  // expected disagreement 0.25 + 0.25 = 0.5, so 1 - 1/0.5 = -1.
  const auto kw = stats::weighted_kappa({1, 3}, {3, 1}, 1, 3);
  o.require(std::abs(kw.kappa + 1.0) <= kKappaTol, "weighted kappa hand table");

  Rng rng(66);
  std::vector<std::string> refs, hyps, other;
  for (int i = 0; i < 50; ++i) {
    refs.push_back(gen::sentence(rng, 3, 12));
    hyps.push_back(rng.below(2) ? refs.back() : gen::sentence(rng, 3, 12));
    other.push_back(rng.below(2) ? refs.back() : gen::sentence(rng, 3, 12));
  }
  std::size_t declared = 0, p_not_one = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    stats::BootstrapOptions opt;
    opt.seed = seed;
    const auto r = stats::bootstrap_significance(hyps, hyps, refs, opt);
    p_not_one += r.p_value != 1.0;
    declared += r.significant(0.999999);
  }
  o.require(p_not_one == 0, "identical systems gave p != 1");
  o.require(declared == 0, "identical systems declared significant");

  stats::BootstrapOptions opt;
  opt.seed = 1234;
  const auto x = stats::bootstrap_significance(hyps, other, refs, opt);
  opt.threads = 4;
  const auto y = stats::bootstrap_significance(hyps, other, refs, opt);
  o.require(to_json(x).dump() == to_json(y).dump(), "bootstrap not bit-deterministic");
  if (o.pass) {
    o.detail = "kappa -1/0.5/1, weighted -1; 100 seeds p = 1; same seed -> identical (p = " +
               std::to_string(x.p_value) + ")";
  }
  return o;
}

// ---------------------------------------------------------------- AC7

struct CliRun {
  int code;
  Json json;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  Json j;
  if (code == kExitOk) j = Json::parse(out.str());
  return {code, j};
}

Outcome ac7() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "apekit_acceptance";
  fs::create_directories(dir);
  Corpus corpus;
  for (std::size_t i = 0; i < 1250; ++i) {
    corpus.add({auto_id(i + 1), "source " + std::to_string(i), "mt " + std::to_string(i),
                "pe " + std::to_string(i), {}});
  }
  const auto in = (dir / "corpus.jsonl").string();
  write_corpus(corpus, in, CorpusFormat::jsonl);

  const auto abl = cli({"--seed", "7", "ablate", "--in", in, "--sizes", "62,125,250,500,1000,1250",
                        "--replicates", "3", "--mock"});
  o.require(abl.code == kExitOk, "ablate exit " + std::to_string(abl.code));
  if (!o.pass) return o;
  o.require(abl.json["samples"].size() == 18, "sample count");
  const auto& points = abl.json["curve"]["points"];
  o.require(points.size() == 6, "curve point count");
  for (const auto& p : points) {
    o.require(p["min"].get<double>() <= p["mean"].get<double>() &&
                  p["mean"].get<double>() <= p["max"].get<double>(),
              "min <= mean <= max");
  }

  Rng rng(77);
  std::string refs, hyps;
  const std::size_t n = 400;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = gen::sentence(rng, 2, 12);
    refs += r + "\n";
    hyps += (rng.below(3) == 0 ? r : gen::sentence(rng, 1, 12)) + "\n";
  }
  const auto ref_path = dir / "ref.txt", hyp_path = dir / "hyp.txt";
  std::ofstream(ref_path, std::ios::binary) << refs;
  std::ofstream(hyp_path, std::ios::binary) << hyps;
  const auto bk = cli({"buckets", "--baseline", hyp_path.string(), "--ape", hyp_path.string(),
                       "--ref", ref_path.string()});
  o.require(bk.code == kExitOk, "buckets exit " + std::to_string(bk.code));
  if (!o.pass) return o;
  const auto& buckets = bk.json["buckets"]["buckets"];
  o.require(buckets.size() == 10, "bucket count");
  std::size_t total = 0, nonempty = 0;
  for (const auto& b : buckets) {
    const auto c = b["count"].get<std::size_t>();
    total += c;
    if (c) {
      ++nonempty;
      o.require(b["delta_ter"].get<double>() == 0.0, "non-zero delta");
    }
  }
  o.require(total == n, "bucket counts do not partition the input");
  if (o.pass) {
    o.detail = "ablate: 18 samples, 6 points; buckets: 10 ranges over " + std::to_string(n) +
               " items (" + std::to_string(nonempty) + " non-empty), all deltas 0";
  }
  return o;
}

// ---------------------------------------------------------------- AC8

Outcome ac8() {
  Outcome o;
  Corpus a, b;
  for (std::size_t i = 0; i < 1414; ++i) a.add({"a" + std::to_string(i), "s", "m", "p", {}});
  for (std::size_t i = 0; i < 5600; ++i) b.add({"b" + std::to_string(i), "s", "m", "p", {}});
  const auto mix = analysis::upsample_mix(a, 10, b, 8);
  o.require(mix.size() == 19740, "size " + std::to_string(mix.size()));
  std::map<std::string, std::size_t> counts;
  for (const auto& t : mix) {
    const auto it = t.meta.find("origin_id");
    if (it != t.meta.end()) ++counts[it->second];
  }
  std::size_t exact = 0;
  for (const auto& t : a) exact += counts[t.id] == 10;
  o.require(exact == 1414, std::to_string(exact) + "/1414 ids appear exactly 10 times");
  if (o.pass) o.detail = "19740 triplets, all 1414 ids x10";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 TER oracle bounds", ac1},     {"AC2 metric fixtures", ac2},
      {"AC3 filter pipeline", ac3},       {"AC4 split arithmetic", ac4},
      {"AC5 preprocess round trip", ac5}, {"AC6 statistics", ac6},
      {"AC7 protocol shape", ac7},        {"AC8 upsample mixing", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %-28s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
