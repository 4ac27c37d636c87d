#include "apekit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "apekit/error.hpp"
#include "apekit/parallel.hpp"
#include "apekit/random.hpp"
#include "apekit/ter.hpp"
#include "apekit/text.hpp"

namespace apekit::stats {

BootstrapMetric parse_bootstrap_metric(std::string_view name) {
  if (name == "bleu") return BootstrapMetric::bleu;
  if (name == "ter") return BootstrapMetric::ter;
  throw ConfigError("unknown bootstrap metric '" + std::string(name) + "' (expected bleu or ter)");
}

std::string_view bootstrap_metric_name(BootstrapMetric m) {
  return m == BootstrapMetric::bleu ? "bleu" : "ter";
}

namespace {

enum class Outcome : std::uint8_t { a, b, tie };

struct TerCounts {
  std::size_t edits = 0;
  std::size_t ref_len = 0;
};

}  // namespace

BootstrapResult bootstrap_significance(const std::vector<std::string>& hyps_a,
                                       const std::vector<std::string>& hyps_b,
                                       const std::vector<std::string>& refs,
                                       const BootstrapOptions& options) {
  if (hyps_a.size() != refs.size() || hyps_b.size() != refs.size()) {
    throw DataError("bootstrap: system A has " + std::to_string(hyps_a.size()) +
                    " lines, system B " + std::to_string(hyps_b.size()) + ", references " +
                    std::to_string(refs.size()));
  }
  if (refs.empty()) throw DataError("bootstrap: empty test set");
  if (options.n_samples == 0) throw ConfigError("bootstrap: n_samples must be >= 1");

  const std::size_t n = refs.size();
  BootstrapResult result;
  result.n_samples = options.n_samples;
  result.seed = options.seed;
  result.metric = options.metric;
  std::vector<Outcome> outcomes(options.n_samples);

  auto draw = [&](std::size_t sample) {
    Rng rng(derive_seed(options.seed, sample));
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = static_cast<std::size_t>(rng.below(n));
    return idx;
  };

  if (options.metric == BootstrapMetric::bleu) {
    std::vector<metrics::BleuStats> sa(n), sb(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
      const auto ref = metrics::tokenize(refs[i], options.tok);
      sa[i] = metrics::bleu_sentence_stats(metrics::tokenize(hyps_a[i], options.tok), ref);
      sb[i] = metrics::bleu_sentence_stats(metrics::tokenize(hyps_b[i], options.tok), ref);
    });
    metrics::BleuStats ta, tb;
    for (std::size_t i = 0; i < n; ++i) {
      ta += sa[i];
      tb += sb[i];
    }
    result.score_a = metrics::bleu_from_stats(ta).score;
    result.score_b = metrics::bleu_from_stats(tb).score;
    parallel_for(options.n_samples, options.threads, [&](std::size_t s) {
      metrics::BleuStats a, b;
      for (std::size_t i : draw(s)) {
        a += sa[i];
        b += sb[i];
      }
      const double x = metrics::bleu_from_stats(a).score;
      const double y = metrics::bleu_from_stats(b).score;
      outcomes[s] = x > y ? Outcome::a : (y > x ? Outcome::b : Outcome::tie);
    });
  } else {
    std::vector<TerCounts> sa(n), sb(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
      const auto ref = metrics::tokenize(refs[i], options.tok);
      const auto a = ter::ter_tokens(metrics::tokenize(hyps_a[i], options.tok), ref).score;
      const auto b = ter::ter_tokens(metrics::tokenize(hyps_b[i], options.tok), ref).score;
      sa[i] = {a.edits.total(), a.ref_len};
      sb[i] = {b.edits.total(), b.ref_len};
    });
    TerCounts ta, tb;
    for (std::size_t i = 0; i < n; ++i) {
      ta.edits += sa[i].edits;
      tb.edits += sb[i].edits;
      ta.ref_len += sa[i].ref_len;
    }
    if (ta.ref_len == 0) throw DataError("bootstrap: all references are empty");
    result.score_a = static_cast<double>(ta.edits) / static_cast<double>(ta.ref_len);
    result.score_b = static_cast<double>(tb.edits) / static_cast<double>(ta.ref_len);
    // Both systems share the sampled references, so edit totals compare directly.
    parallel_for(options.n_samples, options.threads, [&](std::size_t s) {
      std::size_t a = 0, b = 0;
      for (std::size_t i : draw(s)) {
        a += sa[i].edits;
        b += sb[i].edits;
      }
      outcomes[s] = a < b ? Outcome::a : (b < a ? Outcome::b : Outcome::tie);
    });
  }

  for (Outcome o : outcomes) {
    if (o == Outcome::a) ++result.wins_a;
    else if (o == Outcome::b) ++result.wins_b;
    else ++result.ties;
  }
  const std::size_t winner = std::max(result.wins_a, result.wins_b);
  result.p_value = 1.0 - static_cast<double>(winner) / static_cast<double>(result.n_samples);
  return result;
}

std::string_view weighting_name(Weighting w) {
  return w == Weighting::none ? "none" : "quadratic";
}

Weighting parse_weighting(std::string_view name) {
  if (name == "none") return Weighting::none;
  if (name == "quadratic") return Weighting::quadratic;
  throw ConfigError("unknown weighting '" + std::string(name) + "'");
}

namespace {

void check_pair(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw DataError("kappa: rating lists differ in length (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw DataError("kappa: no ratings");
}

}  // namespace

KappaResult cohen_kappa(const std::vector<int>& a, const std::vector<int>& b) {
  check_pair(a, b);
  const double n = static_cast<double>(a.size());
  std::map<int, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    agree += a[i] == b[i];
  }
  KappaResult r;
  r.weighting = Weighting::none;
  r.observed_agreement = static_cast<double>(agree) / n;
  for (const auto& [category, counts] : marginals) {
    r.expected_agreement += (static_cast<double>(counts.first) / n) *
                            (static_cast<double>(counts.second) / n);
  }
  if (r.expected_agreement >= 1.0) {
    throw UndefinedStatistic("kappa is undefined: expected agreement is 1");
  }
  r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
  return r;
}

KappaResult weighted_kappa(const std::vector<int>& a, const std::vector<int>& b, int scale_min,
                           int scale_max) {
  check_pair(a, b);
  if (scale_max <= scale_min) throw ConfigError("weighted kappa: scale max must exceed min");
  const auto k = static_cast<std::size_t>(scale_max - scale_min + 1);
  std::vector<double> pa(k, 0.0), pb(k, 0.0);
  const double n = static_cast<double>(a.size());
  const double span2 = static_cast<double>(scale_max - scale_min) * (scale_max - scale_min);
  auto weight = [&](int i, int j) { return static_cast<double>(i - j) * (i - j) / span2; };
  double observed = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int v : {a[i], b[i]}) {
      if (v < scale_min || v > scale_max) {
        throw DataError("weighted kappa: rating " + std::to_string(v) + " outside " +
                        std::to_string(scale_min) + ".." + std::to_string(scale_max));
      }
    }
    pa[a[i] - scale_min] += 1.0 / n;
    pb[b[i] - scale_min] += 1.0 / n;
    observed += weight(a[i], b[i]);
  }
  observed /= n;
  double expected = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      expected += pa[i] * pb[j] * weight(static_cast<int>(i), static_cast<int>(j));
    }
  }
  if (expected <= 0.0) {
    throw UndefinedStatistic("weighted kappa is undefined: expected disagreement is 0");
  }
  KappaResult r;
  r.weighting = Weighting::quadratic;
  r.observed_agreement = 1.0 - observed;
  r.expected_agreement = 1.0 - expected;
  r.kappa = 1.0 - observed / expected;
  return r;
}

PairwiseKappa pairwise_average_kappa(const std::vector<std::vector<int>>& ratings,
                                     Weighting weighting, int scale_min, int scale_max) {
  if (ratings.size() < 2) throw DataError("pairwise kappa needs at least 2 annotators");
  const std::size_t m = ratings.size();
  PairwiseKappa out;
  out.matrix.assign(m, std::vector<std::optional<double>>(m));
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t i = 0; i < m; ++i) {
    out.matrix[i][i] = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      ++out.pairs;
      try {
        const double k = weighting == Weighting::none
                             ? cohen_kappa(ratings[i], ratings[j]).kappa
                             : weighted_kappa(ratings[i], ratings[j], scale_min, scale_max).kappa;
        out.matrix[i][j] = out.matrix[j][i] = k;
        sum += k;
        ++defined;
      } catch (const UndefinedStatistic&) {
        ++out.skipped;
      }
    }
  }
  out.mean = defined == 0 ? std::numeric_limits<double>::quiet_NaN()
                          : sum / static_cast<double>(defined);
  return out;
}

std::string_view system_name(System s) {
  switch (s) {
    case System::nmt: return "nmt";
    case System::ape: return "ape";
    case System::human: return "human";
  }
  return "?";
}

namespace {

std::size_t system_index(System s) { return static_cast<std::size_t>(s); }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(text::trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

AdequacyTable AdequacyTable::parse(std::string_view csv) {
  AdequacyTable table;
  std::vector<std::string> problems;
  std::set<std::tuple<std::string, std::string, System>> seen;
  std::size_t line_no = 0;
  bool first = true;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    auto line = csv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (first) {
      first = false;
      if (text::lowercase(fields[0]).rfind("annotator", 0) == 0) continue;
    }
    auto bad = [&](const std::string& why) {
      problems.push_back("line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 4) {
      bad("expected 4 fields (annotator_id,item_id,system,score), got " +
          std::to_string(fields.size()));
      continue;
    }
    AdequacyRecord r;
    r.annotator = fields[0];
    r.item = fields[1];
    r.line = line_no;
    if (r.annotator.empty() || r.item.empty()) {
      bad("empty annotator_id or item_id");
      continue;
    }
    const auto sys = text::lowercase(fields[2]);
    if (sys == "nmt") r.system = System::nmt;
    else if (sys == "ape") r.system = System::ape;
    else if (sys == "human") r.system = System::human;
    else {
      bad("system '" + fields[2] + "' is not nmt, ape or human");
      continue;
    }
    const auto& score = fields[3];
    if (score == "X" || score == "x") {
      r.score = kCantDecide;
    } else if (score.size() == 1 && score[0] >= '1' && score[0] <= '5') {
      r.score = score[0] - '0';
    } else {
      bad("score '" + score + "' is not 1..5 or X");
      continue;
    }
    if (!seen.emplace(r.annotator, r.item, r.system).second) {
      bad("duplicate rating for annotator " + r.annotator + ", item " + r.item + ", system " +
          std::string(system_name(r.system)));
      continue;
    }
    table.records_.push_back(std::move(r));
  }
  if (!problems.empty()) {
    std::string msg = "malformed adequacy CSV:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw DataError(msg);
  }
  return table;
}

AdequacyTable AdequacyTable::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void AdequacyTable::add(AdequacyRecord r) {
  if (r.score != kCantDecide && (r.score < 1 || r.score > 5)) {
    throw DataError("adequacy score " + std::to_string(r.score) + " is not 1..5 or cant_decide");
  }
  for (const auto& e : records_) {
    if (e.annotator == r.annotator && e.item == r.item && e.system == r.system) {
      throw DataError("duplicate rating for annotator " + r.annotator + ", item " + r.item);
    }
  }
  records_.push_back(std::move(r));
}

std::vector<std::string> AdequacyTable::annotators() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : records_) {
    if (seen.insert(r.annotator).second) out.push_back(r.annotator);
  }
  return out;
}

namespace {

using ItemScores = std::array<std::optional<int>, 3>;

/// annotator -> (items in first-seen order, item -> scores)
struct Grouped {
  std::vector<std::string> items;
  std::map<std::string, ItemScores> scores;
};

std::map<std::string, Grouped> group(const AdequacyTable& table) {
  std::map<std::string, Grouped> g;
  for (const auto& r : table.records()) {
    auto& a = g[r.annotator];
    auto [it, inserted] = a.scores.try_emplace(r.item);
    if (inserted) a.items.push_back(r.item);
    it->second[system_index(r.system)] = r.score;
  }
  return g;
}

bool usable(const ItemScores& s) {
  return std::all_of(s.begin(), s.end(),
                     [](const std::optional<int>& v) { return v && *v != kCantDecide; });
}

}  // namespace

AdequacySummary adequacy_summary(const AdequacyTable& table) {
  const auto grouped = group(table);
  AdequacySummary out;
  out.overall.annotator = "overall";
  std::array<double, 3> pooled{};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& name : table.annotators()) {
    const auto& g = grouped.at(name);
    AnnotatorSummary s;
    s.annotator = name;
    s.assigned = g.items.size();
    std::array<double, 3> sums{};
    for (const auto& item : g.items) {
      const auto& scores = g.scores.at(item);
      if (!usable(scores)) continue;
      ++s.used;
      for (std::size_t k = 0; k < 3; ++k) sums[k] += *scores[k];
    }
    for (std::size_t k = 0; k < 3; ++k) {
      s.means.mean[k] = s.used == 0 ? nan : sums[k] / static_cast<double>(s.used);
      pooled[k] += sums[k];
    }
    out.overall.used += s.used;
    out.overall.assigned += s.assigned;
    out.annotators.push_back(std::move(s));
  }
  for (std::size_t k = 0; k < 3; ++k) {
    out.overall.means.mean[k] =
        out.overall.used == 0 ? nan : pooled[k] / static_cast<double>(out.overall.used);
  }
  return out;
}

AgreementMatrix agreement_matrix(const AdequacyTable& table) {
  const auto grouped = group(table);
  AgreementMatrix m;
  m.annotators = table.annotators();
  if (m.annotators.empty()) return m;
  m.ratings.resize(m.annotators.size());
  for (const auto& item : grouped.at(m.annotators.front()).items) {
    bool everyone = true;
    for (const auto& name : m.annotators) {
      const auto& g = grouped.at(name);
      const auto it = g.scores.find(item);
      everyone = everyone && it != g.scores.end() && usable(it->second);
    }
    if (!everyone) continue;
    for (System sys : kSystems) {
      m.units.push_back(item + "/" + std::string(system_name(sys)));
      for (std::size_t a = 0; a < m.annotators.size(); ++a) {
        m.ratings[a].push_back(*grouped.at(m.annotators[a]).scores.at(item)[system_index(sys)]);
      }
    }
  }
  return m;
}

}  // namespace apekit::stats
