#include "apekit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "apekit/analysis.hpp"
#include "apekit/digest.hpp"
#include "apekit/error.hpp"
#include "apekit/evaluate.hpp"
#include "apekit/filter.hpp"
#include "apekit/json_io.hpp"
#include "apekit/langid.hpp"
#include "apekit/stats.hpp"
#include "apekit/text.hpp"
#include "apekit/transform.hpp"

namespace apekit {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  unsigned threads = 1;
  std::string format = "jsonl";
  std::string config;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

/// One entry per line; a final newline does not start another entry.
std::vector<std::string> read_lines(const fs::path& path) {
  const std::string content = read_file(path);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string::npos) nl = content.size();
    std::string line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (l.find('\n') != std::string::npos) {
      throw DataError("text contains a line break and cannot be written one per line");
    }
    out += l;
    out += '\n';
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  explicit Manifest(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  void input(const std::string& role, const fs::path& path) {
    inputs_.push_back({{"role", role}, {"path", path.string()}, {"sha256", sha256_file(path)}});
  }
  void seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }
  void config(const Json& effective) { config_ = effective; }

  Json json() const {
    Json j;
    j["toolkit"] = "apekit";
    j["version"] = kVersion;
    j["subcommand"] = subcommand_;
    j["config_digest"] = sha256_hex(config_.dump());
    j["inputs"] = inputs_;
    j["seeds"] = seeds_.empty() ? Json::object() : seeds_;
    j["timestamp"] = utc_timestamp();
    return j;
  }

 private:
  std::string subcommand_;
  Json inputs_ = Json::array();
  Json seeds_ = Json::object();
  Json config_ = Json::object();
};

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

Json load_config(const Globals& g) {
  if (g.config.empty()) return Json::object();
  std::string text;
  try {
    text = read_file(g.config);
  } catch (const DataError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config_json(text);
}

CorpusFormat corpus_format(const Globals& g) { return parse_format(g.format); }

std::string corpus_ext(const Globals& g) {
  return corpus_format(g) == CorpusFormat::jsonl ? ".jsonl" : ".tsv";
}

// --- filter -----------------------------------------------------------------

struct FilterArgs {
  std::string in, out_dir, langid = "builtin", labels;
};

int cmd_filter(const Globals& g, const FilterArgs& a, std::ostream& out) {
  auto config = filter_config_from_json(load_config(g));
  if (g.seed_given) config.seed = g.seed;

  std::unique_ptr<LanguageClassifier> owned;
  const LanguageClassifier* classifier = &CharNgramClassifier::builtin();
  if (a.langid == "none") {
    config.enable_langid = false;
  } else if (a.langid == "labels") {
    if (a.labels.empty()) throw ConfigError("--langid labels requires --langid-labels");
    owned = std::make_unique<LabelFileClassifier>(LabelFileClassifier::from_file(a.labels));
    classifier = owned.get();
  } else if (a.langid != "builtin") {
    throw ConfigError("--langid must be builtin, labels or none");
  }

  const auto corpus =
      read_corpus(a.in, corpus_format(g), config.expected_src_lang, config.expected_tgt_lang);
  Manifest manifest("filter");
  manifest.input("corpus", a.in);
  if (!a.labels.empty()) manifest.input("langid_labels", a.labels);
  Json effective = to_json(config);
  effective["langid"] = a.langid;
  effective["format"] = g.format;
  manifest.config(effective);
  manifest.seed("seed", config.seed);

  const auto result = filter::run_filter_pipeline(corpus, config, *classifier, g.threads);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_corpus(result.splits.train, dir / ("train" + corpus_ext(g)), corpus_format(g));
  write_corpus(result.splits.dev, dir / ("dev" + corpus_ext(g)), corpus_format(g));
  write_corpus(result.splits.test, dir / ("test" + corpus_ext(g)), corpus_format(g));
  std::string removed;
  for (const auto& r : result.removed) {
    removed += Json{{"id", r.triplet.id},
                    {"stage", filter::stage_name(r.stage)},
                    {"reason", r.reason}}
                   .dump() +
               "\n";
  }
  write_file(dir / "removed.jsonl", removed);

  Json report;
  report["manifest"] = manifest.json();
  report["config"] = to_json(config);
  report["report"] = to_json(result.report);
  write_file(dir / "filter_report.json", report.dump(2) + "\n");
  out << report["report"].dump(2) << "\n";
  if (!result.report.reconciles()) throw DataError("filter report does not reconcile");
  return kExitOk;
}

// --- preprocess / postprocess ------------------------------------------------

struct PreprocessArgs {
  std::string in, out, changelog;
};

int cmd_preprocess(const Globals& g, const PreprocessArgs& a, std::ostream& out) {
  const auto corpus = read_corpus(a.in, corpus_format(g));
  Manifest manifest("preprocess");
  manifest.input("corpus", a.in);
  manifest.config({{"format", g.format}});

  Corpus cleaned = corpus.like();
  Json entries = Json::array();
  std::size_t records = 0;
  for (const auto& t : corpus) {
    const auto pre = transform::preprocess(t);
    for (const auto& part : pre.parts) {
      Triplet c{part.part_id(), part.src, part.mt, part.pe, {}};
      c.meta["parent_id"] = part.parent_id;
      c.meta["part_index"] = std::to_string(part.part_index);
      cleaned.add(std::move(c));
    }
    records += pre.log.src.records.size() + pre.log.mt.records.size() + pre.log.pe.records.size();
    entries.push_back(to_json(pre.log));
  }
  write_corpus(cleaned, a.out, corpus_format(g));

  Json log;
  log["manifest"] = manifest.json();
  log["input_digest"] = sha256_file(a.in);
  log["cleaned_digest"] = sha256_file(a.out);
  log["format"] = g.format;
  log["entries"] = std::move(entries);
  write_file(a.changelog, log.dump() + "\n");

  Json summary{{"triplets", corpus.size()}, {"parts", cleaned.size()}, {"records", records}};
  out << summary.dump(2) << "\n";
  return kExitOk;
}

struct PostprocessArgs {
  std::string in, changelog, hyp, field = "mt", out;
};

int cmd_postprocess(const Globals& g, const PostprocessArgs& a, std::ostream& out) {
  const Field field = parse_field(a.field);
  Json log;
  try {
    log = Json::parse(read_file(a.changelog));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("change log " + a.changelog + " is not valid JSON: " + e.what());
  }
  if (!log.is_object() || !log.contains("cleaned_digest") || !log.contains("entries")) {
    throw DataError("change log " + a.changelog + " lacks cleaned_digest or entries");
  }
  const std::string digest = sha256_file(a.in);
  if (log["cleaned_digest"] != digest) {
    throw DataError("change log does not belong to " + a.in + " (digest mismatch)");
  }
  const auto cleaned = read_corpus(a.in, corpus_format(g));

  std::vector<transform::ChangeLog> logs;
  std::size_t parts = 0;
  for (const auto& e : log["entries"]) {
    logs.push_back(changelog_from_json(e));
    parts += logs.back().field(field).parts();
  }
  if (parts != cleaned.size()) {
    throw DataError("change log expects " + std::to_string(parts) + " parts but " + a.in +
                    " has " + std::to_string(cleaned.size()));
  }
  std::vector<std::string> outputs;
  Manifest manifest("postprocess");
  manifest.input("cleaned", a.in);
  manifest.input("changelog", a.changelog);
  if (!a.hyp.empty()) {
    outputs = read_lines(a.hyp);
    manifest.input("hyp", a.hyp);
    if (outputs.size() != parts) {
      throw DataError("hypothesis file " + a.hyp + " has " + std::to_string(outputs.size()) +
                      " lines, change log expects " + std::to_string(parts));
    }
  } else {
    for (const auto& t : cleaned) outputs.push_back(field_of(t, field));
  }
  manifest.config({{"field", a.field}, {"format", g.format}});

  std::vector<std::string> restored;
  std::size_t cursor = 0, irrecoverable = 0;
  for (const auto& l : logs) {
    const std::size_t k = l.field(field).parts();
    for (std::size_t p = 0; p < k; ++p) {
      const auto& t = cleaned[cursor + p];
      const auto expected = transform::CleanTriplet{l.triplet_id, p, {}, {}, {}}.part_id();
      if (t.id != expected) {
        throw DataError("cleaned corpus has '" + t.id + "' where '" + expected + "' was expected");
      }
    }
    std::vector<std::string> mine(outputs.begin() + cursor, outputs.begin() + cursor + k);
    cursor += k;
    const auto r = transform::postprocess_detailed(mine, l, field);
    irrecoverable += r.irrecoverable;
    restored.push_back(r.text);
  }
  write_file(a.out, join_lines(restored));
  Json report;
  report["manifest"] = manifest.json();
  report["restored"] = restored.size();
  report["irrecoverable"] = irrecoverable;
  out << report.dump(2) << "\n";
  return kExitOk;
}

// --- evaluate / significance ---------------------------------------------------

struct TokArgs {
  std::string scheme = "punct_split";
  bool lowercase = false;
  bool no_ter_normalize = false;

  metrics::TokenizerConfig bleu() const { return {metrics::parse_scheme(scheme), lowercase}; }
  metrics::TokenizerConfig ter() const {
    return no_ter_normalize ? metrics::TokenizerConfig{metrics::TokenScheme::whitespace, false}
                            : metrics::kTerNormalized;
  }
  Json json() const {
    return {{"scheme", scheme}, {"lowercase", lowercase}, {"ter_normalize", !no_ter_normalize}};
  }
};

void add_tok_options(CLI::App* app, TokArgs& t) {
  app->add_option("--tokenize", t.scheme, "BLEU tokenizer: punct_split or whitespace")
      ->capture_default_str();
  app->add_flag("--lowercase", t.lowercase, "Lowercase before BLEU");
  app->add_flag("--no-ter-normalize", t.no_ter_normalize,
                "TER on whitespace tokens, case-sensitive");
}

struct EvaluateArgs {
  std::string hyp, hyp_b, ref, out;
  bool per_sentence = false;
  std::size_t samples = 1000;
  std::string metric = "bleu";
  TokArgs tok;
};

stats::BootstrapOptions bootstrap_options(const Globals& g, std::size_t samples,
                                          const std::string& metric, const TokArgs& tok) {
  stats::BootstrapOptions o;
  o.n_samples = samples;
  o.seed = g.seed;
  o.metric = stats::parse_bootstrap_metric(metric);
  o.tok = o.metric == stats::BootstrapMetric::bleu ? tok.bleu() : tok.ter();
  o.threads = g.threads;
  return o;
}

int cmd_evaluate(const Globals& g, const EvaluateArgs& a, std::ostream& out) {
  EvaluateOptions opt;
  opt.bleu_tok = a.tok.bleu();
  opt.ter_tok = a.tok.ter();
  opt.per_sentence = a.per_sentence;
  opt.threads = g.threads;
  const auto hyps = read_lines(a.hyp);
  const auto refs = read_lines(a.ref);
  Manifest manifest("evaluate");
  manifest.input("hyp", a.hyp);
  manifest.input("ref", a.ref);
  Json effective = a.tok.json();
  effective["per_sentence"] = a.per_sentence;

  Json report;
  const auto main_report = evaluate(hyps, refs, opt);
  Json metrics = to_json(main_report);
  if (!a.hyp_b.empty()) {
    const auto hyps_b = read_lines(a.hyp_b);
    manifest.input("hyp_b", a.hyp_b);
    manifest.seed("bootstrap", g.seed);
    effective["bootstrap_samples"] = a.samples;
    effective["bootstrap_metric"] = a.metric;
    const auto b_report = evaluate(hyps_b, refs, opt);
    const auto boot =
        stats::bootstrap_significance(hyps, hyps_b, refs, bootstrap_options(g, a.samples, a.metric, a.tok));
    manifest.config(effective);
    report["manifest"] = manifest.json();
    for (auto& [k, v] : metrics.items()) report[k] = v;
    report["system_b"] = to_json(b_report);
    report["bootstrap"] = to_json(boot);
  } else {
    manifest.config(effective);
    report["manifest"] = manifest.json();
    for (auto& [k, v] : metrics.items()) report[k] = v;
  }
  emit(report, a.out, out);
  return kExitOk;
}

struct SignificanceArgs {
  std::string hyp_a, hyp_b, ref, out;
  std::size_t samples = 1000;
  std::string metric = "bleu";
  TokArgs tok;
};

int cmd_significance(const Globals& g, const SignificanceArgs& a, std::ostream& out) {
  const auto hyps_a = read_lines(a.hyp_a);
  const auto hyps_b = read_lines(a.hyp_b);
  const auto refs = read_lines(a.ref);
  Manifest manifest("significance");
  manifest.input("hyp_a", a.hyp_a);
  manifest.input("hyp_b", a.hyp_b);
  manifest.input("ref", a.ref);
  manifest.seed("bootstrap", g.seed);
  Json effective = a.tok.json();
  effective["samples"] = a.samples;
  effective["metric"] = a.metric;
  manifest.config(effective);
  const auto r = stats::bootstrap_significance(hyps_a, hyps_b, refs,
                                               bootstrap_options(g, a.samples, a.metric, a.tok));
  Json report;
  report["manifest"] = manifest.json();
  report["bootstrap"] = to_json(r);
  report["significant_at"] = {{"0.05", r.significant(0.05)}, {"0.001", r.significant(0.001)}};
  emit(report, a.out, out);
  return kExitOk;
}

// --- agreement / adequacy --------------------------------------------------------

struct CsvArgs {
  std::string csv, out;
};

int cmd_agreement(const CsvArgs& a, std::ostream& out) {
  const auto table = stats::AdequacyTable::read(a.csv);
  const auto m = stats::agreement_matrix(table);
  Manifest manifest("agreement");
  manifest.input("csv", a.csv);
  manifest.config({{"scale", {1, 5}}});
  if (m.annotators.size() < 2) throw DataError("agreement needs at least 2 annotators");
  if (m.units.empty()) throw DataError("no item was rated by every annotator");
  Json report;
  report["manifest"] = manifest.json();
  report["annotators"] = m.annotators;
  report["units"] = m.units.size();
  report["unweighted"] =
      to_json(stats::pairwise_average_kappa(m.ratings, stats::Weighting::none), m.annotators);
  report["quadratic"] =
      to_json(stats::pairwise_average_kappa(m.ratings, stats::Weighting::quadratic), m.annotators);
  emit(report, a.out, out);
  return kExitOk;
}

int cmd_adequacy(const CsvArgs& a, std::ostream& out) {
  const auto table = stats::AdequacyTable::read(a.csv);
  Manifest manifest("adequacy");
  manifest.input("csv", a.csv);
  Json report;
  report["manifest"] = manifest.json();
  report["adequacy"] = to_json(stats::adequacy_summary(table));
  emit(report, a.out, out);
  return kExitOk;
}

// --- ablate / buckets ------------------------------------------------------------

struct AblateArgs {
  std::string in, results, emit_dir, out, csv, metric = "BLEU";
  std::vector<std::size_t> sizes;
  std::size_t replicates = 3;
  bool mock = false;
  std::optional<double> baseline;
};

std::vector<analysis::RunResult> read_results(const fs::path& path) {
  std::vector<analysis::RunResult> out;
  std::size_t line_no = 0;
  std::vector<std::string> problems;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.emplace_back(text::trim(cell));
    if (line_no == 1 && !f.empty() && f[0] == "size") continue;
    try {
      if (f.size() != 3) throw std::invalid_argument("expected size,replicate,value");
      std::size_t used = 0;
      analysis::RunResult r;
      r.size = std::stoull(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument("bad size");
      r.replicate = std::stoull(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument("bad replicate");
      r.value = std::stod(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("bad value");
      out.push_back(r);
    } catch (const std::exception& e) {
      problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "malformed results file " + path.string() + ":";
    for (const auto& p : problems) msg += "\n  " + p;
    throw DataError(msg);
  }
  return out;
}

int cmd_ablate(const Globals& g, const AblateArgs& a, std::ostream& out) {
  if (!a.mock && a.results.empty() && a.emit_dir.empty()) {
    throw ConfigError("ablate needs --mock, --results or --emit-dir");
  }
  if (a.mock && !a.results.empty()) throw ConfigError("--mock and --results are exclusive");
  analysis::SampleSpec spec;
  spec.sizes = a.sizes.empty()
                   ? std::vector<std::size_t>(analysis::kDefaultSampleSizes.begin(),
                                              analysis::kDefaultSampleSizes.end())
                   : a.sizes;
  spec.replicates = a.replicates;
  spec.base_seed = g.seed;

  Manifest manifest("ablate");
  manifest.seed("base_seed", g.seed);
  Json effective{{"sizes", spec.sizes}, {"replicates", spec.replicates}, {"metric", a.metric},
                 {"mock", a.mock}, {"format", g.format}};
  if (a.baseline) effective["baseline"] = *a.baseline;
  manifest.config(effective);

  Json report;
  std::vector<analysis::Sample> samples;
  std::vector<analysis::RunResult> runs;
  if (a.mock || !a.emit_dir.empty()) {
    if (a.in.empty()) throw ConfigError("--in is required to draw samples");
    const auto corpus = read_corpus(a.in, corpus_format(g));
    manifest.input("corpus", a.in);
    if (a.mock) {
      auto result =
          analysis::run_ablation(corpus, spec, analysis::MockScorer{}, a.metric, a.baseline, g.threads);
      samples = std::move(result.samples);
      runs = std::move(result.runs);
    } else {
      samples = analysis::draw_samples(corpus, spec, g.threads);
    }
  }
  if (!a.results.empty()) {
    manifest.input("results", a.results);
    runs = read_results(a.results);
  }
  if (!a.emit_dir.empty()) {
    for (const auto& s : samples) {
      const auto name = "sample_" + std::to_string(s.size) + "_r" + std::to_string(s.replicate) +
                        corpus_ext(g);
      write_corpus(s.corpus, fs::path(a.emit_dir) / name, corpus_format(g));
    }
  }

  report["manifest"] = manifest.json();
  Json js = Json::array();
  for (const auto& s : samples) {
    js.push_back({{"size", s.size}, {"replicate", s.replicate}, {"seed", s.seed},
                  {"triplets", s.corpus.size()}});
  }
  report["samples"] = std::move(js);
  Json jr = Json::array();
  for (const auto& r : runs) {
    jr.push_back({{"size", r.size}, {"replicate", r.replicate}, {"value", r.value}});
  }
  report["runs"] = std::move(jr);
  if (!runs.empty()) {
    const auto curve = analysis::curve_report(runs, a.metric, a.baseline);
    report["curve"] = to_json(curve);
    if (!a.csv.empty()) write_file(a.csv, analysis::curve_csv(curve));
  } else {
    report["curve"] = nullptr;
  }
  emit(report, a.out, out);
  return kExitOk;
}

struct BucketsArgs {
  std::string baseline, ape, ref, out, csv;
  bool no_ter_normalize = false;
};

int cmd_buckets(const Globals& g, const BucketsArgs& a, std::ostream& out) {
  const auto base = read_lines(a.baseline);
  const auto ape = read_lines(a.ape);
  const auto refs = read_lines(a.ref);
  Manifest manifest("buckets");
  manifest.input("baseline", a.baseline);
  manifest.input("ape", a.ape);
  manifest.input("ref", a.ref);
  manifest.config({{"ter_normalize", !a.no_ter_normalize}});
  const auto tok = a.no_ter_normalize
                       ? metrics::TokenizerConfig{metrics::TokenScheme::whitespace, false}
                       : metrics::kTerNormalized;
  const auto result = analysis::ter_buckets(base, ape, refs, tok, g.threads);
  Json report;
  report["manifest"] = manifest.json();
  report["buckets"] = to_json(result);
  if (!a.csv.empty()) write_file(a.csv, analysis::buckets_csv(result));
  emit(report, a.out, out);
  return kExitOk;
}

// --- stats -------------------------------------------------------------------------

struct StatsArgs {
  std::vector<std::string> in;
  std::string out;
};

int cmd_stats(const Globals& g, const StatsArgs& a, std::ostream& out) {
  Manifest manifest("stats");
  manifest.config({{"format", g.format}});
  Json files = Json::array();
  CorpusStats total;
  for (const auto& path : a.in) {
    const auto corpus = read_corpus(path, corpus_format(g));
    manifest.input("corpus", path);
    const auto s = corpus_stats(corpus);
    total += s;
    Json entry{{"path", path}};
    const Json counts = to_json(s);
    for (const auto& [k, v] : counts.items()) entry[k] = v;
    files.push_back(std::move(entry));
  }
  Json report;
  report["manifest"] = manifest.json();
  report["corpora"] = std::move(files);
  report["total"] = to_json(total);
  emit(report, a.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corpus construction and evaluation toolkit for automatic post-editing", "apekit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random choice")
                       ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (does not change results)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Corpus file format")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  app.add_option("--config", g.config, "JSON config file");

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Filter a triplet corpus and split it");
  filter->add_option("--in", fa.in, "Input corpus")->required();
  filter->add_option("--out-dir", fa.out_dir, "Directory for splits and report")->required();
  filter->add_option("--langid", fa.langid, "builtin, labels or none")->capture_default_str();
  filter->add_option("--langid-labels", fa.labels, "File of text<TAB>lang lines");

  PreprocessArgs pa;
  auto* pre = app.add_subcommand("preprocess", "Clean subtitle markup with a change log");
  pre->add_option("--in", pa.in, "Input corpus")->required();
  pre->add_option("--out", pa.out, "Cleaned corpus")->required();
  pre->add_option("--changelog", pa.changelog, "Change log (JSON)")->required();

  PostprocessArgs qa;
  auto* post = app.add_subcommand("postprocess", "Re-apply logged changes to outputs");
  post->add_option("--in", qa.in, "Cleaned corpus written by preprocess")->required();
  post->add_option("--changelog", qa.changelog, "Change log written by preprocess")->required();
  post->add_option("--hyp", qa.hyp, "System outputs, one line per cleaned part");
  post->add_option("--field", qa.field, "Field restored when --hyp is absent")
      ->capture_default_str();
  post->add_option("--out", qa.out, "Restored text, one line per original triplet")->required();

  EvaluateArgs ea;
  auto* eval = app.add_subcommand("evaluate", "BLEU, ChrF and TER of a system");
  eval->add_option("--hyp", ea.hyp, "Hypotheses, one per line")->required();
  eval->add_option("--ref", ea.ref, "References, one per line")->required();
  eval->add_option("--hyp-b", ea.hyp_b, "Second system; adds a bootstrap block");
  eval->add_option("--samples", ea.samples, "Bootstrap samples")->capture_default_str();
  eval->add_option("--bootstrap-metric", ea.metric, "bleu or ter")->capture_default_str();
  eval->add_flag("--per-sentence", ea.per_sentence, "Include per-sentence scores");
  eval->add_option("--out", ea.out, "Report path (default stdout)");
  add_tok_options(eval, ea.tok);

  SignificanceArgs sa;
  auto* sig = app.add_subcommand("significance", "Paired bootstrap test of two systems");
  sig->add_option("--hyp-a", sa.hyp_a, "System A")->required();
  sig->add_option("--hyp-b", sa.hyp_b, "System B")->required();
  sig->add_option("--ref", sa.ref, "References")->required();
  sig->add_option("--samples", sa.samples, "Bootstrap samples")->capture_default_str();
  sig->add_option("--metric", sa.metric, "bleu or ter")->capture_default_str();
  sig->add_option("--out", sa.out, "Report path (default stdout)");
  add_tok_options(sig, sa.tok);

  CsvArgs ga, da;
  auto* agree = app.add_subcommand("agreement", "Pairwise Cohen's kappa between annotators");
  agree->add_option("--csv", ga.csv, "annotator_id,item_id,system,score rows")->required();
  agree->add_option("--out", ga.out, "Report path (default stdout)");
  auto* adeq = app.add_subcommand("adequacy", "Adequacy means per annotator and system");
  adeq->add_option("--csv", da.csv, "annotator_id,item_id,system,score rows")->required();
  adeq->add_option("--out", da.out, "Report path (default stdout)");

  AblateArgs aa;
  auto* ablate = app.add_subcommand("ablate", "Data-size ablation samples and curve");
  ablate->add_option("--in", aa.in, "Corpus to sample from");
  ablate->add_option("--sizes", aa.sizes, "Sample sizes, ascending")->delimiter(',');
  ablate->add_option("--replicates", aa.replicates, "Samples per size")->capture_default_str();
  ablate->add_flag("--mock", aa.mock, "Score samples with the built-in mock scorer");
  ablate->add_option("--results", aa.results, "CSV of size,replicate,value from real runs");
  ablate->add_option("--emit-dir", aa.emit_dir, "Write every sample corpus here");
  ablate->add_option("--metric", aa.metric, "Metric name for the curve")->capture_default_str();
  ablate->add_option("--baseline", aa.baseline, "Reference line value");
  ablate->add_option("--out", aa.out, "Report path (default stdout)");
  ablate->add_option("--csv", aa.csv, "Plot data (size,mean,min,max)");

  BucketsArgs ba;
  auto* buckets = app.add_subcommand("buckets", "Delta TER per baseline TER bucket");
  buckets->add_option("--baseline", ba.baseline, "Baseline outputs")->required();
  buckets->add_option("--ape", ba.ape, "APE outputs")->required();
  buckets->add_option("--ref", ba.ref, "References")->required();
  buckets->add_flag("--no-ter-normalize", ba.no_ter_normalize,
                    "TER on whitespace tokens, case-sensitive");
  buckets->add_option("--out", ba.out, "Report path (default stdout)");
  buckets->add_option("--csv", ba.csv, "Plot data");

  StatsArgs ta;
  auto* st = app.add_subcommand("stats", "Token and character counts per corpus");
  st->add_option("--in", ta.in, "Corpus files")->required();
  st->add_option("--out", ta.out, "Report path (default stdout)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"apekit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*filter) return cmd_filter(g, fa, out);
    if (*pre) return cmd_preprocess(g, pa, out);
    if (*post) return cmd_postprocess(g, qa, out);
    if (*eval) return cmd_evaluate(g, ea, out);
    if (*sig) return cmd_significance(g, sa, out);
    if (*agree) return cmd_agreement(ga, out);
    if (*adeq) return cmd_adequacy(da, out);
    if (*ablate) return cmd_ablate(g, aa, out);
    if (*buckets) return cmd_buckets(g, ba, out);
    if (*st) return cmd_stats(g, ta, out);
  } catch (const ConfigError& e) {
    err << "apekit: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "apekit: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "apekit: " << e.what() << "\n";
    return kExitData;
  }
  return kExitConfig;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace apekit
