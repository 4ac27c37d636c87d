#include "apekit/json_io.hpp"

#include <cmath>

#include "apekit/error.hpp"

namespace apekit {

namespace {

/// NaN and infinity have no JSON form; they become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Triplet& t) {
  Json j;
  j["id"] = t.id;
  j["src"] = t.src;
  j["mt"] = t.mt;
  j["pe"] = t.pe;
  if (!t.meta.empty()) {
    Json meta = Json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = std::move(meta);
  }
  return j;
}

Json to_json(const filter::FilterConfig& c) {
  Json j;
  j["t"] = c.t;
  j["ratio_numerator"] = field_name(c.ratio_numerator);
  j["ratio_denominator"] = field_name(c.ratio_denominator);
  j["global_numerator"] = field_name(c.global_numerator);
  j["global_denominator"] = field_name(c.global_denominator);
  j["dev_size"] = c.dev_size;
  j["test_size"] = c.test_size;
  j["seed"] = c.seed;
  j["expected_src_lang"] = c.expected_src_lang;
  j["expected_tgt_lang"] = c.expected_tgt_lang;
  j["enable_ratio_filter"] = c.enable_ratio_filter;
  j["enable_langid"] = c.enable_langid;
  return j;
}

filter::FilterConfig filter_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("filter config must be a JSON object");
  filter::FilterConfig c;
  for (const auto& [key, value] : j.items()) {
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw ConfigError("filter config: '" + key + "' must be " + what);
    };
    if (key == "t") {
      need(value.is_number(), "a number");
      c.t = value.get<double>();
    } else if (key == "ratio_numerator" || key == "ratio_denominator" ||
               key == "global_numerator" || key == "global_denominator") {
      need(value.is_string(), "one of src, mt, pe");
      const Field f = parse_field(value.get<std::string>());
      if (key == "ratio_numerator") c.ratio_numerator = f;
      else if (key == "ratio_denominator") c.ratio_denominator = f;
      else if (key == "global_numerator") c.global_numerator = f;
      else c.global_denominator = f;
    } else if (key == "dev_size" || key == "test_size" || key == "seed") {
      need(value.is_number_unsigned(), "a non-negative integer");
      if (key == "dev_size") c.dev_size = value.get<std::size_t>();
      else if (key == "test_size") c.test_size = value.get<std::size_t>();
      else c.seed = value.get<std::uint64_t>();
    } else if (key == "expected_src_lang" || key == "expected_tgt_lang") {
      need(value.is_string(), "a string");
      (key == "expected_src_lang" ? c.expected_src_lang : c.expected_tgt_lang) =
          value.get<std::string>();
    } else if (key == "enable_ratio_filter" || key == "enable_langid") {
      need(value.is_boolean(), "true or false");
      (key == "enable_ratio_filter" ? c.enable_ratio_filter : c.enable_langid) =
          value.get<bool>();
    } else {
      throw ConfigError("filter config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

Json to_json(const filter::FilterReport& r) {
  Json j;
  j["input_count"] = r.input_count;
  j["removed_by_ratio"] = r.removed_by_ratio;
  j["removed_by_dedup"] = r.removed_by_dedup;
  j["removed_by_langid"] = r.removed_by_langid;
  j["kept_count"] = r.kept_count;
  j["degenerate"] = r.degenerate;
  j["r_c"] = {{"r_c", number(r.r_c.r_c)},
              {"numerator_chars", r.r_c.numerator_chars},
              {"denominator_chars", r.r_c.denominator_chars}};
  j["split_sizes"] = {{"train", r.train_size}, {"dev", r.dev_size}, {"test", r.test_size}};
  Json order = Json::array();
  for (auto s : r.stage_order) order.push_back(filter::stage_name(s));
  j["stage_order"] = std::move(order);
  j["reconciles"] = r.reconciles();
  return j;
}

namespace {

Json field_log_json(const transform::FieldLog& f) {
  Json records = Json::array();
  for (const auto& r : f.records) {
    records.push_back({{"kind", transform::kind_name(r.kind)},
                       {"segment", r.segment},
                       {"offset", r.offset},
                       {"payload", r.payload},
                       {"replacement", r.replacement},
                       {"anchor", transform::anchor_name(r.anchor)}});
  }
  return {{"cleaned", f.cleaned}, {"records", std::move(records)}};
}

transform::FieldLog field_log_from_json(const Json& j) {
  transform::FieldLog f;
  f.cleaned = j.at("cleaned").get<std::vector<std::string>>();
  for (const auto& r : j.at("records")) {
    transform::ChangeRecord rec;
    rec.kind = transform::parse_kind(r.at("kind").get<std::string>());
    rec.segment = r.at("segment").get<std::size_t>();
    rec.offset = r.at("offset").get<std::size_t>();
    rec.payload = r.at("payload").get<std::string>();
    rec.replacement = r.at("replacement").get<std::string>();
    rec.anchor = transform::parse_anchor(r.at("anchor").get<std::string>());
    if (rec.segment >= f.cleaned.size()) throw DataError("change record segment out of range");
    f.records.push_back(std::move(rec));
  }
  if (f.cleaned.empty()) throw DataError("change log field has no parts");
  return f;
}

}  // namespace

Json to_json(const transform::ChangeLog& log) {
  Json j;
  j["id"] = log.triplet_id;
  j["src"] = field_log_json(log.src);
  j["mt"] = field_log_json(log.mt);
  j["pe"] = field_log_json(log.pe);
  return j;
}

transform::ChangeLog changelog_from_json(const Json& j) {
  try {
    transform::ChangeLog log;
    log.triplet_id = j.at("id").get<std::string>();
    log.src = field_log_from_json(j.at("src"));
    log.mt = field_log_from_json(j.at("mt"));
    log.pe = field_log_from_json(j.at("pe"));
    return log;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed change log: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed change log: ") + e.what());
  }
}

Json to_json(const CorpusStats& s) {
  Json j;
  j["n_triplets"] = s.n_triplets;
  j["tokens"] = {{"src", s.tokens_src}, {"mt", s.tokens_mt}, {"pe", s.tokens_pe}};
  j["chars"] = {{"src", s.chars_src}, {"mt", s.chars_mt}, {"pe", s.chars_pe}};
  return j;
}

Json to_json(const metrics::BleuScore& b) {
  Json j;
  j["score"] = number(b.score);
  Json p = Json::array();
  for (double v : b.precisions) p.push_back(number(v));
  j["precisions"] = std::move(p);
  j["brevity_penalty"] = number(b.brevity_penalty);
  j["hyp_len"] = b.hyp_len;
  j["ref_len"] = b.ref_len;
  j["matches"] = b.stats.matches;
  j["totals"] = b.stats.totals;
  return j;
}

Json to_json(const ter::TerScore& t) {
  Json j;
  j["score"] = number(t.score);
  j["edits"] = {{"insertions", t.edits.insertions},
                {"deletions", t.edits.deletions},
                {"substitutions", t.edits.substitutions},
                {"shifts", t.edits.shifts},
                {"total", t.edits.total()}};
  j["ref_len"] = t.ref_len;
  return j;
}

Json to_json(const ter::EditScript& s) {
  Json shifts = Json::array();
  for (const auto& sh : s.shifts) {
    shifts.push_back({{"start", sh.start}, {"length", sh.length}, {"dest", sh.dest}});
  }
  Json ops = Json::array();
  for (const auto& op : s.ops) {
    ops.push_back({{"op", std::string(1, ter::op_code(op.op))},
                   {"hyp", op.hyp_token},
                   {"ref", op.ref_token}});
  }
  return {{"shifts", std::move(shifts)}, {"ops", std::move(ops)}};
}

Json to_json(const MetricReport& r) {
  Json j;
  j["bleu"] = to_json(r.bleu);
  j["chrf"] = number(r.chrf);
  j["ter"] = to_json(r.ter);
  if (r.per_sentence) {
    Json rows = Json::array();
    for (const auto& s : *r.per_sentence) {
      rows.push_back({{"bleu", number(s.bleu)}, {"chrf", number(s.chrf)}, {"ter", to_json(s.ter)}});
    }
    j["per_sentence"] = std::move(rows);
  }
  return j;
}

Json to_json(const stats::BootstrapResult& r) {
  Json j;
  j["metric"] = stats::bootstrap_metric_name(r.metric);
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["score_a"] = number(r.score_a);
  j["score_b"] = number(r.score_b);
  j["wins_a"] = r.wins_a;
  j["wins_b"] = r.wins_b;
  j["ties"] = r.ties;
  j["p_value"] = number(r.p_value);
  return j;
}

Json to_json(const stats::KappaResult& r) {
  Json j;
  j["kappa"] = number(r.kappa);
  j["observed_agreement"] = number(r.observed_agreement);
  j["expected_agreement"] = number(r.expected_agreement);
  j["weighting"] = stats::weighting_name(r.weighting);
  return j;
}

Json to_json(const stats::PairwiseKappa& r, const std::vector<std::string>& annotators) {
  Json j;
  j["mean"] = number(r.mean);
  j["pairs"] = r.pairs;
  j["skipped"] = r.skipped;
  Json entries = Json::array();
  for (std::size_t a = 0; a < r.matrix.size(); ++a) {
    for (std::size_t b = a + 1; b < r.matrix.size(); ++b) {
      entries.push_back({{"a", annotators.at(a)}, {"b", annotators.at(b)},
                         {"kappa", number(r.matrix[a][b])}});
    }
  }
  j["pair_entries"] = std::move(entries);
  Json matrix = Json::array();
  for (const auto& row : r.matrix) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(number(v));
    matrix.push_back(std::move(jr));
  }
  j["matrix"] = std::move(matrix);
  return j;
}

namespace {

Json annotator_json(const stats::AnnotatorSummary& s) {
  Json j;
  j["annotator"] = s.annotator;
  j["used"] = s.used;
  j["assigned"] = s.assigned;
  j["evaluations"] = std::to_string(s.used) + " / " + std::to_string(s.assigned);
  Json means;
  for (std::size_t k = 0; k < stats::kSystems.size(); ++k) {
    means[std::string(stats::system_name(stats::kSystems[k]))] = number(s.means.mean[k]);
  }
  j["means"] = std::move(means);
  return j;
}

}  // namespace

Json to_json(const stats::AdequacySummary& s) {
  Json rows = Json::array();
  for (const auto& a : s.annotators) rows.push_back(annotator_json(a));
  return {{"annotators", std::move(rows)}, {"overall", annotator_json(s.overall)}};
}

Json to_json(const analysis::CurveReport& r) {
  Json j;
  j["metric"] = r.metric;
  Json points = Json::array();
  for (const auto& p : r.points) {
    points.push_back({{"size", p.size},
                      {"runs", p.runs},
                      {"mean", number(p.mean)},
                      {"min", number(p.min)},
                      {"max", number(p.max)}});
  }
  j["points"] = std::move(points);
  j["baseline"] = number(r.baseline);
  j["markers"] = r.markers;
  return j;
}

Json to_json(const analysis::BucketAnalysis& a) {
  Json buckets = Json::array();
  for (const auto& b : a.buckets) {
    buckets.push_back({{"range", b.label},
                       {"count", b.count},
                       {"ref_len", b.ref_len},
                       {"baseline_ter", number(b.baseline_ter)},
                       {"ape_ter", number(b.ape_ter)},
                       {"delta_ter", number(b.delta_ter)}});
  }
  return {{"total", a.total}, {"buckets", std::move(buckets)}};
}

Json parse_config_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace apekit
