#pragma once

// JSON encodings of configs, logs and reports. Keys keep insertion order so
// reports diff cleanly between runs.

#include <json.hpp>

#include "apekit/analysis.hpp"
#include "apekit/evaluate.hpp"
#include "apekit/filter.hpp"
#include "apekit/stats.hpp"
#include "apekit/transform.hpp"
#include "apekit/triplet.hpp"

namespace apekit {

using Json = nlohmann::ordered_json;

Json to_json(const Triplet& t);

Json to_json(const filter::FilterConfig& config);
/// Missing keys keep their defaults. Unknown keys and wrong types throw ConfigError.
filter::FilterConfig filter_config_from_json(const Json& j);
Json to_json(const filter::FilterReport& report);

Json to_json(const transform::ChangeLog& log);
/// Throws DataError on a malformed log.
transform::ChangeLog changelog_from_json(const Json& j);

Json to_json(const CorpusStats& stats);

Json to_json(const metrics::BleuScore& bleu);
Json to_json(const ter::TerScore& ter);
Json to_json(const ter::EditScript& script);
Json to_json(const MetricReport& report);

Json to_json(const stats::BootstrapResult& result);
Json to_json(const stats::KappaResult& result);
Json to_json(const stats::PairwiseKappa& result, const std::vector<std::string>& annotators);
Json to_json(const stats::AdequacySummary& summary);

Json to_json(const analysis::CurveReport& report);
Json to_json(const analysis::BucketAnalysis& analysis);

/// Parses a JSON document, mapping syntax errors to ConfigError.
Json parse_config_json(std::string_view text);

}  // namespace apekit
