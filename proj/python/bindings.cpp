#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "apekit/analysis.hpp"
#include "apekit/cli.hpp"
#include "apekit/error.hpp"
#include "apekit/evaluate.hpp"
#include "apekit/filter.hpp"
#include "apekit/json_io.hpp"
#include "apekit/langid.hpp"
#include "apekit/stats.hpp"
#include "apekit/ter.hpp"
#include "apekit/transform.hpp"

namespace py = pybind11;
using namespace apekit;

namespace {

// Structured results cross the boundary as JSON so both sides share one schema.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_py(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Triplet triplet_from_py(const py::dict& d) {
  Triplet t;
  t.id = d.contains("id") ? d["id"].cast<std::string>() : "";
  t.src = d["src"].cast<std::string>();
  t.mt = d["mt"].cast<std::string>();
  t.pe = d["pe"].cast<std::string>();
  if (d.contains("meta")) t.meta = d["meta"].cast<std::map<std::string, std::string>>();
  return t;
}

Corpus corpus_from_py(const py::list& items) {
  Corpus c;
  std::size_t i = 0;
  for (const auto& item : items) {
    Triplet t = triplet_from_py(item.cast<py::dict>());
    ++i;
    if (t.id.empty()) t.id = auto_id(i);
    c.add(std::move(t));
  }
  return c;
}

py::list corpus_to_py(const Corpus& c) {
  py::list out;
  for (const auto& t : c) out.append(to_py(to_json(t)));
  return out;
}

metrics::TokenizerConfig ter_tok(bool normalize) {
  return normalize ? metrics::kTerNormalized
                   : metrics::TokenizerConfig{metrics::TokenScheme::whitespace, false};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corpus filtering, change-tracked preprocessing and APE evaluation";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UndefinedStatistic>(m, "UndefinedStatistic", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def(
      "tokenize",
      [](const std::string& text, const std::string& scheme, bool lowercase) {
        return metrics::tokenize(text, {metrics::parse_scheme(scheme), lowercase});
      },
      py::arg("text"), py::arg("scheme") = "punct_split", py::arg("lowercase") = false);

  m.def(
      "bleu",
      [](const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
        return to_py(to_json(metrics::bleu_corpus(hyps, refs)));
      },
      py::arg("hyps"), py::arg("refs"));

  m.def("chrf", &metrics::chrf, py::arg("hyps"), py::arg("refs"), py::arg("max_n") = 6,
        py::arg("beta") = 2.0);

  m.def(
      "ter",
      [](const std::string& hyp, const std::string& ref, bool normalize) {
        const auto r = ter::ter_sentence(hyp, ref, ter_tok(normalize));
        Json j = to_json(r.score);
        j["script"] = to_json(r.script);
        return to_py(j);
      },
      py::arg("hyp"), py::arg("ref"), py::arg("normalize") = true);

  m.def(
      "ter_corpus",
      [](const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
         bool normalize, unsigned threads) {
        return to_py(to_json(ter::ter_corpus(hyps, refs, ter_tok(normalize), threads)));
      },
      py::arg("hyps"), py::arg("refs"), py::arg("normalize") = true, py::arg("threads") = 1);

  m.def(
      "ter_oracle",
      [](const std::string& hyp, const std::string& ref, std::size_t depth, bool normalize) {
        return ter::ter_oracle(hyp, ref, depth, ter_tok(normalize));
      },
      py::arg("hyp"), py::arg("ref"), py::arg("depth") = ter::kOracleMaxDepth,
      py::arg("normalize") = true);

  m.def(
      "evaluate",
      [](const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
         bool per_sentence, unsigned threads) {
        EvaluateOptions o;
        o.per_sentence = per_sentence;
        o.threads = threads;
        return to_py(to_json(evaluate(hyps, refs, o)));
      },
      py::arg("hyps"), py::arg("refs"), py::arg("per_sentence") = false, py::arg("threads") = 1);

  m.def(
      "bootstrap",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b,
         const std::vector<std::string>& refs, std::size_t n_samples, std::uint64_t seed,
         const std::string& metric, unsigned threads) {
        stats::BootstrapOptions o;
        o.n_samples = n_samples;
        o.seed = seed;
        o.metric = stats::parse_bootstrap_metric(metric);
        o.tok = o.metric == stats::BootstrapMetric::bleu ? metrics::kBleuTokenizer
                                                         : metrics::kTerNormalized;
        o.threads = threads;
        return to_py(to_json(stats::bootstrap_significance(a, b, refs, o)));
      },
      py::arg("hyps_a"), py::arg("hyps_b"), py::arg("refs"), py::arg("n_samples") = 1000,
      py::arg("seed") = 0, py::arg("metric") = "bleu", py::arg("threads") = 1);

  m.def(
      "cohen_kappa",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        return to_py(to_json(stats::cohen_kappa(a, b)));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "weighted_kappa",
      [](const std::vector<int>& a, const std::vector<int>& b, int lo, int hi) {
        return to_py(to_json(stats::weighted_kappa(a, b, lo, hi)));
      },
      py::arg("a"), py::arg("b"), py::arg("scale_min") = 1, py::arg("scale_max") = 5);
  m.def(
      "pairwise_kappa",
      [](const std::vector<std::vector<int>>& ratings, const std::string& weighting) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < ratings.size(); ++i) names.push_back(std::to_string(i));
        return to_py(to_json(
            stats::pairwise_average_kappa(ratings, stats::parse_weighting(weighting)), names));
      },
      py::arg("ratings"), py::arg("weighting") = "none");
  m.def(
      "adequacy_summary",
      [](const std::string& csv) {
        return to_py(to_json(stats::adequacy_summary(stats::AdequacyTable::parse(csv))));
      },
      py::arg("csv"));

  m.def("normalize_punctuation", &filter::normalize_punctuation, py::arg("text"));
  m.def(
      "strip_markup",
      [](const std::string& text) {
        const auto r = transform::strip_markup(text);
        return py::make_tuple(r.clean, r.records.size());
      },
      py::arg("text"));
  m.def(
      "preprocess",
      [](const py::dict& triplet) {
        const auto pre = transform::preprocess(triplet_from_py(triplet));
        py::list parts;
        for (const auto& p : pre.parts) {
          py::dict d;
          d["id"] = p.part_id();
          d["src"] = p.src;
          d["mt"] = p.mt;
          d["pe"] = p.pe;
          parts.append(d);
        }
        return py::make_tuple(parts, to_py(to_json(pre.log)));
      },
      py::arg("triplet"));
  m.def(
      "postprocess",
      [](const std::vector<std::string>& outputs, const py::object& log,
         const std::string& field) {
        return transform::postprocess(outputs, changelog_from_json(from_py(log)),
                                      parse_field(field));
      },
      py::arg("outputs"), py::arg("changelog"), py::arg("field") = "mt");

  m.def(
      "filter_corpus",
      [](const py::list& triplets, const py::object& config, const std::string& langid,
         unsigned threads) {
        auto cfg = filter_config_from_json(config.is_none() ? Json::object() : from_py(config));
        const LanguageClassifier* classifier = &CharNgramClassifier::builtin();
        ConstantClassifier unused("und");
        if (langid == "none") {
          cfg.enable_langid = false;
          classifier = &unused;
        } else if (langid != "builtin") {
          throw ConfigError("langid must be builtin or none");
        }
        const auto r = filter::run_filter_pipeline(corpus_from_py(triplets), cfg, *classifier,
                                                   threads);
        py::dict out;
        out["train"] = corpus_to_py(r.splits.train);
        out["dev"] = corpus_to_py(r.splits.dev);
        out["test"] = corpus_to_py(r.splits.test);
        out["report"] = to_py(to_json(r.report));
        return out;
      },
      py::arg("triplets"), py::arg("config") = py::none(), py::arg("langid") = "builtin",
      py::arg("threads") = 1);

  m.def(
      "upsample_mix",
      [](const py::list& a, std::size_t factor, const py::list& b, std::uint64_t seed) {
        return corpus_to_py(
            analysis::upsample_mix(corpus_from_py(a), factor, corpus_from_py(b), seed));
      },
      py::arg("a"), py::arg("factor"), py::arg("b"), py::arg("seed") = 0);

  m.def(
      "ter_buckets",
      [](const std::vector<std::string>& base, const std::vector<std::string>& ape,
         const std::vector<std::string>& refs, bool normalize) {
        return to_py(to_json(analysis::ter_buckets(base, ape, refs, ter_tok(normalize))));
      },
      py::arg("baseline"), py::arg("ape"), py::arg("refs"), py::arg("normalize") = true);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
