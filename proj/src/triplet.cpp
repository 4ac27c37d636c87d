#include "apekit/triplet.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apekit/error.hpp"
#include "apekit/text.hpp"

namespace apekit {

using nlohmann::ordered_json;

std::string_view field_name(Field f) {
  switch (f) {
    case Field::src: return "src";
    case Field::mt: return "mt";
    case Field::pe: return "pe";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  if (name == "src") return Field::src;
  if (name == "mt") return Field::mt;
  if (name == "pe") return Field::pe;
  throw ConfigError("unknown field selector '" + std::string(name) + "' (expected src, mt or pe)");
}

const std::string& field_of(const Triplet& t, Field f) {
  switch (f) {
    case Field::src: return t.src;
    case Field::mt: return t.mt;
    case Field::pe: break;
  }
  return t.pe;
}

std::string& field_of(Triplet& t, Field f) {
  return const_cast<std::string&>(field_of(static_cast<const Triplet&>(t), f));
}

bool is_admissible(const Triplet& t) {
  return !text::trim(t.src).empty() && !text::trim(t.mt).empty() && !text::trim(t.pe).empty();
}

void Corpus::add(Triplet t) {
  auto [it, inserted] = index_.emplace(t.id, triplets_.size());
  if (!inserted) throw DataError("duplicate triplet id '" + t.id + "'");
  triplets_.push_back(std::move(t));
}

bool Corpus::contains_id(const std::string& id) const { return index_.count(id) != 0; }

CorpusFormat parse_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "tsv") return CorpusFormat::tsv;
  throw ConfigError("unknown corpus format '" + std::string(name) + "' (expected jsonl or tsv)");
}

std::string auto_id(std::size_t line) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08zu", line);
  return buf;
}

namespace {

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

std::string required_string(const ordered_json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail_at(line, std::string("missing field '") + key + "'");
  if (!it->is_string()) fail_at(line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Triplet parse_jsonl_record(std::string_view line_text, std::size_t line) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(line_text);
  } catch (const ordered_json::parse_error& e) {
    fail_at(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) fail_at(line, "record must be a JSON object");
  Triplet t;
  if (const auto it = obj.find("id"); it != obj.end()) {
    if (!it->is_string()) fail_at(line, "field 'id' must be a string");
    t.id = it->get<std::string>();
  } else {
    t.id = auto_id(line);
  }
  t.src = required_string(obj, "src", line);
  t.mt = required_string(obj, "mt", line);
  t.pe = required_string(obj, "pe", line);
  if (const auto it = obj.find("meta"); it != obj.end()) {
    if (!it->is_object()) fail_at(line, "field 'meta' must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) fail_at(line, "meta value '" + k + "' must be a string");
      t.meta.emplace(k, v.get<std::string>());
    }
  }
  return t;
}

Triplet parse_tsv_record(std::string_view line_text, std::size_t line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line_text.size(); ++i) {
    if (i == line_text.size() || line_text[i] == '\t') {
      cols.push_back(line_text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (cols.size() != 3) {
    fail_at(line, "expected 3 tab-separated columns (src, mt, pe), found " + std::to_string(cols.size()));
  }
  return Triplet{auto_id(line), std::string(cols[0]), std::string(cols[1]), std::string(cols[2]), {}};
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

Corpus parse_corpus(std::string_view content, CorpusFormat format, std::string src_lang,
                    std::string tgt_lang) {
  Corpus corpus(std::move(src_lang), std::move(tgt_lang));
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view raw = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (format == CorpusFormat::jsonl && is_blank(raw)) continue;
    Triplet t = format == CorpusFormat::jsonl ? parse_jsonl_record(raw, line)
                                              : parse_tsv_record(raw, line);
    if (corpus.contains_id(t.id)) fail_at(line, "duplicate id '" + t.id + "'");
    corpus.add(std::move(t));
  }
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path, CorpusFormat format, std::string src_lang,
                   std::string tgt_lang) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_corpus(buf.str(), format, std::move(src_lang), std::move(tgt_lang));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string format_corpus(const Corpus& corpus, CorpusFormat format) {
  std::string out;
  for (const auto& t : corpus) {
    if (format == CorpusFormat::jsonl) {
      ordered_json obj;
      obj["id"] = t.id;
      obj["src"] = t.src;
      obj["mt"] = t.mt;
      obj["pe"] = t.pe;
      if (!t.meta.empty()) obj["meta"] = t.meta;
      try {
        out += obj.dump(-1, ' ', false, ordered_json::error_handler_t::strict);
      } catch (const ordered_json::type_error& e) {
        throw DataError("triplet '" + t.id + "': " + e.what());
      }
    } else {
      for (Field f : {Field::src, Field::mt, Field::pe}) {
        const auto& s = field_of(t, f);
        if (s.find_first_of("\t\n\r") != std::string::npos) {
          throw DataError("triplet '" + t.id + "': field " + std::string(field_name(f)) +
                          " contains a tab or line break, which TSV cannot encode");
        }
      }
      out += t.src;
      out += '\t';
      out += t.mt;
      out += '\t';
      out += t.pe;
    }
    out += '\n';
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
  const std::string content = format_corpus(corpus, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write corpus file " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& o) {
  n_triplets += o.n_triplets;
  tokens_src += o.tokens_src;
  tokens_mt += o.tokens_mt;
  tokens_pe += o.tokens_pe;
  chars_src += o.chars_src;
  chars_mt += o.chars_mt;
  chars_pe += o.chars_pe;
  return *this;
}

CorpusStats triplet_stats(const Triplet& t) {
  CorpusStats s;
  s.n_triplets = 1;
  s.tokens_src = text::split_whitespace(t.src).size();
  s.tokens_mt = text::split_whitespace(t.mt).size();
  s.tokens_pe = text::split_whitespace(t.pe).size();
  s.chars_src = text::char_count(t.src);
  s.chars_mt = text::char_count(t.mt);
  s.chars_pe = text::char_count(t.pe);
  return s;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats total;
  for (const auto& t : corpus) total += triplet_stats(t);
  return total;
}

}  // namespace apekit
