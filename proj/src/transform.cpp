#include "apekit/transform.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

#include "apekit/error.hpp"
#include "apekit/text.hpp"

namespace apekit::transform {

std::string_view kind_name(ChangeKind k) {
  switch (k) {
    case ChangeKind::split_br: return "split_br";
    case ChangeKind::joined_br: return "joined_br";
    case ChangeKind::removed_tag: return "removed_tag";
    case ChangeKind::removed_music: return "removed_music";
    case ChangeKind::removed_leading_hyphen: return "removed_leading_hyphen";
  }
  return "?";
}

ChangeKind parse_kind(std::string_view name) {
  for (auto k : {ChangeKind::split_br, ChangeKind::joined_br, ChangeKind::removed_tag,
                 ChangeKind::removed_music, ChangeKind::removed_leading_hyphen}) {
    if (kind_name(k) == name) return k;
  }
  throw DataError("unknown change kind '" + std::string(name) + "'");
}

std::string_view anchor_name(Anchor a) {
  switch (a) {
    case Anchor::start: return "start";
    case Anchor::end: return "end";
    case Anchor::interior: return "interior";
  }
  return "?";
}

Anchor parse_anchor(std::string_view name) {
  if (name == "start") return Anchor::start;
  if (name == "end") return Anchor::end;
  if (name == "interior") return Anchor::interior;
  throw DataError("unknown anchor '" + std::string(name) + "'");
}

const FieldLog& ChangeLog::field(Field f) const {
  switch (f) {
    case Field::src: return src;
    case Field::mt: return mt;
    case Field::pe: break;
  }
  return pe;
}

FieldLog& ChangeLog::field(Field f) {
  return const_cast<FieldLog&>(static_cast<const ChangeLog&>(*this).field(f));
}

bool ChangeLog::empty() const {
  return src.records.empty() && mt.records.empty() && pe.records.empty();
}

std::string CleanTriplet::part_id() const { return parent_id + "#" + std::to_string(part_index); }

namespace {

constexpr std::size_t npos = std::string_view::npos;

bool is_hspace(char c) { return c == ' ' || c == '\t'; }

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

/// End of a <br> tag starting at i, or npos.
std::size_t match_br(std::string_view s, std::size_t i) {
  if (s[i] != '<' || i + 2 >= s.size()) return npos;
  if ((s[i + 1] != 'b' && s[i + 1] != 'B') || (s[i + 2] != 'r' && s[i + 2] != 'R')) return npos;
  std::size_t j = i + 3;
  while (j < s.size() && is_hspace(s[j])) ++j;
  if (j < s.size() && s[j] == '/') ++j;
  while (j < s.size() && is_hspace(s[j])) ++j;
  if (j < s.size() && s[j] == '>') return j + 1;
  return npos;
}

struct Span {
  std::size_t begin, end;
};

/// <br> occurrences widened over adjacent horizontal whitespace.
std::vector<Span> find_br(std::string_view s) {
  std::vector<Span> spans;
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto e = match_br(s, i);
    if (e == npos) continue;
    std::size_t b = i;
    while (b > prev_end && is_hspace(s[b - 1])) --b;
    std::size_t end = e;
    while (end < s.size() && is_hspace(s[end])) ++end;
    spans.push_back({b, end});
    prev_end = end;
    i = end - 1;
  }
  return spans;
}

/// Leftmost match of <[a-zA-Z/][^>]*>.
Span find_tag(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != '<') continue;
    if (!is_ascii_letter(s[i + 1]) && s[i + 1] != '/') continue;
    const auto close = s.find('>', i + 2);
    if (close == npos) return {npos, npos};
    return {i, close + 1};
  }
  return {npos, npos};
}

bool is_music(char32_t cp, const TransformOptions& options) {
  if (cp == 0x2669 || cp == 0x266A || cp == 0x266B || cp == 0x266C) return true;
  return std::find(options.extra_music_symbols.begin(), options.extra_music_symbols.end(), cp) !=
         options.extra_music_symbols.end();
}

Span find_music(std::string_view s, const TransformOptions& options) {
  for (std::size_t i = 0; i < s.size();) {
    const auto d = text::decode_at(s, i);
    if (d.valid && is_music(d.value, options)) return {i, i + d.length};
    i += d.length;
  }
  return {npos, npos};
}

Anchor anchor_for(std::size_t offset, std::size_t inserted_len, std::size_t text_len) {
  if (offset == 0) return Anchor::start;
  if (offset + inserted_len == text_len) return Anchor::end;
  return Anchor::interior;
}

/// Deletes [a, b) from s, absorbing one adjacent space when the deletion
/// would otherwise leave a doubled, leading or trailing space.
void remove_span(std::string& s, std::size_t a, std::size_t b, ChangeKind kind,
                 std::size_t segment, std::vector<ChangeRecord>& records) {
  const bool left_space = a > 0 && s[a - 1] == ' ';
  const bool right_space = b < s.size() && s[b] == ' ';
  if (left_space && (right_space || b == s.size())) {
    --a;
  } else if (a == 0 && right_space) {
    ++b;
  }
  ChangeRecord rec{kind, segment, a, s.substr(a, b - a), "", Anchor::interior};
  s.erase(a, b - a);
  rec.anchor = anchor_for(a, 0, s.size());
  records.push_back(std::move(rec));
}

/// Undoes one record on `s` exactly.
void undo(std::string& s, const ChangeRecord& rec) {
  s.replace(rec.offset, rec.replacement.size(), rec.payload);
}

struct BrResult {
  std::vector<std::string> parts;
  std::vector<ChangeRecord> records;
};

BrResult handle_br(std::string_view s, bool split) {
  BrResult out;
  const auto spans = find_br(s);
  if (split) {
    std::size_t pos = 0;
    for (const auto& sp : spans) {
      out.parts.emplace_back(s.substr(pos, sp.begin - pos));
      out.records.push_back({ChangeKind::split_br, out.parts.size() - 1, out.parts.back().size(),
                             std::string(s.substr(sp.begin, sp.end - sp.begin)), "",
                             Anchor::interior});
      pos = sp.end;
    }
    out.parts.emplace_back(s.substr(pos));
    return out;
  }
  std::string joined;
  std::size_t pos = 0;
  std::vector<ChangeRecord> pending;
  for (const auto& sp : spans) {
    joined.append(s.substr(pos, sp.begin - pos));
    pending.push_back({ChangeKind::joined_br, 0, joined.size(),
                       std::string(s.substr(sp.begin, sp.end - sp.begin)), " ", Anchor::interior});
    joined.push_back(' ');
    pos = sp.end;
  }
  joined.append(s.substr(pos));
  for (auto& rec : pending) rec.anchor = anchor_for(rec.offset, 1, joined.size());
  out.parts.push_back(std::move(joined));
  out.records = std::move(pending);
  return out;
}

}  // namespace

std::size_t count_br(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (match_br(text, i) != npos) ++n;
  }
  return n;
}

namespace {

bool should_split(const Triplet& t) {
  const auto n = count_br(t.src);
  return n > 0 && n == count_br(t.mt) && n == count_br(t.pe);
}

}  // namespace

std::vector<Triplet> split_multiline(const Triplet& triplet) {
  const bool split = should_split(triplet);
  if (!split) {
    Triplet t = triplet;
    for (Field f : {Field::src, Field::mt, Field::pe}) {
      field_of(t, f) = handle_br(field_of(triplet, f), false).parts.front();
    }
    return {t};
  }
  const auto src = handle_br(triplet.src, true).parts;
  const auto mt = handle_br(triplet.mt, true).parts;
  const auto pe = handle_br(triplet.pe, true).parts;
  std::vector<Triplet> out;
  for (std::size_t k = 0; k < src.size(); ++k) {
    Triplet t{triplet.id + "#" + std::to_string(k), src[k], mt[k], pe[k], triplet.meta};
    t.meta["parent_id"] = triplet.id;
    t.meta["part_index"] = std::to_string(k);
    out.push_back(std::move(t));
  }
  return out;
}

StripResult strip_markup(std::string_view input, const TransformOptions& options,
                         std::size_t segment) {
  StripResult r{std::string(input), {}};
  auto& s = r.clean;
  for (Span sp = find_tag(s); sp.begin != npos; sp = find_tag(s)) {
    remove_span(s, sp.begin, sp.end, ChangeKind::removed_tag, segment, r.records);
  }
  for (Span sp = find_music(s, options); sp.begin != npos; sp = find_music(s, options)) {
    remove_span(s, sp.begin, sp.end, ChangeKind::removed_music, segment, r.records);
  }
  if (!s.empty() && s.front() == '-') {
    const std::size_t len = (s.size() > 1 && s[1] == ' ') ? 2 : 1;
    r.records.push_back({ChangeKind::removed_leading_hyphen, segment, 0, s.substr(0, len), "",
                         Anchor::start});
    s.erase(0, len);
  }
  return r;
}

bool is_clean(std::string_view text, const TransformOptions& options) {
  if (!text.empty() && text.front() == '-') return false;
  if (count_br(text) > 0) return false;
  if (find_tag(text).begin != npos) return false;
  return find_music(text, options).begin == npos;
}

Preprocessed preprocess(const Triplet& triplet, const TransformOptions& options) {
  Preprocessed out;
  out.log.triplet_id = triplet.id;
  const bool split = should_split(triplet);
  std::size_t n_parts = 1;
  for (Field f : {Field::src, Field::mt, Field::pe}) {
    auto& fl = out.log.field(f);
    auto br = handle_br(field_of(triplet, f), split);
    fl.records = std::move(br.records);
    for (std::size_t k = 0; k < br.parts.size(); ++k) {
      auto stripped = strip_markup(br.parts[k], options, k);
      fl.cleaned.push_back(std::move(stripped.clean));
      std::move(stripped.records.begin(), stripped.records.end(), std::back_inserter(fl.records));
    }
    n_parts = fl.cleaned.size();
  }
  for (std::size_t k = 0; k < n_parts; ++k) {
    out.parts.push_back(
        {triplet.id, k, out.log.src.cleaned[k], out.log.mt.cleaned[k], out.log.pe.cleaned[k]});
  }
  return out;
}

namespace {

constexpr std::size_t kMaxAlignmentCells = std::size_t{1} << 22;

/// For each byte of `a`, the index of the byte of `b` it is aligned to by a
/// longest common subsequence, or npos. Returns empty when too large.
std::vector<std::size_t> align_bytes(std::string_view a, std::string_view b, bool& ok) {
  const std::size_t n = a.size(), m = b.size();
  ok = (n + 1) * (m + 1) <= kMaxAlignmentCells;
  std::vector<std::size_t> map(n, npos);
  if (!ok) return map;
  std::vector<std::uint32_t> lcs((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return lcs[i * (m + 1) + j]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && at(i, j) == at(i + 1, j + 1) + 1) {
      map[i++] = j++;
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return map;
}

/// Re-inserts one record into edited text `out`, using `orig` (the logged
/// text in the same undo state) to locate interior anchors.
bool reattach(std::string& out, const std::string& orig, const ChangeRecord& rec) {
  const auto r = rec.replacement.size();
  switch (rec.anchor) {
    case Anchor::start:
      if (out.compare(0, r, rec.replacement) == 0) {
        out.replace(0, r, rec.payload);
      } else {
        out.insert(0, rec.payload);
      }
      return true;
    case Anchor::end:
      if (out.size() >= r && out.compare(out.size() - r, r, rec.replacement) == 0) {
        out.replace(out.size() - r, r, rec.payload);
      } else {
        out.append(rec.payload);
      }
      return true;
    case Anchor::interior:
      break;
  }
  const std::size_t o = rec.offset;
  if (o == 0 || o + r >= orig.size()) return false;
  bool ok = false;
  const auto map = align_bytes(orig, out, ok);
  if (!ok || map[o - 1] == npos) return false;
  const std::size_t j = map[o - 1] + 1;
  for (std::size_t k = 0; k < r; ++k) {
    if (map[o + k] != j + k) return false;
  }
  if (o + r < orig.size() && map[o + r] != j + r) return false;
  out.replace(j, r, rec.payload);
  return true;
}

}  // namespace

Restored postprocess_detailed(const std::vector<std::string>& outputs, const ChangeLog& log,
                              Field field) {
  const auto& fl = log.field(field);
  if (outputs.size() != fl.parts()) {
    throw DataError("triplet '" + log.triplet_id + "': expected " + std::to_string(fl.parts()) +
                    " part(s) for field " + std::string(field_name(field)) + ", got " +
                    std::to_string(outputs.size()));
  }
  Restored result;
  std::vector<std::string> restored(outputs.size());
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    std::string out = outputs[k];
    std::string orig = fl.cleaned[k];
    const bool identical = out == orig;
    for (auto it = fl.records.rbegin(); it != fl.records.rend(); ++it) {
      if (it->segment != k || it->kind == ChangeKind::split_br) continue;
      if (identical) {
        undo(out, *it);
      } else if (!reattach(out, orig, *it)) {
        ++result.irrecoverable;
      }
      undo(orig, *it);
    }
    restored[k] = std::move(out);
  }
  result.text = restored.empty() ? std::string() : restored.front();
  std::size_t next = 1;
  for (const auto& rec : fl.records) {
    if (rec.kind != ChangeKind::split_br) continue;
    if (next >= restored.size()) throw DataError("change log has more separators than parts");
    result.text += rec.payload;
    result.text += restored[next++];
  }
  return result;
}

std::string postprocess(const std::vector<std::string>& outputs, const ChangeLog& log,
                        Field field) {
  return postprocess_detailed(outputs, log, field).text;
}

}  // namespace apekit::transform
