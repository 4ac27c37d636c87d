#pragma once

// Change-tracked cleanup of subtitle segments and its inverse.
//
// Every edit made during preprocessing is logged as a ChangeRecord holding
// the removed literal, the text put in its place (usually nothing) and the
// byte offset where that happened, in the text as it was right after the
// edit. Undoing the records in reverse order rebuilds the original exactly.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "apekit/triplet.hpp"

namespace apekit::transform {

enum class ChangeKind {
  split_br,                // <br> between two parts of a split segment
  joined_br,               // <br> replaced by a space (unequal <br> counts)
  removed_tag,
  removed_music,
  removed_leading_hyphen,
};

std::string_view kind_name(ChangeKind k);
ChangeKind parse_kind(std::string_view name);

/// Where a record re-attaches when the system has edited the segment.
enum class Anchor { start, end, interior };

std::string_view anchor_name(Anchor a);
Anchor parse_anchor(std::string_view name);

struct ChangeRecord {
  ChangeKind kind;
  std::size_t segment = 0;  // part index
  std::size_t offset = 0;   // byte offset
  std::string payload;      // literal removed from the text
  std::string replacement;  // literal inserted in its place
  Anchor anchor = Anchor::interior;

  friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

/// Log for one field of one triplet.
struct FieldLog {
  std::vector<std::string> cleaned;  // one entry per part
  std::vector<ChangeRecord> records;  // application order

  std::size_t parts() const { return cleaned.size(); }
  friend bool operator==(const FieldLog&, const FieldLog&) = default;
};

struct ChangeLog {
  std::string triplet_id;
  FieldLog src, mt, pe;

  const FieldLog& field(Field f) const;
  FieldLog& field(Field f);
  bool empty() const;
  friend bool operator==(const ChangeLog&, const ChangeLog&) = default;
};

struct CleanTriplet {
  std::string parent_id;
  std::size_t part_index = 0;
  std::string src, mt, pe;

  /// Id used for the part in a cleaned corpus: "<parent>#<part>".
  std::string part_id() const;
  friend bool operator==(const CleanTriplet&, const CleanTriplet&) = default;
};

struct TransformOptions {
  /// Added to U+2669, U+266A, U+266B and U+266C.
  std::vector<char32_t> extra_music_symbols;
};

/// Counts <br>, <br/> and <br /> case-insensitively.
std::size_t count_br(std::string_view text);

/// Splits at <br> when src, mt and pe carry the same non-zero number of
/// them; otherwise returns the triplet with each <br> replaced by a space.
/// Parts carry meta "parent_id" and "part_index".
std::vector<Triplet> split_multiline(const Triplet& triplet);

struct StripResult {
  std::string clean;
  std::vector<ChangeRecord> records;
};

/// Removes tags, music symbols and one leading hyphen (plus one space).
/// A removal that would leave a doubled, leading or trailing space takes one
/// adjacent space with it.
StripResult strip_markup(std::string_view text, const TransformOptions& options = {},
                         std::size_t segment = 0);

/// True when `text` has no tag, music symbol, <br> or leading hyphen.
bool is_clean(std::string_view text, const TransformOptions& options = {});

struct Preprocessed {
  std::vector<CleanTriplet> parts;
  ChangeLog log;
};

Preprocessed preprocess(const Triplet& triplet, const TransformOptions& options = {});

struct Restored {
  std::string text;
  std::size_t irrecoverable = 0;  // records dropped because their context was edited away
};

/// Re-applies the logged changes of `field` to system outputs, one per part.
/// Parts equal to the logged cleaned text are restored exactly; edited parts
/// get boundary-anchored records re-attached at the segment edges and
/// interior records re-inserted only where both neighbours survived.
/// Throws DataError when outputs.size() differs from the logged part count.
Restored postprocess_detailed(const std::vector<std::string>& outputs, const ChangeLog& log,
                              Field field = Field::mt);

std::string postprocess(const std::vector<std::string>& outputs, const ChangeLog& log,
                        Field field = Field::mt);

}  // namespace apekit::transform
