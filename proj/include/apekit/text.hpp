#pragma once

// UTF-8 helpers shared by every module. Text is held as UTF-8 std::string;
// invalid byte sequences are tolerated and counted as one scalar per byte.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace apekit::text {

struct DecodedScalar {
  char32_t value;      // U+FFFD when invalid
  std::size_t length;  // bytes consumed, >= 1
  bool valid;
};

/// Decodes the scalar starting at byte `pos`. Requires pos < s.size().
DecodedScalar decode_at(std::string_view s, std::size_t pos);

std::vector<char32_t> to_scalars(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::string to_utf8(const std::vector<char32_t>& scalars);

bool is_whitespace(char32_t cp);
bool is_punctuation(char32_t cp);

/// Simple case mapping covering Latin, Latin-1, Latin Extended-A, Greek and
/// Cyrillic capitals. Idempotent: to_lower(to_lower(c)) == to_lower(c).
char32_t to_lower(char32_t cp);
std::string lowercase(std::string_view s);

/// Strips leading and trailing Unicode whitespace.
std::string_view trim(std::string_view s);

/// Number of Unicode scalars in `s` after trimming.
std::size_t char_count(std::string_view s);

/// Splits on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace apekit::text
