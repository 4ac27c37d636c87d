#pragma once

// Translation edit rate with block shifts.
//
// Edit names follow the TERCOM convention: an insertion is a hypothesis
// token absent from the reference, a deletion is a reference token missing
// from the hypothesis.

#include <cstddef>
#include <string>
#include <vector>

#include "apekit/metrics.hpp"

namespace apekit::ter {

inline constexpr std::size_t kMaxShiftSize = 10;
inline constexpr std::size_t kMaxShiftDistance = 50;

struct EditCounts {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t shifts = 0;

  std::size_t total() const { return insertions + deletions + substitutions + shifts; }
  EditCounts& operator+=(const EditCounts& o);
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct TerScore {
  EditCounts edits;
  std::size_t ref_len = 0;
  double score = 0;  // edits.total() / ref_len
};

enum class Op { match, substitute, insert, remove };

char op_code(Op op);  // 'M', 'S', 'I', 'D'

struct AlignedOp {
  Op op;
  std::string hyp_token;  // empty for deletions
  std::string ref_token;  // empty for insertions
};

/// Moves hyp[start, start+length) to insertion index `dest` of the sequence
/// with that span taken out (0 <= dest <= size - length).
struct ShiftRecord {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t dest = 0;
};

struct EditScript {
  std::vector<ShiftRecord> shifts;  // applied in order to the hypothesis
  std::vector<AlignedOp> ops;       // alignment of the shifted hypothesis to the reference
};

/// Applies one shift to a token sequence.
std::vector<std::string> apply_shift(const std::vector<std::string>& tokens,
                                     const ShiftRecord& shift);

/// Replays `script` on hypothesis tokens, returning the token sequence it
/// produces. Throws DataError if the script does not fit the tokens.
std::vector<std::string> apply_edit_script(const std::vector<std::string>& hyp,
                                           const EditScript& script);

/// Word-level Levenshtein distance without shifts.
std::size_t edit_distance(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);

struct TerResult {
  TerScore score;
  EditScript script;
};

/// Greedy shift search on token sequences. An empty reference is allowed
/// here (every hypothesis token is an insertion, score 0 or +inf).
TerResult ter_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);

/// Throws DataError when the tokenized reference is empty.
TerResult ter_sentence(const std::string& hyp, const std::string& ref,
                       const metrics::TokenizerConfig& tok = metrics::kTerNormalized);

/// Sum of edits over sum of reference lengths.
TerScore ter_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                    const metrics::TokenizerConfig& tok = metrics::kTerNormalized,
                    unsigned threads = 1);

/// Per-sentence results, in input order.
std::vector<TerScore> ter_per_sentence(const std::vector<std::string>& hyps,
                                       const std::vector<std::string>& refs,
                                       const metrics::TokenizerConfig& tok, unsigned threads = 1);

inline constexpr std::size_t kOracleMaxTokens = 8;
inline constexpr std::size_t kOracleMaxDepth = 3;

/// Exhaustive minimum of (#shifts + edit distance) over every sequence of
/// at most `depth` unrestricted shifts. Desk-scale only: throws ConfigError
/// beyond kOracleMaxTokens tokens or kOracleMaxDepth shifts.
std::size_t ter_oracle_tokens(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref,
                              std::size_t depth = kOracleMaxDepth);

std::size_t ter_oracle(const std::string& hyp, const std::string& ref,
                       std::size_t depth = kOracleMaxDepth,
                       const metrics::TokenizerConfig& tok = metrics::kTerNormalized);

}  // namespace apekit::ter
