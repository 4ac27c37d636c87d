// Exhaustive shift search used to check the greedy TER. Shares no code with
// the greedy path: its own interning, packing and edit distance.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "apekit/error.hpp"
#include "apekit/ter.hpp"

namespace apekit::ter {

namespace {

// Up to 8 tokens of 8 bits each.
using Packed = std::uint64_t;
using Tokens = std::array<std::uint8_t, kOracleMaxTokens>;

Packed pack(const Tokens& v, std::size_t n) {
  Packed p = 0;
  for (std::size_t i = 0; i < n; ++i) p |= static_cast<Packed>(v[i]) << (8 * i);
  return p;
}

Tokens unpack(Packed p, std::size_t n) {
  Tokens v{};
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>(p >> (8 * i));
  return v;
}

std::size_t levenshtein(const Tokens& a, std::size_t n, const Tokens& b, std::size_t m) {
  std::size_t d[kOracleMaxTokens + 1][kOracleMaxTokens + 1];
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    }
  }
  return d[n][m];
}

}  // namespace

std::size_t ter_oracle_tokens(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref, std::size_t depth) {
  if (hyp.size() > kOracleMaxTokens || ref.size() > kOracleMaxTokens) {
    throw ConfigError("TER oracle handles at most " + std::to_string(kOracleMaxTokens) +
                      " tokens per side");
  }
  if (depth > kOracleMaxDepth) {
    throw ConfigError("TER oracle handles at most " + std::to_string(kOracleMaxDepth) +
                      " shifts");
  }
  std::map<std::string, std::uint8_t> vocab;
  auto id = [&](const std::string& s) {
    return vocab.emplace(s, static_cast<std::uint8_t>(vocab.size() + 1)).first->second;
  };
  Tokens h{}, r{};
  const std::size_t n = hyp.size(), m = ref.size();
  for (std::size_t i = 0; i < n; ++i) h[i] = id(hyp[i]);
  for (std::size_t j = 0; j < m; ++j) r[j] = id(ref[j]);

  std::size_t best = levenshtein(h, n, r, m);
  std::unordered_set<Packed> seen{pack(h, n)};
  std::vector<Packed> frontier{pack(h, n)};
  for (std::size_t d = 1; d <= depth && d < best; ++d) {
    std::vector<Packed> next;
    for (Packed state : frontier) {
      const Tokens v = unpack(state, n);
      for (std::size_t start = 0; start < n; ++start) {
        for (std::size_t len = 1; start + len <= n; ++len) {
          Tokens rest{};
          std::size_t k = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (i < start || i >= start + len) rest[k++] = v[i];
          }
          for (std::size_t dest = 0; dest <= k; ++dest) {
            if (dest == start) continue;
            Tokens moved{};
            std::size_t o = 0;
            for (std::size_t i = 0; i < dest; ++i) moved[o++] = rest[i];
            for (std::size_t i = 0; i < len; ++i) moved[o++] = v[start + i];
            for (std::size_t i = dest; i < k; ++i) moved[o++] = rest[i];
            const Packed p = pack(moved, n);
            if (!seen.insert(p).second) continue;
            next.push_back(p);
            best = std::min(best, d + levenshtein(moved, n, r, m));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

std::size_t ter_oracle(const std::string& hyp, const std::string& ref, std::size_t depth,
                       const metrics::TokenizerConfig& tok) {
  return ter_oracle_tokens(metrics::tokenize(hyp, tok), metrics::tokenize(ref, tok), depth);
}

}  // namespace apekit::ter
