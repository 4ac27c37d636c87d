#include <doctest.h>

#include <cmath>

#include "apekit/error.hpp"
#include "apekit/random.hpp"
#include "apekit/ter.hpp"
#include "../support/gen.hpp"

using namespace apekit;
using namespace apekit::ter;

namespace {

using Tokens = std::vector<std::string>;

Tokens split(const std::string& s) {
  Tokens t;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) t.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) t.push_back(cur);
  return t;
}

// Textbook two-row Levenshtein.
std::size_t lev(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

TEST_SUITE("ter") {
  TEST_CASE("identity is zero with an empty script") {
    const auto r = ter_sentence("the cat sat", "the cat sat");
    CHECK(r.score.score == 0.0);
    CHECK(r.script.shifts.empty());
    CHECK(r.score.edits.total() == 0);
  }

  TEST_CASE("swap needs one shift") {
    const auto r = ter_sentence("b a c", "a b c");
    CHECK(r.score.edits.shifts == 1);
    CHECK(r.score.edits.total() == 1);
    CHECK(r.score.score == doctest::Approx(1.0 / 3.0));
    CHECK(ter_oracle("b a c", "a b c") == 1);
  }

  TEST_CASE("single substitution chooses no shift") {
    const auto r = ter_sentence("a x c", "a b c");
    CHECK(r.score.edits.substitutions == 1);
    CHECK(r.script.shifts.empty());
    CHECK(r.score.score == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("empty hypothesis and empty reference") {
    const auto r = ter_sentence("", "a b c d");
    CHECK(r.score.score == 1.0);
    CHECK(r.score.edits.deletions == 4);
    CHECK_THROWS_AS(ter_sentence("a", "  "), DataError);
    CHECK(std::isinf(ter_tokens({"a"}, {}).score.score));
    CHECK(ter_tokens({}, {}).score.score == 0.0);
  }

  TEST_CASE("edit naming follows the hypothesis-to-reference convention") {
    const auto extra = ter_tokens({"a", "b", "x"}, {"a", "b"});
    CHECK(extra.score.edits.insertions == 1);
    const auto missing = ter_tokens({"a"}, {"a", "b"});
    CHECK(missing.score.edits.deletions == 1);
  }

  TEST_CASE("normalization lowercases and splits punctuation") {
    CHECK(ter_sentence("Hello, World!", "hello , world !").score.score == 0.0);
    CHECK(ter_sentence("Hello, World!", "hello , world !", metrics::kBleuTokenizer).score.score > 0);
  }

  TEST_CASE("corpus TER sums edits over reference lengths") {
    // (1 edit, ref_len 2) and (0 edits, ref_len 8).
    const std::vector<std::string> hyps{"a x", "a b c d e f g h"};
    const std::vector<std::string> refs{"a b", "a b c d e f g h"};
    const auto c = ter_corpus(hyps, refs);
    CHECK(c.edits.total() == 1);
    CHECK(c.ref_len == 10);
    CHECK(c.score == 0.1);
    CHECK_THROWS_AS(ter_corpus({"a"}, {"a", "b"}), DataError);
    CHECK(ter_corpus({"a b c"}, {"a c b"}).score == ter_sentence("a b c", "a c b").score.score);
  }

  TEST_CASE("apply_shift") {
    const Tokens t{"a", "b", "c", "d"};
    CHECK(apply_shift(t, {0, 1, 3}) == Tokens{"b", "c", "d", "a"});
    CHECK(apply_shift(t, {2, 2, 0}) == Tokens{"c", "d", "a", "b"});
    CHECK(apply_shift(t, {1, 1, 1}) == t);
  }

  TEST_CASE("levenshtein agrees with a textbook version") {
    Rng rng(4);
    for (int i = 0; i < 2000; ++i) {
      const auto a = gen::tokens(rng, 10, 4);
      const auto b = gen::tokens(rng, 10, 4);
      CHECK(edit_distance(a, b) == lev(a, b));
    }
  }

  TEST_CASE("bounds, zero law and script soundness on random pairs") {
    Rng rng(12);
    for (int i = 0; i < 3000; ++i) {
      const auto h = gen::tokens(rng, 8, 3 + rng.below(3));
      auto r = gen::tokens(rng, 8, 3 + rng.below(3));
      if (r.empty()) r.push_back("a");
      const auto res = ter_tokens(h, r);
      const auto greedy = res.score.edits.total();
      CHECK(ter_oracle_tokens(h, r) <= greedy);
      CHECK(greedy <= lev(h, r));
      CHECK((greedy == 0) == (h == r));
      CHECK(apply_edit_script(h, res.script) == r);
      for (const auto& s : res.script.shifts) CHECK(s.length <= kMaxShiftSize);
    }
  }

  TEST_CASE("longer sentences stay sound") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
      const auto r = gen::tokens(rng, 60, 8);
      auto h = r;
      rng.shuffle(h);
      if (r.empty()) continue;
      const auto res = ter_tokens(h, r);
      CHECK(res.score.edits.total() <= lev(h, r));
      CHECK(apply_edit_script(h, res.script) == r);
    }
  }

  TEST_CASE("scripts that do not fit are rejected") {
    EditScript s;
    s.shifts.push_back({3, 2, 0});
    CHECK_THROWS_AS(apply_edit_script({"a", "b"}, s), DataError);
  }

  TEST_CASE("oracle limits") {
    CHECK(ter_oracle("a b c", "a b c") == 0);
    CHECK_THROWS_AS(ter_oracle("a b c d e f g h i", "a"), ConfigError);
    CHECK_THROWS_AS(ter_oracle_tokens({"a"}, {"a"}, 4), ConfigError);
  }

  TEST_CASE("per-sentence results ignore thread count") {
    Rng rng(5);
    std::vector<std::string> h, r;
    for (int i = 0; i < 300; ++i) {
      h.push_back(gen::sentence(rng, 1, 12));
      r.push_back(gen::sentence(rng, 1, 12));
    }
    const auto a = ter_per_sentence(h, r, metrics::kTerNormalized, 1);
    const auto b = ter_per_sentence(h, r, metrics::kTerNormalized, 6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edits == b[i].edits);
    CHECK(ter_corpus(h, r, metrics::kTerNormalized, 1).score ==
          ter_corpus(h, r, metrics::kTerNormalized, 6).score);
  }
}
