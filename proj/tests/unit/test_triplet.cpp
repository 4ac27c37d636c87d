#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "apekit/error.hpp"
#include "apekit/random.hpp"
#include "apekit/text.hpp"
#include "apekit/triplet.hpp"
#include "../support/gen.hpp"

using namespace apekit;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("apekit_unit_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_SUITE("triplet_model") {
  TEST_CASE("utf8 helpers") {
    CHECK(text::char_count("  Straße  ") == 6);
    CHECK(text::char_count("") == 0);
    CHECK(text::lowercase("ÄÖÜ ẞ ΣΑ Дом") == "äöü ß σα дом");
    CHECK(text::split_whitespace(" a \t b\xC2\xA0" "c ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(text::trim("\xE3\x80\x80x\xE3\x80\x80") == "x");
    // One scalar per invalid byte.
    CHECK(text::char_count("a\xFF\xC3") == 3);
  }

  TEST_CASE("one-line JSONL gives one triplet with an auto id") {
    const auto c = parse_corpus(R"({"src":"Hi","mt":"Hallo","pe":"Hallo"})", CorpusFormat::jsonl);
    REQUIRE(c.size() == 1);
    CHECK(c[0].id == "00000001");
    CHECK(c[0].pe == "Hallo");
  }

  TEST_CASE("empty input gives an empty corpus") {
    CHECK(parse_corpus("", CorpusFormat::jsonl).empty());
    CHECK(parse_corpus("", CorpusFormat::tsv).empty());
    const auto p = temp_path("empty.jsonl");
    write_text(p, "");
    CHECK(read_corpus(p, CorpusFormat::jsonl).empty());
  }

  TEST_CASE("TSV arity errors name the line") {
    try {
      parse_corpus("a\tb\tc\nonly\ttwo\n", CorpusFormat::tsv);
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("malformed JSONL errors name line and field") {
    try {
      parse_corpus("{\"src\":\"a\",\"mt\":\"b\",\"pe\":\"c\"}\n{\"src\":\"a\",\"pe\":\"c\"}\n",
                   CorpusFormat::jsonl);
      FAIL("expected an error");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("mt") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_corpus("{\"src\":1,\"mt\":\"b\",\"pe\":\"c\"}", CorpusFormat::jsonl),
                    DataError);
    CHECK_THROWS_AS(parse_corpus("[1,2]", CorpusFormat::jsonl), DataError);
  }

  TEST_CASE("duplicate explicit ids are rejected") {
    const std::string two = "{\"id\":\"x\",\"src\":\"a\",\"mt\":\"b\",\"pe\":\"c\"}\n"
                            "{\"id\":\"x\",\"src\":\"d\",\"mt\":\"e\",\"pe\":\"f\"}\n";
    CHECK_THROWS_AS(parse_corpus(two, CorpusFormat::jsonl), DataError);
    Corpus c;
    c.add({"a", "s", "m", "p", {}});
    CHECK_THROWS_AS(c.add({"a", "s", "m", "p", {}}), DataError);
  }

  TEST_CASE("blank JSONL lines keep line-based ids") {
    const auto c = parse_corpus("\n{\"src\":\"a\",\"mt\":\"b\",\"pe\":\"c\"}\n", CorpusFormat::jsonl);
    REQUIRE(c.size() == 1);
    CHECK(c[0].id == "00000002");
  }

  TEST_CASE("write_corpus of one triplet is one line") {
    Corpus c;
    c.add({"1", "Hi", "Hallo", "Hallo", {}});
    const auto p = temp_path("one.jsonl");
    write_corpus(c, p, CorpusFormat::jsonl);
    CHECK(count_lines(p) == 1);
    CHECK(read_corpus(p, CorpusFormat::jsonl) == c);
  }

  TEST_CASE("tabs cannot be written as TSV but can as JSONL") {
    Corpus c;
    c.add({"1", "a\tb", "m", "p", {}});
    CHECK_THROWS_AS(format_corpus(c, CorpusFormat::tsv), DataError);
    const auto p = temp_path("tab.jsonl");
    write_corpus(c, p, CorpusFormat::jsonl);
    CHECK(read_corpus(p, CorpusFormat::jsonl) == c);
  }

  TEST_CASE("unwritable path is an I/O error") {
    Corpus c;
    c.add({"1", "a", "b", "c", {}});
    CHECK_THROWS_AS(write_corpus(c, "/nonexistent-dir/x/y.jsonl", CorpusFormat::jsonl), DataError);
  }

  TEST_CASE("JSONL round trip over 1000 random triplets") {
    Rng rng(42);
    Corpus c;
    for (std::size_t i = 0; i < 1000; ++i) {
      Triplet t;
      t.id = "id-" + std::to_string(i) + gen::messy_text(rng, 3);
      t.src = gen::messy_text(rng);
      t.mt = gen::messy_text(rng);
      t.pe = gen::messy_text(rng);
      if (rng.below(3) == 0) t.meta["origin"] = gen::messy_text(rng, 5);
      c.add(std::move(t));
    }
    const auto p = temp_path("roundtrip.jsonl");
    write_corpus(c, p, CorpusFormat::jsonl);
    CHECK(read_corpus(p, CorpusFormat::jsonl) == c);
  }

  TEST_CASE("TSV round trip with auto ids") {
    Rng rng(3);
    Corpus c;
    for (std::size_t i = 1; i <= 200; ++i) {
      c.add({auto_id(i), gen::sentence(rng), gen::sentence(rng), gen::sentence(rng), {}});
    }
    CHECK(parse_corpus(format_corpus(c, CorpusFormat::tsv), CorpusFormat::tsv) == c);
  }

  TEST_CASE("corpus order is insertion order") {
    Corpus c;
    for (const char* id : {"z", "a", "m"}) c.add({id, "s", "m", "p", {}});
    std::vector<std::string> ids;
    for (const auto& t : c) ids.push_back(t.id);
    CHECK(ids == std::vector<std::string>{"z", "a", "m"});
  }

  TEST_CASE("corpus stats") {
    Corpus c;
    c.add({"1", "Hello world", "Hallo Welt", "Hallo, Welt!", {}});
    c.add({"2", " Straße ", "x", "y z", {}});
    const auto s = corpus_stats(c);
    CHECK(s.n_triplets == 2);
    CHECK(s.tokens_src == 3);
    CHECK(s.tokens_mt == 3);
    CHECK(s.tokens_pe == 4);
    CHECK(s.chars_src == 11 + 6);
    CHECK(s.chars_mt == 10 + 1);
    CHECK(s.chars_pe == 12 + 3);
    CHECK(corpus_stats(Corpus{}) == CorpusStats{});
  }

  TEST_CASE("admissibility") {
    CHECK(is_admissible({"1", "a", "b", "c", {}}));
    CHECK_FALSE(is_admissible({"1", "a", "  ", "c", {}}));
  }

  TEST_CASE("field names") {
    CHECK(parse_field("pe") == Field::pe);
    CHECK(field_name(Field::mt) == "mt");
    CHECK_THROWS_AS(parse_field("tgt"), ConfigError);
  }
}
