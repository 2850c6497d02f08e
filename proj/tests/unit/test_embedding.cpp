#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "miniconf/embedding.hpp"
#include "miniconf/ingest.hpp"
#include "../support/fixtures.hpp"

using namespace miniconf;
namespace ts = testing_support;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Vocabulary of 200 tokens with Gaussian vectors in 24-d.
struct RandomCorpus {
  WordVectorTable table{24};
  std::vector<std::string> vocab;
  std::vector<std::vector<std::string>> abstracts;
};

RandomCorpus random_corpus(std::uint64_t seed, std::size_t docs) {
  RandomCorpus c;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    std::string tok = "w" + std::to_string(i);
    std::vector<double> v(24);
    for (auto& x : v) x = g(rng);
    c.table.insert(tok, v);
    c.vocab.push_back(tok);
  }
  std::uniform_int_distribution<std::size_t> pick(0, c.vocab.size() + 40);  // some out-of-table
  std::uniform_int_distribution<int> len(1, 80);
  for (std::size_t d = 0; d < docs; ++d) {
    std::vector<std::string> words;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      auto k = pick(rng);
      words.push_back(k < c.vocab.size() ? c.vocab[k] : "oov" + std::to_string(k));
    }
    c.abstracts.push_back(words);
  }
  return c;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

TEST_SUITE("embedding") {
  TEST_CASE("tokenize") {
    CHECK(tokenize("Adversarial GANs!") == std::vector<std::string>{"adversarial", "gans"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("state-of-the-art") == std::vector<std::string>{"state", "of", "the", "art"});
    CHECK(tokenize("R2D2 caf\xc3\xa9") == std::vector<std::string>{"r2d2", "caf\xc3\xa9"});
  }

  TEST_CASE("single in-table token gives its normalized vector") {
    WordVectorTable t(2);
    t.insert("gan", {3, 4});
    auto e = embed_document("GAN", t);
    CHECK(e.vector[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(e.vector[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(e.coverage == 1.0);
  }

  TEST_CASE("no in-table tokens gives zeros") {
    WordVectorTable t(3);
    t.insert("a", {1, 0, 0});
    auto e = embed_document("nothing here", t);
    CHECK(e.vector == std::vector<double>{0, 0, 0});
    CHECK(e.coverage == 0.0);
  }

  TEST_CASE("two orthogonal tokens average to the diagonal") {
    WordVectorTable t(2);
    t.insert("a", {1, 0});
    t.insert("b", {0, 1});
    auto e = embed_document("a b", t);
    CHECK(std::abs(e.vector[0] - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(e.vector[1] - 1 / std::sqrt(2.0)) < 1e-15);
  }

  TEST_CASE("coverage counts token occurrences") {
    WordVectorTable t(1);
    t.insert("a", {1});
    CHECK(embed_document("a a x y", t).coverage == 0.5);
  }

  TEST_CASE("cancelling vectors give zeros") {
    WordVectorTable t(2);
    t.insert("up", {0, 1});
    t.insert("down", {0, -1});
    auto e = embed_document("up down", t);
    CHECK(e.vector == std::vector<double>{0, 0});
  }

  TEST_CASE("properties on random abstracts") {
    auto c = random_corpus(42, 100);
    auto scaled = c.table.scaled(7.25);
    std::mt19937_64 rng(43);
    for (const auto& words : c.abstracts) {
      auto base = embed_document(join(words), c.table);
      auto shuffled = words;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(embed_document(join(shuffled), c.table).vector == base.vector);
      auto s = embed_document(join(words), scaled);
      for (std::size_t k = 0; k < base.vector.size(); ++k) CHECK(std::abs(s.vector[k] - base.vector[k]) < 1e-12);
      if (norm(base.vector) > 0) CHECK(std::abs(norm(base.vector) - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("word vector file parsing") {
    auto t = parse_word_vectors("3 2\nA 1 0\nb 0 1\na 5 5\n");
    CHECK(t.dimension() == 2);
    CHECK(t.size() == 2);
    CHECK(*t.find("a") == std::vector<double>{1, 0});

    auto headerless = parse_word_vectors("x 1 2 3\r\ny 4 5 6\n\n");
    CHECK(headerless.dimension() == 3);
    CHECK(headerless.size() == 2);
  }

  TEST_CASE("word vector file errors") {
    CHECK_THROWS_AS(parse_word_vectors(""), WordVectorError);
    CHECK_THROWS_AS(parse_word_vectors("x 1 2\ny 1\n"), WordVectorError);
    CHECK_THROWS_AS(parse_word_vectors("x 1 two\n"), WordVectorError);
    CHECK_THROWS_AS(parse_word_vectors("2 2\nx 1 2\ny 1 nan\n"), WordVectorError);
    CHECK_THROWS_AS(load_word_vectors("/nonexistent/wordvecs.txt"), WordVectorError);
    try {
      parse_word_vectors("x 1 2\ny 1\n");
    } catch (const WordVectorError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("corpus rows match per-document embedding") {
    auto b = load_conference(ts::fixture("conf3"));
    WordVectorTable t(2);
    t.insert("abstract", {1, 0});
    t.insert("quotes", {0, 1});
    std::vector<std::string> log;
    auto c = embed_corpus(b, t, [&](std::string_view l) { log.emplace_back(l); });
    REQUIRE(c.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(c.rows[i].paper_uid == b.papers[i].uid);
      CHECK(c.rows[i].vector == embed_document(b.papers[i].abstract, t).vector);
    }
    // p3 has an empty abstract: zero row, still present.
    CHECK(c.rows[2].vector == std::vector<double>{0, 0});
    CHECK(std::abs(norm(c.rows[0].vector) - 1) < 1e-12);
    CHECK(std::find(c.low_coverage.begin(), c.low_coverage.end(), "p3") != c.low_coverage.end());
    CHECK_FALSE(log.empty());

    ConferenceBundle empty;
    CHECK(embed_corpus(empty, t).rows.empty());
  }

  TEST_CASE("fixture vectors cover the fixture abstracts") {
    auto b = load_conference(ts::fixture("conf12"));
    auto t = load_word_vectors(ts::fixture("conf12/wordvecs.txt"));
    CHECK(t.dimension() == 16);
    auto c = embed_corpus(b, t);
    for (const auto& r : c.rows) CHECK(std::abs(norm(r.vector) - 1.0) < 1e-9);
  }
}
