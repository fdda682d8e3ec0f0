#include <doctest.h>

#include <algorithm>

#include "stylomech/stylo_en.hpp"
#include "stylomech/stylo_rs.hpp"
#include "stylomech/synthgen.hpp"
#include "support.hpp"

using namespace stylomech;

TEST_SUITE("synthgen") {
  TEST_CASE("documents have the requested word count") {
    const auto docs = gen_author_docs(base_style(false), 3, 150, 4);
    REQUIRE(docs.size() == 3);
    for (const auto& d : docs) CHECK(count_words(tokenize(d)) == 150);
    CHECK(docs == gen_author_docs(base_style(false), 3, 150, 4));
    CHECK(docs != gen_author_docs(base_style(false), 3, 150, 5));
  }

  TEST_CASE("zero vowel drop keeps lexicon forms") {
    auto style = base_style(true);
    style.rs_vowel_drop_prob = 0.0;
    style.en_mix_prob = 0.0;
    const auto& lex = RsLexicon::builtin();
    for (const auto& doc : gen_author_docs(style, 2, 300, 9)) {
      for (const auto& t : tokenize(doc)) {
        if (t.kind == TokenKind::Word) CHECK_MESSAGE(lex.is_rs(fold_case(t.text)), t.text);
      }
    }
  }

  TEST_CASE("full english mix saturates the ratio") {
    auto style = base_style(true);
    style.en_mix_prob = 1.0;
    const auto& lex = RsLexicon::builtin();
    const auto doc = gen_author_docs(style, 1, 120, 2)[0];
    for (const auto& t : tokenize(doc)) {
      if (t.kind == TokenKind::Word) CHECK(classify_word(t.text, lex) == WordLanguage::English);
    }
    CHECK(en_si_ratio(as_chunk(doc), lex) == 120.0);
  }

  TEST_CASE("rs words stay classifiable") {
    const auto& lex = RsLexicon::builtin();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto style = sample_style(true, 1.0, seed);
      std::size_t words = 0;
      std::size_t known = 0;
      for (const auto& doc : gen_author_docs(style, 2, 300, seed + 100)) {
        for (const auto& t : tokenize(doc)) {
          if (t.kind != TokenKind::Word) continue;
          ++words;
          if (classify_word(t.text, lex) != WordLanguage::Unknown) ++known;
        }
      }
      CHECK(static_cast<double>(known) >= 0.9 * static_cast<double>(words));
    }
  }

  TEST_CASE("punctuation rates are hit") {
    const auto style = base_style(false);
    const auto docs = gen_author_docs(style, 10, 1000, 12);
    std::vector<Token> all;
    for (const auto& d : docs) {
      const auto t = tokenize(d);
      all.insert(all.end(), t.begin(), t.end());
    }
    REQUIRE(all.size() >= 5000);
    const auto rates = punct_freq(all);
    // Only the comma: the rarer marks see too few events for a 15% band.
    CHECK(rates.at(",") == doctest::Approx(style.punct_rates.at(",")).epsilon(0.15));
  }

  TEST_CASE("sample_style") {
    const auto base = base_style(false);
    const auto zero = sample_style(false, 0.0, 99);
    CHECK(zero.mean_sentence_len == base.mean_sentence_len);
    CHECK(zero.punct_rates == base.punct_rates);
    CHECK(zero.vocab == base.vocab);
    const auto a = sample_style(false, 1.0, 1);
    const auto b = sample_style(false, 1.0, 2);
    CHECK(a.mean_sentence_len != b.mean_sentence_len);
  }

  TEST_CASE("corpus layout and errors") {
    CorpusSpec spec;
    spec.n_authors = 3;
    spec.docs_per_author = 2;
    spec.words_per_doc = 50;
    spec.seed = 6;
    const auto c = gen_corpus(spec);
    const auto docs = c.documents();
    REQUIRE(docs.size() == 6);
    CHECK(docs[0].author_id == c.authors[0].id);
    CHECK(docs[5].author_id == c.authors[2].id);
    const auto threaded = gen_corpus(spec, 3);
    CHECK(synth_config_text(threaded) == synth_config_text(c));
    CHECK(threaded.documents()[4].text == docs[4].text);

    spec.n_authors = 1;
    CHECK_ERRC(gen_corpus(spec), Errc::InvalidParams);
    spec.n_authors = 2;
    spec.spread = -1;
    CHECK_ERRC(gen_corpus(spec), Errc::InvalidParams);
    auto bad = base_style(true);
    bad.en_mix_prob = 1.5;
    CHECK_ERRC(gen_author_docs(bad, 1, 10, 1), Errc::InvalidParams);
  }
}
