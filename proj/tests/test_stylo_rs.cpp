#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "stylomech/random.hpp"
#include "stylomech/stylo_rs.hpp"
#include "support.hpp"

using namespace stylomech;

TEST_SUITE("stylo_rs") {
  TEST_CASE("levenshtein examples") {
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("x", "x") == 0);
    CHECK(levenshtein("wides", "widhes") == 1);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("é", "e") == 1);
  }

  TEST_CASE("levenshtein agrees with the full-matrix oracle") {
    const char32_t alphabet[] = {U'a', U'b', U'c', U'é', U'ක'};
    Rng rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<char32_t> a(rng.index(9));
      std::vector<char32_t> b(rng.index(9));
      for (auto& c : a) c = alphabet[rng.index(std::size(alphabet))];
      for (auto& c : b) c = alphabet[rng.index(std::size(alphabet))];
      const auto sa = oracle::utf8(a);
      const auto sb = oracle::utf8(b);
      const auto d = levenshtein(sa, sb);
      CHECK(d == oracle::edit_distance(a, b));
      CHECK(d == levenshtein(sb, sa));
      CHECK(d <= std::max(a.size(), b.size()));
    }
  }

  TEST_CASE("consonant_skeleton examples") {
    CHECK(consonant_skeleton("warthamana") == "wrthmn");
    CHECK(consonant_skeleton("wrthmna") == "wrthmn");
    CHECK(consonant_skeleton("aeiou") == "");
    CHECK(consonant_skeleton("MaMa") == "mm");
  }

  TEST_CASE("classify_word examples") {
    const auto& lex = RsLexicon::builtin();
    CHECK(classify_word("the", lex) == WordLanguage::English);
    CHECK(classify_word("mama", lex) == WordLanguage::RomanizedSinhala);
    CHECK(classify_word("Mama", lex) == WordLanguage::RomanizedSinhala);
    CHECK(classify_word("zzzq", lex) == WordLanguage::Unknown);
    CHECK(classify_word("wrthmna", lex) == WordLanguage::RomanizedSinhala);
  }

  TEST_CASE("lexicon construction") {
    CHECK_ERRC(RsLexicon({"mama"}, {"mama"}), Errc::LexiconError);
    CHECK_ERRC(RsLexicon({}, {"the"}), Errc::LexiconError);
    const RsLexicon lex({"Mama", "giya"}, {"the"});
    CHECK(lex.is_rs("mama"));
    CHECK(lex.rs_size() == 2);
    CHECK(lex.has_rs_skeleton("gy"));
  }

  TEST_CASE("en_si_ratio examples") {
    const auto& lex = RsLexicon::builtin();
    CHECK(en_si_ratio(as_chunk("Mama gedara giya"), lex) == 0.0);
    CHECK(en_si_ratio(as_chunk("the and is of mama giya"), lex) == 2.0);
    CHECK(en_si_ratio(as_chunk("the and is of it"), lex) == 5.0);
    CHECK_ERRC(en_si_ratio(as_chunk("zzzq qqzz"), lex), Errc::NoClassifiableWords);
  }

  TEST_CASE("alignment examples") {
    const auto& lex = RsLexicon::builtin();
    const auto a = as_chunk("mama gedara giya");
    const auto self = align_rs_words(a, a, lex);
    REQUIRE(self.size() == 3);
    for (const auto& p : self) {
      CHECK(p.word_a == p.word_b);
      CHECK(p.index_a == p.index_b);
    }
    CHECK(align_rs_words(as_chunk("mama"), as_chunk("kxtrpl"), lex).empty());
    CHECK_ERRC(rs_pair_features(as_chunk("mama"), as_chunk("kxtrpl"), lex), Errc::NoClassifiableWords);
  }

  TEST_CASE("alignment is injective and symmetric") {
    const std::string words[] = {"mama", "mma", "gedara", "gdr", "giya", "gy", "the", "warthamana", "wrthmna",
                                 "uni", "wuni", "kxq", "oya", "eka"};
    const auto& lex = RsLexicon::builtin();
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      // en_si_ratio needs one classifiable word per chunk.
      std::string ta = "mama ";
      std::string tb = "giya ";
      for (std::size_t i = 0, n = 1 + rng.index(10); i < n; ++i) ta += words[rng.index(std::size(words))] + " ";
      for (std::size_t i = 0, n = 1 + rng.index(10); i < n; ++i) tb += words[rng.index(std::size(words))] + " ";
      const auto ca = as_chunk(ta);
      const auto cb = as_chunk(tb);
      const auto ab = align_rs_words(ca, cb, lex);
      const auto ba = align_rs_words(cb, ca, lex);
      std::set<std::size_t> used_a;
      std::set<std::size_t> used_b;
      for (const auto& p : ab) {
        CHECK(used_a.insert(p.index_a).second);
        CHECK(used_b.insert(p.index_b).second);
        CHECK(levenshtein(consonant_skeleton(p.word_a), consonant_skeleton(p.word_b)) <= kSkeletonTolerance);
      }
      CHECK(ab.size() == ba.size());
      const auto fa = rs_pair_features(ca, cb, lex);
      const auto fb = rs_pair_features(cb, ca, lex);
      CHECK(fa.total_edit_distance == fb.total_edit_distance);
      CHECK(fa.aligned_count == fb.aligned_count);
    }
  }

  TEST_CASE("rs_pair_features examples") {
    const auto& lex = RsLexicon::builtin();
    const auto same = rs_pair_features(as_chunk("mama gedara giya"), as_chunk("mama gedara giya"), lex);
    CHECK(same.total_edit_distance == 0);
    CHECK(same.mean_normalized_distance == 0.0);
    CHECK(same.ratio_abs_diff == 0.0);
    const auto f = rs_pair_features(as_chunk("mama gedara giya"), as_chunk("mama gedara giya I agree"), lex);
    CHECK(f.ratio_a == 0.0);
    CHECK(f.ratio_b == doctest::Approx(2.0 / 3.0));
    CHECK(f.ratio_abs_diff == doctest::Approx(2.0 / 3.0));
    CHECK(f.total_edit_distance == 0);
    CHECK(f.aligned_count == 3);
  }
}
