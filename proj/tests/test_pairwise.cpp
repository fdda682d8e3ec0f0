#include <doctest.h>

#include <cmath>

#include "stylomech/pairwise.hpp"
#include "support.hpp"

using namespace stylomech;

namespace {

double value_of(const SimilarityRecord& r, const std::string& name) {
  for (std::size_t i = 0; i < r.feature_names.size(); ++i) {
    if (r.feature_names[i] == name) return r.values[i];
  }
  FAIL("no feature " << name);
  return 0.0;
}

TransitionGraph graph_of(std::initializer_list<std::tuple<std::string, std::string, double>> edges) {
  TransitionGraph g;
  for (const auto& [a, b, p] : edges) {
    g.edges[{a, b}] = p;
    ++g.out_degree[a];
  }
  return g;
}

}  // namespace

TEST_SUITE("pairwise") {
  TEST_CASE("group_distance examples") {
    const double o[] = {0, 0};
    const double p[] = {3, 4};
    CHECK(group_distance(o, p) == 5.0);
    CHECK(group_distance(p, p) == 0.0);
    const double one[] = {1};
    const double four[] = {4};
    CHECK(group_distance(one, four) == 3.0);
    CHECK_ERRC(group_distance(one, p), Errc::LengthMismatch);
    CHECK_ERRC(group_distance(std::span<const double>{}, std::span<const double>{}), Errc::LengthMismatch);
    CHECK(map_distance({{"a", 3}}, {{"b", 4}}) == 5.0);
  }

  TEST_CASE("graph_similarity examples") {
    const auto a = graph_of({{"a", "b", 1.0}});
    const auto b = graph_of({{"a", "b", 0.5}, {"a", "c", 0.5}});
    const auto s = graph_similarity(a, b);
    CHECK(s.cosine == doctest::Approx(0.5 / std::sqrt(0.5)));
    CHECK(s.cosine == doctest::Approx(0.7071).epsilon(1e-4));
    CHECK(s.jaccard == 0.5);
    const auto same = graph_similarity(b, b);
    CHECK(same.cosine == doctest::Approx(1.0));
    CHECK(same.jaccard == 1.0);
    const auto disjoint = graph_similarity(a, graph_of({{"x", "y", 1.0}}));
    CHECK(disjoint.cosine == 0.0);
    CHECK(disjoint.jaccard == 0.0);
    CHECK_ERRC(graph_similarity(a, TransitionGraph{}), Errc::EmptyGraph);
  }

  TEST_CASE("self comparison is zero distance") {
    const auto p = make_profile("The ball was thrown. She left, quickly! Then we ate.", LanguageMode::English);
    const auto r = compare_profiles(p, p, nullptr);
    CHECK(r.feature_names == english_feature_names());
    CHECK_FALSE(r.label.has_value());
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const auto& name = r.feature_names[i];
      if (name == "graph_cosine" || name == "graph_jaccard") {
        CHECK(r.values[i] == doctest::Approx(1.0));
      } else {
        CHECK(r.values[i] == 0.0);
      }
    }
  }

  TEST_CASE("extra commas only move the punctuation group") {
    // 1000 tokens each. Five symbol tokens in one text are commas in the
    // other, so words, sentences and token count all match.
    std::string base;
    std::string variant;
    for (int i = 0; i < 200; ++i) {
      const bool marked = i < 5;
      base += marked ? "the cat sat # ." : "the cat sat down .";
      variant += marked ? "the cat sat , ." : "the cat sat down .";
      base += ' ';
      variant += ' ';
    }
    const auto pa = make_profile(base, LanguageMode::English);
    const auto pb = make_profile(variant, LanguageMode::English);
    REQUIRE(pa.english->token_count == 1000);
    REQUIRE(pb.english->token_count == 1000);
    const auto r = compare_profiles(pa, pb, nullptr);
    CHECK(value_of(r, "punct_freq") == doctest::Approx(5.0));
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const auto& name = r.feature_names[i];
      if (name == "punct_freq") continue;
      if (name == "graph_cosine" || name == "graph_jaccard") {
        CHECK(r.values[i] == doctest::Approx(1.0));
      } else {
        CHECK_MESSAGE(r.values[i] == 0.0, name);
      }
    }
  }

  TEST_CASE("comparison is symmetric") {
    const auto a = make_profile("I think we should go now. It was decided by them.", LanguageMode::English);
    const auto b = make_profile("Go home! The cat, the dog and the bird sat on a mat.", LanguageMode::English);
    CHECK(compare_profiles(a, b, nullptr) == compare_profiles(b, a, nullptr));
    const auto& lex = RsLexicon::builtin();
    const auto ra = make_profile("mama gedara giya", LanguageMode::RomanizedSinhala);
    const auto rb = make_profile("mma gdara giya I agree", LanguageMode::RomanizedSinhala);
    const auto rec = compare_profiles(ra, rb, &lex);
    CHECK(rec == compare_profiles(rb, ra, &lex));
    CHECK(rec.feature_names == rs_feature_names());
  }

  TEST_CASE("injected scalars") {
    auto a = make_profile("one two three.", LanguageMode::English);
    auto b = a;
    a.injected["gender"] = 0.25;
    b.injected["gender"] = 1.0;
    b.injected["age"] = 2.0;
    const auto r = compare_profiles(a, b, nullptr);
    CHECK(value_of(r, "injected.gender") == 0.75);
    CHECK(value_of(r, "injected.age") == 2.0);
  }

  TEST_CASE("errors and projection") {
    const auto en = make_profile("one two three.", LanguageMode::English);
    const auto rs = make_profile("mama gedara giya", LanguageMode::RomanizedSinhala);
    CHECK_ERRC(compare_profiles(en, rs, nullptr), Errc::ModeMismatch);
    CHECK_ERRC(compare_profiles(rs, rs, nullptr), Errc::MissingLexicon);

    const auto r = compare_profiles(en, en, nullptr);
    const std::vector<std::string> names = {"voice", "pos_freq"};
    const auto p = project(r, names);
    CHECK(p.feature_names == names);
    CHECK(p.values[1] == value_of(r, "pos_freq"));
    const std::vector<std::string> missing = {"nope"};
    CHECK_ERRC(project(r, missing), Errc::SchemaMismatch);
  }
}
