#include "stylomech/pairwise.hpp"

#include <algorithm>
#include <cmath>

#include "stylomech/error.hpp"

namespace stylomech {

StyleProfile StyleProfile::from_english(EnglishProfile profile) {
  StyleProfile p;
  p.mode = LanguageMode::English;
  p.english = std::move(profile);
  return p;
}

StyleProfile StyleProfile::from_chunk(Chunk chunk) {
  StyleProfile p;
  p.mode = LanguageMode::RomanizedSinhala;
  p.chunk = std::move(chunk);
  return p;
}

StyleProfile make_profile(std::string_view text, LanguageMode mode, const EnglishResources& res) {
  if (mode == LanguageMode::English) return StyleProfile::from_english(english_profile(text, res));
  return StyleProfile::from_chunk(as_chunk(text));
}

double group_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(Errc::LengthMismatch, "group_distance: vectors of length " + std::to_string(a.size()) +
                                          " and " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double map_distance(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double diff = 0.0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      diff = ia++->second;
    } else if (ia == a.end() || ib->first < ia->first) {
      diff = ib++->second;
    } else {
      diff = ia++->second - ib++->second;
    }
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

GraphSimilarity graph_similarity(const TransitionGraph& a, const TransitionGraph& b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyGraph, "graph_similarity: graph without edges");
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::size_t shared = 0;
  // Merge walk in key order, so the result does not depend on argument order.
  auto ia = a.edges.begin();
  auto ib = b.edges.begin();
  while (ia != a.edges.end() || ib != b.edges.end()) {
    if (ib == b.edges.end() || (ia != a.edges.end() && ia->first < ib->first)) {
      norm_a += ia->second * ia->second;
      ++ia;
    } else if (ia == a.edges.end() || ib->first < ia->first) {
      norm_b += ib->second * ib->second;
      ++ib;
    } else {
      dot += ia->second * ib->second;
      norm_a += ia->second * ia->second;
      norm_b += ib->second * ib->second;
      ++shared;
      ++ia;
      ++ib;
    }
  }
  const auto union_size = a.edges.size() + b.edges.size() - shared;
  GraphSimilarity sim;
  sim.cosine = std::clamp(dot / std::sqrt(norm_a * norm_b), 0.0, 1.0);
  sim.jaccard = static_cast<double>(shared) / static_cast<double>(union_size);
  return sim;
}

std::vector<std::string> english_feature_names() {
  return {"pos_freq", "punct_freq", "sent_stats", "func_freq", "richness", "voice", "graph_cosine", "graph_jaccard"};
}

std::vector<std::string> rs_feature_names() {
  return {"ratio_abs_diff", "aligned_count", "total_edit_distance", "mean_normalized_distance",
          "unaligned_fraction"};
}

namespace {

std::vector<double> sentence_vector(const SentenceStats& s) {
  std::vector<double> v{s.mean, s.std};
  v.insert(v.end(), s.histogram.begin(), s.histogram.end());
  return v;
}

void append_english(SimilarityRecord& r, const EnglishProfile& a, const EnglishProfile& b) {
  const double richness_a[] = {a.richness.type_token_ratio, a.richness.hapax_ratio, a.richness.mean_word_length};
  const double richness_b[] = {b.richness.type_token_ratio, b.richness.hapax_ratio, b.richness.mean_word_length};
  const double voice_a[] = {a.voice.passive_ratio()};
  const double voice_b[] = {b.voice.passive_ratio()};
  GraphSimilarity graph;
  if (a.graph.empty() || b.graph.empty()) {
    // Texts of one-word sentences have no edges; two such graphs are alike.
    const double same = a.graph.empty() && b.graph.empty() ? 1.0 : 0.0;
    graph = {same, same};
  } else {
    graph = graph_similarity(a.graph, b.graph);
  }
  r.values = {group_distance(a.pos_freq, b.pos_freq),
              map_distance(a.punct_freq, b.punct_freq),
              group_distance(sentence_vector(a.sent_stats), sentence_vector(b.sent_stats)),
              map_distance(a.func_freq, b.func_freq),
              group_distance(richness_a, richness_b),
              group_distance(voice_a, voice_b),
              graph.cosine,
              graph.jaccard};
  r.feature_names = english_feature_names();
}

void append_rs(SimilarityRecord& r, const Chunk& a, const Chunk& b, const RsLexicon& lexicon) {
  const auto f = rs_pair_features(a, b, lexicon);
  r.feature_names = rs_feature_names();
  r.values = {f.ratio_abs_diff, static_cast<double>(f.aligned_count), static_cast<double>(f.total_edit_distance),
              f.mean_normalized_distance, f.unaligned_fraction};
}

void append_injected(SimilarityRecord& r, const std::map<std::string, double>& a,
                     const std::map<std::string, double>& b) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const double va = ia == a.end() ? 0.0 : ia->second;
    const double vb = ib == b.end() ? 0.0 : ib->second;
    r.feature_names.push_back("injected." + k);
    r.values.push_back(std::abs(va - vb));
  }
}

}  // namespace

SimilarityRecord compare_profiles(const StyleProfile& a, const StyleProfile& b, const RsLexicon* lexicon) {
  if (a.mode != b.mode) throw Error(Errc::ModeMismatch, "compare_profiles: profiles of different modes");
  SimilarityRecord r;
  if (a.mode == LanguageMode::English) {
    if (!a.english || !b.english) throw Error(Errc::ModeMismatch, "compare_profiles: English profile missing");
    append_english(r, *a.english, *b.english);
  } else {
    if (lexicon == nullptr) throw Error(Errc::MissingLexicon, "compare_profiles: RS mode needs a lexicon");
    if (!a.chunk || !b.chunk) throw Error(Errc::ModeMismatch, "compare_profiles: RS chunk missing");
    append_rs(r, *a.chunk, *b.chunk, *lexicon);
  }
  append_injected(r, a.injected, b.injected);
  for (double v : r.values) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidParams, "compare_profiles: non-finite feature value");
  }
  return r;
}

SimilarityRecord project(const SimilarityRecord& record, std::span<const std::string> names) {
  SimilarityRecord out;
  out.label = record.label;
  for (const auto& name : names) {
    const auto it = std::find(record.feature_names.begin(), record.feature_names.end(), name);
    if (it == record.feature_names.end()) throw Error(Errc::SchemaMismatch, "record has no feature " + name);
    out.feature_names.push_back(name);
    out.values.push_back(record.values[static_cast<std::size_t>(it - record.feature_names.begin())]);
  }
  return out;
}

}  // namespace stylomech
