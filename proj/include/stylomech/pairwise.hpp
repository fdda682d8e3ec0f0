#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomech/stylo_en.hpp"
#include "stylomech/stylo_rs.hpp"
#include "stylomech/text.hpp"

namespace stylomech {

/// Style of one text. English profiles are self-contained; Romanized
/// Sinhala features only exist for a pair, so an RS profile keeps its chunk.
struct StyleProfile {
  LanguageMode mode = LanguageMode::English;
  std::optional<EnglishProfile> english;
  std::optional<Chunk> chunk;
  /// Externally computed scalars (an author-gender score, say); compared
  /// by absolute difference.
  std::map<std::string, double> injected;

  static StyleProfile from_english(EnglishProfile profile);
  static StyleProfile from_chunk(Chunk chunk);
};

/// Profile of a cleaned text: the English feature set, or the whole text
/// as one chunk in RS mode.
StyleProfile make_profile(std::string_view text, LanguageMode mode,
                          const EnglishResources& res = EnglishResources::builtin());

struct SimilarityRecord {
  std::vector<std::string> feature_names;
  std::vector<double> values;
  std::optional<int> label;  // 1 same author, 0 different; absent at inference

  bool operator==(const SimilarityRecord&) const = default;
};

/// Euclidean distance. Throws Error(LengthMismatch) for different or zero
/// lengths.
double group_distance(std::span<const double> a, std::span<const double> b);

/// Euclidean distance over the union of keys, missing keys read as 0.
double map_distance(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

struct GraphSimilarity {
  double cosine = 0.0;
  double jaccard = 0.0;
};

/// Cosine of the edge-probability vectors (keyed by edge) and Jaccard index
/// of the edge sets. Throws Error(EmptyGraph) if either graph has no edges.
GraphSimilarity graph_similarity(const TransitionGraph& a, const TransitionGraph& b);

/// Column names, in record order, of an English-mode record without
/// injected scalars.
std::vector<std::string> english_feature_names();
std::vector<std::string> rs_feature_names();

/// Per-group distances between two profiles of the same mode.
///
/// English: Euclidean distance per group (pos, punct, sentence stats as
/// [mean, std, bins...], function words, richness triple, passive ratio),
/// then transition-graph cosine and Jaccard. RS: the pair features of the
/// two chunks, with the per-chunk ratios reduced to their absolute
/// difference so the record is symmetric. Both modes append
/// `injected.<name>` = |a - b| for the union of injected scalars.
///
/// Throws Error(ModeMismatch) for mixed modes and Error(MissingLexicon)
/// for RS mode without a lexicon.
SimilarityRecord compare_profiles(const StyleProfile& a, const StyleProfile& b, const RsLexicon* lexicon);

/// Picks `names` out of `record` by name (models trained after variance
/// filtering see a subset of the columns). Throws Error(SchemaMismatch)
/// when a name is missing.
SimilarityRecord project(const SimilarityRecord& record, std::span<const std::string> names);

}  // namespace stylomech
