#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "stylomech/text.hpp"

namespace stylomech {

/// Minimum number of single-character insertions, deletions and
/// substitutions turning `a` into `b`, counted over Unicode code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Case-folded word with the vowels a, e, i, o, u removed ("warthamana"
/// and "wrthmna" both give "wrthmn").
std::string consonant_skeleton(std::string_view word);

enum class WordLanguage { English, RomanizedSinhala, Unknown };

std::string_view to_string(WordLanguage lang);

/// Romanized Sinhala word forms and common English words, both case-folded
/// and disjoint. The builtin copy comes from data/rs_lexicon.txt and
/// data/en_common.txt plus data/function_words.txt.
class RsLexicon {
 public:
  /// Throws Error(LexiconError) when either set is empty or they overlap.
  RsLexicon(const std::vector<std::string>& rs_words, const std::vector<std::string>& en_words);

  static const RsLexicon& builtin();

  /// RS words from `rs_path` (one per line); English words from `en_path`
  /// or, when empty, the builtin English list.
  static RsLexicon from_files(const std::string& rs_path, const std::string& en_path = {});

  bool is_english(std::string_view folded) const { return en_words_.contains(std::string(folded)); }
  bool is_rs(std::string_view folded) const { return rs_words_.contains(std::string(folded)); }
  bool has_rs_skeleton(std::string_view skeleton) const {
    return rs_skeletons_.contains(std::string(skeleton));
  }
  std::size_t rs_size() const { return rs_words_.size(); }
  std::size_t en_size() const { return en_words_.size(); }
  std::vector<std::string> rs_words() const;
  std::vector<std::string> en_words() const;

 private:
  std::unordered_set<std::string> rs_words_;
  std::unordered_set<std::string> en_words_;
  std::unordered_set<std::string> rs_skeletons_;  // non-empty skeletons only
};

/// English if listed as English; Romanized Sinhala if listed, or if its
/// (non-empty) consonant skeleton equals that of a listed RS word; else
/// Unknown.
WordLanguage classify_word(std::string_view word, const RsLexicon& lexicon);

/// English words per Romanized Sinhala word in the chunk, Unknown words
/// ignored. With no RS words the ratio saturates to the English count.
/// Throws Error(NoClassifiableWords) when every word is Unknown.
double en_si_ratio(const Chunk& chunk, const RsLexicon& lexicon);

/// Largest consonant-skeleton edit distance at which two words are
/// considered spellings of the same word.
inline constexpr std::size_t kSkeletonTolerance = 1;

struct AlignedPair {
  std::string word_a;  // case-folded
  std::string word_b;
  std::size_t index_a = 0;  // position among the chunk's candidate words
  std::size_t index_b = 0;

  bool operator==(const AlignedPair&) const = default;
};

/// Pairs "similar" Romanized Sinhala words across two chunks. Candidates are
/// the words not classified English. All candidate pairs whose skeletons are
/// within kSkeletonTolerance edits are taken greedily by ascending skeleton
/// distance, then position in `a`, then position in `b`; each word is used
/// at most once.
std::vector<AlignedPair> align_rs_words(const Chunk& a, const Chunk& b, const RsLexicon& lexicon);

struct RsPairFeatures {
  double ratio_a = 0.0;
  double ratio_b = 0.0;
  double ratio_abs_diff = 0.0;
  std::size_t aligned_count = 0;
  std::size_t total_edit_distance = 0;
  /// Mean over aligned pairs of levenshtein / max length; 0 with no pairs.
  double mean_normalized_distance = 0.0;
  /// Share of candidate words (both chunks) left unaligned; 0 with none.
  double unaligned_fraction = 0.0;
};

RsPairFeatures rs_pair_features(const Chunk& a, const Chunk& b, const RsLexicon& lexicon);

/// Convenience: the whole text as a single chunk.
Chunk as_chunk(std::string_view text, std::string_view source_document = {});

}  // namespace stylomech
