#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stylomech/text.hpp"

namespace stylomech {

enum class PosTag {
  Noun,
  Verb,
  Adjective,
  Adverb,
  Pronoun,
  Determiner,
  Preposition,
  Conjunction,
  Modal,
  Participle,
  Interjection,
  Other,
};

inline constexpr std::size_t kPosTagCount = 12;

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

/// Word lists behind the English features. `builtin()` is the copy compiled
/// from data/; `from_directory` reads the same three files from disk.
struct EnglishResources {
  std::unordered_map<std::string, PosTag> pos_lexicon;
  std::vector<std::string> function_words;  // sorted, unique
  std::unordered_set<std::string> irregular_participles;

  static const EnglishResources& builtin();
  static EnglishResources from_directory(const std::string& dir);
  static EnglishResources parse(std::string_view pos_lexicon_tsv, std::string_view function_words_txt,
                                std::string_view participles_txt);

  bool is_function_word(std::string_view folded) const;
};

struct TaggedToken {
  Token token;
  PosTag tag = PosTag::Other;
};

/// Lexicon lookup on the case-folded word, then suffix rules
/// (-ly Adverb; -ing/-ed Verb; -tion/-ness/-ment Noun; -ous/-ful/-ive
/// Adjective), then Noun. Non-word tokens are tagged Other.
PosTag tag_word(std::string_view word, const EnglishResources& res = EnglishResources::builtin());
std::vector<TaggedToken> pos_tag(std::span<const Token> tokens,
                                 const EnglishResources& res = EnglishResources::builtin());

struct VoiceCounts {
  std::size_t active = 0;
  std::size_t passive = 0;

  /// passive / (active + passive), 0 when no sentence has a verb.
  double passive_ratio() const;
  bool operator==(const VoiceCounts&) const = default;
};

/// Word tokens between a form of "be" and a past participle that still
/// count as a passive construction ("was quickly thrown").
inline constexpr std::size_t kPassiveWindow = 3;

/// Classifies each sentence (grouped by Token::sentence_index). Passive:
/// a form of "be" followed within kPassiveWindow word tokens by a past
/// participle, i.e. a Verb/Participle ending in -ed/-en or any word on the
/// irregular-participle list. Active: any other sentence with a Verb.
/// Sentences without verbs count as neither.
VoiceCounts voice_counts(std::span<const TaggedToken> tagged,
                         const EnglishResources& res = EnglishResources::builtin());

/// Rate per 1000 tokens of each mark in kPunctuationMarks; every mark is
/// present in the result. Throws Error(EmptyInput) for no tokens.
std::map<std::string, double> punct_freq(std::span<const Token> tokens);

inline constexpr std::size_t kSentenceBins = 5;

/// Upper bounds (inclusive) of the sentence-length bins 1-5, 6-10, 11-20,
/// 21-40; the last bin is 41+.
inline constexpr std::array<std::size_t, kSentenceBins - 1> kSentenceBinUpper = {5, 10, 20, 40};

struct SentenceStats {
  double mean = 0.0;
  double std = 0.0;  // population
  std::array<double, kSentenceBins> histogram{};  // sums to 1
};

/// Word counts per sentence. Sentences without words are skipped.
std::vector<std::size_t> sentence_word_lengths(std::span<const Token> tokens);

/// Throws Error(EmptyInput) when `lengths` is empty or all zero.
SentenceStats sentence_length_stats(std::span<const std::size_t> lengths);

/// Rate per 1000 word tokens of each function word that occurs (case
/// folded). Throws Error(EmptyInput) when there are no words.
std::map<std::string, double> function_word_freq(std::span<const Token> tokens,
                                                 const EnglishResources& res = EnglishResources::builtin());

struct LexicalRichness {
  double type_token_ratio = 0.0;
  double hapax_ratio = 0.0;       // types seen once / types
  double mean_word_length = 0.0;  // code points
};

LexicalRichness lexical_richness(std::span<const Token> tokens);

/// Word n-gram transition probabilities. A node is a case-folded word (or,
/// for order > 2, the space-joined n-1 word context); edges only connect
/// words of the same sentence. Punctuation between words is skipped.
struct TransitionGraph {
  std::map<std::pair<std::string, std::string>, double> edges;
  /// Number of distinct successors of each node with outgoing edges.
  std::map<std::string, std::size_t> out_degree;

  bool empty() const { return edges.empty(); }
  double probability(const std::string& from, const std::string& to) const;
};

/// Throws Error(EmptyInput) for fewer than two word tokens,
/// Error(InvalidParams) for order < 2.
TransitionGraph transition_graph(std::span<const Token> tokens, std::size_t order = 2);

struct EnglishProfile {
  std::array<double, kPosTagCount> pos_freq{};  // per 1000 word tokens
  VoiceCounts voice;
  std::map<std::string, double> punct_freq;
  SentenceStats sent_stats;
  std::map<std::string, double> func_freq;
  LexicalRichness richness;
  TransitionGraph graph;
  std::size_t token_count = 0;
  std::size_t word_count = 0;
};

struct EnglishOptions {
  std::size_t graph_order = 2;
};

/// All English features of one cleaned text.
EnglishProfile english_profile(std::string_view text,
                               const EnglishResources& res = EnglishResources::builtin(),
                               const EnglishOptions& options = {});

/// Line-oriented dump, one `key<TAB>value` per line, in a fixed order:
/// counts, pos.*, voice.*, punct.*, sent.*, func.*, richness.*, then one
/// `edge<TAB>from<TAB>to<TAB>p` line per graph edge.
void write_profile(std::ostream& out, const EnglishProfile& profile);

}  // namespace stylomech
