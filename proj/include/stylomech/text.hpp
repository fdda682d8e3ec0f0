#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylomech {

enum class LanguageMode { English, RomanizedSinhala };

std::string_view to_string(LanguageMode mode);

/// Accepts "english"/"en" and "rs"/"romanized-sinhala" (case-insensitive).
std::optional<LanguageMode> parse_language_mode(std::string_view text);

struct RawDocument {
  std::string doc_id;
  std::string text;
  std::optional<std::string> author_id;
  LanguageMode mode = LanguageMode::English;
};

/// Which kinds of noise `clean` removes. The flags are independent.
struct CleanPolicy {
  bool strip_emoji = true;
  bool strip_urls = true;
  bool strip_media_placeholders = true;
  bool collapse_whitespace = true;
};

/// Removes emoji/pictographs, URLs and chat-export media placeholders
/// ("<Media omitted>", "image omitted", ...) per `policy`, optionally
/// collapsing whitespace runs to single spaces. When a removed span sits
/// between whitespace, the whitespace after it goes too, so
/// "see http://x.y now" becomes "see now". Idempotent.
///
/// Emoji ranges: U+1F300-1F5FF, U+1F600-1F64F, U+1F680-1F6FF, U+1F1E6-1F1FF,
/// U+1F900-1F9FF, U+1FA70-1FAFF, U+2600-27BF, plus the joiners U+200D,
/// U+FE0F and U+20E3. URLs: `scheme://` or `www.` followed by non-space.
std::string clean(std::string_view text, const CleanPolicy& policy = {});

enum class TokenKind { Word, Punct, Number, Symbol };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string text;
  TokenKind kind = TokenKind::Word;
  std::size_t sentence_index = 0;

  bool operator==(const Token&) const = default;
};

/// The punctuation marks classified as TokenKind::Punct.
inline constexpr std::string_view kPunctuationMarks = ",.;:!?'\"-()";

/// Byte range [begin, end) of one sentence in the source text.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const SentenceSpan&) const = default;
};

/// Rule-based splitter. A sentence ends at a run of `.`, `!` or `?`
/// (optionally followed by closing quotes/brackets) that is followed by
/// whitespace or end of text, unless the run is a single `.` closing a
/// known abbreviation ("Mr.", "e.g.", ...). Text with no terminator is one
/// sentence; whitespace-only text has none.
std::vector<SentenceSpan> split_sentences(std::string_view text);

/// The abbreviation list used by `split_sentences`, lower case, with the
/// trailing period.
std::span<const std::string_view> abbreviations();

/// Splits into Word, Number, Punct and Symbol tokens, tagging each with
/// its sentence index. A word is a run of letters/digits starting with a
/// letter (or digits followed by letters, "42nd"); an apostrophe between
/// letters stays inside the word ("don't"). Each punctuation mark or other
/// symbol is its own token.
std::vector<Token> tokenize(std::string_view text);

/// ASCII lower-casing; other bytes pass through.
std::string fold_case(std::string_view text);

std::size_t count_words(std::span<const Token> tokens);

/// Number of Unicode code points in a UTF-8 string.
std::size_t codepoint_length(std::string_view text);

struct Chunk {
  std::vector<Token> tokens;
  std::string source_document;

  std::size_t word_count() const { return count_words(tokens); }
};

struct ChunkOptions {
  std::size_t target_words = 80;
  /// Words a chunk may run past `target_words` to finish a sentence.
  /// Unset means target_words / 5.
  std::optional<std::size_t> max_overshoot;
};

/// Groups tokens into chunks of about `target_words` words. Whole sentences
/// are added while the chunk stays within target + overshoot; a chunk closes
/// at the first sentence end where it holds at least `target_words` words.
/// A sentence that would overflow the budget is cut right after the word
/// that brings the chunk to exactly `target_words`. Every chunk but the last
/// therefore has a word count in [target, target + overshoot].
/// Throws Error(EmptyInput) on empty input, Error(InvalidParams) on a zero
/// target.
std::vector<Chunk> chunk(std::span<const Token> tokens, const ChunkOptions& options,
                         std::string_view source_document = {});

inline std::vector<Chunk> chunk(std::span<const Token> tokens, std::size_t target_words,
                                std::string_view source_document = {}) {
  return chunk(tokens, ChunkOptions{target_words, std::nullopt}, source_document);
}

/// Reads `<root>/<author_id>/<doc>.txt` into documents sorted by author then
/// file name. doc_id is "<author_id>/<file stem>".
std::vector<RawDocument> load_corpus(const std::string& root, LanguageMode mode);

}  // namespace stylomech
