#include "stylomech/text.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <regex>

#include "stylomech/assets.hpp"
#include "stylomech/error.hpp"
#include "utf8.hpp"

namespace stylomech {

std::string_view to_string(LanguageMode mode) {
  return mode == LanguageMode::English ? "english" : "rs";
}

std::optional<LanguageMode> parse_language_mode(std::string_view text) {
  const auto folded = fold_case(text);
  if (folded == "english" || folded == "en") return LanguageMode::English;
  if (folded == "rs" || folded == "romanized-sinhala" || folded == "romanized_sinhala") {
    return LanguageMode::RomanizedSinhala;
  }
  return std::nullopt;
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "Word";
    case TokenKind::Punct: return "Punct";
    case TokenKind::Number: return "Number";
    case TokenKind::Symbol: return "Symbol";
  }
  return "Symbol";
}

std::string fold_case(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t count_words(std::span<const Token> tokens) {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == TokenKind::Word; }));
}

std::size_t codepoint_length(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++n) i += utf8::decode(text, i).length;
  return n;
}

// ---------------------------------------------------------------------------
// clean

namespace {

struct ByteRange {
  std::size_t begin;
  std::size_t end;
};

const std::regex& url_pattern() {
  static const std::regex re(R"((?:[A-Za-z][A-Za-z0-9+.\-]*://|www\.)\S+)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

const std::regex& media_pattern() {
  static const std::regex re(
      R"(<[^<>\n]*omitted>|<attached:[^<>\n]*>|\b(?:image|video|audio|gif|sticker|document|media)\s+omitted\b|\bthis\s+message\s+was\s+deleted\b|\byou\s+deleted\s+this\s+message\b)",
      std::regex::ECMAScript | std::regex::icase);
  return re;
}

void collect_regex(std::string_view text, const std::regex& re, std::vector<ByteRange>& out) {
  using It = std::string_view::const_iterator;
  for (std::regex_iterator<It> it(text.begin(), text.end(), re), end; it != end; ++it) {
    const auto begin = static_cast<std::size_t>(it->position(0));
    out.push_back({begin, begin + static_cast<std::size_t>(it->length(0))});
  }
}

bool is_horizontal_space(char c) { return c == ' ' || c == '\t'; }

bool space_before(std::string_view text, std::size_t pos) {
  if (pos == 0) return true;
  const char c = text[pos - 1];
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

// One removal pass over `text`. Returns the text unchanged when nothing in
// it matches the policy.
std::string strip_once(std::string_view text, const CleanPolicy& policy) {
  std::vector<ByteRange> spans;
  if (policy.strip_emoji) {
    for (std::size_t i = 0; i < text.size();) {
      const auto d = utf8::decode(text, i);
      if (d.cp != utf8::kInvalid && utf8::is_emoji(d.cp)) spans.push_back({i, i + d.length});
      i += d.length;
    }
  }
  if (policy.strip_media_placeholders) collect_regex(text, media_pattern(), spans);
  if (policy.strip_urls) collect_regex(text, url_pattern(), spans);
  if (spans.empty()) return std::string(text);

  std::sort(spans.begin(), spans.end(),
            [](const ByteRange& a, const ByteRange& b) { return a.begin < b.begin; });
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  std::size_t i = 0;
  while (i < spans.size()) {
    ByteRange merged = spans[i++];
    while (i < spans.size() && spans[i].begin <= merged.end) {
      merged.end = std::max(merged.end, spans[i].end);
      ++i;
    }
    if (merged.begin < pos) merged.begin = pos;
    out.append(text.substr(pos, merged.begin - pos));
    pos = std::max(pos, merged.end);
    // A removed span standing alone between blanks takes one side's blanks
    // with it.
    if (space_before(text, merged.begin)) {
      while (pos < text.size() && is_horizontal_space(text[pos])) ++pos;
    }
  }
  out.append(text.substr(pos));
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (d.cp != utf8::kInvalid && utf8::is_space(d.cp)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.append(text.substr(i, d.length));
    }
    i += d.length;
  }
  return out;
}

}  // namespace

std::string clean(std::string_view text, const CleanPolicy& policy) {
  std::string current(text);
  // Removing one span can splice together a new match ("http😊://x"), so
  // strip to a fixpoint. Each pass only shrinks the text.
  for (;;) {
    std::string next = strip_once(current, policy);
    if (next == current) break;
    current = std::move(next);
  }
  if (policy.collapse_whitespace) current = collapse_whitespace(current);
  return current;
}

// ---------------------------------------------------------------------------
// sentences and tokens

namespace {

constexpr std::array<std::string_view, 34> kAbbreviations = {
    "mr.",   "mrs.",  "ms.",   "dr.",   "prof.", "sr.",   "jr.",    "st.",    "mt.",
    "vs.",   "etc.",  "e.g.",  "i.e.",  "inc.",  "ltd.",  "co.",    "corp.",  "dept.",
    "fig.",  "gen.",  "gov.",  "hon.",  "jan.",  "feb.",  "aug.",   "sept.",  "oct.",
    "nov.",  "dec.",  "capt.", "col.",  "lt.",   "sgt.",  "approx."};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Closing quote or bracket at `pos`; returns its byte length or 0.
std::size_t closer_length(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  const auto d = utf8::decode(text, pos);
  if (d.cp == 0x2019 || d.cp == 0x201D) return d.length;
  return 0;
}

bool space_at(std::string_view text, std::size_t pos) {
  const auto d = utf8::decode(text, pos);
  return d.cp != utf8::kInvalid && utf8::is_space(d.cp);
}

std::size_t skip_spaces(std::string_view text, std::size_t pos) {
  while (pos < text.size() && space_at(text, pos)) pos += utf8::decode(text, pos).length;
  return pos;
}

// Whether the '.' at `dot` ends an abbreviation from the list.
bool ends_abbreviation(std::string_view text, std::size_t sentence_begin, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > sentence_begin) {
    const char c = text[begin - 1];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
    --begin;
  }
  while (begin < dot && (text[begin] == '(' || text[begin] == '"' || text[begin] == '\'')) {
    ++begin;
  }
  const auto word = fold_case(text.substr(begin, dot + 1 - begin));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

}  // namespace

std::span<const std::string_view> abbreviations() { return kAbbreviations; }

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  std::size_t start = skip_spaces(text, 0);
  std::size_t i = start;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < text.size() && is_terminator(text[run_end])) ++run_end;
    std::size_t end = run_end;
    while (end < text.size()) {
      const auto n = closer_length(text, end);
      if (n == 0) break;
      end += n;
    }
    const bool at_boundary = end == text.size() || space_at(text, end);
    const bool abbreviation =
        run_end - i == 1 && text[i] == '.' && ends_abbreviation(text, start, i);
    if (at_boundary && !abbreviation) {
      spans.push_back({start, end});
      start = skip_spaces(text, end);
      i = start;
    } else {
      i = run_end;
    }
  }
  if (start < text.size()) {
    std::size_t end = text.size();
    while (end > start && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                           text[end - 1] == '\n' || text[end - 1] == '\r')) {
      --end;
    }
    // Trailing Unicode blanks are rare enough to leave to the tokenizer.
    if (end > start) spans.push_back({start, end});
  }
  return spans;
}

namespace {

void tokenize_span(std::string_view text, std::size_t sentence_index, std::vector<Token>& out) {
  const auto cps = utf8::to_codepoints(text);
  // Byte offset of each code point, so tokens copy the original bytes.
  std::vector<std::size_t> offsets(cps.size() + 1);
  for (std::size_t i = 0, pos = 0; i < cps.size(); ++i) {
    offsets[i] = pos;
    pos += utf8::decode(text, pos).length;
  }
  offsets[cps.size()] = text.size();
  auto slice = [&](std::size_t a, std::size_t b) {
    return std::string(text.substr(offsets[a], offsets[b] - offsets[a]));
  };
  auto letter = [&](std::size_t k) { return k < cps.size() && utf8::is_letter(cps[k]); };
  auto digit = [&](std::size_t k) { return k < cps.size() && utf8::is_digit(cps[k]); };

  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (utf8::is_space(c)) {
      ++i;
      continue;
    }
    if (letter(i) || digit(i)) {
      std::size_t j = i;
      bool has_letter = false;
      if (digit(i)) {
        while (digit(j) || (j < cps.size() && (cps[j] == '.' || cps[j] == ',') && digit(j + 1))) ++j;
      }
      while (letter(j) || digit(j) ||
             (j < cps.size() && is_apostrophe(cps[j]) && j > i && letter(j - 1) && letter(j + 1))) {
        has_letter = has_letter || letter(j);
        ++j;
      }
      out.push_back({slice(i, j), has_letter ? TokenKind::Word : TokenKind::Number, sentence_index});
      i = j;
      continue;
    }
    const bool punct = c < 0x80 && kPunctuationMarks.find(static_cast<char>(c)) != std::string_view::npos;
    out.push_back({slice(i, i + 1), punct ? TokenKind::Punct : TokenKind::Symbol, sentence_index});
    ++i;
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t index = 0;
  for (const auto& span : split_sentences(text)) {
    const auto before = tokens.size();
    tokenize_span(text.substr(span.begin, span.end - span.begin), index, tokens);
    if (tokens.size() != before) ++index;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// chunking

std::vector<Chunk> chunk(std::span<const Token> tokens, const ChunkOptions& options,
                         std::string_view source_document) {
  if (tokens.empty()) throw Error(Errc::EmptyInput, "chunk: no tokens");
  if (options.target_words == 0) throw Error(Errc::InvalidParams, "chunk: target_words must be >= 1");
  const std::size_t target = options.target_words;
  const std::size_t limit = target + options.max_overshoot.value_or(target / 5);

  std::vector<Chunk> chunks;
  Chunk current{{}, std::string(source_document)};
  std::size_t words = 0;
  auto close = [&] {
    if (!current.tokens.empty()) chunks.push_back(std::move(current));
    current = Chunk{{}, std::string(source_document)};
    words = 0;
  };
  auto words_in = [&](std::size_t a, std::size_t b) { return count_words(tokens.subspan(a, b - a)); };

  std::size_t begin = 0;
  while (begin < tokens.size()) {
    std::size_t end = begin;
    while (end < tokens.size() && tokens[end].sentence_index == tokens[begin].sentence_index) ++end;
    std::size_t pos = begin;
    while (pos < end) {
      const std::size_t remaining = words_in(pos, end);
      if (words + remaining <= limit) {
        current.tokens.insert(current.tokens.end(), tokens.begin() + pos, tokens.begin() + end);
        words += remaining;
        pos = end;
        if (words >= target) close();
        continue;
      }
      // Cut inside the sentence right after the word reaching the target;
      // trailing punctuation stays with the words it follows.
      std::size_t need = target - words;
      std::size_t cut = pos;
      while (need > 0) {
        if (tokens[cut].kind == TokenKind::Word) --need;
        ++cut;
      }
      while (cut < end && tokens[cut].kind != TokenKind::Word) ++cut;
      current.tokens.insert(current.tokens.end(), tokens.begin() + pos, tokens.begin() + cut);
      close();
      pos = cut;
    }
    begin = end;
  }
  if (!current.tokens.empty()) {
    // A word-less tail (stray punctuation) belongs to the previous chunk.
    if (words == 0 && !chunks.empty()) {
      auto& last = chunks.back().tokens;
      last.insert(last.end(), current.tokens.begin(), current.tokens.end());
    } else {
      chunks.push_back(std::move(current));
    }
  }
  return chunks;
}

// ---------------------------------------------------------------------------
// corpus

std::vector<RawDocument> load_corpus(const std::string& root, LanguageMode mode) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(Errc::IoError, "corpus directory not found: " + root);
  std::vector<fs::path> authors;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) authors.push_back(entry.path());
  }
  std::sort(authors.begin(), authors.end());
  std::vector<RawDocument> docs;
  for (const auto& author_dir : authors) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(author_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    const auto author = author_dir.filename().string();
    for (const auto& file : files) {
      docs.push_back({author + "/" + file.stem().string(), assets::read_file(file.string()), author, mode});
    }
  }
  return docs;
}

}  // namespace stylomech
