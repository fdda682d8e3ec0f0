#include "stylomech/stylo_en.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <set>

#include "numeric_text.hpp"
#include "stylomech/assets.hpp"
#include "stylomech/error.hpp"

namespace stylomech {

namespace {

constexpr std::array<std::string_view, kPosTagCount> kTagNames = {
    "Noun",        "Verb",        "Adjective", "Adverb",     "Pronoun",      "Determiner",
    "Preposition", "Conjunction", "Modal",     "Participle", "Interjection", "Other"};

constexpr std::array<std::string_view, 8> kBeForms = {"am",  "is",   "are",   "was",
                                                      "were", "been", "being", "be"};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_be_form(std::string_view folded) {
  return std::find(kBeForms.begin(), kBeForms.end(), folded) != kBeForms.end();
}

// Splits `tokens` into runs sharing a sentence index.
template <class T, class Index, class Fn>
void for_each_sentence(std::span<const T> items, Index index_of, Fn fn) {
  std::size_t begin = 0;
  while (begin < items.size()) {
    std::size_t end = begin + 1;
    while (end < items.size() && index_of(items[end]) == index_of(items[begin])) ++end;
    fn(items.subspan(begin, end - begin));
    begin = end;
  }
}

}  // namespace

std::string_view to_string(PosTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// resources

EnglishResources EnglishResources::parse(std::string_view pos_lexicon_tsv,
                                         std::string_view function_words_txt,
                                         std::string_view participles_txt) {
  EnglishResources res;
  std::size_t line_no = 0;
  for (const auto& line : assets::lines(pos_lexicon_tsv)) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::ParseError, "pos lexicon entry without a tab: " + line, line_no);
    }
    const auto tag = parse_pos_tag(line.substr(tab + 1));
    if (!tag) throw Error(Errc::ParseError, "unknown POS tag in: " + line, line_no);
    res.pos_lexicon[fold_case(line.substr(0, tab))] = *tag;
  }
  std::set<std::string> words;
  for (const auto& w : assets::lines(function_words_txt)) words.insert(fold_case(w));
  res.function_words.assign(words.begin(), words.end());
  for (const auto& w : assets::lines(participles_txt)) res.irregular_participles.insert(fold_case(w));
  return res;
}

const EnglishResources& EnglishResources::builtin() {
  static const EnglishResources res = parse(assets::get("pos_lexicon.tsv"), assets::get("function_words.txt"),
                                            assets::get("irregular_participles.txt"));
  return res;
}

EnglishResources EnglishResources::from_directory(const std::string& dir) {
  const auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
  return parse(assets::read_file(path("pos_lexicon.tsv")), assets::read_file(path("function_words.txt")),
               assets::read_file(path("irregular_participles.txt")));
}

bool EnglishResources::is_function_word(std::string_view folded) const {
  return std::binary_search(function_words.begin(), function_words.end(), folded);
}

// ---------------------------------------------------------------------------
// tagging and voice

PosTag tag_word(std::string_view word, const EnglishResources& res) {
  const auto folded = fold_case(word);
  if (auto it = res.pos_lexicon.find(folded); it != res.pos_lexicon.end()) return it->second;
  if (ends_with(folded, "ly")) return PosTag::Adverb;
  if (ends_with(folded, "ing") || ends_with(folded, "ed")) return PosTag::Verb;
  if (ends_with(folded, "tion") || ends_with(folded, "ness") || ends_with(folded, "ment")) {
    return PosTag::Noun;
  }
  if (ends_with(folded, "ous") || ends_with(folded, "ful") || ends_with(folded, "ive")) {
    return PosTag::Adjective;
  }
  return PosTag::Noun;
}

std::vector<TaggedToken> pos_tag(std::span<const Token> tokens, const EnglishResources& res) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    out.push_back({t, t.kind == TokenKind::Word ? tag_word(t.text, res) : PosTag::Other});
  }
  return out;
}

double VoiceCounts::passive_ratio() const {
  const auto total = active + passive;
  return total == 0 ? 0.0 : static_cast<double>(passive) / static_cast<double>(total);
}

VoiceCounts voice_counts(std::span<const TaggedToken> tagged, const EnglishResources& res) {
  VoiceCounts counts;
  auto is_participle = [&](const TaggedToken& t, const std::string& folded) {
    if (res.irregular_participles.contains(folded)) return true;
    return (t.tag == PosTag::Verb || t.tag == PosTag::Participle) &&
           (ends_with(folded, "ed") || ends_with(folded, "en"));
  };
  for_each_sentence(
      tagged, [](const TaggedToken& t) { return t.token.sentence_index; },
      [&](std::span<const TaggedToken> sentence) {
        std::vector<const TaggedToken*> words;
        std::vector<std::string> folded;
        for (const auto& t : sentence) {
          if (t.token.kind != TokenKind::Word) continue;
          words.push_back(&t);
          folded.push_back(fold_case(t.token.text));
        }
        bool passive = false;
        bool has_verb = false;
        for (std::size_t i = 0; i < words.size(); ++i) {
          has_verb = has_verb || words[i]->tag == PosTag::Verb;
          if (passive || !is_be_form(folded[i])) continue;
          for (std::size_t k = i + 1; k < words.size() && k <= i + kPassiveWindow; ++k) {
            if (is_participle(*words[k], folded[k])) {
              passive = true;
              break;
            }
          }
        }
        if (passive) {
          ++counts.passive;
        } else if (has_verb) {
          ++counts.active;
        }
      });
  return counts;
}

// ---------------------------------------------------------------------------
// frequencies and statistics

std::map<std::string, double> punct_freq(std::span<const Token> tokens) {
  if (tokens.empty()) throw Error(Errc::EmptyInput, "punct_freq: no tokens");
  std::map<std::string, double> rates;
  for (char mark : kPunctuationMarks) rates[std::string(1, mark)] = 0.0;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Punct) rates[t.text] += 1.0;
  }
  const double scale = 1000.0 / static_cast<double>(tokens.size());
  for (auto& [mark, rate] : rates) rate *= scale;
  return rates;
}

std::vector<std::size_t> sentence_word_lengths(std::span<const Token> tokens) {
  std::vector<std::size_t> lengths;
  for_each_sentence(
      tokens, [](const Token& t) { return t.sentence_index; },
      [&](std::span<const Token> sentence) {
        if (const auto n = count_words(sentence); n > 0) lengths.push_back(n);
      });
  return lengths;
}

SentenceStats sentence_length_stats(std::span<const std::size_t> lengths) {
  std::vector<double> values;
  for (auto n : lengths) {
    if (n > 0) values.push_back(static_cast<double>(n));
  }
  if (values.empty()) throw Error(Errc::EmptyInput, "sentence_length_stats: no sentences with words");
  SentenceStats stats;
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / count;
  double sq = 0.0;
  for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
  stats.std = std::sqrt(sq / count);
  for (auto n : lengths) {
    if (n == 0) continue;
    const auto bin = static_cast<std::size_t>(
        std::find_if(kSentenceBinUpper.begin(), kSentenceBinUpper.end(), [n](std::size_t upper) { return n <= upper; }) -
        kSentenceBinUpper.begin());
    stats.histogram[bin] += 1.0;
  }
  for (auto& h : stats.histogram) h /= count;
  return stats;
}

std::map<std::string, double> function_word_freq(std::span<const Token> tokens, const EnglishResources& res) {
  const auto words = count_words(tokens);
  if (words == 0) throw Error(Errc::EmptyInput, "function_word_freq: no words");
  std::map<std::string, double> rates;
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Word) continue;
    auto folded = fold_case(t.text);
    if (res.is_function_word(folded)) rates[std::move(folded)] += 1.0;
  }
  const double scale = 1000.0 / static_cast<double>(words);
  for (auto& [word, rate] : rates) rate *= scale;
  return rates;
}

LexicalRichness lexical_richness(std::span<const Token> tokens) {
  std::map<std::string, std::size_t> types;
  std::size_t words = 0;
  std::size_t chars = 0;
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Word) continue;
    ++words;
    chars += codepoint_length(t.text);
    ++types[fold_case(t.text)];
  }
  if (words == 0) throw Error(Errc::EmptyInput, "lexical_richness: no words");
  const auto hapax = std::count_if(types.begin(), types.end(), [](const auto& kv) { return kv.second == 1; });
  return {static_cast<double>(types.size()) / static_cast<double>(words),
          static_cast<double>(hapax) / static_cast<double>(types.size()),
          static_cast<double>(chars) / static_cast<double>(words)};
}

// ---------------------------------------------------------------------------
// transition graph

double TransitionGraph::probability(const std::string& from, const std::string& to) const {
  const auto it = edges.find({from, to});
  return it == edges.end() ? 0.0 : it->second;
}

TransitionGraph transition_graph(std::span<const Token> tokens, std::size_t order) {
  if (order < 2) throw Error(Errc::InvalidParams, "transition_graph: order must be >= 2");
  if (count_words(tokens) < 2) throw Error(Errc::EmptyInput, "transition_graph: fewer than two words");
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  std::map<std::string, std::size_t> totals;
  for_each_sentence(
      tokens, [](const Token& t) { return t.sentence_index; },
      [&](std::span<const Token> sentence) {
        std::vector<std::string> words;
        for (const auto& t : sentence) {
          if (t.kind == TokenKind::Word) words.push_back(fold_case(t.text));
        }
        for (std::size_t i = order - 1; i < words.size(); ++i) {
          std::string context = words[i - order + 1];
          for (std::size_t k = i - order + 2; k < i; ++k) context += ' ' + words[k];
          ++counts[{context, words[i]}];
          ++totals[context];
        }
      });
  TransitionGraph graph;
  for (const auto& [edge, n] : counts) {
    graph.edges[edge] = static_cast<double>(n) / static_cast<double>(totals[edge.first]);
    ++graph.out_degree[edge.first];
  }
  return graph;
}

// ---------------------------------------------------------------------------
// profile

EnglishProfile english_profile(std::string_view text, const EnglishResources& res, const EnglishOptions& options) {
  const auto tokens = tokenize(text);
  EnglishProfile p;
  p.graph = transition_graph(tokens, options.graph_order);
  p.token_count = tokens.size();
  p.word_count = count_words(tokens);
  const auto tagged = pos_tag(tokens, res);
  for (const auto& t : tagged) {
    if (t.token.kind == TokenKind::Word) p.pos_freq[static_cast<std::size_t>(t.tag)] += 1.0;
  }
  for (auto& rate : p.pos_freq) rate *= 1000.0 / static_cast<double>(p.word_count);
  p.voice = voice_counts(tagged, res);
  p.punct_freq = punct_freq(tokens);
  p.sent_stats = sentence_length_stats(sentence_word_lengths(tokens));
  p.func_freq = function_word_freq(tokens, res);
  p.richness = lexical_richness(tokens);
  return p;
}

void write_profile(std::ostream& out, const EnglishProfile& p) {
  using numeric_text::format;
  out << "tokens\t" << p.token_count << '\n';
  out << "words\t" << p.word_count << '\n';
  for (std::size_t i = 0; i < kPosTagCount; ++i) out << "pos." << kTagNames[i] << '\t' << format(p.pos_freq[i]) << '\n';
  out << "voice.active\t" << p.voice.active << '\n';
  out << "voice.passive\t" << p.voice.passive << '\n';
  out << "voice.passive_ratio\t" << format(p.voice.passive_ratio()) << '\n';
  for (const auto& [mark, rate] : p.punct_freq) out << "punct." << mark << '\t' << format(rate) << '\n';
  out << "sent.mean\t" << format(p.sent_stats.mean) << '\n';
  out << "sent.std\t" << format(p.sent_stats.std) << '\n';
  for (std::size_t i = 0; i < kSentenceBins; ++i) out << "sent.bin" << i << '\t' << format(p.sent_stats.histogram[i]) << '\n';
  for (const auto& [word, rate] : p.func_freq) out << "func." << word << '\t' << format(rate) << '\n';
  out << "richness.type_token_ratio\t" << format(p.richness.type_token_ratio) << '\n';
  out << "richness.hapax_ratio\t" << format(p.richness.hapax_ratio) << '\n';
  out << "richness.mean_word_length\t" << format(p.richness.mean_word_length) << '\n';
  for (const auto& [edge, prob] : p.graph.edges) {
    out << "edge\t" << edge.first << '\t' << edge.second << '\t' << format(prob) << '\n';
  }
}

}  // namespace stylomech
